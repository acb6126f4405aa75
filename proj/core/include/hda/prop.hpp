#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hda/perm.hpp"
#include "hda/rng.hpp"
#include "hda/values.hpp"

namespace hda {

struct SampleSpec {
  std::optional<Profile> in;
  std::optional<Profile> out;
  int max_arity = 3;
};

// A colored PROP. Public operations validate ownership and profiles, then
// dispatch to the implementation hooks.
class Prop {
 public:
  virtual ~Prop() = default;

  virtual std::string name() const = 0;
  virtual bool has_color(const Color& c) const = 0;
  // Finite color list; infinite-colored PROPs (slices) throw Unsupported.
  virtual std::vector<Color> colors() const;
  virtual bool unital() const { return true; }
  virtual bool contains(const Element& x) const = 0;
  // Elements of one component, or nullopt if infinite or too large.
  virtual std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const;
  // All elements if the PROP (or its truncation) is finite.
  virtual std::optional<std::vector<Element>> all_elements() const { return std::nullopt; }
  virtual std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const = 0;

  // Parses the canonical element JSON {"o":..,"i":..,"p":..} or a short form.
  Element parse_element(const json& j) const;
  virtual Color parse_color(const json& j) const;
  // Rebuildable description used by file formats.
  virtual json spec_json() const;

  Element hcomp(const Element& x, const Element& y) const;
  Element vcomp(const Element& x, const Element& y) const;
  Element biact(const Perm& sigma, const Element& x, const Perm& tau) const;
  Element unit(const Profile& c) const;
  Element hcomp_all(const std::vector<Element>& xs) const;

  virtual bool owns(const Element& x) const = 0;

 protected:
  virtual Element do_hcomp(const Element& x, const Element& y) const = 0;
  virtual Element do_vcomp(const Element& x, const Element& y) const = 0;
  virtual Element do_biact(const Perm& sigma, const Element& x, const Perm& tau) const = 0;
  virtual Element do_unit(const Profile& c) const = 0;
  virtual Element parse_payload(const Profile& out, const Profile& in, const json& p) const = 0;
  virtual std::optional<Element> parse_short(const json& j) const;

  void check_owner(const Element& x) const;
};

using PropPtr = std::shared_ptr<const Prop>;

// Random non-empty profile over the given colors.
Profile random_profile(Rng& rng, const std::vector<Color>& colors, int min_len, int max_len);

// An element-level PROP morphism.
struct PropMap {
  PropPtr source;
  PropPtr target;
  std::function<Element(const Element&)> apply;
  std::function<Color(const Color&)> on_color;  // identity when empty
  std::string name;
  // Preimage of one element, when it is cheaper than filtering a component.
  std::function<std::vector<Element>(const Element&)> fiber;

  Color color(const Color& c) const { return on_color ? on_color(c) : c; }
  Profile profile(const Profile& p) const;
};

PropMap identity_map(const PropPtr& p);

}  // namespace hda
