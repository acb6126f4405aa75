#pragma once

#include <map>
#include <string>
#include <vector>

#include "hda/graph.hpp"

namespace hda {

struct Generator {
  std::string name;
  Profile out;
  Profile in;
};

// Decoration of a free-PROP vertex: a named generator.
class GeneratorPayload : public Payload {
 public:
  explicit GeneratorPayload(std::string n) : name(std::move(n)) {}
  json to_json() const override { return {{"gen", name}}; }
  std::string name;
};

// Element of a free PROP: a decorated graph in normal form, possibly with
// edge-only (formal) components.
class FreeGraphPayload : public Payload {
 public:
  explicit FreeGraphPayload(DecoratedGraph g) : graph(std::move(g)) {}
  json to_json() const override;
  DecoratedGraph graph;
};

class FreeProp;

std::shared_ptr<const FreeProp> make_free_prop(const std::vector<std::string>& colors, const std::vector<Generator>& gens);

class FreeProp : public Prop {
 public:
  FreeProp(std::vector<Color> colors, std::vector<Generator> gens);

  std::string name() const override { return "Free"; }
  bool has_color(const Color& c) const override;
  std::vector<Color> colors() const override { return colors_; }
  bool owns(const Element& x) const override { return x.try_as<FreeGraphPayload>() != nullptr; }
  bool contains(const Element& x) const override;
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override;
  json spec_json() const override;

  const std::vector<Generator>& generators() const { return gens_; }
  // The vertex decoration for generator `name`.
  Element generator_label(const std::string& name) const;
  // The one-vertex element for generator `name`.
  Element generator(const std::string& name) const;
  // Element from a graph decorated by generator labels or by free elements.
  Element from_graph(const DecoratedGraph& g) const;
  // Substitutes free elements into a graph decorated by free elements.
  Element flatten(const DecoratedGraph& g) const;

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override;
  Element do_vcomp(const Element& x, const Element& y) const override;
  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override;
  Element do_unit(const Profile& c) const override;
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override;
  std::optional<Element> parse_short(const json& j) const override;

 private:
  Element wrap(const DecoratedGraph& g) const;
  std::vector<Color> colors_;
  std::vector<Generator> gens_;
  std::map<std::string, Element> labels_;
};

}  // namespace hda
