#pragma once

#include <map>
#include <mutex>

#include "hda/algebra.hpp"
#include "hda/slice.hpp"

namespace hda {

// ∂Q for a PROP map g: Q → P, as an algebra over P⁺. The fiber over α is
// g⁻¹(α); an element acts by decoration replacement and evaluation in Q.
class DifferentiatedAlgebra : public Algebra {
 public:
  explicit DifferentiatedAlgebra(PropMap g);

  std::string name() const override { return "d(" + g_.source->name() + ")"; }
  PropPtr prop() const override { return slice_; }
  std::vector<json> carrier(const Color& alpha) const override;
  Tuple act(const Element& x, const Tuple& args) const override;
  std::optional<json> unit_point(const Element& base_unit) const override;

  const PropMap& map() const { return g_; }
  Element fiber_element(const json& v) const;

 private:
  PropMap g_;
  PropPtr slice_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<json>> fibers_;
  mutable std::map<std::string, Element> parsed_;
};

AlgebraPtr differentiate(const PropMap& g);

class IntegralPayload : public Payload {
 public:
  IntegralPayload(Element a, json v) : alpha(std::move(a)), value(std::move(v)) {}
  json to_json() const override { return {{"over", alpha.to_json()}, {"value", value}}; }
  Element alpha;
  json value;
};

// ∫A for an algebra A over P⁺: the component (d̲; c̲) is the disjoint union of
// the fibers A_α over α ∈ P(d̲; c̲). Unital when A supplies unit points.
class IntegralProp : public Prop {
 public:
  explicit IntegralProp(AlgebraPtr a);

  std::string name() const override { return "int(" + a_->name() + ")"; }
  bool has_color(const Color& c) const override { return base_->has_color(c); }
  std::vector<Color> colors() const override { return base_->colors(); }
  bool unital() const override { return unital_; }
  bool owns(const Element& x) const override;
  bool contains(const Element& x) const override;
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override;
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override;

  const PropPtr& base() const { return base_; }
  const AlgebraPtr& algebra() const { return a_; }
  Element make(const Element& alpha, const json& v) const;

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override;
  Element do_vcomp(const Element& x, const Element& y) const override;
  Element do_biact(const Perm& sigma, const Element& x, const Perm& tau) const override;
  Element do_unit(const Profile& c) const override;
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override;

 private:
  AlgebraPtr a_;
  PropPtr base_;
  const SliceProp* slice_;
  bool unital_ = false;
};

struct Integral {
  std::shared_ptr<const IntegralProp> prop;
  PropMap projection;  // (α, a) ↦ α
};

Integral integrate(const AlgebraPtr& a);

struct RoundTripOptions {
  int max_arity = 2;
  int samples = 60;
  std::uint64_t seed = 0;
};

// ∫∂Q ≅ Q: q ↦ (g(q), q) is a bijection on every component up to max_arity
// and preserves hcomp, vcomp, biact and units on samples.
LawReport check_integrate_differentiate(const PropMap& g, const RoundTripOptions& opt = {});

// ∂∫A ≅ A: (α, a) ↦ a is a bijection of fibers and the actions agree on
// sampled P⁺ elements over every argument tuple.
LawReport check_differentiate_integrate(const AlgebraPtr& a, const RoundTripOptions& opt = {});

}  // namespace hda
