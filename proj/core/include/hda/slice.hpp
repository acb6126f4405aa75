#pragma once

#include <vector>

#include "hda/graph.hpp"
#include "hda/prop.hpp"

namespace hda {

// Normalized slice element: graph j evaluates to output color j, and
// slots[j][v] is the input slot decorated by vertex v of graph j. Vertices of
// each graph are ordered by slot.
class SlicePayload : public Payload {
 public:
  SlicePayload(std::string base, std::vector<DecoratedGraph> graphs, std::vector<std::vector<int>> slots);
  json to_json() const override { return j_; }

  std::string base;
  std::vector<DecoratedGraph> graphs;
  std::vector<std::vector<int>> slots;

 private:
  json j_;
};

// P⁺: colors are elements of P.
class SliceProp : public Prop {
 public:
  explicit SliceProp(PropPtr base);

  const PropPtr& base() const { return base_; }
  std::string name() const override { return base_->name() + "+"; }
  bool has_color(const Color& c) const override;
  bool contains(const Element& x) const override;
  bool owns(const Element& x) const override;
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override;
  Color parse_color(const json& j) const override;
  json spec_json() const override { return {{"kind", "slice"}, {"base", base_->spec_json()}}; }

  // Normalizes (sorting vertices by slot) and validates.
  Element make(std::vector<DecoratedGraph> graphs, std::vector<std::vector<int>> slots) const;
  // Graph j is output σ(j); flat vertex p (graph by graph) decorates input
  // slot τ⁻¹(p).
  Element from_bookkeeping(const std::vector<DecoratedGraph>& graphs, const Perm& sigma, const Perm& tau) const;

  // slice-element.json: {"graphs": [...], "partition": [...], "sigma": [...], "tau": [...]}
  json file_json(const Element& x) const;
  Element parse_file(const json& j) const;

  // G_{α⊗β} = 1_α ⊔ 1_β in one graph.
  Element tensor(const Element& a, const Element& b) const;
  // G_{α∘β}: α above β, inputs (α, β).
  Element circ(const Element& a, const Element& b) const;
  // σ1_ατ: the graph 1_α with relabeled legs; evaluates to biact(σ, α, τ).
  Element twisted_unit(const Perm& sigma, const Element& a, const Perm& tau) const;
  // 1_{α₁} ⊗ … ⊗ 1_{α_m}.
  Element unit_tensor(const std::vector<Element>& as) const;

  // Random valid element whose inputs are the given base elements.
  Element random_over(Rng& rng, const std::vector<Element>& decos, int max_groups) const;

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override;
  Element do_vcomp(const Element& x, const Element& y) const override;
  Element do_biact(const Perm& sigma, const Element& x, const Perm& tau) const override;
  Element do_unit(const Profile& c) const override;
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override;

 private:
  Element build(std::vector<DecoratedGraph> graphs, std::vector<std::vector<int>> slots, bool check) const;
  PropPtr base_;
};

PropPtr make_slice(const PropPtr& base);

// P^{n+}, cached per base so repeated calls share instances.
PropPtr iterated(const PropPtr& base, int n);

// The SliceProp whose colors are elements of `base`, or nullptr.
const SliceProp* as_slice(const Prop& p);

// Checks graph validity, decorations, slot bijection, vertex order and
// ev(graph j) = out[j].
Report validate_slice_element(const SliceProp& s, const Element& x);

// Compact payload form of one graph: decorations, slots and wiring.
json slice_graph_json(const DecoratedGraph& dg, const std::vector<int>& slots);

}  // namespace hda
