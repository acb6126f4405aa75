#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hda/algebra.hpp"
#include "hda/laws.hpp"
#include "hda/propertope.hpp"

namespace hda {

struct UniverseOptions {
  int max_dim = 3;
  int max_arity = 2;
  // Propertopes of dimension k used to build the special shapes of
  // dimension k+1, taken round-robin over the kinds.
  int ingredients = 6;
  bool twisted = true;
};

// A face-closed shape universe: colors, elements of arity ≤ max_arity, then
// per dimension the special shapes (unit tensors, G_{α⊗β}, G_{α∘β}, σ1_ατ)
// over ingredients from the dimension below, plus every face reached from
// them. Sorted by dimension, then key.
std::vector<Propertope> standard_universe(const PropertopeCategory& cat, const UniverseOptions& opt = {});

// Adds all iterated faces and sorts by dimension, then key.
std::vector<Propertope> face_closure(std::vector<Propertope> shapes);

// A finitely supported, dimension-truncated propertopic set. Cells of a
// stored propertope are JSON values; face functions are index maps, one per
// entry of faces(γ). Unstored propertopes of dimension below
// `singleton_below` hold one cell "*", all others are empty.
class PropertopicSet {
 public:
  struct Entry {
    std::vector<json> cells;
    std::vector<std::vector<int>> face;  // face[f][x] = cell index in the target
  };

  PropertopicSet(std::shared_ptr<const PropertopeCategory> cat, int bound);

  const std::shared_ptr<const PropertopeCategory>& category() const { return cat_; }
  const PropPtr& base() const { return cat_->base(); }
  int bound() const { return bound_; }
  int singleton_below() const { return singleton_below_; }
  void set_singleton_below(int n) { singleton_below_ = n; }

  bool stored(const Propertope& g) const { return entries_.count(g) > 0; }
  bool supported(const Propertope& g) const { return stored(g) || g.dim() < singleton_below_; }
  std::size_t size(const Propertope& g) const;
  const std::vector<json>& cells(const Propertope& g) const;
  int index_of(const Propertope& g, const json& cell) const;
  // X(f)(x) for the face at position f of faces(g).
  int face(const Propertope& g, std::size_t f, int x) const;
  int face(const Propertope& g, const Face& f, int x) const;
  // X of a chain applied to cell x of the chain's source.
  int apply(const Chain& c, int x) const;

  void set(const Propertope& g, Entry e);
  Entry& entry(const Propertope& g);
  const Entry* find(const Propertope& g) const;
  void erase(const Propertope& g) { entries_.erase(g); }

  // Stored propertopes by dimension, then key.
  std::vector<Propertope> support() const;

  // ptset.json. Shapes are referenced by metagraph; face maps are 0-based
  // cell indices keyed by face name.
  json to_json() const;
  static PropertopicSet from_json(const json& j, std::shared_ptr<const PropertopeCategory> cat);

 private:
  std::shared_ptr<const PropertopeCategory> cat_;
  int bound_;
  int singleton_below_ = 0;
  std::map<Propertope, Entry> entries_;
  std::map<Propertope, std::map<std::string, int>> index_;
};

// Face functions are total and in range, every face target is supported,
// and the images of all consistency relations at stored shapes commute.
LawReport validate_presheaf(const PropertopicSet& x);

// Cells of g whose in-faces are `ins` and, when given, out-faces `outs`
// (cell indices in the face targets).
std::vector<int> fillings(const PropertopicSet& x, const Propertope& g, const std::vector<int>& ins,
                          const std::optional<std::vector<int>>& outs = std::nullopt);

// Calls f on every tuple of in-face cells. Throws Cap beyond `cap` tuples.
void for_each_horn(const PropertopicSet& x, const Propertope& g, const std::function<void(const std::vector<int>&)>& f,
                   std::size_t cap = 2000000);

// Calls f on every compatible boundary: a tuple over faces(g) satisfying all
// root relations at g. Cells of g below that are filtered the same way.
void for_each_boundary(const PropertopicSet& x, const Propertope& g, const std::function<void(const std::vector<int>&)>& f,
                       std::size_t cap = 2000000);

struct WeakOptions {
  std::size_t cap = 2000000;
};

// Presheaf validity; horns of dims 1..n fillable; horns of dim n+1 uniquely
// fillable; boundaries of dims n+2..bound uniquely fillable. Shapes are the
// stored propertopes.
LawReport check_weak_n(const PropertopicSet& x, int n, const WeakOptions& opt = {});

// Per-propertope cell functions F(γ): X(γ) → Y(γ).
struct PropertopicMap {
  const PropertopicSet* source = nullptr;
  const PropertopicSet* target = nullptr;
  std::map<Propertope, std::vector<int>> fn;
};

PropertopicMap identity_map(const PropertopicSet& x);
// The unique map to the terminal set over X's support.
PropertopicMap map_to_point(const PropertopicSet& x, const PropertopicSet& point);
PropertopicSet terminal_set(std::shared_ptr<const PropertopeCategory> cat, const std::vector<Propertope>& shapes, int bound);

// Naturality of F, and for every horn in X with a compatible cell of Y a
// lift in X.
LawReport is_fibration(const PropertopicMap& p);

// ψⁿ(A) on a face-closed universe over the PROP P with A.prop() = P^{n+}.
PropertopicSet psi_build(const AlgebraPtr& a, int n, const std::vector<Propertope>& universe);

// The P^{n+}-algebra of n-cells with λ read from unique (n+1)-horn fillings.
// Throws NotWeak on a missing or non-unique filling.
std::shared_ptr<TableAlgebra> phi_extract(const PropertopicSet& x, int n);

// Out-face tuples (cell values) over all fillings of the horn y at g.
std::vector<Tuple> compose_cells(const PropertopicSet& x, const Propertope& g, const std::vector<int>& y);

struct CategoryData {
  struct Object {
    Propertope shape;
    int cell;
  };
  struct Morphism {
    Propertope shape;  // one in-face, one out-face
    int cell;
    int source, target;  // object indices
  };
  std::vector<Object> objects;
  std::vector<Morphism> morphisms;
  // Composite g∘f as a morphism index, when the G_{g∘f} horn is stored.
  std::map<std::pair<int, int>, int> compose;
  json to_json() const;
};

// Objects are (n-1)-cells; morphisms are cells of stored n-dimensional
// shapes with one input and one output; g∘f is the out-face of the unique
// filling of the (g, f) horn at G_{γ_g∘γ_f}.
CategoryData underlying_category(const PropertopicSet& x, int n);
// h(gf) = (hg)f on every composable triple where all composites exist.
LawReport check_associativity(const CategoryData& c);

// (φ*X)(γ) = X(Φγ) on a universe of P-shapes.
PropertopicSet pullback(const PropMap& phi, const PropertopicSet& x, std::shared_ptr<const PropertopeCategory> source_cat,
                        const std::vector<Propertope>& universe);

// Dimensions below n become singletons; faces into them are constant.
PropertopicSet em_reflect(const PropertopicSet& x, int n);

enum class StandardKind { Delta, Boundary, Horn };

struct StandardSet {
  PropertopicSet set;
  bool approximate = false;  // some chain comparison hit the depth cap
};

// Δγ, ∂Δγ or Λγ: cells are face chains from γ modulo chain_equal.
StandardSet standard_set(std::shared_ptr<const PropertopeCategory> cat, const Propertope& g, StandardKind kind,
                         int depth_cap = 6);

// Natural transformations S → X, by exhaustive search.
std::vector<std::map<Propertope, std::vector<int>>> all_maps(const PropertopicSet& s, const PropertopicSet& x,
                                                             std::size_t cap = 100000);

}  // namespace hda
