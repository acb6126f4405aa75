#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hda/graph.hpp"
#include "hda/prop.hpp"

namespace hda {

// A P-propertope of dimension n is a Color of dimension n over P: a base
// color (n = 0), an element of P (n = 1) or an element of P^{(n-1)+}.
using Propertope = Color;

enum class FaceDir { In, Out };

struct Face {
  FaceDir dir = FaceDir::In;
  int index = 0;  // 0-based position in the profile

  static Face in(int i) { return {FaceDir::In, i}; }
  static Face out(int j) { return {FaceDir::Out, j}; }
  std::string str() const;  // "in1", "out2"
  static Face parse(const std::string& s);
  auto operator<=>(const Face&) const = default;
};

Propertope face_target(const Propertope& g, const Face& f);

// r in-faces followed by s out-faces, in profile order.
std::vector<Face> faces(const Propertope& g);

// A composite of face maps read from the source downwards; empty = identity.
struct Chain {
  Propertope source;
  std::vector<Face> faces;

  Propertope target() const;
  std::size_t length() const { return faces.size(); }
  json to_json() const;
  bool operator==(const Chain&) const = default;
};

// a then b; throws Composition when b does not start at a's target.
Chain chain_compose(const Chain& a, const Chain& b);

// A commuting square (or unit triangle) at a special propertope: two face
// paths from the root with the same target.
struct Relation {
  std::string family;  // horizontal, vertical, unit, equivariance
  std::vector<Face> lhs;
  std::vector<Face> rhs;
};

enum class Verdict { Equal, Distinct, Unknown };
const char* to_string(Verdict v);

struct Shape {
  bool tensor = false;       // G_{α⊗β}
  bool circ = false;         // G_{α∘β}
  bool unit_tensor = false;  // 1_{α₁}⊗…⊗1_{α_m}
  bool twisted = false;      // σ1_ατ
  Perm sigma, tau;           // set when twisted
};

// The face-map category P(P) modulo the consistency relations, with the
// special constructions used to instantiate them.
class PropertopeCategory {
 public:
  explicit PropertopeCategory(PropPtr base);

  const PropPtr& base() const { return base_; }
  // The PROP whose elements are the propertopes of dimension n ≥ 1.
  PropPtr level(int n) const;

  Report validate(const Propertope& g) const;
  bool contains(const Propertope& g) const { return validate(g).ok(); }

  Shape shape(const Propertope& g) const;
  // Root relations at g, cached.
  const std::vector<Relation>& relations(const Propertope& g) const;
  Verdict chain_equal(const Chain& a, const Chain& b, int depth_cap) const;
  // Face sequences reachable from c by at most depth_cap rewrites; complete
  // is set when the search ran out of new chains before the cap.
  std::vector<std::vector<Face>> chain_class(const Chain& c, int depth_cap, bool* complete = nullptr) const;

  // Specials of dimension n+1 built from propertopes of dimension n ≥ 1.
  Propertope tensor(const Propertope& a, const Propertope& b) const;
  Propertope circ(const Propertope& a, const Propertope& b) const;
  Propertope twisted(const Perm& sigma, const Propertope& a, const Perm& tau) const;
  // 1_{α₁}⊗…⊗1_{α_m} of dimension n+1 for α_i of dimension n ≥ 0.
  Propertope unit_tensor(const std::vector<Propertope>& as) const;

  // A random propertope of the given dimension, or nullopt when sampling
  // falls outside a truncation.
  std::optional<Propertope> random(int dim, Rng& rng, int max_arity = 2) const;

 private:
  std::vector<Relation> compute_relations(const Propertope& g) const;

  PropPtr base_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<Relation>> rel_cache_;
};

// Φ: replaces every decoration by its image under phi, recursively.
Propertope transport(const PropMap& phi, const Propertope& g);

}  // namespace hda
