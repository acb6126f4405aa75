#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hda/graph.hpp"
#include "hda/prop.hpp"

namespace hda {

struct OperadOp {
  std::string name;
  Color out;
  Profile in;
};

// A finite (arity-truncated) colored operad. Composition and the right
// symmetric action are total wherever the result arity is within bound.
struct ColoredOperad {
  std::vector<Color> colors;
  std::vector<OperadOp> ops;  // sorted by name
  std::map<std::string, std::string> units;  // color name → unit op
  int max_arity = 0;
  // ρ(f; g₁..gₙ) or nullopt outside the truncation.
  std::function<std::optional<std::string>(const std::string&, const std::vector<std::string>&)> compose;
  // o·π, inputs reordered as (c_{π(1)},…).
  std::function<std::string(const std::string&, const Perm&)> act;

  const OperadOp& op(const std::string& name) const;
  std::vector<std::string> ops_with(const Color& out, const Profile& in) const;
  std::vector<std::string> ops_with_in(const Profile& in) const;
};

ColoredOperad terminal_operad(int max_arity, const std::vector<std::string>& colors = {"c"});
ColoredOperad unit_operad();
ColoredOperad operad_from_json(const json& j);
json operad_json(const ColoredOperad& o);

// Unit, associativity, action functoriality and equivariance of ρ, checked
// exhaustively on the finite tables.
Report check_operad(const ColoredOperad& o);

// Element of O_prop: factors in order, each with its output position, its
// sorted input legs and an operation.
struct OpropFactor {
  int out;
  std::vector<int> ins;
  std::string op;
  auto operator<=>(const OpropFactor&) const = default;
};

class OpropPayload : public Payload {
 public:
  explicit OpropPayload(std::vector<OpropFactor> f) : factors(std::move(f)) {}
  json to_json() const override;
  std::vector<OpropFactor> factors;
};

// The free PROP on O. Elements are classes of (partition, tuple, σ, τ);
// each factor's input block is stored sorted with the block permutation
// absorbed into its operation by the right action.
PropPtr operad_to_prop(const ColoredOperad& o);

// U(P) restricted to arity ≤ max_arity; requires finite components.
ColoredOperad prop_to_operad(const PropPtr& p, int max_arity);

}  // namespace hda
