#pragma once

#include <map>
#include <string>
#include <vector>

#include "hda/prop.hpp"

namespace hda {

// Color → finite fiber.
using GradedSet = std::map<std::string, std::vector<json>>;

// T_𝔠: one element in every component. make_terminal({"c"}) is T.
PropPtr make_terminal(const std::vector<std::string>& colors = {"c"});

// I: one point in each component (n, n), empty otherwise. One color "c".
PropPtr make_initial();

// E_X: functions between finite products of fibers.
PropPtr make_endomorphism(const GradedSet& x);

// Finite-table PROP, validated exhaustively at construction. Throws
// Error(Validation) carrying the failing instance.
PropPtr make_table_prop(const json& spec);

// W_k: every component is Z/k; both compositions add, biact is trivial.
PropPtr make_weighted(const std::vector<std::string>& colors, int k);

// P × Q over a common color set.
PropPtr make_product(const PropPtr& a, const PropPtr& b);
PropMap product_projection(const PropPtr& product, int which);

// One-colored M ≀ Σ: elements (x ∈ M^n, π ∈ Σ_n), acting as a ↦ b with
// b_{π(i)} = x_i · a_i. `mul[a][b]` is the product a·b, 0 the identity.
PropPtr make_monomial(const std::vector<std::vector<int>>& mul);
// The monoid of self-maps of {0,1}: id, not, const0, const1.
std::vector<std::vector<int>> bool_maps_monoid();

// Unique PROP map into a terminal PROP with the same colors.
PropMap map_to_terminal(const PropPtr& source, const PropPtr& terminal);

// Function-table payload of E_X (rows indexed lexicographically by input).
class FunctionTable : public Payload {
 public:
  explicit FunctionTable(std::vector<std::vector<int>> rows) : rows(std::move(rows)) {}
  json to_json() const override;
  std::vector<std::vector<int>> rows;
};

// Mixed-radix helpers for E_X tables.
std::vector<int> fiber_sizes(const GradedSet& x, const Profile& p);
long long tuple_count(const std::vector<int>& radix);
std::vector<int> unrank(long long r, const std::vector<int>& radix);
long long rank(const std::vector<int>& t, const std::vector<int>& radix);

}  // namespace hda
