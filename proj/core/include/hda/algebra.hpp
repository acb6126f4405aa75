#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hda/laws.hpp"
#include "hda/prop.hpp"

namespace hda {

using Tuple = std::vector<json>;

// A P-algebra: finite fibers over colors and an action λ of every element.
class Algebra {
 public:
  virtual ~Algebra() = default;

  virtual std::string name() const = 0;
  virtual PropPtr prop() const = 0;
  virtual std::vector<json> carrier(const Color& c) const = 0;
  // λ(x) on a tuple over x's input profile. Unchecked; see algebra_act.
  virtual Tuple act(const Element& x, const Tuple& args) const = 0;
  // A chosen point over a unit element of the base of a slice PROP, when the
  // algebra has one (∂Q uses Q's units).
  virtual std::optional<json> unit_point(const Element& base_unit) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// λ(x)(args) with profile and carrier membership checks.
Tuple algebra_act(const Algebra& a, const Element& x, const Tuple& args);

bool in_carrier(const Algebra& a, const Color& c, const json& v);

// All tuples over a profile, or nullopt when there are more than `cap`.
std::optional<std::vector<Tuple>> all_tuples(const Algebra& a, const Profile& p, std::size_t cap = 4096);

class FunctionAlgebra : public Algebra {
 public:
  using CarrierFn = std::function<std::vector<json>(const Color&)>;
  using ActFn = std::function<Tuple(const Element&, const Tuple&)>;

  FunctionAlgebra(std::string name, PropPtr p, CarrierFn carrier, ActFn act)
      : name_(std::move(name)), p_(std::move(p)), carrier_(std::move(carrier)), act_(std::move(act)) {}

  std::string name() const override { return name_; }
  PropPtr prop() const override { return p_; }
  std::vector<json> carrier(const Color& c) const override { return carrier_(c); }
  Tuple act(const Element& x, const Tuple& args) const override { return act_(x, args); }

 private:
  std::string name_;
  PropPtr p_;
  CarrierFn carrier_;
  ActFn act_;
};

// Explicit tables. Elements without a table act as Undefined.
class TableAlgebra : public Algebra {
 public:
  TableAlgebra(std::string name, PropPtr p) : name_(std::move(name)), p_(std::move(p)) {}

  std::string name() const override { return name_; }
  PropPtr prop() const override { return p_; }
  std::vector<json> carrier(const Color& c) const override;
  Tuple act(const Element& x, const Tuple& args) const override;

  void set_carrier(const Color& c, std::vector<json> values);
  void set(const Element& x, const Tuple& args, const Tuple& result);
  bool has_table(const Element& x) const { return rows_.count(x.key()) > 0; }
  std::vector<Element> tabulated() const;
  std::size_t row_count() const;

  // {"type":"algebra","kind":"table","prop":..,"carrier":[..],"tables":[..]}
  json to_json() const;
  static std::shared_ptr<TableAlgebra> from_json(const json& j, PropPtr p);
  // Records λ(x) for every x and every tuple over x's inputs.
  static std::shared_ptr<TableAlgebra> tabulate(const Algebra& a, const std::vector<Element>& xs);

 private:
  std::string name_;
  PropPtr p_;
  std::map<std::string, std::vector<json>> carrier_;
  std::map<std::string, Element> elems_;
  std::map<std::string, std::map<std::string, Tuple>> rows_;
};

// Every element with both profiles of length 1..max_arity over the PROP's
// finite color list. Throws Cap when more than `cap` elements arise.
std::vector<Element> bounded_elements(const Prop& p, int max_arity, std::size_t cap = 20000);

struct AlgebraCheckOptions {
  int max_arity = 3;
  int samples = 200;
  std::uint64_t seed = 0;
  std::size_t tuple_cap = 64;
  // Elements to check; defaults to bounded_elements when the PROP has finite
  // colors, sampling otherwise.
  std::optional<std::vector<Element>> elements;
};

// Closure, unit, hcomp, vcomp and biact laws of λ.
LawReport check_algebra(const Algebra& a, const AlgebraCheckOptions& opt = {});

using CarrierMap = std::function<json(const Color&, const json&)>;

// f(λ_A(x)(a)) = λ_B(x)(f(a)) on the checked elements.
LawReport check_algebra_morphism(const CarrierMap& f, const Algebra& a, const Algebra& b,
                                 const AlgebraCheckOptions& opt = {});

// The Bool-OR bicommutative bimonoid over T: carrier {false, true},
// λ(*_{m,n})(a) = (a₁ ∨ … ∨ aₙ, …) with m copies.
AlgebraPtr make_bool_or(const PropPtr& t);

// E_X acting on X: λ(f)(a) = f(a).
AlgebraPtr make_tautological(const PropPtr& endo, const std::map<std::string, std::vector<json>>& x);

// μ(m,n) = Δ^{m-1}∘μ^{n-1} for a one-colored algebra over T, with μ and Δ
// read from λ(*_{1,2}) and λ(*_{2,1}).
LawReport check_bimonoid_factorization(const Algebra& a, int max_arity);

struct RandomTableResult {
  std::shared_ptr<TableAlgebra> algebra;
  int attempts = 0;
};

// Rejection sampling of random finite tables over a PROP with finite colors,
// carrier sizes drawn from `sizes`, checked by check_algebra up to max_arity.
RandomTableResult random_table_algebra(const PropPtr& p, std::uint64_t seed, int max_arity,
                                       const std::vector<int>& sizes = {0, 1, 2}, int max_attempts = 2000);

}  // namespace hda
