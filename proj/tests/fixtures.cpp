#include "fixtures.hpp"

namespace fx {

PropPtr T() {
  static PropPtr p = make_terminal({"c"});
  return p;
}

PropPtr T2() {
  static PropPtr p = make_terminal({"a", "b"});
  return p;
}

PropPtr I() {
  static PropPtr p = make_initial();
  return p;
}

PropPtr EBool() {
  static PropPtr p = make_endomorphism({{"c", {false, true}}});
  return p;
}

std::shared_ptr<const FreeProp> free3() {
  static auto p = [] {
    Color a = Color::base("a"), b = Color::base("b");
    return make_free_prop({"a", "b"}, {{"f", {a, b}, {a}}, {"g", {a}, {b, a}}, {"h", {b, b}, {a, b}}});
  }();
  return p;
}

PropPtr oprop4() {
  static PropPtr p = operad_to_prop(terminal_operad(4));
  return p;
}

std::shared_ptr<const FreeProp> free7() {
  static auto p = [] {
    Color c = Color::base("c"), d = Color::base("d");
    auto cs = [&](int k) { return Profile(static_cast<std::size_t>(k), c); };
    return make_free_prop({"c", "d"}, {{"a1", {d}, {c}},
                                       {"a2", cs(1), cs(2)},
                                       {"a3", cs(2), cs(2)},
                                       {"a4", cs(2), cs(1)},
                                       {"a5", cs(2), cs(2)},
                                       {"a6", cs(2), cs(1)},
                                       {"a7", cs(3), cs(2)}});
  }();
  return p;
}

DecoratedGraph graph53() {
  auto P = free7();
  // Vertex index k-1 carries α_k; ports are read left to right in the figure.
  DecoratedGraph dg;
  dg.g.n_in = 3;
  dg.in_colors = {Color::base("c"), Color::base("c"), Color::base("c")};
  auto at = [](int v, int p) { return Source::at(v - 1, p - 1); };
  dg.g.add_vertex({at(6, 2)}, 1);                 // v1
  dg.g.add_vertex({at(4, 2), at(5, 2)}, 1);       // v2
  dg.g.add_vertex({Source::input(1), Source::input(2)}, 2);  // v3
  dg.g.add_vertex({at(3, 1)}, 2);                 // v4
  dg.g.add_vertex({at(3, 2), at(6, 1)}, 2);       // v5
  dg.g.add_vertex({Source::input(0)}, 2);         // v6
  dg.g.add_vertex({at(4, 1), at(5, 1)}, 3);       // v7
  dg.g.out = {at(7, 3), at(1, 1), at(7, 1), at(2, 1), at(7, 2)};
  for (int k = 1; k <= 7; ++k) dg.deco.push_back(P->generator_label("a" + std::to_string(k)));
  return dg;
}

Element graph53_expected() {
  auto P = free7();
  auto a = [&](int k) { return P->generator("a" + std::to_string(k)); };
  Perm s1 = Perm::from_one_based({3, 5, 1, 4, 2});
  Perm s2 = Perm::from_one_based({2, 3, 1}).inverse();
  Perm tau = Perm::from_one_based({1, 3, 2, 4, 5});
  Element top = P->hcomp_all({a(7), a(2), P->unit({Color::base("d")})});
  Element mid = P->biact(tau, P->hcomp_all({a(4), a(5), a(1)}), Perm::identity(4));
  Element bot = P->hcomp(a(3), a(6));
  return P->biact(s1, P->vcomp(P->vcomp(top, mid), bot), s2);
}

const SliceProp& slice_of(const PropPtr& p) { return *as_slice(*iterated(p, 1)); }

std::vector<OverFixture> over_fixtures() {
  auto tw = [](const PropPtr& base, int k) {
    std::vector<std::string> names;
    for (const auto& c : base->colors()) names.push_back(c.name());
    return product_projection(make_product(base, make_weighted(names, k)), 0);
  };
  return {{"id(T)", identity_map(T())},
          {"TxW2->T", tw(T(), 2)},
          {"TxW3->T", tw(T(), 3)},
          {"EBoolxW2->EBool", tw(EBool(), 2)},
          {"IxW2->I", tw(I(), 2)},
          {"T_cxW2->T_c", tw(T2(), 2)},
          {"W2->T", map_to_terminal(make_weighted({"c"}, 2), T())},
          {"W3->T", map_to_terminal(make_weighted({"c"}, 3), T())},
          {"EBool->T", map_to_terminal(EBool(), T())},
          {"M~S->I", map_to_terminal(make_monomial(bool_maps_monoid()), I())}};
}

AlgebraPtr weighted_slice_algebra() {
  static AlgebraPtr a = differentiate(product_projection(make_product(T(), make_weighted({"c"}, 2)), 0));
  return a;
}

std::vector<Propertope> universe(const PropPtr& p, int max_dim) {
  UniverseOptions o;
  o.max_dim = max_dim;
  return standard_universe(PropertopeCategory(p), o);
}

std::shared_ptr<TableAlgebra> random_T_table(std::uint64_t seed) {
  return random_table_algebra(T(), seed, 4).algebra;
}

AlgebraPtr tensor_algebra() {
  static AlgebraPtr a = differentiate(map_to_terminal(make_monomial(bool_maps_monoid()), I()));
  return a;
}

LawReport check_interchange(const Algebra& a, int max_total) {
  const auto& s = slice_of(I());
  Color c = Color::base("c");
  auto iota = [&](int n) { return I()->unit(Profile(static_cast<std::size_t>(n), c)); };
  auto mul = [&](int n, const json& x, const json& y) { return a.act(s.circ(iota(n), iota(n)), {x, y})[0]; };
  auto tens = [&](int m, int n, const json& x, const json& y) { return a.act(s.tensor(iota(m), iota(n)), {x, y})[0]; };
  LawReport rep;
  rep.subject = a.name();
  rep.mode = "exhaustive";
  auto& law = rep.at("interchange");
  for (int m = 1; m < max_total; ++m)
    for (int n = 1; m + n <= max_total; ++n) {
      auto xs = a.carrier(Color::of(iota(m)));
      auto ys = a.carrier(Color::of(iota(n)));
      for (const auto& x1 : xs)
        for (const auto& x2 : xs) {
          json xx = mul(m, x1, x2);
          for (const auto& y1 : ys)
            for (const auto& y2 : ys) {
              ++law.checked;
              json lhs = mul(m + n, tens(m, n, x1, y1), tens(m, n, x2, y2));
              json rhs = tens(m, n, xx, mul(n, y1, y2));
              if (lhs != rhs) {
                if (law.pass) law.witness = json{{"x1", x1}, {"x2", x2}, {"y1", y1}, {"y2", y2}, {"lhs", lhs}, {"rhs", rhs}};
                law.pass = false;
              }
            }
        }
    }
  return rep;
}

}  // namespace fx
