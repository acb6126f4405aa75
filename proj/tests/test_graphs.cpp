#include <doctest.h>

#include "fixtures.hpp"

using namespace hda;

namespace {

const std::map<std::string, std::vector<json>>& bools() {
  static const std::map<std::string, std::vector<json>> x{{"c", {false, true}}};
  return x;
}

DecoratedGraph random_graph(const Prop& p, Rng& rng, int vertices) {
  std::vector<Element> decos;
  SampleSpec s;
  s.max_arity = 2;
  while (static_cast<int>(decos.size()) < vertices)
    if (auto e = p.sample(rng, s)) decos.push_back(*e);
  return random_wiring(decos, rng);
}

// Pushes values through the wires vertex by vertex.
Tuple simulate(const Algebra& a, const DecoratedGraph& dg, const Tuple& in) {
  std::map<Source, json> val;
  for (int k = 0; k < dg.g.n_in; ++k) val[Source::input(k)] = in[static_cast<std::size_t>(k)];
  for (int v : topological_order(dg.g)) {
    Tuple args;
    for (const auto& s : dg.g.v_in[v]) args.push_back(val.at(s));
    Tuple outs = a.act(dg.deco[v], args);
    for (std::size_t j = 0; j < outs.size(); ++j) val[Source::at(v, int(j))] = outs[j];
  }
  Tuple r;
  for (const auto& s : dg.g.out) r.push_back(val.at(s));
  return r;
}

}  // namespace

TEST_CASE("the (5,3)-graph evaluates to its canonical composite") {
  auto P = fx::free7();
  auto labelled = fx::graph53();
  REQUIRE(validate_decoration(labelled).ok());
  CHECK(labelled.g.n_in == 3);
  CHECK(labelled.g.n_out() == 5);
  // The same graph decorated by the one-vertex elements α_k.
  auto dg = labelled;
  for (int k = 0; k < 7; ++k) dg.deco[std::size_t(k)] = P->generator("a" + std::to_string(k + 1));
  REQUIRE(validate_decoration(dg, P.get()).ok());
  Element expected = fx::graph53_expected();
  CHECK(evaluate(*P, dg) == expected);
  CHECK(P->from_graph(labelled) == expected);
  Rng rng(1);
  CHECK(evaluate_with(*P, dg, decompose_with(dg, alap_levels(dg.g))) == expected);
  for (int i = 0; i < 10; ++i)
    CHECK(evaluate_with(*P, dg, decompose_with(dg, random_levels(dg.g, rng), &rng)) == expected);
}

TEST_CASE("random graphs evaluate identically under several decompositions") {
  for (PropPtr P : {PropPtr(fx::free3()), fx::EBool(), fx::T2()}) {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
      auto dg = random_graph(*P, rng, 1 + i % 6);
      REQUIRE(validate_decoration(dg, P.get()).ok());
      Element e = evaluate(*P, dg);
      CHECK(evaluate_with(*P, dg, decompose_with(dg, alap_levels(dg.g))) == e);
      CHECK(evaluate_with(*P, dg, decompose_with(dg, random_levels(dg.g, rng), &rng)) == e);
      CHECK(evaluate_with(*P, dg, decompose_with(dg, longest_path_levels(dg.g), &rng)) == e);
      CHECK(e.in() == dg.in_colors);
      CHECK(e.out() == dg.out_colors());
    }
  }
}

TEST_CASE("evaluation over E_Bool agrees with wire-by-wire simulation") {
  auto a = make_tautological(fx::EBool(), bools());
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    auto dg = random_graph(*fx::EBool(), rng, 1 + i % 5);
    Element e = evaluate(*fx::EBool(), dg);
    auto ins = all_tuples(*a, e.in());
    REQUIRE(ins);
    for (const auto& t : *ins) CHECK(a->act(e, t) == simulate(*a, dg, t));
  }
}

TEST_CASE("substituting a graph into a vertex evaluates to the substituted element") {
  auto P = fx::free3();
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    auto outer = random_graph(*P, rng, 3);
    int v = int(i % outer.g.n_vertices());
    const Element& d = outer.deco[v];
    // Replacing a vertex by its own one-vertex graph.
    DecoratedGraph inner = unit_graph(d);
    auto sub = substitute(outer, v, inner);
    CHECK(evaluate(*P, sub) == evaluate(*P, outer));
  }
}

TEST_CASE("graph json round trips and normal forms are stable") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto dg = random_graph(*fx::free3(), rng, 1 + i % 5);
    CHECK(parse_graph(graph_json(dg.g)) == dg.g);
    auto nf = normal_form(dg);
    CHECK(normal_form(nf) == nf);
    CHECK(evaluate(*fx::free3(), nf) == evaluate(*fx::free3(), dg));
    CHECK(parse_decorated(decorated_json(dg), *fx::free3()) == dg);
  }
}

TEST_CASE("malformed graphs are rejected") {
  MNGraph g;
  g.n_in = 1;
  g.add_vertex({Source::at(1, 0)}, 1);
  g.add_vertex({Source::at(0, 0)}, 1);
  g.out = {Source::input(0)};
  CHECK_FALSE(validate_mn_graph(g).ok());

  MNGraph h;
  h.n_in = 1;
  h.add_vertex({Source::input(0)}, 1);
  h.out = {Source::at(0, 0), Source::at(0, 0)};
  CHECK_FALSE(validate_mn_graph(h).ok());

  MNGraph k;
  k.n_in = 2;
  k.add_vertex({Source::input(0)}, 1);
  k.out = {Source::at(0, 0)};
  CHECK_FALSE(validate_mn_graph(k).ok());
}
