// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 only when every criterion passes.

#include <functional>
#include <iostream>
#include <map>

#include <hda/metagraph.hpp>

#include "fixtures.hpp"

using namespace hda;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
  void require(const LawReport& r, const std::string& what) {
    if (!r.ok()) require(false, what + ": " + r.first_failure().dump().substr(0, 300));
  }
};

DecoratedGraph random_graph(const Prop& p, Rng& rng, int vertices) {
  std::vector<Element> decos;
  SampleSpec s;
  s.max_arity = 2;
  while (static_cast<int>(decos.size()) < vertices)
    if (auto e = p.sample(rng, s)) decos.push_back(*e);
  return random_wiring(decos, rng);
}

std::optional<Element> sample_with_in(const Prop& p, Rng& rng, const Profile& in) {
  SampleSpec s;
  s.in = in;
  for (int i = 0; i < 50; ++i)
    if (auto x = p.sample(rng, s)) return x;
  return std::nullopt;
}

// One graph with three vertices stacked γ over β over α.
Element chain3(const SliceProp& s, const Element& g, const Element& b, const Element& a) {
  DecoratedGraph dg;
  dg.g.n_in = static_cast<int>(a.in().size());
  std::vector<Source> ig, ib, ia;
  for (int k = 0; k < static_cast<int>(g.in().size()); ++k) ig.push_back(Source::at(1, k));
  for (int k = 0; k < static_cast<int>(b.in().size()); ++k) ib.push_back(Source::at(2, k));
  for (int k = 0; k < dg.g.n_in; ++k) ia.push_back(Source::input(k));
  dg.g.add_vertex(ig, static_cast<int>(g.out().size()));
  dg.g.add_vertex(ib, static_cast<int>(b.out().size()));
  dg.g.add_vertex(ia, static_cast<int>(a.out().size()));
  for (int j = 0; j < static_cast<int>(g.out().size()); ++j) dg.g.out.push_back(Source::at(0, j));
  dg.deco = {g, b, a};
  dg.in_colors = a.in();
  return s.make({dg}, {{0, 1, 2}});
}

bool reproduces(const Algebra& a, const Algebra& b, const std::vector<Propertope>& u, int n) {
  for (const auto& g : u) {
    if (g.dim() != n + 1) continue;
    auto ts = all_tuples(a, g.element().in());
    if (!ts) return false;
    for (const auto& t : *ts)
      if (a.act(g.element(), t) != b.act(g.element(), t)) return false;
  }
  return true;
}

Element t_elem(int out, int in) {
  Color c = Color::base("c");
  return fx::T()->enumerate(Profile(std::size_t(out), c), Profile(std::size_t(in), c))->front();
}

Propertope rocket() {
  Element alpha = t_elem(4, 1), beta = t_elem(2, 4), gamma = t_elem(3, 2);
  const auto& s1 = fx::slice_of(fx::T());
  const auto& s2 = *as_slice(*iterated(fx::T(), 2));
  Element x = s1.circ(gamma, fx::T()->vcomp(beta, alpha));
  Element y = s1.hcomp(s1.unit({Color::of(gamma)}), s1.circ(beta, alpha));
  return Color::of(s2.circ(x, y));
}

const std::vector<Propertope>& t_universe() {
  static auto u = fx::universe(fx::T());
  return u;
}

PropertopicSet weak1() { return psi_build(fx::weighted_slice_algebra(), 1, t_universe()); }

Outcome c1() {
  Outcome o;
  std::vector<std::pair<std::string, PropPtr>> subjects{
      {"I", fx::I()},         {"T", fx::T()},           {"T_ab", fx::T2()},
      {"E_Bool", fx::EBool()}, {"free3", fx::free3()},   {"operad4", fx::oprop4()},
      {"slice(T)", iterated(fx::T(), 1)}, {"slice(E_Bool)", iterated(fx::EBool(), 1)}};
  for (const auto& [name, p] : subjects) o.require(check_prop_laws(*p), name);
  return o;
}

Outcome c2() {
  Outcome o;
  auto P = fx::free7();
  auto dg = fx::graph53();
  for (int k = 0; k < 7; ++k) dg.deco[std::size_t(k)] = P->generator("a" + std::to_string(k + 1));
  o.require(evaluate(*P, dg) == fx::graph53_expected(), "(5,3)-graph composite");
  for (PropPtr p : {PropPtr(fx::free3()), fx::EBool(), fx::T2()}) {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
      auto g = random_graph(*p, rng, 1 + i % 6);
      Element e = evaluate(*p, g);
      o.require(evaluate_with(*p, g, decompose_with(g, alap_levels(g.g))) == e, p->name() + " alap");
      o.require(evaluate_with(*p, g, decompose_with(g, random_levels(g.g, rng), &rng)) == e, p->name() + " random");
      o.require(evaluate_with(*p, g, decompose_with(g, longest_path_levels(g.g), &rng)) == e, p->name() + " longest");
    }
  }
  return o;
}

Outcome c3() {
  Outcome o;
  for (auto P : {fx::T(), fx::EBool()}) {
    const auto& s = fx::slice_of(P);
    Rng rng(11);
    int done = 0;
    while (done < 20) {
      auto a = *P->sample(rng, {});
      auto b = sample_with_in(*P, rng, a.out());
      if (!b) continue;
      auto g = sample_with_in(*P, rng, b->out());
      if (!g) continue;
      Element lhs = s.vcomp(s.circ(*g, P->vcomp(*b, a)), s.hcomp(s.unit({Color::of(*g)}), s.circ(*b, a)));
      o.require(lhs == chain3(s, *g, *b, a), P->name() + " triple " + std::to_string(done));
      ++done;
    }
  }
  return o;
}

Outcome c4() {
  Outcome o;
  auto fs = fx::over_fixtures();
  o.require(fs.size() == 10, "ten fixtures");
  for (const auto& f : fs) {
    o.require(check_integrate_differentiate(f.map), f.name + " integral of derivative");
    o.require(check_differentiate_integrate(differentiate(f.map)), f.name + " derivative of integral");
  }
  return o;
}

Outcome c5() {
  Outcome o;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras{{"table seed 3", fx::random_T_table(3)},
                                                          {"table seed 17", fx::random_T_table(17)},
                                                          {"Bool-OR", make_bool_or(fx::T())}};
  for (const auto& [name, a] : algebras) {
    auto x = psi_build(a, 0, t_universe());
    o.require(validate_presheaf(x), name + " presheaf");
    o.require(check_weak_n(x, 0), name + " weak-0");
    auto back = phi_extract(x, 0);
    o.require(reproduces(*a, *back, t_universe(), 0), name + " phi");
    o.require(check_bimonoid_factorization(*back, 4), name + " bimonoid");
  }
  return o;
}

Outcome c6() {
  Outcome o;
  auto x = weak1();
  o.require(check_weak_n(x, 1), "weak-1");
  auto back = phi_extract(x, 1);
  o.require(reproduces(*fx::weighted_slice_algebra(), *back, t_universe(), 1), "phi");
  return o;
}

Outcome c7() {
  Outcome o;
  auto c = underlying_category(weak1(), 1);
  auto r = check_associativity(c);
  o.require(r, "associativity");
  o.require(r.at("associativity").checked > 0, "no composable triples");
  return o;
}

std::vector<Propertope> specials(const PropertopeCategory& cat, Rng& rng) {
  std::vector<Propertope> out;
  for (int i = 0; i < 4; ++i) {
    auto a = cat.random(1, rng, 2);
    auto b = cat.random(1, rng, 2);
    if (!a || !b) continue;
    out.push_back(cat.tensor(*a, *b));
    out.push_back(cat.unit_tensor({*a, *b}));
    SampleSpec above;
    above.in = a->element().out();
    above.max_arity = 2;
    if (auto c = cat.base()->sample(rng, above)) out.push_back(cat.circ(Color::of(*c), *a));
    int m = int(a->element().out().size()), n = int(a->element().in().size());
    out.push_back(cat.twisted(Perm::random(m, rng), *a, Perm::random(n, rng)));
  }
  return out;
}

Outcome c8() {
  Outcome o;
  auto ue = fx::universe(fx::EBool(), 2);
  std::vector<std::pair<std::string, PropertopicSet>> sets;
  sets.emplace_back("table seed 3", psi_build(fx::random_T_table(3), 0, t_universe()));
  sets.emplace_back("table seed 17", psi_build(fx::random_T_table(17), 0, t_universe()));
  sets.emplace_back("Bool-OR", psi_build(make_bool_or(fx::T()), 0, t_universe()));
  sets.emplace_back("weighted weak-1", weak1());
  sets.emplace_back("E_Bool tautological", psi_build(make_tautological(fx::EBool(), {{"c", {false, true}}}), 0, ue));
  std::map<std::string, std::size_t> exercised;
  for (const auto& [name, x] : sets) {
    auto r = validate_presheaf(x);
    o.require(r, name);
    for (const char* fam : {"horizontal", "vertical", "unit", "equivariance"}) exercised[fam] += r.at(fam).checked;
  }
  for (const auto& [fam, k] : exercised) o.require(k > 0, fam + " unexercised");
  for (auto P : {fx::T(), fx::EBool()}) {
    PropertopeCategory cat(P);
    Rng rng(21);
    for (const auto& g : specials(cat, rng))
      for (const auto& r : cat.relations(g))
        o.require(cat.chain_equal({g, r.lhs}, {g, r.rhs}, 6) == Verdict::Equal, P->name() + " " + r.family);
  }
  return o;
}

Outcome c9() {
  Outcome o;
  PropMap iota = map_to_terminal(fx::I(), fx::T());
  auto icat = std::make_shared<PropertopeCategory>(fx::I());
  auto ui = fx::universe(fx::I());
  std::vector<Propertope> ut = t_universe();
  for (const auto& g : ui) ut.push_back(transport(iota, g));
  ut = face_closure(ut);
  auto x = psi_build(make_bool_or(fx::T()), 0, ut);
  o.require(check_weak_n(pullback(iota, x, icat, ui), 0), "pullback weak-0");
  return o;
}

Outcome c10() {
  Outcome o;
  PropertopeCategory cat(fx::T());
  Rng rng(99);
  std::vector<Propertope> gs{rocket()};
  for (int i = 0; gs.size() < 100 && i < 1000; ++i)
    if (auto g = cat.random(i % 4, rng, 2)) gs.push_back(*g);
  o.require(gs.size() == 100, "100 samples");
  for (const auto& g : gs) {
    std::string s = encode_metagraph(g).dump();
    Propertope back = decode_metagraph(json::parse(s), fx::T());
    o.require(back == g && encode_metagraph(back).dump() == s, "round trip dim " + std::to_string(g.dim()));
  }
  return o;
}

Outcome c11() {
  Outcome o;
  auto r = fx::check_interchange(*fx::tensor_algebra(), 3);
  o.require(r, "interchange");
  o.require(r.at("interchange").checked > 0, "no entries");
  return o;
}

}  // namespace

int main() {
  std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.pass) std::cout << "  (" << o.note << ")";
    std::cout << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
