#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace hda;

namespace {

const std::vector<Propertope>& t_universe() {
  static auto u = fx::universe(fx::T());
  return u;
}

int count_dim(const std::vector<Propertope>& u, int d) {
  return static_cast<int>(std::count_if(u.begin(), u.end(), [&](const Propertope& g) { return g.dim() == d; }));
}

void require_ok(const LawReport& r) {
  INFO(r.to_json().dump().substr(0, 2000));
  CHECK(r.ok());
}

// λ(x)(args) from the ψ-set directly: the unique cell with those in-faces.
bool phi_reproduces(const Algebra& a, const Algebra& b, const std::vector<Propertope>& u, int n) {
  for (const auto& g : u) {
    if (g.dim() != n + 1) continue;
    auto ts = all_tuples(a, g.element().in());
    if (!ts) return false;
    for (const auto& t : *ts)
      if (a.act(g.element(), t) != b.act(g.element(), t)) return false;
  }
  return true;
}

PropertopicSet weak1() {
  auto u = fx::universe(fx::T());
  return psi_build(fx::weighted_slice_algebra(), 1, u);
}

}  // namespace

TEST_CASE("standard universe is face closed and covers every dimension") {
  const auto& u = t_universe();
  std::set<Propertope> have(u.begin(), u.end());
  for (const auto& g : u)
    for (const auto& f : faces(g)) CHECK(have.count(face_target(g, f)) == 1);
  for (int d = 0; d <= 3; ++d) CHECK(count_dim(u, d) > 0);
  CHECK(std::is_sorted(u.begin(), u.end(), [](const Propertope& a, const Propertope& b) { return a.dim() < b.dim(); }));
}

TEST_CASE("psi of random table algebras over T is weak-0 and phi recovers it") {
  for (std::uint64_t seed : {3u, 17u}) {
    auto a = fx::random_T_table(seed);
    auto x = psi_build(a, 0, t_universe());
    require_ok(validate_presheaf(x));
    require_ok(check_weak_n(x, 0));
    auto back = phi_extract(x, 0);
    CHECK(phi_reproduces(*a, *back, t_universe(), 0));
    require_ok(check_bimonoid_factorization(*back, 4));
  }
}

TEST_CASE("Bool-OR is not unital over T") {
  auto a = make_bool_or(fx::T());
  auto x = psi_build(a, 0, t_universe());
  auto rep = validate_presheaf(x);
  CHECK_FALSE(rep.at("unit").pass);
  CHECK(rep.at("horizontal").pass);
  CHECK(rep.at("vertical").pass);
  CHECK(rep.at("equivariance").pass);
  CHECK_FALSE(check_weak_n(x, 0).ok());
  // λ(*_{2,2}) is not the identity although *_{2,2} is the unit of T(2,2).
  Color c = Color::base("c");
  Element u22 = fx::T()->unit({c, c});
  CHECK(a->act(u22, {false, true}) == Tuple{true, true});
  // The extracted algebra still reproduces λ, and μ and Δ factor it.
  auto back = phi_extract(x, 0);
  CHECK(phi_reproduces(*a, *back, t_universe(), 0));
  require_ok(check_bimonoid_factorization(*back, 4));
}

TEST_CASE("weak-1 set from a slice(T)-algebra") {
  auto x = weak1();
  require_ok(check_weak_n(x, 1));
  auto back = phi_extract(x, 1);
  auto u = fx::universe(fx::T());
  CHECK(phi_reproduces(*fx::weighted_slice_algebra(), *back, u, 1));
  CHECK(back->prop()->name() == "T+");
}

TEST_CASE("underlying category of the weak-1 set is associative") {
  auto x = weak1();
  auto c = underlying_category(x, 1);
  CHECK(c.objects.size() == 1);
  CHECK(c.morphisms.size() == 2);
  // Z/2 under addition.
  CHECK(c.compose.size() == 4);
  auto rep = check_associativity(c);
  require_ok(rep);
  CHECK(rep.at("associativity").checked == 8);
}

TEST_CASE("consistency families are all exercised in psi sets") {
  for (auto x : {psi_build(fx::random_T_table(3), 0, t_universe()), weak1()}) {
    auto rep = validate_presheaf(x);
    require_ok(rep);
    for (const char* fam : {"horizontal", "vertical", "unit", "equivariance"}) CHECK(rep.at(fam).checked > 0);
  }
  auto ue = fx::universe(fx::EBool(), 2);
  auto a = make_tautological(fx::EBool(), {{"c", {false, true}}});
  auto x = psi_build(a, 0, ue);
  auto rep = validate_presheaf(x);
  require_ok(rep);
  for (const char* fam : {"horizontal", "vertical", "unit", "equivariance"}) CHECK(rep.at(fam).checked > 0);
}

TEST_CASE("corrupted face maps are reported") {
  auto a = make_tautological(fx::EBool(), {{"c", {false, true}}});
  auto x = psi_build(a, 0, fx::universe(fx::EBool(), 2));
  bool done = false;
  for (const auto& g : x.support()) {
    if (g.dim() != 2 || !x.category()->shape(g).circ || x.size(g) == 0) continue;
    Propertope comp = face_target(g, Face::out(0));
    if (x.size(comp) < 2) continue;
    auto y = x;
    auto& e = y.entry(g);
    int& v = e.face.back()[0];
    v = (v + 1) % static_cast<int>(x.size(comp));
    auto rep = validate_presheaf(y);
    CHECK_FALSE(rep.at("vertical").pass);
    CHECK(rep.at("vertical").witness.has_value());
    v = 1000;
    CHECK_FALSE(validate_presheaf(y).at("faces").pass);
    done = true;
    break;
  }
  CHECK(done);
}

TEST_CASE("non-unique fillings make phi fail") {
  auto x = psi_build(fx::random_T_table(3), 0, t_universe());
  for (const auto& g : x.support())
    if (g.dim() == 1 && x.size(g) > 0) {
      auto e = *x.find(g);
      e.cells.push_back("extra");
      for (auto& f : e.face) f.push_back(f.front());
      x.set(g, e);
      CHECK_FALSE(check_weak_n(x, 0).at("unique-horn-filling").pass);
      CHECK_THROWS_AS(phi_extract(x, 0), Error);
      break;
    }
}

TEST_CASE("pullback along I -> T") {
  PropMap iota = map_to_terminal(fx::I(), fx::T());
  auto icat = std::make_shared<PropertopeCategory>(fx::I());
  auto ui = fx::universe(fx::I());
  std::vector<Propertope> ut = t_universe();
  for (const auto& g : ui) ut.push_back(transport(iota, g));
  ut = face_closure(ut);
  auto x = psi_build(fx::random_T_table(17), 0, ut);
  auto y = pullback(iota, x, icat, ui);
  require_ok(check_weak_n(y, 0));
  for (const auto& g : ui) CHECK(y.size(g) == x.size(transport(iota, g)));
  auto bo = psi_build(make_bool_or(fx::T()), 0, ut);
  CHECK_FALSE(check_weak_n(pullback(iota, bo, icat, ui), 0).ok());
}

TEST_CASE("tensor algebra satisfies interchange") {
  auto rep = fx::check_interchange(*fx::tensor_algebra(), 3);
  require_ok(rep);
  CHECK(rep.at("interchange").checked == 256 + 2 * 16 * 32 * 32);
}

TEST_CASE("standard sets represent cells, boundaries and horns") {
  auto x = weak1();
  auto cat = x.category();
  int seen = 0;
  for (const auto& g : x.support()) {
    if (g.dim() < 1 || g.dim() > 3 || x.size(g) == 0) continue;
    if (seen++ > 25) break;
    auto d = standard_set(cat, g, StandardKind::Delta);
    REQUIRE_FALSE(d.approximate);
    require_ok(validate_presheaf(d.set));
    CHECK(all_maps(d.set, x).size() == x.size(g));
    auto b = standard_set(cat, g, StandardKind::Boundary);
    std::size_t boundaries = 0;
    for_each_boundary(x, g, [&](const std::vector<int>&) { ++boundaries; });
    CHECK(all_maps(b.set, x).size() == boundaries);
    auto h = standard_set(cat, g, StandardKind::Horn);
    std::size_t horns = 0;
    for_each_horn(x, g, [&](const std::vector<int>&) { ++horns; });
    CHECK(all_maps(h.set, x).size() == horns);
  }
  CHECK(seen > 10);
}

TEST_CASE("ptset json round trip") {
  auto x = weak1();
  json j = x.to_json();
  auto y = PropertopicSet::from_json(json::parse(j.dump()), x.category());
  CHECK(y.to_json() == j);
  CHECK(y.support() == x.support());
  json bad = j;
  bad["shapes"][3]["faces"].erase("in1");
  CHECK_THROWS_WITH_AS(PropertopicSet::from_json(bad, x.category()), doctest::Contains("shapes[3]"), Error);
}

TEST_CASE("identity is a fibration, a map missing lifts is not") {
  auto x = weak1();
  require_ok(is_fibration(identity_map(x)));
  auto pt = terminal_set(x.category(), x.support(), x.bound());
  auto y = x;
  for (const auto& g : y.support())
    if (g.dim() == 2 && y.size(g) > 0) {
      auto e = *y.find(g);
      e.cells.pop_back();
      for (auto& f : e.face) f.pop_back();
      y.set(g, e);
      break;
    }
  CHECK_FALSE(is_fibration(map_to_point(y, pt)).at("lift").pass);
}

TEST_CASE("reflection makes lower dimensions points") {
  auto x = psi_build(fx::random_T_table(3), 0, t_universe());
  auto y = em_reflect(x, 1);
  for (const auto& g : y.support())
    if (g.dim() == 0) CHECK(y.size(g) == 1);
  require_ok(validate_presheaf(y));
}
