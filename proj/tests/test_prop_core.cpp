#include <doctest.h>

#include <hda/io.hpp>

#include "fixtures.hpp"

using namespace hda;

namespace {

const std::map<std::string, std::vector<json>>& bools() {
  static const std::map<std::string, std::vector<json>> x{{"c", {false, true}}};
  return x;
}

std::vector<std::pair<std::string, PropPtr>> law_subjects() {
  return {{"I", fx::I()},
          {"T", fx::T()},
          {"T_ab", fx::T2()},
          {"E_Bool", fx::EBool()},
          {"free3", fx::free3()},
          {"operad4", fx::oprop4()},
          {"slice(T)", iterated(fx::T(), 1)},
          {"slice(E_Bool)", iterated(fx::EBool(), 1)}};
}

long long surjections(int n, int m) {
  // Inclusion-exclusion over the missed outputs.
  long long total = 0, binom = 1;
  for (int k = 0; k <= m; ++k) {
    long long pw = 1;
    for (int i = 0; i < n; ++i) pw *= (m - k);
    total += (k % 2 ? -1 : 1) * binom * pw;
    binom = binom * (m - k) / (k + 1);
  }
  return total;
}

}  // namespace

TEST_CASE("PROP laws hold on the standard fixtures") {
  for (const auto& [name, p] : law_subjects()) {
    INFO(name);
    LawOptions o;
    o.samples = 200;
    auto rep = check_prop_laws(*p, o);
    INFO(rep.to_json().dump().substr(0, 2000));
    CHECK(rep.ok());
    std::size_t checked = 0;
    for (const auto& l : rep.laws) checked += l.checked;
    CHECK(checked > 0);
  }
}

TEST_CASE("E_Bool composites agree with composing functions") {
  auto a = make_tautological(fx::EBool(), bools());
  const Prop& E = *fx::EBool();
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    SampleSpec s;
    s.max_arity = 3;
    auto g = *E.sample(rng, s);
    SampleSpec above;
    above.in = g.out();
    above.max_arity = 3;
    auto fo = E.sample(rng, above);
    REQUIRE(fo);
    auto f = *fo;
    auto ts = *all_tuples(*a, g.in());
    for (const auto& t : ts) CHECK(a->act(E.vcomp(f, g), t) == a->act(f, a->act(g, t)));

    auto ho = E.sample(rng, s);
    REQUIRE(ho);
    auto h = *ho;
    Element gh = E.hcomp(g, h);
    auto hts = *all_tuples(*a, gh.in());
    for (const auto& t : hts) {
      Tuple l(t.begin(), t.begin() + long(g.in().size())), r(t.begin() + long(g.in().size()), t.end());
      Tuple out = a->act(g, l), rest = a->act(h, r);
      out.insert(out.end(), rest.begin(), rest.end());
      CHECK(a->act(gh, t) == out);
    }

    Perm sg = Perm::random(int(g.out().size()), rng), tu = Perm::random(int(g.in().size()), rng);
    Element b = E.biact(sg, g, tu);
    CHECK(b.out() == act_left(sg, g.out()));
    CHECK(b.in() == act_right(g.in(), tu));
    // The argument slot i of b feeds slot τ(i) of g.
    auto bts = *all_tuples(*a, b.in());
    for (const auto& t : bts) CHECK(a->act(b, t) == act_left(sg, a->act(g, act_left(tu, t))));
  }
}

TEST_CASE("units act as identities") {
  auto a = make_tautological(fx::EBool(), bools());
  Color c = Color::base("c");
  for (int n = 1; n <= 3; ++n) {
    Element u = fx::EBool()->unit(Profile(std::size_t(n), c));
    auto ts = *all_tuples(*a, u.in());
    for (const auto& t : ts) CHECK(a->act(u, t) == t);
  }
}

TEST_CASE("permutation actions compose") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    int n = 1 + i % 5;
    Perm a = Perm::random(n, rng), b = Perm::random(n, rng);
    std::vector<int> v(std::size_t(n), 0);
    for (int k = 0; k < n; ++k) v[std::size_t(k)] = 10 * k;
    CHECK(act_left(a * b, v) == act_left(a, act_left(b, v)));
    CHECK(act_right(v, a * b) == act_right(act_right(v, a), b));
    CHECK((a * a.inverse()).is_identity());
    CHECK(Perm::from_one_based(a.one_based()) == a);
  }
  CHECK(all_perms(4).size() == 24);
}

TEST_CASE("the terminal operad's PROP counts surjections") {
  const Prop& P = *fx::oprop4();
  Color c = Color::base("c");
  for (int m = 1; m <= 3; ++m)
    for (int n = m; n <= 3; ++n) {
      auto xs = P.enumerate(Profile(std::size_t(m), c), Profile(std::size_t(n), c));
      REQUIRE(xs);
      CHECK(static_cast<long long>(xs->size()) == surjections(n, m));
    }
}

TEST_CASE("T has one element per profile, I only square ones") {
  Color c = Color::base("c");
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      CHECK(fx::T()->enumerate(Profile(std::size_t(m), c), Profile(std::size_t(n), c))->size() == 1);
      CHECK(fx::I()->enumerate(Profile(std::size_t(m), c), Profile(std::size_t(n), c))->size() == (m == n ? 1u : 0u));
    }
}

TEST_CASE("PROP specs round trip") {
  std::vector<PropPtr> ps{fx::T(), fx::T2(), fx::I(), fx::EBool(), fx::free3(), fx::oprop4(),
                          make_weighted({"c"}, 3), make_monomial(bool_maps_monoid()),
                          make_product(fx::T(), make_weighted({"c"}, 2)), iterated(fx::T(), 2)};
  for (const auto& p : ps) {
    json j = p->spec_json();
    INFO(j.dump());
    CHECK(prop_from_spec(j)->spec_json() == j);
  }
  CHECK_THROWS_AS(prop_from_spec(json{{"kind", "nope"}}), Error);
  CHECK_THROWS_AS(prop_from_spec(json{{"kind", "weighted"}}), Error);
}

TEST_CASE("composition rejects mismatched profiles") {
  Color c = Color::base("c");
  Element a = fx::T()->enumerate({c}, {c, c})->front();
  CHECK_THROWS_AS(fx::T()->vcomp(a, a), Error);
  Element x = *fx::free3()->sample(*std::make_unique<Rng>(1), {});
  CHECK_THROWS_AS(fx::T()->hcomp(a, x), Error);
}
