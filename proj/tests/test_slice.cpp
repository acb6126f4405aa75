#include <doctest.h>

#include "fixtures.hpp"

using namespace hda;

namespace {

Element sample_with_in(const Prop& p, Rng& rng, const Profile& in) {
  SampleSpec s;
  s.in = in;
  for (int i = 0; i < 50; ++i)
    if (auto x = p.sample(rng, s)) return *x;
  FAIL("no sample");
  return {};
}

// Three-vertex chain γ over β over α with inputs (γ, β, α), built directly.
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

}  // namespace

TEST_CASE("slice units are one-vertex graphs") {
  const auto& s = fx::slice_of(fx::T());
  Rng rng(1);
  auto a = *fx::T()->sample(rng, {});
  Element u = s.unit({Color::of(a)});
  const auto& p = u.as<SlicePayload>();
  REQUIRE(p.graphs.size() == 1);
  CHECK(p.graphs[0] == unit_graph(a));
  CHECK(validate_slice_element(s, u).ok());
}

TEST_CASE("special elements evaluate to the matching composite") {
  for (auto P : {fx::T(), fx::EBool(), PropPtr(fx::free3())}) {
    const auto& s = fx::slice_of(P);
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
      auto a = *P->sample(rng, {});
      auto b = *P->sample(rng, {});
      Element t = s.tensor(a, b);
      CHECK(t.out()[0].element() == P->hcomp(a, b));
      SampleSpec above;
      above.in = a.out();
      if (auto c = P->sample(rng, above)) CHECK(s.circ(*c, a).out()[0].element() == P->vcomp(*c, a));
      Perm sg = Perm::random(static_cast<int>(a.out().size()), rng);
      Perm tu = Perm::random(static_cast<int>(a.in().size()), rng);
      CHECK(s.twisted_unit(sg, a, tu).out()[0].element() == P->biact(sg, a, tu));
    }
  }
}

TEST_CASE("twisted unit with identities is the unit") {
  const auto& s = fx::slice_of(fx::EBool());
  Rng rng(3);
  auto a = *fx::EBool()->sample(rng, {});
  CHECK(s.twisted_unit(Perm::identity(int(a.out().size())), a, Perm::identity(int(a.in().size()))) ==
        s.unit({Color::of(a)}));
}

TEST_CASE("declared output must match the evaluation") {
  const auto& s = fx::slice_of(fx::EBool());
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    auto a = *fx::EBool()->sample(rng, {});
    auto b = *fx::EBool()->sample(rng, {});
    Element t = s.tensor(a, b);
    const auto& p = t.as<SlicePayload>();
    Element bogus(Profile{Color::of(a)}, t.in(), t.payload_ptr());
    if (a != fx::EBool()->hcomp(a, b)) CHECK_FALSE(validate_slice_element(s, bogus).ok());
    CHECK(validate_slice_element(s, t).ok());
    CHECK(p.graphs.size() == 1);
  }
}

TEST_CASE("vcomp with the unit tensor realizes the three-vertex chain") {
  for (auto P : {fx::T(), fx::EBool()}) {
    const auto& s = fx::slice_of(P);
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      auto a = *P->sample(rng, {});
      auto b = sample_with_in(*P, rng, a.out());
      auto g = sample_with_in(*P, rng, b.out());
      Element lhs = s.vcomp(s.circ(g, P->vcomp(b, a)), s.hcomp(s.unit({Color::of(g)}), s.circ(b, a)));
      CHECK(lhs == chain3(s, g, b, a));
    }
  }
}

TEST_CASE("bookkeeping round-trips through the file form") {
  const auto& s = fx::slice_of(fx::EBool());
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    auto x = *s.sample(rng, {});
    CHECK(s.parse_file(s.file_json(x)) == x);
    CHECK(s.parse_element(x.to_json()) == x);
  }
}

TEST_CASE("slice PROP laws on samples") {
  for (auto P : {fx::T(), fx::EBool(), fx::I(), PropPtr(fx::free3())}) {
    LawOptions o;
    o.samples = 200;
    auto rep = check_prop_laws(*iterated(P, 1), o);
    INFO(rep.to_json().dump());
    CHECK(rep.ok());
    for (const auto& l : rep.laws) CHECK(l.checked > 0);
  }
}
