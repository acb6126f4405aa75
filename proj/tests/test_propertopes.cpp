#include <doctest.h>

#include <hda/metagraph.hpp>
#include <hda/propertope.hpp>

#include "fixtures.hpp"

using namespace hda;

namespace {

Element t_elem(int out, int in) {
  Color c = Color::base("c");
  return fx::T()->enumerate(Profile(std::size_t(out), c), Profile(std::size_t(in), c))->front();
}

struct Rocket {
  Element alpha, beta, gamma, x, y;
  Propertope g;
};

Rocket rocket() {
  Rocket r;
  r.alpha = t_elem(4, 1);
  r.beta = t_elem(2, 4);
  r.gamma = t_elem(3, 2);
  const auto& s1 = fx::slice_of(fx::T());
  const auto& s2 = *as_slice(*iterated(fx::T(), 2));
  r.x = s1.circ(r.gamma, fx::T()->vcomp(r.beta, r.alpha));
  r.y = s1.hcomp(s1.unit({Color::of(r.gamma)}), s1.circ(r.beta, r.alpha));
  r.g = Color::of(s2.circ(r.x, r.y));
  return r;
}

// Face paths of length ≤ depth from g.
void paths(const Propertope& g, int depth, std::vector<Face>& cur, std::vector<std::vector<Face>>& out) {
  out.push_back(cur);
  if (depth == 0) return;
  for (const auto& f : faces(g)) {
    cur.push_back(f);
    paths(face_target(g, f), depth - 1, cur, out);
    cur.pop_back();
  }
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
  // One level up: specials built from dimension-2 specials.
  std::size_t k = out.size();
  for (std::size_t i = 0; i + 1 < k; i += 3) {
    out.push_back(cat.tensor(out[i], out[i + 1]));
    out.push_back(cat.unit_tensor({out[i]}));
  }
  return out;
}

}  // namespace

TEST_CASE("faces of an element list inputs then outputs") {
  Propertope g = Color::of(t_elem(1, 2));
  auto fs = faces(g);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].str() == "in1");
  CHECK(fs[2].str() == "out1");
  CHECK(Face::parse("out2") == Face::out(1));
  for (const auto& f : fs) CHECK(face_target(g, f) == Color::base("c"));
  CHECK(faces(Color::base("c")).empty());
}

TEST_CASE("faces of G_{a∘b} are the vertices and the composite") {
  PropertopeCategory cat(fx::T());
  Element a = t_elem(1, 2), b = t_elem(2, 3);
  Propertope g = cat.circ(Color::of(a), Color::of(b));
  CHECK(g.dim() == 2);
  CHECK(face_target(g, Face::in(0)).element() == a);
  CHECK(face_target(g, Face::in(1)).element() == b);
  CHECK(face_target(g, Face::out(0)).element() == fx::T()->vcomp(a, b));
  Shape s = cat.shape(g);
  CHECK(s.circ);
  CHECK_FALSE(s.tensor);
}

TEST_CASE("shape recognition") {
  PropertopeCategory cat(fx::EBool());
  Rng rng(11);
  auto a = *cat.random(1, rng, 2);
  auto b = *cat.random(1, rng, 2);
  CHECK(cat.shape(cat.tensor(a, b)).tensor);
  CHECK(cat.shape(cat.unit_tensor({a})).unit_tensor);
  int m = int(a.element().out().size()), n = int(a.element().in().size());
  if (m > 1 || n > 1) {
    Perm s = Perm::random(m, rng), t = Perm::random(n, rng);
    while (s.is_identity() && t.is_identity()) {
      s = Perm::random(m, rng);
      t = Perm::random(n, rng);
    }
    Shape sh = cat.shape(cat.twisted(s, a, t));
    CHECK(sh.twisted);
    CHECK(sh.sigma == s);
    CHECK(sh.tau == t);
  }
}

TEST_CASE("root relations have equal targets") {
  for (auto P : {fx::T(), fx::EBool()}) {
    PropertopeCategory cat(P);
    Rng rng(5);
    for (const auto& g : specials(cat, rng)) {
      CHECK(cat.validate(g).ok());
      CHECK_FALSE(cat.relations(g).empty());
      for (const auto& r : cat.relations(g)) CHECK(Chain{g, r.lhs}.target() == Chain{g, r.rhs}.target());
    }
  }
}

TEST_CASE("chain_equal certifies special squares at depth cap 6") {
  for (auto P : {fx::T(), fx::EBool()}) {
    PropertopeCategory cat(P);
    Rng rng(21);
    int certified = 0;
    for (const auto& g : specials(cat, rng)) {
      // Squares at g, extended below and reached from g through any prefix.
      std::vector<std::vector<Face>> pre;
      std::vector<Face> cur;
      paths(g, 1, cur, pre);
      for (const auto& p : pre) {
        Propertope at = Chain{g, p}.target();
        for (const auto& r : cat.relations(at)) {
          auto l = p, rr = p;
          l.insert(l.end(), r.lhs.begin(), r.lhs.end());
          rr.insert(rr.end(), r.rhs.begin(), r.rhs.end());
          CHECK(cat.chain_equal({g, l}, {g, rr}, 6) == Verdict::Equal);
          ++certified;
          Propertope t = Chain{g, l}.target();
          for (const auto& f : faces(t)) {
            auto l2 = l, r2 = rr;
            l2.push_back(f);
            r2.push_back(f);
            CHECK(cat.chain_equal({g, l2}, {g, r2}, 6) == Verdict::Equal);
          }
        }
      }
    }
    CHECK(certified > 20);
  }
}

TEST_CASE("chain_equal separates unrelated paths") {
  PropertopeCategory cat(fx::T());
  Element a = t_elem(1, 2), b = t_elem(2, 1);
  Propertope g = cat.circ(Color::of(a), Color::of(b));
  // in1 of the top vertex is an interior edge; the composite has no such face.
  CHECK(cat.chain_equal({g, {Face::in(0), Face::in(0)}}, {g, {Face::out(0), Face::in(0)}}, 6) == Verdict::Distinct);
  CHECK(cat.chain_equal({g, {Face::in(1), Face::in(0)}}, {g, {Face::out(0), Face::in(0)}}, 6) == Verdict::Equal);
  CHECK(cat.chain_equal({g, {Face::in(0)}}, {g, {Face::in(0), Face::in(0)}}, 6) == Verdict::Distinct);
}

TEST_CASE("rocket metagraph levels") {
  Rocket r = rocket();
  CHECK(r.g.dim() == 3);
  json m = encode_metagraph(r.g);
  const auto& L = m["levels"];
  REQUIRE(L.size() == 3);
  REQUIRE(L[2].size() == 1);
  REQUIRE(L[2][0].size() == 1);
  CHECK(L[2][0][0]["labels"].size() == 2);
  REQUIRE(L[1].size() == 2);
  CHECK(L[1][0].size() == 1);
  CHECK(L[1][1].size() == 2);
  std::vector<Element> bottom{r.gamma, fx::T()->vcomp(r.beta, r.alpha), r.gamma, r.beta, r.alpha};
  REQUIRE(L[0].size() == bottom.size());
  for (std::size_t i = 0; i < bottom.size(); ++i) CHECK(fx::T()->parse_element(L[0][i]) == bottom[i]);
  Propertope back = decode_metagraph(m, fx::T());
  CHECK(back == r.g);
  CHECK(encode_metagraph(back).dump() == m.dump());
}

TEST_CASE("metagraph round trip on random propertopes over T") {
  PropertopeCategory cat(fx::T());
  Rng rng(99);
  std::vector<Propertope> gs{rocket().g};
  for (int i = 0; gs.size() < 100 && i < 1000; ++i)
    if (auto g = cat.random(i % 4, rng, 2)) gs.push_back(*g);
  REQUIRE(gs.size() == 100);
  for (const auto& g : gs) {
    std::string s = encode_metagraph(g).dump();
    Propertope back = decode_metagraph(json::parse(s), fx::T());
    CHECK(back == g);
    CHECK(encode_metagraph(back).dump() == s);
  }
}

TEST_CASE("metagraph decode errors name the position") {
  json m = encode_metagraph(rocket().g);
  auto message = [&](const json& bad) {
    try {
      decode_metagraph(bad, fx::T());
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  json a = m;
  a["levels"][0].erase(4);
  CHECK(message(a).find("levels[0]") != std::string::npos);
  json b = m;
  b["levels"][1][1][0]["labels"] = {1, 1};
  CHECK(message(b).find("levels[1][1]") != std::string::npos);
  json c = m;
  c["levels"].erase(0);
  CHECK(message(c).find("levels") != std::string::npos);
  json d = m;
  d["levels"][0].push_back(d["levels"][0][0]);
  CHECK(message(d).find("unused") != std::string::npos);
}

TEST_CASE("transport commutes with faces") {
  PropMap iota = map_to_terminal(fx::I(), fx::T());
  PropertopeCategory cat(fx::I());
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    auto g = cat.random(1 + i % 3, rng, 2);
    if (!g) continue;
    Propertope h = transport(iota, *g);
    CHECK(h.dim() == g->dim());
    auto fs = faces(*g);
    REQUIRE(fs.size() == faces(h).size());
    for (const auto& f : fs) CHECK(transport(iota, face_target(*g, f)) == face_target(h, f));
  }
  PropertopeCategory tc(fx::T());
  PropMap id = identity_map(fx::T());
  for (int i = 0; i < 10; ++i)
    if (auto g = tc.random(1 + i % 3, rng, 2)) CHECK(transport(id, *g) == *g);
}
