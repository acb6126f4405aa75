#include "hda/laws.hpp"

#include <functional>

namespace hda {

bool LawReport::ok() const {
  for (const auto& l : laws)
    if (!l.pass) return false;
  return true;
}

json LawReport::first_failure() const {
  for (const auto& l : laws)
    if (!l.pass) return {{"law", l.law}, {"witness", l.witness ? *l.witness : json()}};
  return json();
}

json LawReport::to_json() const {
  json j = {{"subject", subject}, {"mode", mode}, {"ok", ok()}, {"laws", json::array()}};
  for (const auto& l : laws) {
    json e = {{"law", l.law}, {"pass", l.pass}, {"checked", l.checked}, {"skipped", l.skipped}};
    if (l.witness) e["witness"] = *l.witness;
    j["laws"].push_back(e);
  }
  return j;
}

LawResult& LawReport::at(const std::string& law) {
  for (auto& l : laws)
    if (l.law == law) return l;
  laws.push_back(LawResult{law, true, 0, 0, std::nullopt});
  return laws.back();
}

namespace {

// Records one law instance; an Undefined error (truncation) counts as skipped.
void record(LawResult& r, const std::function<std::optional<json>()>& check) {
  if (!r.pass) return;
  try {
    auto w = check();
    ++r.checked;
    if (w) {
      r.pass = false;
      r.witness = *w;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Undefined) {
      ++r.skipped;
      return;
    }
    r.pass = false;
    r.witness = json{{"error", e.what()}};
  }
}

std::optional<json> differ(const Element& a, const Element& b, json ctx) {
  if (a == b) return std::nullopt;
  ctx["lhs"] = a.to_json();
  ctx["rhs"] = b.to_json();
  return ctx;
}

const char* kLaws[] = {"biact-identity",       "biact-functoriality", "vcomp-associativity",
                       "hcomp-associativity",  "interchange",         "unit-left",
                       "unit-right",           "unit-tensor",         "vcomp-equivariance-inner",
                       "vcomp-equivariance-outer", "hcomp-equivariance"};

struct Checks {
  const Prop& p;
  LawReport& rep;

  void biact_identity(const Element& x) {
    record(rep.at("biact-identity"), [&] {
      return differ(p.biact(Perm::identity(int(x.out().size())), x, Perm::identity(int(x.in().size()))), x,
                    {{"x", x.to_json()}});
    });
  }
  void biact_functoriality(const Element& x, const Perm& s1, const Perm& s2, const Perm& t1, const Perm& t2) {
    record(rep.at("biact-functoriality"), [&] {
      return differ(p.biact(s2 * s1, x, t1 * t2), p.biact(s2, p.biact(s1, x, t1), t2),
                    {{"x", x.to_json()}, {"sigma", s1.one_based()}, {"sigma2", s2.one_based()},
                     {"tau", t1.one_based()}, {"tau2", t2.one_based()}});
    });
  }
  void vassoc(const Element& x, const Element& y, const Element& z) {
    record(rep.at("vcomp-associativity"), [&] {
      return differ(p.vcomp(p.vcomp(x, y), z), p.vcomp(x, p.vcomp(y, z)),
                    {{"x", x.to_json()}, {"y", y.to_json()}, {"z", z.to_json()}});
    });
  }
  void hassoc(const Element& x, const Element& y, const Element& z) {
    record(rep.at("hcomp-associativity"), [&] {
      return differ(p.hcomp(p.hcomp(x, y), z), p.hcomp(x, p.hcomp(y, z)),
                    {{"x", x.to_json()}, {"y", y.to_json()}, {"z", z.to_json()}});
    });
  }
  void interchange(const Element& x1, const Element& x2, const Element& y1, const Element& y2) {
    record(rep.at("interchange"), [&] {
      return differ(p.hcomp(p.vcomp(x1, x2), p.vcomp(y1, y2)), p.vcomp(p.hcomp(x1, y1), p.hcomp(x2, y2)),
                    {{"x1", x1.to_json()}, {"x2", x2.to_json()}, {"y1", y1.to_json()}, {"y2", y2.to_json()}});
    });
  }
  void units(const Element& x) {
    if (!p.unital()) return;
    record(rep.at("unit-left"), [&] { return differ(p.vcomp(p.unit(x.out()), x), x, {{"x", x.to_json()}}); });
    record(rep.at("unit-right"), [&] { return differ(p.vcomp(x, p.unit(x.in())), x, {{"x", x.to_json()}}); });
  }
  void unit_tensor(const Profile& c, const Profile& d) {
    if (!p.unital()) return;
    record(rep.at("unit-tensor"), [&] {
      return differ(p.hcomp(p.unit(c), p.unit(d)), p.unit(concat(c, d)),
                    {{"c", profile_json(c)}, {"d", profile_json(d)}});
    });
  }
  // (1;τ⁻¹)x ∘ (τ;1)y = x ∘ y
  void veq_inner(const Element& x, const Element& y, const Perm& t) {
    record(rep.at("vcomp-equivariance-inner"), [&] {
      int m = int(x.out().size()), n = int(y.in().size());
      return differ(p.vcomp(p.biact(Perm::identity(m), x, t.inverse()), p.biact(t, y, Perm::identity(n))),
                    p.vcomp(x, y), {{"x", x.to_json()}, {"y", y.to_json()}, {"tau", t.one_based()}});
    });
  }
  // (σ;1)x ∘ (1;μ)y = (σ;μ)(x ∘ y)
  void veq_outer(const Element& x, const Element& y, const Perm& s, const Perm& mu) {
    record(rep.at("vcomp-equivariance-outer"), [&] {
      int k = int(x.in().size());
      return differ(p.vcomp(p.biact(s, x, Perm::identity(k)), p.biact(Perm::identity(k), y, mu)),
                    p.biact(s, p.vcomp(x, y), mu),
                    {{"x", x.to_json()}, {"y", y.to_json()}, {"sigma", s.one_based()}, {"mu", mu.one_based()}});
    });
  }
  // (σ1;τ1)x ⊗ (σ2;τ2)y = (σ1⊕σ2; τ1⊕τ2)(x ⊗ y)
  void heq(const Element& x, const Element& y, const Perm& s1, const Perm& t1, const Perm& s2, const Perm& t2) {
    record(rep.at("hcomp-equivariance"), [&] {
      return differ(p.hcomp(p.biact(s1, x, t1), p.biact(s2, y, t2)),
                    p.biact(Perm::block_sum(s1, s2), p.hcomp(x, y), Perm::block_sum(t1, t2)),
                    {{"x", x.to_json()}, {"y", y.to_json()}});
    });
  }
};

LawReport new_report(const Prop& p, const char* mode) {
  LawReport rep;
  rep.subject = p.name();
  rep.mode = mode;
  for (const char* l : kLaws) {
    if (!p.unital() && std::string(l).rfind("unit", 0) == 0) continue;
    rep.laws.push_back(LawResult{l, true, 0, 0, std::nullopt});
  }
  return rep;
}

LawReport exhaustive(const Prop& p, const std::vector<Element>& all) {
  LawReport rep = new_report(p, "exhaustive");
  Checks c{p, rep};
  for (const auto& x : all) {
    c.biact_identity(x);
    c.units(x);
    auto so = all_perms(int(x.out().size()));
    auto ti = all_perms(int(x.in().size()));
    for (const auto& s1 : so)
      for (const auto& s2 : so)
        for (const auto& t1 : ti)
          for (const auto& t2 : ti) c.biact_functoriality(x, s1, s2, t1, t2);
  }
  for (const auto& x : all)
    for (const auto& y : all) {
      c.unit_tensor(x.in(), y.in());
      for (const auto& s1 : all_perms(int(x.out().size())))
        for (const auto& t2 : all_perms(int(y.in().size())))
          c.heq(x, y, s1, Perm::identity(int(x.in().size())), Perm::identity(int(y.out().size())), t2);
      if (x.in() != y.out()) continue;
      for (const auto& t : all_perms(int(y.out().size()))) c.veq_inner(x, y, t);
      for (const auto& s : all_perms(int(x.out().size())))
        for (const auto& mu : all_perms(int(y.in().size()))) c.veq_outer(x, y, s, mu);
    }
  for (const auto& x : all)
    for (const auto& y : all)
      for (const auto& z : all) {
        c.hassoc(x, y, z);
        if (x.in() == y.out() && y.in() == z.out()) c.vassoc(x, y, z);
      }
  for (const auto& x1 : all)
    for (const auto& x2 : all) {
      if (x1.in() != x2.out()) continue;
      for (const auto& y1 : all)
        for (const auto& y2 : all)
          if (y1.in() == y2.out()) c.interchange(x1, x2, y1, y2);
    }
  return rep;
}

struct Sampler {
  const Prop& p;
  Rng& rng;
  int max_arity;

  std::optional<Element> free() {
    for (int i = 0; i < 20; ++i) {
      SampleSpec s;
      s.max_arity = max_arity;
      auto x = p.sample(rng, s);
      if (x) return x;
    }
    return std::nullopt;
  }
  // Element whose in-profile is fixed.
  std::optional<Element> above(const Profile& in) {
    for (int i = 0; i < 20; ++i) {
      SampleSpec s;
      s.max_arity = max_arity;
      s.in = in;
      auto x = p.sample(rng, s);
      if (x) return x;
    }
    return std::nullopt;
  }
};

LawReport sampled(const Prop& p, const LawOptions& opt) {
  LawReport rep = new_report(p, "sampled");
  Checks c{p, rep};
  Rng rng(opt.seed);
  Sampler s{p, rng, opt.max_arity};
  auto rp = [&](const Profile& prof) { return Perm::random(int(prof.size()), rng); };
  for (int i = 0; i < opt.samples; ++i) {
    auto x = s.free();
    auto y = s.free();
    if (!x || !y) continue;
    c.biact_identity(*x);
    c.biact_functoriality(*x, rp(x->out()), rp(x->out()), rp(x->in()), rp(x->in()));
    c.units(*x);
    c.unit_tensor(x->in(), y->out());
    c.heq(*x, *y, rp(x->out()), rp(x->in()), rp(y->out()), rp(y->in()));
    c.hassoc(*x, *y, *x);

    // Composable chain z ← y2 ← x2.
    auto z = s.free();
    if (!z) continue;
    auto y2 = s.above(z->out());
    if (!y2) continue;
    auto x2 = s.above(y2->out());
    if (x2) c.vassoc(*x2, *y2, *z);
    c.veq_inner(*y2, *z, rp(z->out()));
    c.veq_outer(*y2, *z, rp(y2->out()), rp(z->in()));

    auto b1 = s.free();
    if (!b1) continue;
    auto a1 = s.above(b1->out());
    if (!a1) continue;
    c.interchange(*y2, *z, *a1, *b1);
  }
  return rep;
}

}  // namespace

LawReport check_prop_laws(const Prop& p, const LawOptions& opt) {
  auto all = p.all_elements();
  if (all && all->size() <= opt.exhaustive_limit) return exhaustive(p, *all);
  return sampled(p, opt);
}

LawReport check_prop_map(const PropMap& f, const LawOptions& opt) {
  LawReport rep;
  rep.subject = f.name;
  rep.mode = "sampled";
  const Prop& P = *f.source;
  const Prop& Q = *f.target;
  Rng rng(opt.seed);
  Sampler s{P, rng, opt.max_arity};
  for (const char* l : {"preserves-profiles", "preserves-hcomp", "preserves-vcomp", "preserves-biact"})
    rep.laws.push_back(LawResult{l, true, 0, 0, std::nullopt});
  if (P.unital()) rep.laws.push_back(LawResult{"preserves-units", true, 0, 0, std::nullopt});
  auto& lp = rep.laws[0];
  auto& lh = rep.laws[1];
  auto& lv = rep.laws[2];
  auto& lb = rep.laws[3];
  LawResult* lu = P.unital() ? &rep.laws[4] : nullptr;
  for (int i = 0; i < opt.samples; ++i) {
    auto x = s.free();
    auto y = s.free();
    if (!x || !y) continue;
    record(lp, [&]() -> std::optional<json> {
      Element fx = f.apply(*x);
      if (!Q.contains(fx) || fx.out() != f.profile(x->out()) || fx.in() != f.profile(x->in()))
        return json{{"x", x->to_json()}};
      return std::nullopt;
    });
    record(lh, [&] { return differ(f.apply(P.hcomp(*x, *y)), Q.hcomp(f.apply(*x), f.apply(*y)), {{"x", x->to_json()}, {"y", y->to_json()}}); });
    Perm sg = Perm::random(int(x->out().size()), rng), tu = Perm::random(int(x->in().size()), rng);
    record(lb, [&] { return differ(f.apply(P.biact(sg, *x, tu)), Q.biact(sg, f.apply(*x), tu), {{"x", x->to_json()}}); });
    if (lu) record(*lu, [&] { return differ(f.apply(P.unit(x->in())), Q.unit(f.profile(x->in())), {{"c", profile_json(x->in())}}); });
    auto z = s.above(x->out());
    if (z) record(lv, [&] { return differ(f.apply(P.vcomp(*z, *x)), Q.vcomp(f.apply(*z), f.apply(*x)), {{"x", z->to_json()}, {"y", x->to_json()}}); });
  }
  return rep;
}

}  // namespace hda
