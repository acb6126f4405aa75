#include "hda/integral.hpp"

#include <algorithm>
#include <set>

#include "hda/evaluate.hpp"

namespace hda {

DifferentiatedAlgebra::DifferentiatedAlgebra(PropMap g) : g_(std::move(g)), slice_(iterated(g_.target, 1)) {}

std::vector<json> DifferentiatedAlgebra::carrier(const Color& alpha) const {
  if (!alpha.is_element()) return {};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = fibers_.find(alpha.key());
    if (it != fibers_.end()) return it->second;
  }
  Element a = alpha.element();
  std::vector<Element> pre;
  if (g_.fiber) {
    pre = g_.fiber(a);
  } else {
    auto all = g_.source->enumerate(a.out(), a.in());
    if (!all) throw Error(ErrorKind::Unsupported, "fiber of " + g_.name + " is not enumerable");
    for (const auto& q : *all)
      if (g_.apply(q) == a) pre.push_back(q);
  }
  std::vector<json> vs;
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& q : pre) {
    vs.push_back(q.to_json());
    parsed_.emplace(q.key(), q);
  }
  fibers_[alpha.key()] = vs;
  return vs;
}

Element DifferentiatedAlgebra::fiber_element(const json& v) const {
  std::string k = v.dump();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = parsed_.find(k);
    if (it != parsed_.end()) return it->second;
  }
  Element q = g_.source->parse_element(v);
  std::lock_guard<std::mutex> lock(mu_);
  parsed_.emplace(k, q);
  return q;
}

Tuple DifferentiatedAlgebra::act(const Element& x, const Tuple& args) const {
  const auto& p = x.as<SlicePayload>();
  Tuple out;
  for (std::size_t j = 0; j < p.graphs.size(); ++j) {
    DecoratedGraph dg = p.graphs[j];
    for (std::size_t v = 0; v < dg.deco.size(); ++v)
      dg.deco[v] = fiber_element(args.at(static_cast<std::size_t>(p.slots[j][v])));
    out.push_back(evaluate(*g_.source, dg).to_json());
  }
  return out;
}

std::optional<json> DifferentiatedAlgebra::unit_point(const Element& u) const {
  if (!g_.source->unital()) return std::nullopt;
  Element q = g_.source->unit(u.in());
  if (g_.apply(q) != u) return std::nullopt;
  return q.to_json();
}

AlgebraPtr differentiate(const PropMap& g) { return std::make_shared<DifferentiatedAlgebra>(g); }

IntegralProp::IntegralProp(AlgebraPtr a) : a_(std::move(a)) {
  slice_ = as_slice(*a_->prop());
  if (slice_ == nullptr) throw Error(ErrorKind::Unsupported, "integration needs an algebra over a slice PROP");
  base_ = slice_->base();
  try {
    unital_ = true;
    for (const auto& c : base_->colors())
      if (!a_->unit_point(base_->unit({c}))) unital_ = false;
  } catch (const Error&) {
    unital_ = false;
  }
}

bool IntegralProp::owns(const Element& x) const {
  const auto* p = x.try_as<IntegralPayload>();
  return p != nullptr && base_->owns(p->alpha);
}

bool IntegralProp::contains(const Element& x) const {
  if (!owns(x)) return false;
  const auto& p = x.as<IntegralPayload>();
  return base_->contains(p.alpha) && in_carrier(*a_, Color::of(p.alpha), p.value);
}

Element IntegralProp::make(const Element& alpha, const json& v) const {
  return Element(alpha.out(), alpha.in(), std::make_shared<IntegralPayload>(alpha, v));
}

std::optional<std::vector<Element>> IntegralProp::enumerate(const Profile& out, const Profile& in) const {
  auto as = base_->enumerate(out, in);
  if (!as) return std::nullopt;
  std::vector<Element> r;
  for (const auto& a : *as)
    for (const auto& v : a_->carrier(Color::of(a))) r.push_back(make(a, v));
  return r;
}

std::optional<Element> IntegralProp::sample(Rng& rng, const SampleSpec& spec) const {
  for (int i = 0; i < 20; ++i) {
    auto a = base_->sample(rng, spec);
    if (!a) continue;
    auto vs = a_->carrier(Color::of(*a));
    if (!vs.empty()) return make(*a, pick(rng, vs));
  }
  return std::nullopt;
}

Element IntegralProp::do_hcomp(const Element& x, const Element& y) const {
  const auto& px = x.as<IntegralPayload>();
  const auto& py = y.as<IntegralPayload>();
  Element g = slice_->tensor(px.alpha, py.alpha);
  return make(base_->hcomp(px.alpha, py.alpha), a_->act(g, {px.value, py.value}).at(0));
}

Element IntegralProp::do_vcomp(const Element& x, const Element& y) const {
  const auto& px = x.as<IntegralPayload>();
  const auto& py = y.as<IntegralPayload>();
  Element g = slice_->circ(px.alpha, py.alpha);
  return make(base_->vcomp(px.alpha, py.alpha), a_->act(g, {px.value, py.value}).at(0));
}

Element IntegralProp::do_biact(const Perm& sigma, const Element& x, const Perm& tau) const {
  const auto& px = x.as<IntegralPayload>();
  Element g = slice_->twisted_unit(sigma, px.alpha, tau);
  return make(base_->biact(sigma, px.alpha, tau), a_->act(g, {px.value}).at(0));
}

Element IntegralProp::do_unit(const Profile& c) const {
  Element u = base_->unit(c);
  auto v = a_->unit_point(u);
  if (!v) throw Error(ErrorKind::Unsupported, name() + " has no unit over " + profile_str(c));
  return make(u, *v);
}

Element IntegralProp::parse_payload(const Profile& out, const Profile& in, const json& p) const {
  if (!p.is_object() || !p.contains("over") || !p.contains("value"))
    throw Error(ErrorKind::Schema, "integral payload needs over and value");
  Element a = base_->parse_element(p["over"]);
  if (a.out() != out || a.in() != in) throw Error(ErrorKind::Validation, "integral element profile differs from its base element");
  return make(a, p["value"]);
}

Integral integrate(const AlgebraPtr& a) {
  auto p = std::make_shared<const IntegralProp>(a);
  PropPtr base = p->base();
  PropMap proj{p, base, [](const Element& x) { return x.as<IntegralPayload>().alpha; }, {}, "proj",
               [p](const Element& alpha) {
                 std::vector<Element> r;
                 for (const auto& v : p->algebra()->carrier(Color::of(alpha))) r.push_back(p->make(alpha, v));
                 return r;
               }};
  return {p, proj};
}

namespace {

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

std::vector<Profile> profiles_up_to(const std::vector<Color>& colors, int max_arity) {
  std::vector<Profile> r;
  std::function<void(Profile&)> rec = [&](Profile& cur) {
    if (!cur.empty()) r.push_back(cur);
    if (static_cast<int>(cur.size()) == max_arity) return;
    for (const auto& c : colors) {
      cur.push_back(c);
      rec(cur);
      cur.pop_back();
    }
  };
  Profile cur;
  rec(cur);
  return r;
}

std::optional<Element> sample_with(const Prop& p, Rng& rng, int max_arity, std::optional<Profile> in = {}) {
  for (int i = 0; i < 20; ++i) {
    SampleSpec s;
    s.max_arity = max_arity;
    s.in = in;
    if (auto x = p.sample(rng, s)) return x;
  }
  return std::nullopt;
}

}  // namespace

LawReport check_integrate_differentiate(const PropMap& g, const RoundTripOptions& opt) {
  LawReport rep;
  rep.subject = "int(d(" + g.source->name() + "))";
  rep.mode = "bounded";
  auto A = differentiate(g);
  Integral in = integrate(A);
  const Prop& Q = *g.source;
  const IntegralProp& J = *in.prop;
  auto iso = [&](const Element& q) { return J.make(g.apply(q), q.to_json()); };
  for (const char* l : {"bijection", "hcomp", "vcomp", "biact", "unit"}) rep.at(l);
  auto profiles = profiles_up_to(Q.colors(), opt.max_arity);
  for (const auto& out : profiles)
    for (const auto& inp : profiles)
      record(rep.at("bijection"), [&]() -> std::optional<json> {
        auto qs = Q.enumerate(out, inp);
        auto js = J.enumerate(out, inp);
        if (!qs || !js) throw Error(ErrorKind::Unsupported, "component is not enumerable");
        std::set<std::string> image, target;
        for (const auto& q : *qs) image.insert(iso(q).key());
        for (const auto& x : *js) target.insert(x.key());
        if (image == target && image.size() == qs->size()) return std::nullopt;
        return json{{"out", profile_json(out)}, {"in", profile_json(inp)}, {"source", qs->size()}, {"target", js->size()}};
      });
  Rng rng(opt.seed);
  for (int i = 0; i < opt.samples; ++i) {
    auto x = sample_with(Q, rng, opt.max_arity);
    auto y = sample_with(Q, rng, opt.max_arity);
    if (!x || !y) continue;
    record(rep.at("hcomp"), [&] { return differ(iso(Q.hcomp(*x, *y)), J.hcomp(iso(*x), iso(*y)), {{"x", x->to_json()}, {"y", y->to_json()}}); });
    if (auto z = sample_with(Q, rng, opt.max_arity, x->out()))
      record(rep.at("vcomp"), [&] { return differ(iso(Q.vcomp(*z, *x)), J.vcomp(iso(*z), iso(*x)), {{"x", z->to_json()}, {"y", x->to_json()}}); });
    Perm s = Perm::random(static_cast<int>(x->out().size()), rng), t = Perm::random(static_cast<int>(x->in().size()), rng);
    record(rep.at("biact"), [&] { return differ(iso(Q.biact(s, *x, t)), J.biact(s, iso(*x), t), {{"x", x->to_json()}}); });
    if (Q.unital()) record(rep.at("unit"), [&] { return differ(iso(Q.unit(x->in())), J.unit(x->in()), {{"c", profile_json(x->in())}}); });
  }
  return rep;
}

LawReport check_differentiate_integrate(const AlgebraPtr& a, const RoundTripOptions& opt) {
  LawReport rep;
  rep.subject = "d(int(" + a->name() + "))";
  rep.mode = "bounded";
  Integral in = integrate(a);
  auto D = differentiate(in.projection);
  const SliceProp& S = *as_slice(*a->prop());
  const IntegralProp& J = *in.prop;
  for (const char* l : {"fiber-bijection", "action"}) rep.at(l);
  auto back = [&](const json& v) { return J.parse_element(v).as<IntegralPayload>().value; };
  auto check_fiber = [&](const Color& alpha) {
    record(rep.at("fiber-bijection"), [&]() -> std::optional<json> {
      std::vector<json> lhs, rhs = a->carrier(alpha);
      for (const auto& v : D->carrier(alpha)) {
        if (J.parse_element(v).as<IntegralPayload>().alpha != alpha.element()) return json{{"alpha", alpha.to_json()}, {"stray", v}};
        lhs.push_back(back(v));
      }
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      if (lhs == rhs) return std::nullopt;
      return json{{"alpha", alpha.to_json()}, {"lhs", lhs}, {"rhs", rhs}};
    });
  };
  try {
    for (const auto& out : profiles_up_to(S.base()->colors(), opt.max_arity))
      for (const auto& inp : profiles_up_to(S.base()->colors(), opt.max_arity))
        if (auto xs = S.base()->enumerate(out, inp))
          for (const auto& x : *xs) check_fiber(Color::of(x));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unsupported) throw;
  }
  Rng rng(opt.seed);
  for (int i = 0; i < opt.samples; ++i) {
    auto x = sample_with(S, rng, opt.max_arity);
    if (!x) continue;
    for (const auto& c : x->in()) check_fiber(c);
    auto ts = all_tuples(*a, x->in(), 64);
    if (!ts) continue;
    for (const auto& t : *ts)
      record(rep.at("action"), [&]() -> std::optional<json> {
        Tuple lifted;
        for (std::size_t k = 0; k < t.size(); ++k) lifted.push_back(J.make(x->in()[k].element(), t[k]).to_json());
        Tuple lhs;
        for (const auto& v : D->act(*x, lifted)) lhs.push_back(back(v));
        Tuple rhs = a->act(*x, t);
        if (lhs == rhs) return std::nullopt;
        return json{{"x", x->to_json()}, {"args", t}, {"lhs", lhs}, {"rhs", rhs}};
      });
  }
  return rep;
}

}  // namespace hda
