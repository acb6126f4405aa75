#include "hda/algebra.hpp"

#include <algorithm>

#include "hda/builtin.hpp"

namespace hda {

std::optional<json> Algebra::unit_point(const Element&) const { return std::nullopt; }

bool in_carrier(const Algebra& a, const Color& c, const json& v) {
  auto vs = a.carrier(c);
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

Tuple algebra_act(const Algebra& a, const Element& x, const Tuple& args) {
  if (!a.prop()->owns(x)) throw Error(ErrorKind::Owner, "element is not in " + a.prop()->name());
  if (args.size() != x.in().size())
    throw Error(ErrorKind::Arity, "expected " + std::to_string(x.in().size()) + " arguments, got " +
                                      std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!in_carrier(a, x.in()[i], args[i]))
      throw Error(ErrorKind::Validation, "argument " + std::to_string(i + 1) + " " + args[i].dump() +
                                             " is not in the carrier over " + x.in()[i].name());
  Tuple r = a.act(x, args);
  if (r.size() != x.out().size()) throw Error(ErrorKind::Arity, "action returned the wrong number of outputs");
  return r;
}

std::optional<std::vector<Tuple>> all_tuples(const Algebra& a, const Profile& p, std::size_t cap) {
  std::vector<std::vector<json>> fibers;
  std::size_t total = 1;
  for (const auto& c : p) {
    fibers.push_back(a.carrier(c));
    total *= fibers.back().size();
    if (total > cap) return std::nullopt;
  }
  std::vector<Tuple> out;
  out.reserve(total);
  Tuple cur(p.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == p.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& v : fibers[i]) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<json> TableAlgebra::carrier(const Color& c) const {
  auto it = carrier_.find(c.key());
  return it == carrier_.end() ? std::vector<json>{} : it->second;
}

Tuple TableAlgebra::act(const Element& x, const Tuple& args) const {
  auto it = rows_.find(x.key());
  if (it == rows_.end()) throw Error(ErrorKind::Undefined, name_ + " has no table for " + x.key().substr(0, 120));
  auto r = it->second.find(json(args).dump());
  if (r == it->second.end()) throw Error(ErrorKind::Undefined, name_ + " has no row for " + json(args).dump());
  return r->second;
}

void TableAlgebra::set_carrier(const Color& c, std::vector<json> values) { carrier_[c.key()] = std::move(values); }

void TableAlgebra::set(const Element& x, const Tuple& args, const Tuple& result) {
  elems_.emplace(x.key(), x);
  rows_[x.key()][json(args).dump()] = result;
}

std::vector<Element> TableAlgebra::tabulated() const {
  std::vector<Element> r;
  for (const auto& [k, e] : elems_) r.push_back(e);
  return r;
}

std::size_t TableAlgebra::row_count() const {
  std::size_t n = 0;
  for (const auto& [k, rows] : rows_) n += rows.size();
  return n;
}

json TableAlgebra::to_json() const {
  json carrier = json::array();
  for (const auto& [k, vs] : carrier_) carrier.push_back({{"color", json::parse(k)}, {"values", vs}});
  json tables = json::array();
  for (const auto& [k, rows] : rows_) {
    json rs = json::array();
    for (const auto& [a, r] : rows) rs.push_back({json::parse(a), r});
    tables.push_back({{"x", elems_.at(k).to_json()}, {"rows", rs}});
  }
  json j = {{"type", "algebra"}, {"kind", "table"}, {"name", name_}, {"carrier", carrier}, {"tables", tables}};
  try {
    j["prop"] = p_->spec_json();
  } catch (const Error&) {
  }
  return j;
}

std::shared_ptr<TableAlgebra> TableAlgebra::from_json(const json& j, PropPtr p) {
  if (!j.is_object() || !j.contains("carrier") || !j.contains("tables"))
    throw Error(ErrorKind::Schema, "table algebra needs carrier and tables");
  auto a = std::make_shared<TableAlgebra>(j.value("name", std::string("A")), p);
  for (const auto& c : j["carrier"]) {
    if (!c.contains("color") || !c.contains("values") || !c["values"].is_array())
      throw Error(ErrorKind::Schema, "carrier entries need color and values");
    a->set_carrier(p->parse_color(c["color"]), c["values"].get<std::vector<json>>());
  }
  for (const auto& t : j["tables"]) {
    if (!t.contains("x") || !t.contains("rows")) throw Error(ErrorKind::Schema, "tables need x and rows");
    Element x = p->parse_element(t["x"]);
    for (const auto& row : t["rows"]) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_array() || !row[1].is_array())
        throw Error(ErrorKind::Schema, "table rows are [args, result] pairs");
      Tuple args = row[0].get<Tuple>(), res = row[1].get<Tuple>();
      if (args.size() != x.in().size() || res.size() != x.out().size())
        throw Error(ErrorKind::Arity, "table row arity differs from the element's profile");
      a->set(x, args, res);
    }
  }
  return a;
}

std::shared_ptr<TableAlgebra> TableAlgebra::tabulate(const Algebra& src, const std::vector<Element>& xs) {
  auto a = std::make_shared<TableAlgebra>(src.name(), src.prop());
  for (const auto& x : xs) {
    for (const auto& prof : {x.in(), x.out()})
      for (const auto& c : prof) a->set_carrier(c, src.carrier(c));
    auto ts = all_tuples(src, x.in());
    if (!ts) throw Error(ErrorKind::Cap, "too many argument tuples to tabulate");
    for (const auto& t : *ts) a->set(x, t, src.act(x, t));
  }
  return a;
}

std::vector<Element> bounded_elements(const Prop& p, int max_arity, std::size_t cap) {
  auto colors = p.colors();
  std::vector<Profile> profiles;
  std::function<void(Profile&)> rec = [&](Profile& cur) {
    if (!cur.empty()) profiles.push_back(cur);
    if (static_cast<int>(cur.size()) == max_arity) return;
    for (const auto& c : colors) {
      cur.push_back(c);
      rec(cur);
      cur.pop_back();
    }
  };
  Profile cur;
  rec(cur);
  std::vector<Element> r;
  for (const auto& out : profiles)
    for (const auto& in : profiles) {
      auto xs = p.enumerate(out, in);
      if (!xs) throw Error(ErrorKind::Unsupported, p.name() + " cannot enumerate " + profile_str(out) + ";" + profile_str(in));
      r.insert(r.end(), xs->begin(), xs->end());
      if (r.size() > cap) throw Error(ErrorKind::Cap, "more than " + std::to_string(cap) + " bounded elements");
    }
  return r;
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

struct AlgebraChecker {
  const Algebra& a;
  const AlgebraCheckOptions& opt;
  Rng& rng;
  LawReport& rep;

  // Every tuple when few, otherwise a random selection.
  std::vector<Tuple> tuples(const Profile& p) {
    if (auto all = all_tuples(a, p, opt.tuple_cap)) return *all;
    std::vector<Tuple> r;
    std::vector<std::vector<json>> fibers;
    for (const auto& c : p) fibers.push_back(a.carrier(c));
    for (std::size_t k = 0; k < opt.tuple_cap; ++k) {
      Tuple t;
      for (const auto& f : fibers) t.push_back(pick(rng, f));
      r.push_back(t);
    }
    return r;
  }

  json ctx(const Element& x, const Tuple& t) { return {{"x", x.to_json()}, {"args", t}}; }

  void closure_and_unit(const Element& x) {
    const Prop& P = *a.prop();
    for (const auto& t : tuples(x.in())) {
      record(rep.at("closure"), [&]() -> std::optional<json> {
        Tuple r = a.act(x, t);
        if (r.size() != x.out().size()) return ctx(x, t);
        for (std::size_t j = 0; j < r.size(); ++j)
          if (!in_carrier(a, x.out()[j], r[j])) {
            json w = ctx(x, t);
            w["result"] = r;
            return w;
          }
        return std::nullopt;
      });
    }
    if (!P.unital()) return;
    Element u = P.unit(x.in());
    for (const auto& t : tuples(x.in()))
      record(rep.at("unit"), [&]() -> std::optional<json> {
        Tuple r = a.act(u, t);
        if (r == t) return std::nullopt;
        json w = ctx(u, t);
        w["result"] = r;
        return w;
      });
  }

  void hcomp(const Element& x, const Element& y) {
    const Prop& P = *a.prop();
    Profile in = concat(x.in(), y.in());
    for (const auto& t : tuples(in))
      record(rep.at("hcomp"), [&]() -> std::optional<json> {
        Element xy = P.hcomp(x, y);
        Tuple tx(t.begin(), t.begin() + static_cast<long>(x.in().size()));
        Tuple ty(t.begin() + static_cast<long>(x.in().size()), t.end());
        Tuple lhs = a.act(xy, t);
        Tuple rhs = a.act(x, tx);
        Tuple ry = a.act(y, ty);
        rhs.insert(rhs.end(), ry.begin(), ry.end());
        if (lhs == rhs) return std::nullopt;
        return json{{"x", x.to_json()}, {"y", y.to_json()}, {"args", t}, {"lhs", lhs}, {"rhs", rhs}};
      });
  }

  void vcomp(const Element& x, const Element& y) {
    const Prop& P = *a.prop();
    for (const auto& t : tuples(y.in()))
      record(rep.at("vcomp"), [&]() -> std::optional<json> {
        Tuple lhs = a.act(P.vcomp(x, y), t);
        Tuple rhs = a.act(x, a.act(y, t));
        if (lhs == rhs) return std::nullopt;
        return json{{"x", x.to_json()}, {"y", y.to_json()}, {"args", t}, {"lhs", lhs}, {"rhs", rhs}};
      });
  }

  // λ(σxτ)(y) = σ·λ(x)(τ·y)
  void biact(const Element& x, const Perm& s, const Perm& t) {
    const Prop& P = *a.prop();
    Element sxt = P.biact(s, x, t);
    for (const auto& y : tuples(sxt.in()))
      record(rep.at("biact"), [&]() -> std::optional<json> {
        Tuple lhs = a.act(sxt, y);
        Tuple rhs = act_left(s, a.act(x, act_left(t, y)));
        if (lhs == rhs) return std::nullopt;
        return json{{"x", x.to_json()}, {"sigma", s.one_based()}, {"tau", t.one_based()}, {"args", y},
                    {"lhs", lhs}, {"rhs", rhs}};
      });
  }

  void biacts(const Element& x) {
    auto so = all_perms(static_cast<int>(x.out().size()));
    auto ti = all_perms(static_cast<int>(x.in().size()));
    if (so.size() * ti.size() <= 36) {
      for (const auto& s : so)
        for (const auto& t : ti) biact(x, s, t);
      return;
    }
    for (int k = 0; k < 12; ++k)
      biact(x, Perm::random(static_cast<int>(x.out().size()), rng), Perm::random(static_cast<int>(x.in().size()), rng));
  }
};

LawReport new_algebra_report(const Algebra& a, const char* mode) {
  LawReport rep;
  rep.subject = a.name();
  rep.mode = mode;
  for (const char* l : {"closure", "unit", "hcomp", "vcomp", "biact"}) rep.at(l);
  return rep;
}

std::optional<std::vector<Element>> finite_elements(const Prop& p, int max_arity) {
  try {
    return bounded_elements(p, max_arity, 2000);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<Element> sample_free(const Prop& p, Rng& rng, int max_arity, std::optional<Profile> in = {}) {
  for (int i = 0; i < 20; ++i) {
    SampleSpec s;
    s.max_arity = max_arity;
    s.in = in;
    if (auto x = p.sample(rng, s)) return x;
  }
  return std::nullopt;
}

}  // namespace

LawReport check_algebra(const Algebra& a, const AlgebraCheckOptions& opt) {
  const Prop& P = *a.prop();
  Rng rng(opt.seed);
  auto xs = opt.elements ? opt.elements : finite_elements(P, opt.max_arity);
  LawReport rep = new_algebra_report(a, xs ? "exhaustive" : "sampled");
  AlgebraChecker c{a, opt, rng, rep};
  if (xs) {
    for (const auto& x : *xs) {
      c.closure_and_unit(x);
      c.biacts(x);
    }
    for (const auto& x : *xs)
      for (const auto& y : *xs) {
        if (static_cast<int>(x.in().size() + y.in().size()) <= opt.max_arity &&
            static_cast<int>(x.out().size() + y.out().size()) <= opt.max_arity)
          c.hcomp(x, y);
        if (x.in() == y.out()) c.vcomp(x, y);
      }
    return rep;
  }
  for (int i = 0; i < opt.samples; ++i) {
    auto y = sample_free(P, rng, opt.max_arity);
    if (!y) continue;
    c.closure_and_unit(*y);
    c.biacts(*y);
    if (auto z = sample_free(P, rng, opt.max_arity)) c.hcomp(*y, *z);
    if (auto x = sample_free(P, rng, opt.max_arity, y->out())) c.vcomp(*x, *y);
  }
  return rep;
}

LawReport check_algebra_morphism(const CarrierMap& f, const Algebra& a, const Algebra& b,
                                 const AlgebraCheckOptions& opt) {
  const Prop& P = *a.prop();
  Rng rng(opt.seed);
  LawReport rep;
  rep.subject = a.name() + " -> " + b.name();
  auto xs = opt.elements ? opt.elements : finite_elements(P, opt.max_arity);
  rep.mode = xs ? "exhaustive" : "sampled";
  rep.at("square");
  AlgebraChecker c{a, opt, rng, rep};
  auto check = [&](const Element& x) {
    for (const auto& t : c.tuples(x.in()))
      record(rep.at("square"), [&]() -> std::optional<json> {
        Tuple ft;
        for (std::size_t i = 0; i < t.size(); ++i) ft.push_back(f(x.in()[i], t[i]));
        Tuple lhs, rhs = b.act(x, ft);
        Tuple r = a.act(x, t);
        for (std::size_t j = 0; j < r.size(); ++j) lhs.push_back(f(x.out()[j], r[j]));
        if (lhs == rhs) return std::nullopt;
        return json{{"x", x.to_json()}, {"args", t}, {"lhs", lhs}, {"rhs", rhs}};
      });
  };
  if (xs) {
    for (const auto& x : *xs) check(x);
  } else {
    for (int i = 0; i < opt.samples; ++i)
      if (auto x = sample_free(P, rng, opt.max_arity)) check(*x);
  }
  return rep;
}

AlgebraPtr make_tautological(const PropPtr& endo, const std::map<std::string, std::vector<json>>& x) {
  auto carrier = [x](const Color& c) { return x.at(c.name()); };
  auto act = [x](const Element& f, const Tuple& args) {
    auto index = [&](const Color& c, const json& v) {
      const auto& fib = x.at(c.name());
      return static_cast<int>(std::find(fib.begin(), fib.end(), v) - fib.begin());
    };
    std::vector<int> in;
    for (std::size_t i = 0; i < args.size(); ++i) in.push_back(index(f.in()[i], args[i]));
    const auto& rows = f.as<FunctionTable>().rows;
    const auto& row = rows.at(static_cast<std::size_t>(rank(in, fiber_sizes(x, f.in()))));
    Tuple out;
    for (std::size_t j = 0; j < row.size(); ++j) out.push_back(x.at(f.out()[j].name()).at(static_cast<std::size_t>(row[j])));
    return out;
  };
  return std::make_shared<FunctionAlgebra>("taut(" + endo->name() + ")", endo, carrier, act);
}

AlgebraPtr make_bool_or(const PropPtr& t) {
  return std::make_shared<FunctionAlgebra>(
      "Bool-OR", t, [](const Color&) { return std::vector<json>{false, true}; },
      [](const Element& x, const Tuple& args) {
        bool v = false;
        for (const auto& a : args) v = v || a.get<bool>();
        return Tuple(x.out().size(), json(v));
      });
}

LawReport check_bimonoid_factorization(const Algebra& a, int max_arity) {
  const Prop& T = *a.prop();
  LawReport rep;
  rep.subject = a.name();
  rep.mode = "exhaustive";
  rep.at("mu-delta-factorization");
  Color c = T.colors().at(0);
  auto prof = [&](int k) { return Profile(static_cast<std::size_t>(k), c); };
  auto one = [&](int m, int n) {
    auto xs = T.enumerate(prof(m), prof(n));
    if (!xs || xs->size() != 1) throw Error(ErrorKind::Unsupported, "factorization check needs one-point components");
    return xs->front();
  };
  Element mu = one(1, 2), delta = one(2, 1);
  // μ^{n-1}: fold the first two entries repeatedly; Δ^{m-1}: copy the first.
  auto fold = [&](Tuple t) {
    while (t.size() > 1) {
      Tuple head = a.act(mu, {t[0], t[1]});
      t.erase(t.begin(), t.begin() + 2);
      t.insert(t.begin(), head[0]);
    }
    return t;
  };
  auto spread = [&](Tuple t, int m) {
    while (static_cast<int>(t.size()) < m) {
      Tuple two = a.act(delta, {t[0]});
      t.erase(t.begin());
      t.insert(t.begin(), two.begin(), two.end());
    }
    return t;
  };
  for (int m = 1; m <= max_arity; ++m)
    for (int n = 1; n <= max_arity; ++n) {
      auto ts = all_tuples(a, prof(n));
      if (!ts) throw Error(ErrorKind::Cap, "carrier too large");
      Element x = one(m, n);
      for (const auto& t : *ts)
        record(rep.at("mu-delta-factorization"), [&]() -> std::optional<json> {
          Tuple lhs = a.act(x, t);
          Tuple rhs = spread(fold(t), m);
          if (lhs == rhs) return std::nullopt;
          return json{{"m", m}, {"n", n}, {"args", t}, {"lhs", lhs}, {"rhs", rhs}};
        });
    }
  return rep;
}

RandomTableResult random_table_algebra(const PropPtr& p, std::uint64_t seed, int max_arity,
                                       const std::vector<int>& sizes, int max_attempts) {
  Rng rng(seed);
  auto xs = bounded_elements(*p, max_arity);
  auto colors = p->colors();
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto a = std::make_shared<TableAlgebra>("random-table-" + std::to_string(seed), p);
    for (const auto& c : colors) {
      int k = pick(rng, sizes);
      std::vector<json> vs;
      for (int i = 0; i < k; ++i) vs.push_back(i);
      a->set_carrier(c, vs);
    }
    bool ok = true;
    for (const auto& x : xs) {
      auto ts = all_tuples(*a, x.in());
      auto outs = all_tuples(*a, x.out());
      if (!ts || !outs) throw Error(ErrorKind::Cap, "random table too large");
      if (!ts->empty() && outs->empty()) {
        ok = false;
        break;
      }
      for (const auto& t : *ts) a->set(x, t, pick(rng, *outs));
    }
    if (!ok) continue;
    AlgebraCheckOptions opt;
    opt.max_arity = max_arity;
    opt.elements = xs;
    if (check_algebra(*a, opt).ok()) return {a, attempt};
  }
  throw Error(ErrorKind::Cap, "no random table algebra passed within the attempt budget");
}

}  // namespace hda
