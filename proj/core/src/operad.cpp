#include "hda/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hda {

const OperadOp& ColoredOperad::op(const std::string& name) const {
  auto it = std::lower_bound(ops.begin(), ops.end(), name, [](const OperadOp& a, const std::string& n) { return a.name < n; });
  if (it == ops.end() || it->name != name) throw Error(ErrorKind::Schema, "unknown operation " + name);
  return *it;
}

std::vector<std::string> ColoredOperad::ops_with(const Color& out, const Profile& in) const {
  std::vector<std::string> r;
  for (const auto& o : ops)
    if (o.out == out && o.in == in) r.push_back(o.name);
  return r;
}

std::vector<std::string> ColoredOperad::ops_with_in(const Profile& in) const {
  std::vector<std::string> r;
  for (const auto& o : ops)
    if (o.in == in) r.push_back(o.name);
  return r;
}

namespace {

std::vector<Color> base_colors(const std::vector<std::string>& names) {
  std::set<std::string> s(names.begin(), names.end());
  if (s.empty() || s.size() != names.size()) throw Error(ErrorKind::Schema, "operad needs distinct colors");
  std::vector<Color> cs;
  for (const auto& n : s) cs.push_back(Color::base(n));
  return cs;
}

void all_profiles(const std::vector<Color>& cs, int len, Profile& cur, std::vector<Profile>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (const auto& c : cs) {
    cur.push_back(c);
    all_profiles(cs, len, cur, out);
    cur.pop_back();
  }
}

std::vector<Profile> profiles_upto(const std::vector<Color>& cs, int max_len) {
  std::vector<Profile> r;
  for (int len = 1; len <= max_len; ++len) {
    Profile cur;
    all_profiles(cs, len, cur, r);
  }
  return r;
}

std::string terminal_name(const Color& out, const Profile& in, bool one_color) {
  if (one_color) return "t" + std::to_string(in.size());
  std::string s = "t(" + out.name() + ";";
  for (std::size_t i = 0; i < in.size(); ++i) s += (i ? "," : "") + in[i].name();
  return s + ")";
}

}  // namespace

ColoredOperad terminal_operad(int max_arity, const std::vector<std::string>& colors) {
  ColoredOperad o;
  o.colors = base_colors(colors);
  o.max_arity = max_arity;
  bool one = o.colors.size() == 1;
  for (const auto& in : profiles_upto(o.colors, max_arity))
    for (const auto& d : o.colors) o.ops.push_back({terminal_name(d, in, one), d, in});
  std::sort(o.ops.begin(), o.ops.end(), [](const OperadOp& a, const OperadOp& b) { return a.name < b.name; });
  for (const auto& c : o.colors) o.units[c.name()] = terminal_name(c, {c}, one);
  auto ops = std::make_shared<std::vector<OperadOp>>(o.ops);
  o.compose = [max_arity, one, ops](const std::string& f, const std::vector<std::string>& gs) -> std::optional<std::string> {
    auto find = [&](const std::string& n) -> const OperadOp& {
      for (const auto& x : *ops)
        if (x.name == n) return x;
      throw Error(ErrorKind::Schema, "unknown operation " + n);
    };
    Profile in;
    for (const auto& g : gs) in = concat(in, find(g).in);
    if (static_cast<int>(in.size()) > max_arity) return std::nullopt;
    return terminal_name(find(f).out, in, one);
  };
  o.act = [ops, one](const std::string& f, const Perm& p) {
    for (const auto& x : *ops)
      if (x.name == f) return terminal_name(x.out, act_right(x.in, p), one);
    throw Error(ErrorKind::Schema, "unknown operation " + f);
  };
  return o;
}

ColoredOperad unit_operad() {
  ColoredOperad o;
  o.colors = {Color::base("c")};
  o.max_arity = 1;
  o.ops.push_back({"1", o.colors[0], {o.colors[0]}});
  o.units["c"] = "1";
  o.compose = [](const std::string&, const std::vector<std::string>&) -> std::optional<std::string> { return "1"; };
  o.act = [](const std::string& f, const Perm&) { return f; };
  return o;
}

ColoredOperad operad_from_json(const json& j) {
  ColoredOperad o;
  o.colors = base_colors(j.at("colors").get<std::vector<std::string>>());
  o.max_arity = j.at("max_arity").get<int>();
  auto color = [&](const json& c) {
    Color col = Color::base(c.get<std::string>());
    if (std::find(o.colors.begin(), o.colors.end(), col) == o.colors.end()) throw Error(ErrorKind::UnknownColor, c.dump());
    return col;
  };
  for (const auto& op : j.at("ops")) {
    OperadOp x{op.at("name").get<std::string>(), color(op.at("out")), {}};
    for (const auto& c : op.at("in")) x.in.push_back(color(c));
    if (x.in.empty() || static_cast<int>(x.in.size()) > o.max_arity) throw Error(ErrorKind::Arity, "operation " + x.name);
    o.ops.push_back(x);
  }
  std::sort(o.ops.begin(), o.ops.end(), [](const OperadOp& a, const OperadOp& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < o.ops.size(); ++i)
    if (o.ops[i].name == o.ops[i - 1].name) throw Error(ErrorKind::Schema, "duplicate operation " + o.ops[i].name);
  for (const auto& [c, n] : j.at("units").items()) o.units[c] = n.get<std::string>();
  auto rho = std::make_shared<std::map<std::vector<std::string>, std::string>>();
  for (const auto& e : j.value("compose", json::array())) {
    auto v = e.get<std::vector<std::string>>();
    std::string r = v.back();
    v.pop_back();
    (*rho)[v] = r;
  }
  auto act = std::make_shared<std::map<std::pair<std::string, std::vector<int>>, std::string>>();
  for (const auto& e : j.value("action", json::array()))
    (*act)[{e.at(0).get<std::string>(), e.at(1).get<std::vector<int>>()}] = e.at(2).get<std::string>();
  auto ops = std::make_shared<ColoredOperad>(o);
  o.compose = [rho, ops](const std::string& f, const std::vector<std::string>& gs) -> std::optional<std::string> {
    std::vector<std::string> key{f};
    key.insert(key.end(), gs.begin(), gs.end());
    auto it = rho->find(key);
    if (it != rho->end()) return it->second;
    Profile in;
    for (const auto& g : gs) in = concat(in, ops->op(g).in);
    if (static_cast<int>(in.size()) > ops->max_arity) return std::nullopt;
    auto cand = ops->ops_with(ops->op(f).out, in);
    if (cand.size() == 1) return cand[0];
    throw Error(ErrorKind::Validation, "composition table is not total at " + f);
  };
  o.act = [act, ops](const std::string& f, const Perm& p) {
    if (p.is_identity()) return f;
    auto it = act->find({f, p.one_based()});
    if (it != act->end()) return it->second;
    auto cand = ops->ops_with(ops->op(f).out, act_right(ops->op(f).in, p));
    if (cand.size() == 1) return cand[0];
    throw Error(ErrorKind::Validation, "action table is not total at " + f);
  };
  return o;
}

json operad_json(const ColoredOperad& o) {
  json cs = json::array(), ops = json::array(), units = json::object();
  for (const auto& c : o.colors) cs.push_back(c.name());
  for (const auto& op : o.ops) ops.push_back({{"name", op.name}, {"out", op.out.name()}, {"in", profile_json(op.in)}});
  for (const auto& [c, n] : o.units) units[c] = n;
  return {{"type", "operad"}, {"colors", cs}, {"max_arity", o.max_arity}, {"ops", ops}, {"units", units}};
}

namespace {

// Every tuple of operations whose outputs match `colors`.
void tuples_for(const ColoredOperad& o, const Profile& colors, std::size_t i, std::vector<std::string>& cur,
                const std::function<void(const std::vector<std::string>&)>& f) {
  if (i == colors.size()) {
    f(cur);
    return;
  }
  for (const auto& op : o.ops)
    if (op.out == colors[i]) {
      cur.push_back(op.name);
      tuples_for(o, colors, i + 1, cur, f);
      cur.pop_back();
    }
}

int arity(const ColoredOperad& o, const std::string& n) { return static_cast<int>(o.op(n).in.size()); }

}  // namespace

Report check_operad(const ColoredOperad& o) {
  Report r;
  auto where = [](const std::string& f, const std::vector<std::string>& gs) {
    std::string s = f + "(";
    for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? "," : "") + gs[i];
    return s + ")";
  };
  for (const auto& c : o.colors)
    if (!o.units.count(c.name())) r.add("unit", "no unit for color " + c.name());
  if (!r.ok()) return r;
  for (const auto& f : o.ops) {
    // Units.
    auto left = o.compose(o.units.at(f.out.name()), {f.name});
    if (!left || *left != f.name) r.add("unit", "left unit fails at " + f.name);
    std::vector<std::string> us;
    for (const auto& c : f.in) us.push_back(o.units.at(c.name()));
    auto right = o.compose(f.name, us);
    if (!right || *right != f.name) r.add("unit", "right unit fails at " + f.name);
    // Action functoriality.
    auto perms = all_perms(static_cast<int>(f.in.size()));
    for (const auto& p : perms)
      for (const auto& q : perms)
        if (o.act(o.act(f.name, p), q) != o.act(f.name, p * q)) r.add("action", "(f·p)·q != f·(pq) at " + f.name);
    std::vector<std::string> cur;
    tuples_for(o, f.in, 0, cur, [&](const std::vector<std::string>& gs) {
      auto fg = o.compose(f.name, gs);
      if (!fg) return;
      if (o.op(*fg).out != f.out) r.add("profile", "ρ lands in the wrong color at " + where(f.name, gs));
      // Equivariance in the outer operation.
      std::vector<int> sizes;
      for (const auto& g : gs) sizes.push_back(arity(o, g));
      for (const auto& p : perms) {
        // ρ(f·p; g) vs ρ(f; g∘p⁻¹)·p̂
        std::vector<std::string> gsp(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) gsp[static_cast<std::size_t>(p(static_cast<int>(i)))] = gs[i];
        auto lhs = o.compose(o.act(f.name, p), gs);
        auto inner = o.compose(f.name, gsp);
        if (!lhs || !inner) continue;
        std::vector<int> rhs_sizes = act_left(p, sizes);
        std::vector<int> start(gs.size(), 0);
        for (std::size_t j = 1; j < gs.size(); ++j) start[j] = start[j - 1] + rhs_sizes[j - 1];
        std::vector<int> hat;
        for (std::size_t i = 0; i < gs.size(); ++i)
          for (int t = 0; t < sizes[i]; ++t) hat.push_back(start[static_cast<std::size_t>(p(static_cast<int>(i)))] + t);
        if (*lhs != o.act(*inner, Perm(hat))) r.add("equivariance", "outer action fails at " + where(f.name, gs));
      }
      // Equivariance in the inner operations.
      for (std::size_t i = 0; i < gs.size(); ++i)
        for (const auto& q : all_perms(sizes[i])) {
          auto gq = gs;
          gq[i] = o.act(gs[i], q);
          auto lhs = o.compose(f.name, gq);
          if (!lhs) continue;
          Perm block = Perm::identity(0);
          for (std::size_t k = 0; k < gs.size(); ++k) block = Perm::block_sum(block, k == i ? q : Perm::identity(sizes[k]));
          if (*lhs != o.act(*fg, block)) r.add("equivariance", "inner action fails at " + where(f.name, gq));
        }
      // Associativity: ρ(ρ(f; g); h) = ρ(f; ρ(g₁; h₁), …).
      Profile mid;
      for (const auto& g : gs) mid = concat(mid, o.op(g).in);
      std::vector<std::string> hcur;
      tuples_for(o, mid, 0, hcur, [&](const std::vector<std::string>& hs) {
        auto lhs = o.compose(*fg, hs);
        if (!lhs) return;
        std::vector<std::string> inner;
        std::size_t pos = 0;
        for (const auto& g : gs) {
          std::vector<std::string> part(hs.begin() + static_cast<long>(pos), hs.begin() + static_cast<long>(pos + arity(o, g)));
          pos += arity(o, g);
          auto gi = o.compose(g, part);
          if (!gi) {
            r.add("associativity", "inner composite undefined while outer is defined at " + where(f.name, gs));
            return;
          }
          inner.push_back(*gi);
        }
        auto rhs = o.compose(f.name, inner);
        if (!rhs || *rhs != *lhs) r.add("associativity", "fails at " + where(f.name, gs));
      });
    });
  }
  return r;
}

json OpropPayload::to_json() const {
  json a = json::array();
  for (const auto& f : factors) a.push_back(json::array({f.out + 1, f.ins, f.op}));
  return {{"f", a}};
}

namespace {

class OpropProp : public Prop {
 public:
  explicit OpropProp(ColoredOperad o) : o_(std::move(o)) {}
  std::string name() const override { return "O_prop"; }
  bool has_color(const Color& c) const override {
    return std::find(o_.colors.begin(), o_.colors.end(), c) != o_.colors.end();
  }
  std::vector<Color> colors() const override { return o_.colors; }
  bool owns(const Element& x) const override { return x.try_as<OpropPayload>() != nullptr; }

  bool contains(const Element& x) const override {
    if (!owns(x)) return false;
    const auto& fs = x.as<OpropPayload>().factors;
    std::size_t m = x.out().size(), n = x.in().size();
    if (fs.size() != m) return false;
    std::vector<int> outs, ins;
    for (const auto& f : fs) {
      outs.push_back(f.out);
      if (f.ins.empty() || !std::is_sorted(f.ins.begin(), f.ins.end())) return false;
      ins.insert(ins.end(), f.ins.begin(), f.ins.end());
      try {
        const auto& op = o_.op(f.op);
        if (op.in.size() != f.ins.size()) return false;
        if (f.out < 0 || f.out >= static_cast<int>(m) || op.out != x.out()[f.out]) return false;
        for (std::size_t i = 0; i < f.ins.size(); ++i)
          if (f.ins[i] < 0 || f.ins[i] >= static_cast<int>(n) || op.in[i] != x.in()[f.ins[i]]) return false;
      } catch (const Error&) {
        return false;
      }
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    for (std::size_t i = 0; i < outs.size(); ++i)
      if (outs[i] != static_cast<int>(i)) return false;
    for (std::size_t i = 0; i < ins.size(); ++i)
      if (ins[i] != static_cast<int>(i)) return false;
    return ins.size() == n;
  }

  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    std::vector<Element> r;
    int m = static_cast<int>(out.size()), n = static_cast<int>(in.size());
    if (m > n) return r;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    std::size_t cap = 100000;
    {
      Perm order = Perm::identity(m);
      while (true) {
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
        for (int i = 0; i < n; ++i) blocks[assign[i]].push_back(i);
        bool surj = std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return !b.empty(); });
        if (surj) {
          std::vector<std::vector<std::string>> choices;
          for (int k = 0; k < m; ++k) {
            Profile pin;
            for (int i : blocks[k]) pin.push_back(in[i]);
            choices.push_back(o_.ops_with(out[order(k)], pin));
          }
          std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
          bool any = std::all_of(choices.begin(), choices.end(), [](const auto& c) { return !c.empty(); });
          while (any) {
            std::vector<OpropFactor> fs;
            for (int k = 0; k < m; ++k) fs.push_back({order(k), blocks[k], choices[k][idx[k]]});
            r.push_back(make(out, in, std::move(fs)));
            if (r.size() > cap) return std::nullopt;
            int k = m - 1;
            while (k >= 0 && ++idx[k] == choices[k].size()) idx[k--] = 0;
            if (k < 0) break;
          }
        }
        int i = n - 1;
        while (i >= 0 && ++assign[i] == m) assign[i--] = 0;
        if (i < 0) break;
      }
    }
    std::sort(r.begin(), r.end());
    return r;
  }

  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    for (int attempt = 0; attempt < 30; ++attempt) {
      Profile in = spec.in ? *spec.in : random_profile(rng, o_.colors, 1, spec.max_arity);
      int n = static_cast<int>(in.size());
      int m = spec.out ? static_cast<int>(spec.out->size()) : uniform_int(rng, 1, n);
      if (m > n) return std::nullopt;
      // Random surjection onto m blocks with blocks of size ≤ max_arity.
      std::vector<int> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) blocks[k].push_back(idx[k]);
      for (int i = m; i < n; ++i) blocks[uniform_int(rng, 0, m - 1)].push_back(idx[i]);
      Perm order = Perm::random(m, rng);
      std::vector<OpropFactor> fs;
      Profile out(static_cast<std::size_t>(m));
      bool ok = true;
      for (int k = 0; k < m && ok; ++k) {
        std::sort(blocks[k].begin(), blocks[k].end());
        Profile pin;
        for (int i : blocks[k]) pin.push_back(in[i]);
        std::vector<std::string> cand;
        if (spec.out) cand = o_.ops_with((*spec.out)[order(k)], pin);
        else cand = o_.ops_with_in(pin);
        if (cand.empty()) {
          ok = false;
          break;
        }
        std::string op = pick(rng, cand);
        out[order(k)] = o_.op(op).out;
        fs.push_back({order(k), blocks[k], op});
      }
      if (ok) return make(out, in, std::move(fs));
    }
    return std::nullopt;
  }

  json spec_json() const override { return {{"kind", "operad"}, {"operad", operad_json(o_)}}; }

  // Factors are kept sorted by output position.
  Element make(const Profile& out, const Profile& in, std::vector<OpropFactor> fs) const {
    std::sort(fs.begin(), fs.end(), [](const OpropFactor& a, const OpropFactor& b) { return a.out < b.out; });
    return Element(out, in, std::make_shared<OpropPayload>(std::move(fs)));
  }

 protected:
  // Sorts the factor's inputs, absorbing the permutation into the operation.
  OpropFactor normalize(int out, const std::vector<int>& ins, const std::string& op) const {
    std::vector<int> pi(ins.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::sort(pi.begin(), pi.end(), [&](int a, int b) { return ins[a] < ins[b]; });
    Perm p(pi);
    return {out, act_right(ins, p), o_.act(op, p)};
  }

  Element do_hcomp(const Element& x, const Element& y) const override {
    auto fs = x.as<OpropPayload>().factors;
    int mo = static_cast<int>(x.out().size()), ni = static_cast<int>(x.in().size());
    for (auto f : y.as<OpropPayload>().factors) {
      f.out += mo;
      for (auto& i : f.ins) i += ni;
      fs.push_back(f);
    }
    return make(concat(x.out(), y.out()), concat(x.in(), y.in()), std::move(fs));
  }

  Element do_vcomp(const Element& x, const Element& y) const override {
    const auto& lower = y.as<OpropPayload>().factors;
    std::vector<const OpropFactor*> feeding(y.out().size());
    for (const auto& f : lower) feeding[f.out] = &f;
    std::vector<OpropFactor> fs;
    for (const auto& f : x.as<OpropPayload>().factors) {
      std::vector<std::string> gs;
      std::vector<int> ins;
      for (int i : f.ins) {
        gs.push_back(feeding[i]->op);
        ins.insert(ins.end(), feeding[i]->ins.begin(), feeding[i]->ins.end());
      }
      auto c = o_.compose(f.op, gs);
      if (!c) throw Error(ErrorKind::Undefined, "operad composite beyond arity " + std::to_string(o_.max_arity));
      fs.push_back(normalize(f.out, ins, *c));
    }
    return make(x.out(), y.in(), std::move(fs));
  }

  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override {
    Perm ti = t.inverse();
    std::vector<OpropFactor> fs;
    for (const auto& f : x.as<OpropPayload>().factors) {
      std::vector<int> ins;
      for (int i : f.ins) ins.push_back(ti(i));
      fs.push_back(normalize(s(f.out), ins, f.op));
    }
    return make(act_left(s, x.out()), act_right(x.in(), t), std::move(fs));
  }

  Element do_unit(const Profile& c) const override {
    std::vector<OpropFactor> fs;
    for (int k = 0; k < static_cast<int>(c.size()); ++k) fs.push_back({k, {k}, o_.units.at(c[k].name())});
    return make(c, c, std::move(fs));
  }

  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override {
    std::vector<OpropFactor> fs;
    for (const auto& f : p.at("f")) fs.push_back({f.at(0).get<int>() - 1, f.at(1).get<std::vector<int>>(), f.at(2).get<std::string>()});
    return make(out, in, std::move(fs));
  }

 private:
  ColoredOperad o_;
};

}  // namespace

PropPtr operad_to_prop(const ColoredOperad& o) {
  Report r = check_operad(o);
  if (!r.ok()) throw Error(ErrorKind::Validation, "operad fails its laws: " + r.to_json().dump());
  return std::make_shared<OpropProp>(o);
}

ColoredOperad prop_to_operad(const PropPtr& p, int max_arity) {
  ColoredOperad o;
  o.colors = p->colors();
  o.max_arity = max_arity;
  auto by_key = std::make_shared<std::map<std::string, std::string>>();
  auto by_name = std::make_shared<std::map<std::string, Element>>();
  std::vector<Element> all;
  for (const auto& in : profiles_upto(o.colors, max_arity))
    for (const auto& d : o.colors) {
      auto es = p->enumerate({d}, in);
      if (!es) throw Error(ErrorKind::Unsupported, "component of " + p->name() + " is not finite");
      all.insert(all.end(), es->begin(), es->end());
    }
  std::sort(all.begin(), all.end());
  int width = static_cast<int>(std::to_string(all.size()).size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::string n = std::to_string(i);
    n = "u" + std::string(static_cast<std::size_t>(width) - n.size(), '0') + n;
    (*by_key)[all[i].key()] = n;
    (*by_name)[n] = all[i];
    o.ops.push_back({n, all[i].out()[0], all[i].in()});
  }
  for (const auto& c : o.colors) o.units[c.name()] = by_key->at(p->unit({c}).key());
  o.compose = [p, by_key, by_name, max_arity](const std::string& f,
                                              const std::vector<std::string>& gs) -> std::optional<std::string> {
    std::vector<Element> es;
    std::size_t n = 0;
    for (const auto& g : gs) {
      es.push_back(by_name->at(g));
      n += es.back().in().size();
    }
    if (static_cast<int>(n) > max_arity) return std::nullopt;
    return by_key->at(p->vcomp(by_name->at(f), p->hcomp_all(es)).key());
  };
  o.act = [p, by_key, by_name](const std::string& f, const Perm& q) {
    return by_key->at(p->biact(Perm::identity(1), by_name->at(f), q).key());
  };
  return o;
}

}  // namespace hda
