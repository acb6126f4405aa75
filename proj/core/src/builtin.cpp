#include "hda/builtin.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hda/laws.hpp"

namespace hda {

namespace {

std::vector<Color> make_colors(const std::vector<std::string>& names) {
  if (names.empty()) throw Error(ErrorKind::Schema, "color set must be non-empty");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw Error(ErrorKind::Schema, "duplicate color identifiers");
  std::vector<Color> cs;
  for (const auto& n : seen) cs.push_back(Color::base(n));
  return cs;
}

bool all_known(const Prop& p, const Profile& prof) {
  for (const auto& c : prof)
    if (!p.has_color(c)) return false;
  return true;
}

json names_json(const std::vector<Color>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.name());
  return a;
}

// Picks the out/in profiles requested by a sample spec, randomizing the rest.
std::pair<Profile, Profile> spec_profiles(Rng& rng, const SampleSpec& spec, const std::vector<Color>& colors) {
  Profile out = spec.out ? *spec.out : random_profile(rng, colors, 1, spec.max_arity);
  Profile in = spec.in ? *spec.in : random_profile(rng, colors, 1, spec.max_arity);
  return {out, in};
}

// ---------------------------------------------------------------- terminal

class TerminalPayload : public Payload {
 public:
  json to_json() const override { return "T"; }
};

class TerminalProp : public Prop {
 public:
  explicit TerminalProp(std::vector<Color> cs) : colors_(std::move(cs)), pt_(std::make_shared<TerminalPayload>()) {}
  std::string name() const override { return colors_.size() == 1 ? "T" : "T_c"; }
  bool has_color(const Color& c) const override {
    return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
  }
  std::vector<Color> colors() const override { return colors_; }
  bool owns(const Element& x) const override { return x.try_as<TerminalPayload>() != nullptr; }
  bool contains(const Element& x) const override {
    return owns(x) && all_known(*this, x.out()) && all_known(*this, x.in());
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    return std::vector<Element>{make(out, in)};
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    auto [out, in] = spec_profiles(rng, spec, colors_);
    return make(out, in);
  }
  json spec_json() const override { return {{"kind", "terminal"}, {"colors", names_json(colors_)}}; }
  Element make(const Profile& out, const Profile& in) const { return Element(out, in, pt_); }

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override {
    return make(concat(x.out(), y.out()), concat(x.in(), y.in()));
  }
  Element do_vcomp(const Element& x, const Element& y) const override { return make(x.out(), y.in()); }
  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override {
    return make(act_left(s, x.out()), act_right(x.in(), t));
  }
  Element do_unit(const Profile& c) const override { return make(c, c); }
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override {
    if (p != "T") throw Error(ErrorKind::Schema, "terminal payload must be \"T\"");
    return make(out, in);
  }
  std::optional<Element> parse_short(const json& j) const override {
    if (j.is_object() && j.contains("out") && j.contains("in") && !j.contains("p")) {
      Profile out, in;
      for (const auto& c : j["out"]) out.push_back(parse_color(c));
      for (const auto& c : j["in"]) in.push_back(parse_color(c));
      return make(out, in);
    }
    return std::nullopt;
  }

 private:
  std::vector<Color> colors_;
  std::shared_ptr<const Payload> pt_;
};

// ----------------------------------------------------------------- initial

class InitialPayload : public Payload {
 public:
  json to_json() const override { return "I"; }
};

class InitialProp : public Prop {
 public:
  InitialProp() : c_(Color::base("c")), pt_(std::make_shared<InitialPayload>()) {}
  std::string name() const override { return "I"; }
  bool has_color(const Color& c) const override { return c == c_; }
  std::vector<Color> colors() const override { return {c_}; }
  bool owns(const Element& x) const override { return x.try_as<InitialPayload>() != nullptr; }
  bool contains(const Element& x) const override {
    return owns(x) && x.out().size() == x.in().size() && all_known(*this, x.out()) && all_known(*this, x.in());
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    if (out.size() != in.size()) return std::vector<Element>{};
    return std::vector<Element>{make(out.size())};
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    std::size_t n;
    if (spec.in && spec.out && spec.in->size() != spec.out->size()) return std::nullopt;
    if (spec.in) n = spec.in->size();
    else if (spec.out) n = spec.out->size();
    else n = static_cast<std::size_t>(uniform_int(rng, 1, spec.max_arity));
    return make(n);
  }
  json spec_json() const override { return {{"kind", "initial"}}; }
  Element make(std::size_t n) const { return Element(Profile(n, c_), Profile(n, c_), pt_); }

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override { return make(x.out().size() + y.out().size()); }
  Element do_vcomp(const Element& x, const Element&) const override { return make(x.out().size()); }
  Element do_biact(const Perm&, const Element& x, const Perm&) const override { return x; }
  Element do_unit(const Profile& c) const override { return make(c.size()); }
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override {
    if (p != "I") throw Error(ErrorKind::Schema, "initial payload must be \"I\"");
    if (out.size() != in.size()) throw Error(ErrorKind::Validation, "I(m,n) is empty for m != n");
    return make(out.size());
  }

 private:
  Color c_;
  std::shared_ptr<const Payload> pt_;
};

// ------------------------------------------------------------ endomorphism

class EndoProp : public Prop {
 public:
  explicit EndoProp(GradedSet x) : x_(std::move(x)) {
    if (x_.empty()) throw Error(ErrorKind::Schema, "graded set must have at least one color");
    for (const auto& [name, fiber] : x_) colors_.push_back(Color::base(name));
  }
  std::string name() const override { return "E_X"; }
  bool has_color(const Color& c) const override {
    return !c.is_element() && x_.count(c.name()) > 0;
  }
  std::vector<Color> colors() const override { return colors_; }
  bool owns(const Element& x) const override { return x.try_as<FunctionTable>() != nullptr; }
  bool contains(const Element& e) const override {
    if (!owns(e) || !all_known(*this, e.out()) || !all_known(*this, e.in())) return false;
    const auto& rows = e.as<FunctionTable>().rows;
    auto rin = fiber_sizes(x_, e.in());
    auto rout = fiber_sizes(x_, e.out());
    if (static_cast<long long>(rows.size()) != tuple_count(rin)) return false;
    for (const auto& r : rows) {
      if (r.size() != rout.size()) return false;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j] < 0 || r[j] >= rout[j]) return false;
    }
    return true;
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    auto rin = fiber_sizes(x_, in);
    auto rout = fiber_sizes(x_, out);
    long long nrows = tuple_count(rin), nvals = tuple_count(rout);
    double total = 1;
    for (long long i = 0; i < nrows; ++i) {
      total *= static_cast<double>(nvals);
      if (total > 1e5) return std::nullopt;
    }
    std::vector<Element> r;
    std::vector<long long> digits(static_cast<std::size_t>(nrows), 0);
    for (long long n = 0; n < static_cast<long long>(total); ++n) {
      std::vector<std::vector<int>> rows;
      for (long long i = 0; i < nrows; ++i) rows.push_back(unrank(digits[static_cast<std::size_t>(i)], rout));
      r.push_back(make(out, in, std::move(rows)));
      for (long long i = nrows - 1; i >= 0; --i) {
        if (++digits[static_cast<std::size_t>(i)] < nvals) break;
        digits[static_cast<std::size_t>(i)] = 0;
      }
    }
    return r;
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    auto [out, in] = spec_profiles(rng, spec, colors_);
    auto rin = fiber_sizes(x_, in);
    auto rout = fiber_sizes(x_, out);
    long long nrows = tuple_count(rin);
    if (nrows > 4096) return std::nullopt;
    if (nrows > 0 && tuple_count(rout) == 0) return std::nullopt;
    std::vector<std::vector<int>> rows;
    for (long long i = 0; i < nrows; ++i) {
      std::vector<int> row;
      for (int s : rout) row.push_back(uniform_int(rng, 0, s - 1));
      rows.push_back(std::move(row));
    }
    return make(out, in, std::move(rows));
  }
  json spec_json() const override {
    json c = json::object();
    for (const auto& [name, fiber] : x_) c[name] = fiber;
    return {{"kind", "endomorphism"}, {"carrier", c}};
  }
  Element make(const Profile& out, const Profile& in, std::vector<std::vector<int>> rows) const {
    return Element(out, in, std::make_shared<FunctionTable>(std::move(rows)));
  }

 protected:
  Element do_hcomp(const Element& f, const Element& g) const override {
    const auto& rf = f.as<FunctionTable>().rows;
    const auto& rg = g.as<FunctionTable>().rows;
    std::vector<std::vector<int>> rows;
    for (const auto& a : rf)
      for (const auto& b : rg) {
        auto r = a;
        r.insert(r.end(), b.begin(), b.end());
        rows.push_back(std::move(r));
      }
    return make(concat(f.out(), g.out()), concat(f.in(), g.in()), std::move(rows));
  }
  Element do_vcomp(const Element& f, const Element& g) const override {
    const auto& rf = f.as<FunctionTable>().rows;
    const auto& rg = g.as<FunctionTable>().rows;
    auto mid = fiber_sizes(x_, g.out());
    std::vector<std::vector<int>> rows;
    for (const auto& t : rg) rows.push_back(rf[static_cast<std::size_t>(rank(t, mid))]);
    return make(f.out(), g.in(), std::move(rows));
  }
  Element do_biact(const Perm& s, const Element& f, const Perm& t) const override {
    const auto& rf = f.as<FunctionTable>().rows;
    Profile nin = act_right(f.in(), t);
    auto rin_old = fiber_sizes(x_, f.in());
    auto rin_new = fiber_sizes(x_, nin);
    std::vector<std::vector<int>> rows;
    long long n = tuple_count(rin_new);
    for (long long r = 0; r < n; ++r) {
      auto y = unrank(r, rin_new);
      auto x = act_left(t, y);
      rows.push_back(act_left(s, rf[static_cast<std::size_t>(rank(x, rin_old))]));
    }
    return make(act_left(s, f.out()), nin, std::move(rows));
  }
  Element do_unit(const Profile& c) const override {
    auto radix = fiber_sizes(x_, c);
    std::vector<std::vector<int>> rows;
    long long n = tuple_count(radix);
    for (long long r = 0; r < n; ++r) rows.push_back(unrank(r, radix));
    return make(c, c, std::move(rows));
  }
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override {
    if (!p.is_object() || !p.contains("t")) throw Error(ErrorKind::Schema, "function table payload expects {t}");
    return make(out, in, p["t"].get<std::vector<std::vector<int>>>());
  }

 private:
  GradedSet x_;
  std::vector<Color> colors_;
};

// ------------------------------------------------------------------- table

class TablePayload : public Payload {
 public:
  explicit TablePayload(std::string n) : name(std::move(n)) {}
  json to_json() const override { return {{"n", name}}; }
  std::string name;
};

using PKey = std::pair<std::string, std::string>;

PKey comp_key(const Profile& out, const Profile& in) { return {profile_json(out).dump(), profile_json(in).dump()}; }

class TableProp : public Prop {
 public:
  explicit TableProp(const json& spec) : spec_(spec) {
    if (!spec.contains("colors") || !spec.contains("components"))
      throw Error(ErrorKind::Schema, "table PROP needs colors and components");
    colors_ = make_colors(spec["colors"].get<std::vector<std::string>>());
    for (const auto& comp : spec["components"]) {
      Profile out, in;
      for (const auto& c : comp.at("out")) out.push_back(parse_color(c));
      for (const auto& c : comp.at("in")) in.push_back(parse_color(c));
      if (out.empty() || in.empty()) throw Error(ErrorKind::Arity, "0-ary component in table PROP");
      auto key = comp_key(out, in);
      if (components_.count(key)) throw Error(ErrorKind::Schema, "duplicate component " + key.first + ";" + key.second);
      auto& list = components_[key];
      for (const auto& n : comp.value("elements", json::array())) {
        std::string nm = n.get<std::string>();
        if (by_name_.count(nm)) throw Error(ErrorKind::Schema, "duplicate element name " + nm);
        Element e(out, in, std::make_shared<TablePayload>(nm));
        by_name_.emplace(nm, e);
        list.push_back(e);
      }
    }
    auto triple = [&](const char* field, std::map<PKey, std::string>& into) {
      for (const auto& t : spec.value(field, json::array())) {
        if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::Schema, std::string(field) + " entries are [x, y, result]");
        for (const auto& n : t) lookup(n.get<std::string>());
        into[{t[0].get<std::string>(), t[1].get<std::string>()}] = t[2].get<std::string>();
      }
    };
    triple("hcomp", hcomp_);
    triple("vcomp", vcomp_);
    for (const auto& b : spec.value("biact", json::array())) {
      lookup(b.at("x").get<std::string>());
      lookup(b.at("result").get<std::string>());
      biact_[{b.at("sigma").get<std::vector<int>>(), b.at("x").get<std::string>(), b.at("tau").get<std::vector<int>>()}] =
          b.at("result").get<std::string>();
    }
    for (const auto& [col, nm] : spec.value("units", json::object()).items()) {
      Element u = lookup(nm.get<std::string>());
      Color c = parse_color(json(col));
      if (u.out() != Profile{c} || u.in() != Profile{c}) throw Error(ErrorKind::Validation, "unit " + nm.dump() + " has the wrong profile");
      units_[col] = nm.get<std::string>();
    }
  }

  // Totality and exhaustive law check; throws with the failing instance.
  void validate() const {
    auto elems = *all_elements();
    auto total = [&](const char* what, auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undefined) throw Error(ErrorKind::Validation, std::string(what) + ": " + e.what());
      }
    };
    for (const auto& x : elems) {
      for (const auto& y : elems) {
        total("hcomp", [&] { hcomp(x, y); });
        if (x.in() == y.out()) total("vcomp", [&] { vcomp(x, y); });
      }
      for (const auto& s : all_perms(static_cast<int>(x.out().size())))
        for (const auto& t : all_perms(static_cast<int>(x.in().size()))) total("biact", [&] { biact(s, x, t); });
    }
    for (const auto& c : colors_)
      if (components_.count(comp_key({c}, {c}))) total("unit", [&] { unit({c}); });
    LawOptions opt;
    opt.exhaustive_limit = 1 << 30;
    auto report = check_prop_laws(*this, opt);
    if (!report.ok()) throw Error(ErrorKind::Validation, "table PROP violates laws: " + report.first_failure().dump());
  }

  std::string name() const override { return spec_.value("name", std::string("table")); }
  bool has_color(const Color& c) const override {
    return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
  }
  std::vector<Color> colors() const override { return colors_; }
  bool unital() const override { return !units_.empty(); }
  bool owns(const Element& x) const override {
    auto* p = x.try_as<TablePayload>();
    return p != nullptr && by_name_.count(p->name) > 0;
  }
  bool contains(const Element& x) const override { return owns(x) && by_name_.at(x.as<TablePayload>().name) == x; }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    auto it = components_.find(comp_key(out, in));
    if (it == components_.end()) return std::vector<Element>{};
    return it->second;
  }
  std::optional<std::vector<Element>> all_elements() const override {
    std::vector<Element> r;
    for (const auto& [n, e] : by_name_) r.push_back(e);
    return r;
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    std::vector<Element> cand;
    for (const auto& [n, e] : by_name_)
      if ((!spec.in || *spec.in == e.in()) && (!spec.out || *spec.out == e.out())) cand.push_back(e);
    if (cand.empty()) return std::nullopt;
    return pick(rng, cand);
  }
  json spec_json() const override {
    json j = spec_;
    j["kind"] = "table";
    j.erase("type");
    return j;
  }

 protected:
  Element lookup(const std::string& n) const {
    auto it = by_name_.find(n);
    if (it == by_name_.end()) throw Error(ErrorKind::Schema, "unknown table element " + n);
    return it->second;
  }
  Element result(const Profile& out, const Profile& in, const std::string* found, const std::string& what) const {
    auto it = components_.find(comp_key(out, in));
    if (it == components_.end()) throw Error(ErrorKind::Undefined, what + " leaves the declared components");
    if (found) {
      Element r = lookup(*found);
      if (r.out() != out || r.in() != in) throw Error(ErrorKind::Validation, what + " table entry lands in the wrong component");
      return r;
    }
    if (it->second.size() == 1) return it->second[0];
    throw Error(ErrorKind::Validation, what + " table is not total");
  }
  Element do_hcomp(const Element& x, const Element& y) const override {
    auto it = hcomp_.find({x.as<TablePayload>().name, y.as<TablePayload>().name});
    return result(concat(x.out(), y.out()), concat(x.in(), y.in()), it == hcomp_.end() ? nullptr : &it->second,
                  "hcomp(" + x.as<TablePayload>().name + "," + y.as<TablePayload>().name + ")");
  }
  Element do_vcomp(const Element& x, const Element& y) const override {
    auto it = vcomp_.find({x.as<TablePayload>().name, y.as<TablePayload>().name});
    return result(x.out(), y.in(), it == vcomp_.end() ? nullptr : &it->second,
                  "vcomp(" + x.as<TablePayload>().name + "," + y.as<TablePayload>().name + ")");
  }
  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override {
    auto it = biact_.find({s.one_based(), x.as<TablePayload>().name, t.one_based()});
    return result(act_left(s, x.out()), act_right(x.in(), t), it == biact_.end() ? nullptr : &it->second,
                  "biact(" + s.str() + "," + x.as<TablePayload>().name + "," + t.str() + ")");
  }
  Element do_unit(const Profile& c) const override {
    std::vector<Element> us;
    for (const auto& col : c) {
      auto it = units_.find(col.name());
      if (it == units_.end()) throw Error(ErrorKind::Undefined, "no unit for color " + col.name());
      us.push_back(lookup(it->second));
    }
    return hcomp_all(us);
  }
  Element parse_payload(const Profile&, const Profile&, const json& p) const override {
    if (!p.is_object() || !p.contains("n")) throw Error(ErrorKind::Schema, "table payload expects {n}");
    return lookup(p["n"].get<std::string>());
  }
  std::optional<Element> parse_short(const json& j) const override {
    if (j.is_string()) return lookup(j.get<std::string>());
    return std::nullopt;
  }

 private:
  json spec_;
  std::vector<Color> colors_;
  std::map<std::string, Element> by_name_;
  std::map<PKey, std::vector<Element>> components_;
  std::map<PKey, std::string> hcomp_, vcomp_;
  std::map<std::tuple<std::vector<int>, std::string, std::vector<int>>, std::string> biact_;
  std::map<std::string, std::string> units_;
};

// ---------------------------------------------------------------- weighted

class WeightPayload : public Payload {
 public:
  explicit WeightPayload(int w) : w(w) {}
  json to_json() const override { return {{"w", w}}; }
  int w;
};

class WeightedProp : public Prop {
 public:
  WeightedProp(std::vector<Color> cs, int k) : colors_(std::move(cs)), k_(k) {
    if (k < 1) throw Error(ErrorKind::Schema, "weight modulus must be positive");
  }
  std::string name() const override { return "W" + std::to_string(k_); }
  bool has_color(const Color& c) const override {
    return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
  }
  std::vector<Color> colors() const override { return colors_; }
  bool owns(const Element& x) const override { return x.try_as<WeightPayload>() != nullptr; }
  bool contains(const Element& x) const override {
    if (!owns(x)) return false;
    int w = x.as<WeightPayload>().w;
    return w >= 0 && w < k_ && all_known(*this, x.out()) && all_known(*this, x.in());
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    std::vector<Element> r;
    for (int w = 0; w < k_; ++w) r.push_back(make(out, in, w));
    return r;
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    auto [out, in] = spec_profiles(rng, spec, colors_);
    return make(out, in, uniform_int(rng, 0, k_ - 1));
  }
  json spec_json() const override { return {{"kind", "weighted"}, {"colors", names_json(colors_)}, {"k", k_}}; }
  Element make(const Profile& out, const Profile& in, int w) const {
    return Element(out, in, std::make_shared<WeightPayload>(w));
  }

 protected:
  Element do_hcomp(const Element& x, const Element& y) const override {
    return make(concat(x.out(), y.out()), concat(x.in(), y.in()), (x.as<WeightPayload>().w + y.as<WeightPayload>().w) % k_);
  }
  Element do_vcomp(const Element& x, const Element& y) const override {
    return make(x.out(), y.in(), (x.as<WeightPayload>().w + y.as<WeightPayload>().w) % k_);
  }
  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override {
    return make(act_left(s, x.out()), act_right(x.in(), t), x.as<WeightPayload>().w);
  }
  Element do_unit(const Profile& c) const override { return make(c, c, 0); }
  Element parse_payload(const Profile& out, const Profile& in, const json& p) const override {
    return make(out, in, p.at("w").get<int>());
  }

 private:
  std::vector<Color> colors_;
  int k_;
};

// ----------------------------------------------------------------- product

class ProductPayload : public Payload {
 public:
  ProductPayload(Element a, Element b) : a(std::move(a)), b(std::move(b)) {}
  json to_json() const override { return {{"x", json::array({a.to_json(), b.to_json()})}}; }
  Element a, b;
};

class ProductProp : public Prop {
 public:
  ProductProp(PropPtr a, PropPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return a_->name() + "x" + b_->name(); }
  bool has_color(const Color& c) const override { return a_->has_color(c) && b_->has_color(c); }
  std::vector<Color> colors() const override { return a_->colors(); }
  bool unital() const override { return a_->unital() && b_->unital(); }
  bool owns(const Element& x) const override {
    auto* p = x.try_as<ProductPayload>();
    return p != nullptr && a_->owns(p->a) && b_->owns(p->b);
  }
  bool contains(const Element& x) const override {
    if (!owns(x)) return false;
    const auto& p = x.as<ProductPayload>();
    return a_->contains(p.a) && b_->contains(p.b) && p.a.out() == p.b.out() && p.a.in() == p.b.in();
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    auto ea = a_->enumerate(out, in);
    auto eb = b_->enumerate(out, in);
    if (!ea || !eb) return std::nullopt;
    std::vector<Element> r;
    for (const auto& x : *ea)
      for (const auto& y : *eb) r.push_back(make(x, y));
    return r;
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    for (int attempt = 0; attempt < 20; ++attempt) {
      auto x = a_->sample(rng, spec);
      if (!x) continue;
      SampleSpec s2 = spec;
      s2.in = x->in();
      s2.out = x->out();
      auto y = b_->sample(rng, s2);
      if (y && y->out() == x->out() && y->in() == x->in()) return make(*x, *y);
    }
    return std::nullopt;
  }
  json spec_json() const override { return {{"kind", "product"}, {"factors", json::array({a_->spec_json(), b_->spec_json()})}}; }
  Element make(const Element& x, const Element& y) const {
    return Element(x.out(), x.in(), std::make_shared<ProductPayload>(x, y));
  }
  const PropPtr& factor(int i) const { return i == 0 ? a_ : b_; }

 protected:
  static const ProductPayload& pp(const Element& x) { return x.as<ProductPayload>(); }
  Element do_hcomp(const Element& x, const Element& y) const override {
    return make(a_->hcomp(pp(x).a, pp(y).a), b_->hcomp(pp(x).b, pp(y).b));
  }
  Element do_vcomp(const Element& x, const Element& y) const override {
    return make(a_->vcomp(pp(x).a, pp(y).a), b_->vcomp(pp(x).b, pp(y).b));
  }
  Element do_biact(const Perm& s, const Element& x, const Perm& t) const override {
    return make(a_->biact(s, pp(x).a, t), b_->biact(s, pp(x).b, t));
  }
  Element do_unit(const Profile& c) const override { return make(a_->unit(c), b_->unit(c)); }
  Element parse_payload(const Profile&, const Profile&, const json& p) const override {
    const auto& x = p.at("x");
    return make(a_->parse_element(x.at(0)), b_->parse_element(x.at(1)));
  }

 private:
  PropPtr a_, b_;
};

// ---------------------------------------------------------------- monomial

class MonoPayload : public Payload {
 public:
  MonoPayload(std::vector<int> x, std::vector<int> pi) : x(std::move(x)), pi(std::move(pi)) {}
  json to_json() const override { return {{"m", x}, {"pi", pi}}; }
  std::vector<int> x, pi;
};

class MonomialProp : public Prop {
 public:
  explicit MonomialProp(std::vector<std::vector<int>> mul) : mul_(std::move(mul)), c_(Color::base("c")) {
    int k = static_cast<int>(mul_.size());
    for (const auto& row : mul_)
      if (static_cast<int>(row.size()) != k) throw Error(ErrorKind::Schema, "monoid table must be square");
    for (int a = 0; a < k; ++a) {
      if (mul_[0][a] != a || mul_[a][0] != a) throw Error(ErrorKind::Validation, "0 must be the monoid identity");
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          if (m(m(a, b), c) != m(a, m(b, c))) throw Error(ErrorKind::Validation, "monoid table is not associative");
    }
  }
  std::string name() const override { return "M~S"; }
  bool has_color(const Color& c) const override { return c == c_; }
  std::vector<Color> colors() const override { return {c_}; }
  bool owns(const Element& x) const override { return x.try_as<MonoPayload>() != nullptr; }
  bool contains(const Element& e) const override {
    if (!owns(e) || e.out().size() != e.in().size()) return false;
    for (const auto& c : e.out())
      if (c != c_) return false;
    for (const auto& c : e.in())
      if (c != c_) return false;
    const auto& p = e.as<MonoPayload>();
    if (p.x.size() != e.in().size() || p.pi.size() != e.in().size()) return false;
    for (int v : p.x)
      if (v < 0 || v >= static_cast<int>(mul_.size())) return false;
    try {
      Perm pp(p.pi);
    } catch (const Error&) {
      return false;
    }
    return true;
  }
  std::optional<std::vector<Element>> enumerate(const Profile& out, const Profile& in) const override {
    if (out.size() != in.size()) return std::vector<Element>{};
    int n = static_cast<int>(in.size());
    int k = static_cast<int>(mul_.size());
    std::vector<Element> r;
    std::vector<int> radix(static_cast<std::size_t>(n), k);
    for (const auto& pi : all_perms(n))
      for (long long i = 0; i < tuple_count(radix); ++i) r.push_back(make(unrank(i, radix), pi.images()));
    return r;
  }
  std::optional<Element> sample(Rng& rng, const SampleSpec& spec) const override {
    std::size_t n;
    if (spec.in && spec.out && spec.in->size() != spec.out->size()) return std::nullopt;
    if (spec.in) n = spec.in->size();
    else if (spec.out) n = spec.out->size();
    else n = static_cast<std::size_t>(uniform_int(rng, 1, spec.max_arity));
    std::vector<int> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(uniform_int(rng, 0, static_cast<int>(mul_.size()) - 1));
    return make(x, Perm::random(static_cast<int>(n), rng).images());
  }
  json spec_json() const override { return {{"kind", "monomial"}, {"monoid", mul_}}; }
  Element make(std::vector<int> x, std::vector<int> pi) const {
    Profile p(x.size(), c_);
    return Element(p, p, std::make_shared<MonoPayload>(std::move(x), std::move(pi)));
  }

 protected:
  int m(int a, int b) const { return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  Element do_hcomp(const Element& e, const Element& f) const override {
    const auto& a = e.as<MonoPayload>();
    const auto& b = f.as<MonoPayload>();
    auto x = a.x;
    x.insert(x.end(), b.x.begin(), b.x.end());
    return make(x, Perm::block_sum(Perm(a.pi), Perm(b.pi)).images());
  }
  Element do_vcomp(const Element& e, const Element& f) const override {
    const auto& a = e.as<MonoPayload>();
    const auto& b = f.as<MonoPayload>();
    std::vector<int> x(a.x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = m(a.x[static_cast<std::size_t>(b.pi[i])], b.x[i]);
    return make(x, (Perm(a.pi) * Perm(b.pi)).images());
  }
  Element do_biact(const Perm& s, const Element& e, const Perm& t) const override {
    const auto& a = e.as<MonoPayload>();
    return make(act_right(a.x, t), (s * Perm(a.pi) * t).images());
  }
  Element do_unit(const Profile& c) const override {
    return make(std::vector<int>(c.size(), 0), Perm::identity(static_cast<int>(c.size())).images());
  }
  Element parse_payload(const Profile&, const Profile&, const json& p) const override {
    return make(p.at("m").get<std::vector<int>>(), p.at("pi").get<std::vector<int>>());
  }

 private:
  std::vector<std::vector<int>> mul_;
  Color c_;
};

}  // namespace

json FunctionTable::to_json() const { return {{"t", rows}}; }

std::vector<int> fiber_sizes(const GradedSet& x, const Profile& p) {
  std::vector<int> r;
  for (const auto& c : p) {
    auto it = x.find(c.name());
    if (it == x.end()) throw Error(ErrorKind::UnknownColor, c.name());
    r.push_back(static_cast<int>(it->second.size()));
  }
  return r;
}

long long tuple_count(const std::vector<int>& radix) {
  long long n = 1;
  for (int r : radix) n *= r;
  return n;
}

std::vector<int> unrank(long long r, const std::vector<int>& radix) {
  std::vector<int> t(radix.size());
  for (std::size_t i = radix.size(); i-- > 0;) {
    t[i] = static_cast<int>(r % radix[i]);
    r /= radix[i];
  }
  return t;
}

long long rank(const std::vector<int>& t, const std::vector<int>& radix) {
  long long r = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) r = r * radix[i] + t[i];
  return r;
}

PropPtr make_terminal(const std::vector<std::string>& colors) {
  return std::make_shared<TerminalProp>(make_colors(colors));
}

PropPtr make_initial() { return std::make_shared<InitialProp>(); }

PropPtr make_endomorphism(const GradedSet& x) { return std::make_shared<EndoProp>(x); }

PropPtr make_table_prop(const json& spec) {
  auto p = std::make_shared<TableProp>(spec);
  p->validate();
  return p;
}

PropPtr make_weighted(const std::vector<std::string>& colors, int k) {
  return std::make_shared<WeightedProp>(make_colors(colors), k);
}

PropPtr make_product(const PropPtr& a, const PropPtr& b) {
  for (const auto& c : a->colors())
    if (!b->has_color(c)) throw Error(ErrorKind::UnknownColor, "product factors need the same colors");
  return std::make_shared<ProductProp>(a, b);
}

PropMap product_projection(const PropPtr& product, int which) {
  auto* p = dynamic_cast<const ProductProp*>(product.get());
  if (!p) throw Error(ErrorKind::Owner, "not a product PROP");
  return PropMap{product, p->factor(which),
                 [which](const Element& x) {
                   const auto& pp = x.as<ProductPayload>();
                   return which == 0 ? pp.a : pp.b;
                 },
                 {}, "proj" + std::to_string(which),
                 [p, which](const Element& x) {
                   auto other = p->factor(1 - which)->enumerate(x.out(), x.in());
                   if (!other) throw Error(ErrorKind::Unsupported, "fiber of a projection needs a finite factor component");
                   std::vector<Element> r;
                   for (const auto& y : *other) r.push_back(which == 0 ? p->make(x, y) : p->make(y, x));
                   return r;
                 }};
}

PropPtr make_monomial(const std::vector<std::vector<int>>& mul) { return std::make_shared<MonomialProp>(mul); }

std::vector<std::vector<int>> bool_maps_monoid() {
  // Maps as value tables f(0), f(1): id=(0,1), not=(1,0), c0=(0,0), c1=(1,1).
  const std::vector<std::pair<int, int>> maps = {{0, 1}, {1, 0}, {0, 0}, {1, 1}};
  auto index = [&](std::pair<int, int> f) {
    return static_cast<int>(std::find(maps.begin(), maps.end(), f) - maps.begin());
  };
  std::vector<std::vector<int>> mul(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto fa = maps[static_cast<std::size_t>(a)], fb = maps[static_cast<std::size_t>(b)];
      auto ap = [&](std::pair<int, int> f, int v) { return v == 0 ? f.first : f.second; };
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = index({ap(fa, ap(fb, 0)), ap(fa, ap(fb, 1))});
    }
  return mul;
}

PropMap map_to_terminal(const PropPtr& source, const PropPtr& terminal) {
  return PropMap{source, terminal,
                 [terminal](const Element& x) { return terminal->enumerate(x.out(), x.in())->front(); },
                 {}, "!",
                 [source](const Element& x) {
                   auto xs = source->enumerate(x.out(), x.in());
                   if (!xs) throw Error(ErrorKind::Unsupported, source->name() + " cannot enumerate a fiber");
                   return *xs;
                 }};
}

}  // namespace hda
