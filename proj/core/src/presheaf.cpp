#include "hda/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hda/metagraph.hpp"
#include "hda/slice.hpp"

namespace hda {

namespace {

bool dim_key_less(const Propertope& a, const Propertope& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.key() < b.key();
}

std::size_t face_pos(const Propertope& g, const Face& f) {
  return f.dir == FaceDir::In ? static_cast<std::size_t>(f.index) : g.element().in().size() + static_cast<std::size_t>(f.index);
}

const std::vector<json>& point_cells() {
  static const std::vector<json> p{json("*")};
  return p;
}

const std::vector<json>& no_cells() {
  static const std::vector<json> p;
  return p;
}

json shape_ref(const Propertope& g) { return encode_metagraph(g); }

template <class F>
void try_add(std::vector<Propertope>& out, F make) {
  try {
    out.push_back(make());
  } catch (const Error&) {
  }
}

}  // namespace

// ---- universes ----

std::vector<Propertope> face_closure(std::vector<Propertope> shapes) {
  std::set<Propertope> seen;
  std::vector<Propertope> stack = shapes;
  while (!stack.empty()) {
    Propertope g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    for (const auto& f : faces(g)) stack.push_back(face_target(g, f));
  }
  std::vector<Propertope> r(seen.begin(), seen.end());
  std::sort(r.begin(), r.end(), dim_key_less);
  return r;
}

std::vector<Propertope> standard_universe(const PropertopeCategory& cat, const UniverseOptions& opt) {
  const Prop& p = *cat.base();
  std::vector<Propertope> all = p.colors();
  if (opt.max_dim < 1) return face_closure(all);
  std::vector<Propertope> ing;
  {
    auto es = bounded_elements(p, opt.max_arity);
    std::sort(es.begin(), es.end(), [](const Element& a, const Element& b) {
      std::size_t sa = a.in().size() + a.out().size(), sb = b.in().size() + b.out().size();
      return sa != sb ? sa < sb : a.key() < b.key();
    });
    for (const auto& e : es) all.push_back(Color::of(e));
    for (std::size_t i = 0; i < es.size() && static_cast<int>(i) < opt.ingredients; ++i) ing.push_back(Color::of(es[i]));
  }
  for (int k = 2; k <= opt.max_dim; ++k) {
    std::vector<Propertope> units, tensors, circs, twisted;
    for (const auto& a : ing) try_add(units, [&] { return cat.unit_tensor({a}); });
    if (ing.size() >= 2) try_add(units, [&] { return cat.unit_tensor({ing[0], ing[1]}); });
    for (const auto& a : ing)
      for (const auto& b : ing) {
        try_add(tensors, [&] { return cat.tensor(a, b); });
        if (a.element().in() == b.element().out()) try_add(circs, [&] { return cat.circ(a, b); });
      }
    if (opt.twisted)
      for (const auto& a : ing) {
        int m = static_cast<int>(a.element().out().size()), n = static_cast<int>(a.element().in().size());
        if (m > 3 || n > 3) continue;
        for (const auto& s : all_perms(m))
          for (const auto& t : all_perms(n))
            if (!s.is_identity() || !t.is_identity()) try_add(twisted, [&] { return cat.twisted(s, a, t); });
      }
    std::vector<std::vector<Propertope>*> kinds{&units, &tensors, &circs, &twisted};
    for (auto* kd : kinds) all.insert(all.end(), kd->begin(), kd->end());
    std::vector<Propertope> next;
    for (std::size_t i = 0; static_cast<int>(next.size()) < opt.ingredients; ++i) {
      bool any = false;
      for (auto* kd : kinds)
        if (i < kd->size() && static_cast<int>(next.size()) < opt.ingredients) {
          next.push_back((*kd)[i]);
          any = true;
        }
      if (!any) break;
    }
    ing = std::move(next);
  }
  return face_closure(all);
}

// ---- PropertopicSet ----

PropertopicSet::PropertopicSet(std::shared_ptr<const PropertopeCategory> cat, int bound)
    : cat_(std::move(cat)), bound_(bound) {}

std::size_t PropertopicSet::size(const Propertope& g) const { return cells(g).size(); }

const std::vector<json>& PropertopicSet::cells(const Propertope& g) const {
  auto it = entries_.find(g);
  if (it != entries_.end()) return it->second.cells;
  return g.dim() < singleton_below_ ? point_cells() : no_cells();
}

int PropertopicSet::index_of(const Propertope& g, const json& cell) const {
  auto it = index_.find(g);
  if (it == index_.end()) return g.dim() < singleton_below_ && cell == json("*") ? 0 : -1;
  auto jt = it->second.find(cell.dump());
  return jt == it->second.end() ? -1 : jt->second;
}

int PropertopicSet::face(const Propertope& g, std::size_t f, int x) const {
  auto it = entries_.find(g);
  if (it == entries_.end()) {
    if (g.dim() < singleton_below_) return 0;
    throw Error(ErrorKind::Validation, "face of an unsupported propertope");
  }
  return it->second.face.at(f).at(static_cast<std::size_t>(x));
}

int PropertopicSet::face(const Propertope& g, const Face& f, int x) const { return face(g, face_pos(g, f), x); }

int PropertopicSet::apply(const Chain& c, int x) const {
  Propertope at = c.source;
  for (const auto& f : c.faces) {
    x = face(at, f, x);
    at = face_target(at, f);
  }
  return x;
}

void PropertopicSet::set(const Propertope& g, Entry e) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < e.cells.size(); ++i)
    if (!idx.emplace(e.cells[i].dump(), static_cast<int>(i)).second)
      throw Error(ErrorKind::Validation, "repeated cell " + e.cells[i].dump());
  index_[g] = std::move(idx);
  entries_[g] = std::move(e);
}

PropertopicSet::Entry& PropertopicSet::entry(const Propertope& g) { return entries_.at(g); }

const PropertopicSet::Entry* PropertopicSet::find(const Propertope& g) const {
  auto it = entries_.find(g);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Propertope> PropertopicSet::support() const {
  std::vector<Propertope> r;
  for (const auto& [g, e] : entries_) r.push_back(g);
  std::sort(r.begin(), r.end(), dim_key_less);
  return r;
}

json PropertopicSet::to_json() const {
  json shapes = json::array();
  for (const auto& g : support()) {
    const Entry& e = entries_.at(g);
    json fs = json::object();
    auto fl = faces(g);
    for (std::size_t f = 0; f < fl.size(); ++f) fs[fl[f].str()] = e.face[f];
    shapes.push_back({{"shape", shape_ref(g)}, {"cells", e.cells}, {"faces", fs}});
  }
  json j = {{"type", "ptset"}, {"bound", bound_}, {"singleton_below", singleton_below_}, {"shapes", shapes}};
  j["default"] = singleton_below_ > 0 ? "singleton-below" : "empty";
  try {
    j["base"] = base()->spec_json();
  } catch (const Error&) {
  }
  return j;
}

PropertopicSet PropertopicSet::from_json(const json& j, std::shared_ptr<const PropertopeCategory> cat) {
  if (!j.is_object() || !j.contains("shapes") || !j.contains("bound")) throw Error(ErrorKind::Schema, "ptset needs bound and shapes");
  PropertopicSet x(cat, j["bound"].get<int>());
  x.set_singleton_below(j.value("singleton_below", 0));
  for (std::size_t i = 0; i < j["shapes"].size(); ++i) {
    const json& sj = j["shapes"][i];
    std::string where = "shapes[" + std::to_string(i) + "]";
    try {
      Propertope g = decode_metagraph(sj.at("shape"), cat->base());
      Entry e;
      e.cells = sj.at("cells").get<std::vector<json>>();
      for (const auto& f : faces(g)) {
        if (!sj.at("faces").contains(f.str())) throw Error(ErrorKind::Schema, "missing face " + f.str());
        e.face.push_back(sj["faces"][f.str()].get<std::vector<int>>());
      }
      x.set(g, std::move(e));
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Schema, where + ": " + e.what());
    }
  }
  return x;
}

// ---- validation ----

LawReport validate_presheaf(const PropertopicSet& x) {
  LawReport rep;
  rep.subject = "propertopic set over " + x.base()->name();
  rep.mode = "exhaustive";
  for (const char* law : {"faces", "horizontal", "vertical", "unit", "equivariance"}) rep.laws.push_back({law, true, 0, 0, std::nullopt});
  const auto& cat = *x.category();
  for (const auto& g : x.support()) {
    const auto* e = x.find(g);
    auto fl = faces(g);
    auto& fr = rep.at("faces");
    bool faces_ok = true;
    if (e->face.size() != fl.size()) {
      faces_ok = false;
      if (fr.pass) fr.witness = json{{"shape", shape_ref(g)}, {"problem", "face count"}};
      fr.pass = false;
    }
    for (std::size_t f = 0; faces_ok && f < fl.size(); ++f) {
      Propertope t = face_target(g, fl[f]);
      ++fr.checked;
      std::string problem;
      if (!x.supported(t)) problem = "unsupported target";
      else if (e->face[f].size() != e->cells.size()) problem = "face function size";
      else
        for (int v : e->face[f])
          if (v < 0 || static_cast<std::size_t>(v) >= x.size(t)) problem = "face value out of range";
      if (!problem.empty()) {
        faces_ok = false;
        if (fr.pass) fr.witness = json{{"shape", shape_ref(g)}, {"face", fl[f].str()}, {"problem", problem}};
        fr.pass = false;
      }
    }
    if (!faces_ok) continue;
    for (const auto& rel : cat.relations(g)) {
      auto& lr = rep.at(rel.family);
      Chain l{g, rel.lhs}, r{g, rel.rhs};
      for (std::size_t c = 0; c < e->cells.size(); ++c) {
        ++lr.checked;
        int a = -1, b = -1;
        try {
          a = x.apply(l, static_cast<int>(c));
          b = x.apply(r, static_cast<int>(c));
        } catch (const std::exception&) {
        }
        if (a >= 0 && a == b) continue;
        if (lr.pass) {
          json fa = json::array(), fb = json::array();
          for (const auto& f : rel.lhs) fa.push_back(f.str());
          for (const auto& f : rel.rhs) fb.push_back(f.str());
          Propertope t = l.target();
          lr.witness = json{{"shape", shape_ref(g)}, {"lhs", fa}, {"rhs", fb}, {"cell", e->cells[c]},
                            {"lhs_value", a >= 0 ? x.cells(t)[static_cast<std::size_t>(a)] : json()},
                            {"rhs_value", b >= 0 ? x.cells(t)[static_cast<std::size_t>(b)] : json()}};
        }
        lr.pass = false;
      }
    }
  }
  return rep;
}

// ---- horns, boundaries, fillings ----

std::vector<int> fillings(const PropertopicSet& x, const Propertope& g, const std::vector<int>& ins,
                          const std::optional<std::vector<int>>& outs) {
  std::vector<int> r;
  const auto* e = x.find(g);
  if (e == nullptr) return r;
  std::size_t r_in = g.element().in().size();
  for (std::size_t c = 0; c < e->cells.size(); ++c) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < r_in; ++i) ok = e->face[i][c] == ins[i];
    if (ok && outs)
      for (std::size_t j = 0; ok && j < outs->size(); ++j) ok = e->face[r_in + j][c] == (*outs)[j];
    if (ok) r.push_back(static_cast<int>(c));
  }
  return r;
}

void for_each_horn(const PropertopicSet& x, const Propertope& g, const std::function<void(const std::vector<int>&)>& f,
                   std::size_t cap) {
  const Profile& in = g.element().in();
  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& a : in) {
    sizes.push_back(x.size(a));
    if (sizes.back() == 0) return;
    total *= sizes.back();
    if (total > cap) throw Error(ErrorKind::Cap, "more than " + std::to_string(cap) + " horns");
  }
  std::vector<int> t(in.size(), 0);
  while (true) {
    f(t);
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++t[i]) < sizes[i]) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (t.empty()) return;
  }
}

void for_each_boundary(const PropertopicSet& x, const Propertope& g, const std::function<void(const std::vector<int>&)>& f,
                       std::size_t cap) {
  auto fl = faces(g);
  std::vector<Propertope> targets;
  std::vector<std::size_t> sizes;
  for (const auto& fc : fl) {
    targets.push_back(face_target(g, fc));
    sizes.push_back(x.size(targets.back()));
    if (sizes.back() == 0) return;
  }
  struct Side {
    std::size_t pos;
    Chain tail;
  };
  struct Check {
    Side a, b;
  };
  std::vector<std::vector<Check>> checks(fl.size());
  for (const auto& rel : x.category()->relations(g)) {
    Side a{face_pos(g, rel.lhs[0]), Chain{face_target(g, rel.lhs[0]), {rel.lhs.begin() + 1, rel.lhs.end()}}};
    Side b{face_pos(g, rel.rhs[0]), Chain{face_target(g, rel.rhs[0]), {rel.rhs.begin() + 1, rel.rhs.end()}}};
    checks[std::max(a.pos, b.pos)].push_back({a, b});
  }
  std::vector<int> t(fl.size(), 0);
  std::size_t visited = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == fl.size()) {
      f(t);
      return;
    }
    for (std::size_t v = 0; v < sizes[k]; ++v) {
      if (++visited > cap) throw Error(ErrorKind::Cap, "boundary search exceeded " + std::to_string(cap) + " steps");
      t[k] = static_cast<int>(v);
      bool ok = true;
      for (const auto& c : checks[k]) {
        if (x.apply(c.a.tail, t[c.a.pos]) != x.apply(c.b.tail, t[c.b.pos])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
    }
  };
  rec(0);
}

// ---- weak-n ----

namespace {

json cells_json(const PropertopicSet& x, const Propertope& g, const std::vector<int>& idx, std::size_t from, std::size_t to) {
  json r = json::array();
  for (std::size_t i = from; i < to; ++i) {
    auto fl = faces(g);
    r.push_back(x.cells(face_target(g, fl[i]))[static_cast<std::size_t>(idx[i])]);
  }
  return r;
}

// Cells of g grouped by their in-face tuple (or full face tuple).
std::map<std::vector<int>, std::vector<int>> group_cells(const PropertopicSet& x, const Propertope& g, bool with_outs) {
  std::map<std::vector<int>, std::vector<int>> m;
  const auto* e = x.find(g);
  if (e == nullptr) return m;
  std::size_t k = with_outs ? e->face.size() : g.element().in().size();
  for (std::size_t c = 0; c < e->cells.size(); ++c) {
    std::vector<int> key;
    for (std::size_t f = 0; f < k; ++f) key.push_back(e->face[f][c]);
    m[key].push_back(static_cast<int>(c));
  }
  return m;
}

}  // namespace

LawReport check_weak_n(const PropertopicSet& x, int n, const WeakOptions& opt) {
  LawReport rep;
  rep.subject = "weak-" + std::to_string(n) + " up to dimension " + std::to_string(x.bound());
  rep.mode = "exhaustive";
  LawReport pv = validate_presheaf(x);
  rep.laws.push_back({"presheaf", pv.ok(), 0, 0, std::nullopt});
  for (const auto& l : pv.laws) rep.laws.front().checked += l.checked;
  if (!pv.ok()) rep.laws.front().witness = pv.first_failure();
  rep.laws.push_back({"horn-filling", true, 0, 0, std::nullopt});
  rep.laws.push_back({"unique-horn-filling", true, 0, 0, std::nullopt});
  rep.laws.push_back({"unique-boundary-filling", true, 0, 0, std::nullopt});
  if (!rep.laws.front().pass) {
    // Face data is unusable when the faces themselves are broken.
    if (!pv.at("faces").pass) return rep;
  }
  for (const auto& g : x.support()) {
    int d = g.dim();
    if (d < 1 || d > x.bound()) continue;
    std::size_t r_in = g.element().in().size();
    if (d <= n + 1) {
      auto groups = group_cells(x, g, false);
      auto& law = rep.at(d <= n ? "horn-filling" : "unique-horn-filling");
      for_each_horn(
          x, g,
          [&](const std::vector<int>& y) {
            ++law.checked;
            auto it = groups.find(y);
            std::size_t k = it == groups.end() ? 0 : it->second.size();
            bool ok = d <= n ? k >= 1 : k == 1;
            if (!ok && law.pass)
              law.witness = json{{"shape", shape_ref(g)}, {"horn", cells_json(x, g, y, 0, r_in)}, {"fillings", k}};
            if (!ok) law.pass = false;
          },
          opt.cap);
    } else {
      auto groups = group_cells(x, g, true);
      auto& law = rep.at("unique-boundary-filling");
      std::size_t found = 0;
      for_each_boundary(
          x, g,
          [&](const std::vector<int>& t) {
            ++law.checked;
            auto it = groups.find(t);
            std::size_t k = it == groups.end() ? 0 : it->second.size();
            found += k;
            if (k != 1 && law.pass)
              law.witness = json{{"shape", shape_ref(g)},
                                 {"inputs", cells_json(x, g, t, 0, r_in)},
                                 {"outputs", cells_json(x, g, t, r_in, t.size())},
                                 {"fillings", k}};
            if (k != 1) law.pass = false;
          },
          opt.cap);
      (void)found;
    }
  }
  return rep;
}

// ---- maps ----

PropertopicMap identity_map(const PropertopicSet& x) {
  PropertopicMap m{&x, &x, {}};
  for (const auto& g : x.support()) {
    std::vector<int> id(x.size(g));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    m.fn[g] = id;
  }
  return m;
}

PropertopicSet terminal_set(std::shared_ptr<const PropertopeCategory> cat, const std::vector<Propertope>& shapes, int bound) {
  PropertopicSet p(std::move(cat), bound);
  for (const auto& g : face_closure(shapes)) {
    PropertopicSet::Entry e;
    e.cells = point_cells();
    e.face.assign(faces(g).size(), std::vector<int>{0});
    p.set(g, std::move(e));
  }
  return p;
}

PropertopicMap map_to_point(const PropertopicSet& x, const PropertopicSet& point) {
  PropertopicMap m{&x, &point, {}};
  for (const auto& g : x.support()) m.fn[g] = std::vector<int>(x.size(g), 0);
  return m;
}

LawReport is_fibration(const PropertopicMap& p) {
  LawReport rep;
  rep.subject = "propertopic map";
  rep.mode = "exhaustive";
  rep.laws.push_back({"naturality", true, 0, 0, std::nullopt});
  rep.laws.push_back({"lift", true, 0, 0, std::nullopt});
  const auto& X = *p.source;
  const auto& Y = *p.target;
  auto F = [&](const Propertope& g, int c) -> int {
    auto it = p.fn.find(g);
    if (it != p.fn.end()) return it->second.at(static_cast<std::size_t>(c));
    return Y.supported(g) && Y.size(g) == 1 ? 0 : -1;
  };
  auto& nat = rep.at("naturality");
  for (const auto& g : X.support()) {
    auto fl = faces(g);
    for (std::size_t c = 0; c < X.size(g); ++c) {
      int fc = F(g, static_cast<int>(c));
      for (std::size_t f = 0; f < fl.size(); ++f) {
        ++nat.checked;
        Propertope t = face_target(g, fl[f]);
        int lhs = F(t, X.face(g, f, static_cast<int>(c)));
        int rhs = fc < 0 || !Y.supported(g) ? -2 : Y.face(g, f, fc);
        if (lhs != rhs) {
          if (nat.pass) nat.witness = json{{"shape", shape_ref(g)}, {"cell", X.cells(g)[c]}, {"face", fl[f].str()}};
          nat.pass = false;
        }
      }
    }
  }
  if (!nat.pass) return rep;
  auto& lift = rep.at("lift");
  for (const auto& g : X.support()) {
    if (g.dim() < 1 || !Y.supported(g)) continue;
    std::size_t r_in = g.element().in().size();
    auto groups = group_cells(X, g, false);
    auto ygroups = group_cells(Y, g, false);
    for_each_horn(X, g, [&](const std::vector<int>& y) {
      std::vector<int> fy;
      for (std::size_t i = 0; i < r_in; ++i) fy.push_back(F(g.element().in()[i], y[i]));
      auto yt = ygroups.find(fy);
      if (yt == ygroups.end()) return;
      auto xt = groups.find(y);
      for (int w : yt->second) {
        ++lift.checked;
        bool found = false;
        if (xt != groups.end())
          for (int c : xt->second) found = found || F(g, c) == w;
        if (!found) {
          if (lift.pass)
            lift.witness = json{{"shape", shape_ref(g)}, {"horn", cells_json(X, g, y, 0, r_in)}, {"below", Y.cells(g)[static_cast<std::size_t>(w)]}};
          lift.pass = false;
        }
      }
    });
  }
  return rep;
}

// ---- ψ and φ ----

PropertopicSet psi_build(const AlgebraPtr& a, int n, const std::vector<Propertope>& universe) {
  if (n < 0) throw Error(ErrorKind::Arity, "n must be non-negative");
  PropPtr p = a->prop();
  for (int i = 0; i < n; ++i) {
    const auto* s = as_slice(*p);
    if (s == nullptr) throw Error(ErrorKind::Arity, "algebra is not over an iterated slice of depth " + std::to_string(n));
    p = s->base();
  }
  auto cat = std::make_shared<PropertopeCategory>(p);
  std::vector<Propertope> shapes = universe;
  std::sort(shapes.begin(), shapes.end(), dim_key_less);
  std::set<Propertope> have(shapes.begin(), shapes.end());
  int bound = 0;
  for (const auto& g : shapes) {
    bound = std::max(bound, g.dim());
    for (const auto& f : faces(g))
      if (!have.count(face_target(g, f))) throw Error(ErrorKind::Validation, "universe is not face-closed at " + g.key().substr(0, 120));
  }
  PropertopicSet x(cat, bound);
  x.set_singleton_below(n);
  for (const auto& g : shapes) {
    int d = g.dim();
    auto fl = faces(g);
    PropertopicSet::Entry e;
    if (d < n) {
      e.cells = point_cells();
      e.face.assign(fl.size(), std::vector<int>{0});
    } else if (d == n) {
      e.cells = a->carrier(g);
      e.face.assign(fl.size(), std::vector<int>(e.cells.size(), 0));
    } else if (d == n + 1) {
      const Element& el = g.element();
      e.face.assign(fl.size(), {});
      std::size_t r_in = el.in().size();
      for_each_horn(x, g, [&](const std::vector<int>& y) {
        Tuple args;
        for (std::size_t i = 0; i < r_in; ++i) args.push_back(x.cells(el.in()[i])[static_cast<std::size_t>(y[i])]);
        Tuple outs = algebra_act(*a, el, args);
        for (std::size_t i = 0; i < r_in; ++i) e.face[i].push_back(y[i]);
        for (std::size_t j = 0; j < outs.size(); ++j) {
          int k = x.index_of(el.out()[j], outs[j]);
          if (k < 0) throw Error(ErrorKind::Validation, "λ leaves the carrier at " + el.key().substr(0, 120));
          e.face[r_in + j].push_back(k);
        }
        e.cells.push_back(args);
      });
    } else {
      e.face.assign(fl.size(), {});
      for_each_boundary(x, g, [&](const std::vector<int>& t) {
        json cell = json::array();
        for (std::size_t f = 0; f < fl.size(); ++f) {
          cell.push_back(x.cells(face_target(g, fl[f]))[static_cast<std::size_t>(t[f])]);
          e.face[f].push_back(t[f]);
        }
        e.cells.push_back(cell);
      });
    }
    x.set(g, std::move(e));
  }
  return x;
}

std::shared_ptr<TableAlgebra> phi_extract(const PropertopicSet& x, int n) {
  PropPtr q = iterated(x.base(), n);
  auto alg = std::make_shared<TableAlgebra>("phi", q);
  for (const auto& g : x.support())
    if (g.dim() == n) alg->set_carrier(g, x.cells(g));
  for (const auto& g : x.support()) {
    if (g.dim() != n + 1) continue;
    const Element& el = g.element();
    std::size_t r_in = el.in().size();
    auto groups = group_cells(x, g, false);
    const auto* e = x.find(g);
    for_each_horn(x, g, [&](const std::vector<int>& y) {
      auto it = groups.find(y);
      std::size_t k = it == groups.end() ? 0 : it->second.size();
      if (k != 1)
        throw Error(ErrorKind::NotWeak, std::to_string(k) + " fillings of a horn at " + el.key().substr(0, 120));
      int c = it->second.front();
      Tuple args, outs;
      for (std::size_t i = 0; i < r_in; ++i) args.push_back(x.cells(el.in()[i])[static_cast<std::size_t>(y[i])]);
      for (std::size_t j = 0; j < el.out().size(); ++j)
        outs.push_back(x.cells(el.out()[j])[static_cast<std::size_t>(e->face[r_in + j][static_cast<std::size_t>(c)])]);
      alg->set(el, args, outs);
    });
  }
  return alg;
}

std::vector<Tuple> compose_cells(const PropertopicSet& x, const Propertope& g, const std::vector<int>& y) {
  std::vector<Tuple> r;
  std::set<std::string> seen;
  const auto* e = x.find(g);
  if (e == nullptr) return r;
  std::size_t r_in = g.element().in().size();
  for (int c : fillings(x, g, y)) {
    Tuple t;
    for (std::size_t j = 0; j < g.element().out().size(); ++j)
      t.push_back(x.cells(g.element().out()[j])[static_cast<std::size_t>(e->face[r_in + j][static_cast<std::size_t>(c)])]);
    if (seen.insert(json(t).dump()).second) r.push_back(t);
  }
  return r;
}

// ---- underlying category ----

json CategoryData::to_json() const {
  json os = json::array(), ms = json::array(), cs = json::array();
  for (const auto& o : objects) os.push_back({{"shape", o.shape.key()}, {"cell", o.cell}});
  for (const auto& m : morphisms) ms.push_back({{"shape", m.shape.key()}, {"cell", m.cell}, {"source", m.source}, {"target", m.target}});
  for (const auto& [gf, h] : compose) cs.push_back(json::array({gf.first, gf.second, h}));
  return {{"objects", os}, {"morphisms", ms}, {"compose", cs}};
}

CategoryData underlying_category(const PropertopicSet& x, int n) {
  if (n < 1) throw Error(ErrorKind::Arity, "the underlying category needs n ≥ 1");
  const auto& cat = *x.category();
  CategoryData c;
  std::map<std::pair<Propertope, int>, int> obj, mor;
  for (const auto& g : x.support())
    if (g.dim() == n - 1)
      for (std::size_t i = 0; i < x.size(g); ++i) {
        obj[{g, static_cast<int>(i)}] = static_cast<int>(c.objects.size());
        c.objects.push_back({g, static_cast<int>(i)});
      }
  for (const auto& g : x.support()) {
    if (g.dim() != n || g.element().in().size() != 1 || g.element().out().size() != 1) continue;
    Propertope a = g.element().in()[0], b = g.element().out()[0];
    for (std::size_t i = 0; i < x.size(g); ++i) {
      auto s = obj.find({a, x.face(g, std::size_t{0}, static_cast<int>(i))});
      auto t = obj.find({b, x.face(g, std::size_t{1}, static_cast<int>(i))});
      if (s == obj.end() || t == obj.end()) continue;
      mor[{g, static_cast<int>(i)}] = static_cast<int>(c.morphisms.size());
      c.morphisms.push_back({g, static_cast<int>(i), s->second, t->second});
    }
  }
  for (std::size_t fi = 0; fi < c.morphisms.size(); ++fi)
    for (std::size_t gi = 0; gi < c.morphisms.size(); ++gi) {
      const auto& f = c.morphisms[fi];
      const auto& g = c.morphisms[gi];
      if (f.target != g.source) continue;
      Propertope w;
      try {
        w = cat.circ(g.shape, f.shape);
      } catch (const Error&) {
        continue;
      }
      if (!x.stored(w)) continue;
      auto fl = fillings(x, w, {g.cell, f.cell});
      if (fl.size() != 1) throw Error(ErrorKind::NotWeak, std::to_string(fl.size()) + " fillings of a composition horn");
      Propertope gf_shape = w.element().out()[0];
      int cell = x.face(w, Face::out(0), fl.front());
      auto it = mor.find({gf_shape, cell});
      if (it != mor.end()) c.compose[{static_cast<int>(gi), static_cast<int>(fi)}] = it->second;
    }
  return c;
}

LawReport check_associativity(const CategoryData& c) {
  LawReport rep;
  rep.subject = "underlying category";
  rep.mode = "exhaustive";
  rep.laws.push_back({"associativity", true, 0, 0, std::nullopt});
  auto& law = rep.at("associativity");
  auto comp = [&](int g, int f) -> int {
    auto it = c.compose.find({g, f});
    return it == c.compose.end() ? -1 : it->second;
  };
  int m = static_cast<int>(c.morphisms.size());
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (c.morphisms[f].target != c.morphisms[g].source) continue;
      for (int h = 0; h < m; ++h) {
        if (c.morphisms[g].target != c.morphisms[h].source) continue;
        int gf = comp(g, f), hg = comp(h, g);
        int l = gf < 0 ? -1 : comp(h, gf), r = hg < 0 ? -1 : comp(hg, f);
        if (l < 0 || r < 0) {
          ++law.skipped;
          continue;
        }
        ++law.checked;
        if (l != r) {
          if (law.pass) law.witness = json{{"f", f}, {"g", g}, {"h", h}, {"h(gf)", l}, {"(hg)f", r}};
          law.pass = false;
        }
      }
    }
  return rep;
}

// ---- pullback, reflection ----

PropertopicSet pullback(const PropMap& phi, const PropertopicSet& x, std::shared_ptr<const PropertopeCategory> source_cat,
                        const std::vector<Propertope>& universe) {
  auto shapes = face_closure(universe);
  int bound = 0;
  for (const auto& g : shapes) bound = std::max(bound, g.dim());
  PropertopicSet y(std::move(source_cat), bound);
  y.set_singleton_below(x.singleton_below());
  for (const auto& g : shapes) {
    Propertope h = transport(phi, g);
    auto fl = faces(g);
    for (const auto& f : fl)
      if (transport(phi, face_target(g, f)) != face_target(h, f))
        throw Error(ErrorKind::Validation, "transport does not commute with face " + f.str());
    PropertopicSet::Entry e;
    if (const auto* xe = x.find(h)) {
      e = *xe;
    } else if (x.supported(h)) {
      e.cells = point_cells();
      e.face.assign(fl.size(), std::vector<int>{0});
    } else {
      e.face.assign(fl.size(), {});
    }
    y.set(g, std::move(e));
  }
  return y;
}

PropertopicSet em_reflect(const PropertopicSet& x, int n) {
  PropertopicSet y = x;
  y.set_singleton_below(n);
  for (const auto& g : x.support()) {
    if (g.dim() > n) continue;
    PropertopicSet::Entry e = *x.find(g);
    if (g.dim() < n) {
      e.cells = point_cells();
      e.face.assign(e.face.size(), std::vector<int>{0});
    } else {
      for (auto& f : e.face) std::fill(f.begin(), f.end(), 0);
    }
    y.set(g, std::move(e));
  }
  return y;
}

// ---- standard sets ----

StandardSet standard_set(std::shared_ptr<const PropertopeCategory> cat, const Propertope& g, StandardKind kind, int depth_cap) {
  std::map<Propertope, std::vector<std::vector<Face>>> chains;
  std::function<void(const Propertope&, std::vector<Face>&)> walk = [&](const Propertope& at, std::vector<Face>& fs) {
    chains[at].push_back(fs);
    for (const auto& f : faces(at)) {
      fs.push_back(f);
      walk(face_target(at, f), fs);
      fs.pop_back();
    }
  };
  std::vector<Face> start;
  walk(g, start);
  StandardSet out{PropertopicSet(cat, g.dim()), false};
  // Class representative (least member) of every chain, per target.
  std::map<Propertope, std::map<std::vector<Face>, std::vector<Face>>> rep;
  std::map<Propertope, std::vector<std::vector<Face>>> kept;
  for (auto& [t, cs] : chains) {
    auto& rt = rep[t];
    for (const auto& c : cs) {
      if (rt.count(c)) continue;
      bool complete = true;
      auto cls = cat->chain_class(Chain{g, c}, depth_cap, &complete);
      if (!complete) out.approximate = true;
      const auto& least = *std::min_element(cls.begin(), cls.end());
      bool in_horn = false;
      for (const auto& m : cls) {
        rt[m] = least;
        in_horn = in_horn || (!m.empty() && m.front().dir == FaceDir::In);
      }
      bool keep = kind == StandardKind::Delta || (kind == StandardKind::Boundary && !c.empty()) ||
                  (kind == StandardKind::Horn && in_horn);
      if (keep) kept[t].push_back(least);
    }
  }
  std::map<Propertope, std::map<std::vector<Face>, int>> index;
  for (auto& [t, ks] : kept) {
    std::sort(ks.begin(), ks.end());
    for (std::size_t i = 0; i < ks.size(); ++i) index[t][ks[i]] = static_cast<int>(i);
  }
  for (const auto& [t, cs] : chains) {
    PropertopicSet::Entry e;
    auto fl = faces(t);
    e.face.assign(fl.size(), {});
    for (const auto& c : kept[t]) {
      json cell = json::array();
      for (const auto& f : c) cell.push_back(f.str());
      e.cells.push_back(cell);
      for (std::size_t f = 0; f < fl.size(); ++f) {
        auto ext = c;
        ext.push_back(fl[f]);
        Propertope u = face_target(t, fl[f]);
        auto it = rep[u].find(ext);
        int v = -1;
        if (it != rep[u].end()) {
          auto jt = index[u].find(it->second);
          if (jt != index[u].end()) v = jt->second;
        }
        e.face[f].push_back(v);
      }
    }
    out.set.set(t, std::move(e));
  }
  return out;
}

std::vector<std::map<Propertope, std::vector<int>>> all_maps(const PropertopicSet& s, const PropertopicSet& x, std::size_t cap) {
  std::vector<std::pair<Propertope, int>> slots;
  for (const auto& g : s.support())
    for (std::size_t c = 0; c < s.size(g); ++c) slots.push_back({g, static_cast<int>(c)});
  std::map<Propertope, std::vector<int>> cur;
  for (const auto& g : s.support()) cur[g] = std::vector<int>(s.size(g), -1);
  std::vector<std::map<Propertope, std::vector<int>>> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      if (out.size() >= cap) throw Error(ErrorKind::Cap, "more than " + std::to_string(cap) + " maps");
      out.push_back(cur);
      return;
    }
    const auto& [g, c] = slots[k];
    auto fl = faces(g);
    for (std::size_t v = 0; v < x.size(g); ++v) {
      bool ok = true;
      for (std::size_t f = 0; ok && f < fl.size(); ++f) {
        Propertope t = face_target(g, fl[f]);
        int sc = s.face(g, f, c);
        int want = sc < 0 ? -1 : cur[t][static_cast<std::size_t>(sc)];
        ok = want >= 0 && x.face(g, f, static_cast<int>(v)) == want;
      }
      if (!ok) continue;
      cur[g][static_cast<std::size_t>(c)] = static_cast<int>(v);
      rec(k + 1);
      cur[g][static_cast<std::size_t>(c)] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace hda
