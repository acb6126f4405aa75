#include "hda/propertope.hpp"

#include <set>

#include "hda/slice.hpp"

namespace hda {

std::string Face::str() const { return (dir == FaceDir::In ? "in" : "out") + std::to_string(index + 1); }

Face Face::parse(const std::string& s) {
  auto num = [&](std::size_t from) {
    if (from >= s.size()) throw Error(ErrorKind::Parse, "face needs an index: " + s);
    for (std::size_t i = from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::Parse, "bad face index: " + s);
    int k = std::stoi(s.substr(from));
    if (k < 1) throw Error(ErrorKind::Parse, "face indices are 1-based: " + s);
    return k - 1;
  };
  if (s.rfind("out", 0) == 0) return Face::out(num(3));
  if (s.rfind("in", 0) == 0) return Face::in(num(2));
  throw Error(ErrorKind::Parse, "face must be inK or outK: " + s);
}

Propertope face_target(const Propertope& g, const Face& f) {
  if (!g.is_element()) throw Error(ErrorKind::Arity, "0-dimensional propertopes have no faces");
  const Element& e = g.element();
  const Profile& p = f.dir == FaceDir::In ? e.in() : e.out();
  if (f.index < 0 || static_cast<std::size_t>(f.index) >= p.size())
    throw Error(ErrorKind::Arity, "face " + f.str() + " out of range");
  return p[static_cast<std::size_t>(f.index)];
}

std::vector<Face> faces(const Propertope& g) {
  std::vector<Face> r;
  if (!g.is_element()) return r;
  for (std::size_t i = 0; i < g.element().in().size(); ++i) r.push_back(Face::in(static_cast<int>(i)));
  for (std::size_t j = 0; j < g.element().out().size(); ++j) r.push_back(Face::out(static_cast<int>(j)));
  return r;
}

Propertope Chain::target() const {
  Propertope t = source;
  for (const auto& f : faces) t = face_target(t, f);
  return t;
}

json Chain::to_json() const {
  json fs = json::array();
  for (const auto& f : faces) fs.push_back(f.str());
  return {{"source", source.to_json()}, {"faces", fs}};
}

Chain chain_compose(const Chain& a, const Chain& b) {
  if (a.target() != b.source) throw Error(ErrorKind::Composition, "chain endpoints do not match");
  Chain c = a;
  c.faces.insert(c.faces.end(), b.faces.begin(), b.faces.end());
  return c;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Distinct: return "distinct";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

PropertopeCategory::PropertopeCategory(PropPtr base) : base_(std::move(base)) {}

PropPtr PropertopeCategory::level(int n) const {
  if (n < 1) throw Error(ErrorKind::Arity, "propertope levels start at dimension 1");
  return iterated(base_, n - 1);
}

Report PropertopeCategory::validate(const Propertope& g) const {
  Report r;
  if (!g.valid()) {
    r.add("propertope", "empty color");
    return r;
  }
  if (g.dim() == 0) {
    if (!base_->has_color(g)) r.add("color", g.name() + " is not a color of " + base_->name());
    return r;
  }
  PropPtr p = level(g.dim());
  const Element& e = g.element();
  if (!p->owns(e)) {
    r.add("owner", "not an element of " + p->name());
    return r;
  }
  if (const auto* s = as_slice(*p)) return validate_slice_element(*s, e);
  if (!p->contains(e)) r.add("element", "not an element of " + p->name());
  return r;
}

Propertope PropertopeCategory::tensor(const Propertope& a, const Propertope& b) const {
  if (a.dim() < 1 || a.dim() != b.dim()) throw Error(ErrorKind::Arity, "tensor shapes need two propertopes of one dimension ≥ 1");
  return Color::of(as_slice(*level(a.dim() + 1))->tensor(a.element(), b.element()));
}

Propertope PropertopeCategory::circ(const Propertope& a, const Propertope& b) const {
  if (a.dim() < 1 || a.dim() != b.dim()) throw Error(ErrorKind::Arity, "circ shapes need two propertopes of one dimension ≥ 1");
  return Color::of(as_slice(*level(a.dim() + 1))->circ(a.element(), b.element()));
}

Propertope PropertopeCategory::twisted(const Perm& sigma, const Propertope& a, const Perm& tau) const {
  if (a.dim() < 1) throw Error(ErrorKind::Arity, "twisted units need a propertope of dimension ≥ 1");
  return Color::of(as_slice(*level(a.dim() + 1))->twisted_unit(sigma, a.element(), tau));
}

Propertope PropertopeCategory::unit_tensor(const std::vector<Propertope>& as) const {
  if (as.empty()) throw Error(ErrorKind::Arity, "unit tensors need at least one factor");
  int d = as.front().dim();
  for (const auto& a : as)
    if (a.dim() != d) throw Error(ErrorKind::Arity, "unit tensor factors differ in dimension");
  return Color::of(level(d + 1)->unit(as));
}

Shape PropertopeCategory::shape(const Propertope& g) const {
  Shape s;
  if (!g.is_element()) return s;
  const Element& e = g.element();
  int n = g.dim();
  PropPtr p = level(n);
  if (e.in() == e.out()) {
    try {
      s.unit_tensor = p->unit(e.in()) == e;
    } catch (const Error&) {
    }
  }
  const auto* sp = as_slice(*p);
  if (sp == nullptr) return s;
  if (e.in().size() == 2) {
    Element a = e.in()[0].element(), b = e.in()[1].element();
    try {
      s.tensor = sp->tensor(a, b) == e;
    } catch (const Error&) {
    }
    try {
      if (a.in() == b.out()) s.circ = sp->circ(a, b) == e;
    } catch (const Error&) {
    }
  }
  const auto& pl = e.as<SlicePayload>();
  if (pl.graphs.size() == 1 && pl.graphs[0].g.n_vertices() == 1) {
    const auto& g0 = pl.graphs[0].g;
    const Element& a = pl.graphs[0].deco[0];
    std::vector<int> ti, sg(a.out().size());
    for (const auto& src : g0.v_in[0]) ti.push_back(src.port);
    for (std::size_t k = 0; k < g0.out.size(); ++k) sg[static_cast<std::size_t>(g0.out[k].port)] = static_cast<int>(k);
    Perm tau = Perm(ti).inverse(), sigma(sg);
    if (sp->twisted_unit(sigma, a, tau) == e) {
      s.twisted = true;
      s.sigma = sigma;
      s.tau = tau;
    }
  }
  return s;
}

std::vector<Relation> PropertopeCategory::compute_relations(const Propertope& g) const {
  std::vector<Relation> rs;
  if (!g.is_element()) return rs;
  Shape s = shape(g);
  const Element& e = g.element();
  auto I = Face::in;
  auto O = Face::out;
  if (s.unit_tensor)
    for (std::size_t i = 0; i < e.in().size(); ++i) rs.push_back({"unit", {I(static_cast<int>(i))}, {O(static_cast<int>(i))}});
  if (s.tensor) {
    const Element& a = e.in()[0].element();
    const Element& b = e.in()[1].element();
    int na = static_cast<int>(a.in().size()), ma = static_cast<int>(a.out().size());
    for (int i = 0; i < na; ++i) rs.push_back({"horizontal", {I(0), I(i)}, {O(0), I(i)}});
    for (int k = 0; k < static_cast<int>(b.in().size()); ++k) rs.push_back({"horizontal", {I(1), I(k)}, {O(0), I(na + k)}});
    for (int j = 0; j < ma; ++j) rs.push_back({"horizontal", {I(0), O(j)}, {O(0), O(j)}});
    for (int l = 0; l < static_cast<int>(b.out().size()); ++l) rs.push_back({"horizontal", {I(1), O(l)}, {O(0), O(ma + l)}});
  }
  if (s.circ) {
    const Element& a = e.in()[0].element();
    const Element& b = e.in()[1].element();
    for (int j = 0; j < static_cast<int>(a.out().size()); ++j) rs.push_back({"vertical", {I(0), O(j)}, {O(0), O(j)}});
    for (int i = 0; i < static_cast<int>(b.in().size()); ++i) rs.push_back({"vertical", {I(1), I(i)}, {O(0), I(i)}});
  }
  if (s.twisted)
    for (int j = 0; j < s.sigma.size(); ++j) rs.push_back({"equivariance", {I(0), O(j)}, {O(0), O(s.sigma(j))}});
  return rs;
}

const std::vector<Relation>& PropertopeCategory::relations(const Propertope& g) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rel_cache_.find(g.key());
    if (it != rel_cache_.end()) return it->second;
  }
  auto rs = compute_relations(g);
  std::lock_guard<std::mutex> lock(mu_);
  return rel_cache_.emplace(g.key(), std::move(rs)).first->second;
}

namespace {

// One BFS layer of rewrites; calls visit on every new face sequence and stops
// early when it returns true.
template <class Visit>
bool expand(const PropertopeCategory& cat, const Propertope& source, const std::vector<std::vector<Face>>& frontier,
            std::set<std::vector<Face>>& seen, std::vector<std::vector<Face>>& next, Visit visit) {
  for (const auto& fs : frontier) {
    Propertope at = source;
    for (std::size_t p = 0; p < fs.size(); ++p) {
      for (const auto& rel : cat.relations(at)) {
        for (int side = 0; side < 2; ++side) {
          const auto& from = side == 0 ? rel.lhs : rel.rhs;
          const auto& to = side == 0 ? rel.rhs : rel.lhs;
          if (p + from.size() > fs.size() || !std::equal(from.begin(), from.end(), fs.begin() + static_cast<long>(p))) continue;
          auto cand = fs;
          std::copy(to.begin(), to.end(), cand.begin() + static_cast<long>(p));
          if (!seen.insert(cand).second) continue;
          if (visit(cand)) return true;
          next.push_back(std::move(cand));
        }
      }
      at = face_target(at, fs[p]);
    }
  }
  return false;
}

}  // namespace

Verdict PropertopeCategory::chain_equal(const Chain& a, const Chain& b, int depth_cap) const {
  if (a.source != b.source || a.length() != b.length() || a.target() != b.target()) return Verdict::Distinct;
  if (a.faces == b.faces) return Verdict::Equal;
  std::set<std::vector<Face>> seen{a.faces};
  std::vector<std::vector<Face>> frontier{a.faces};
  for (int depth = 0; depth < depth_cap && !frontier.empty(); ++depth) {
    std::vector<std::vector<Face>> next;
    if (expand(*this, a.source, frontier, seen, next, [&](const std::vector<Face>& c) { return c == b.faces; }))
      return Verdict::Equal;
    frontier = std::move(next);
  }
  return frontier.empty() ? Verdict::Distinct : Verdict::Unknown;
}

std::vector<std::vector<Face>> PropertopeCategory::chain_class(const Chain& c, int depth_cap, bool* complete) const {
  std::set<std::vector<Face>> seen{c.faces};
  std::vector<std::vector<Face>> frontier{c.faces};
  for (int depth = 0; depth < depth_cap && !frontier.empty(); ++depth) {
    std::vector<std::vector<Face>> next;
    expand(*this, c.source, frontier, seen, next, [](const std::vector<Face>&) { return false; });
    frontier = std::move(next);
  }
  if (complete) *complete = frontier.empty();
  return {seen.begin(), seen.end()};
}

std::optional<Propertope> PropertopeCategory::random(int dim, Rng& rng, int max_arity) const {
  if (dim == 0) {
    auto cs = base_->colors();
    return pick(rng, cs);
  }
  SampleSpec spec;
  spec.max_arity = max_arity;
  auto e = level(dim)->sample(rng, spec);
  if (!e) return std::nullopt;
  return Color::of(*e);
}

Propertope transport(const PropMap& phi, const Propertope& g) {
  if (g.dim() == 0) return phi.color(g);
  if (g.dim() == 1) return Color::of(phi.apply(g.element()));
  const auto& pl = g.element().as<SlicePayload>();
  auto graphs = pl.graphs;
  for (auto& dg : graphs) {
    for (auto& d : dg.deco) d = transport(phi, Color::of(d)).element();
    for (auto& c : dg.in_colors) c = transport(phi, c);
  }
  const auto* s = as_slice(*iterated(phi.target, g.dim() - 1));
  return Color::of(s->make(std::move(graphs), pl.slots));
}

}  // namespace hda
