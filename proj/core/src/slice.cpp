#include "hda/slice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "hda/evaluate.hpp"

namespace hda {

namespace {

json source_json(const Source& s) { return json::array({s.is_input() ? 0 : s.vertex + 1, s.port + 1}); }

Source parse_source(const json& j, int n_vertices) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error(ErrorKind::Schema, "wire ends are [vertex, port] pairs: " + j.dump());
  int v = j[0].get<int>(), p = j[1].get<int>();
  if (v < 0 || v > n_vertices || p < 1) throw Error(ErrorKind::Schema, "wire end out of range: " + j.dump());
  return v == 0 ? Source::input(p - 1) : Source::at(v - 1, p - 1);
}

}  // namespace

json slice_graph_json(const DecoratedGraph& dg, const std::vector<int>& slots) {
  json vs = json::array();
  for (int v = 0; v < dg.g.n_vertices(); ++v) {
    json ins = json::array();
    for (const auto& s : dg.g.v_in[v]) ins.push_back(source_json(s));
    vs.push_back(json::array({dg.deco[v].to_json(), slots[v] + 1, ins}));
  }
  json outs = json::array();
  for (const auto& s : dg.g.out) outs.push_back(source_json(s));
  return {{"n", dg.g.n_in}, {"v", vs}, {"o", outs}};
}

SlicePayload::SlicePayload(std::string b, std::vector<DecoratedGraph> gs, std::vector<std::vector<int>> ss)
    : base(std::move(b)), graphs(std::move(gs)), slots(std::move(ss)) {
  json g = json::array();
  for (std::size_t j = 0; j < graphs.size(); ++j) g.push_back(slice_graph_json(graphs[j], slots[j]));
  j_ = {{"g", g}};
}

SliceProp::SliceProp(PropPtr base) : base_(std::move(base)) {
  if (!base_->unital()) throw Error(ErrorKind::Unsupported, "slice needs a unital base PROP");
}

bool SliceProp::has_color(const Color& c) const {
  return c.valid() && c.is_element() && base_->contains(c.element());
}

bool SliceProp::owns(const Element& x) const {
  const auto* p = x.try_as<SlicePayload>();
  return p != nullptr && p->base == base_->name();
}

bool SliceProp::contains(const Element& x) const { return owns(x) && validate_slice_element(*this, x).ok(); }

Color SliceProp::parse_color(const json& j) const { return Color::of(base_->parse_element(j)); }

Element SliceProp::build(std::vector<DecoratedGraph> graphs, std::vector<std::vector<int>> slots, bool check) const {
  if (graphs.empty()) throw Error(ErrorKind::Arity, "slice elements need at least one graph");
  if (graphs.size() != slots.size()) throw Error(ErrorKind::Schema, "one slot list per graph is required");
  std::size_t n = 0;
  for (std::size_t j = 0; j < graphs.size(); ++j) {
    if (slots[j].size() != static_cast<std::size_t>(graphs[j].g.n_vertices()))
      throw Error(ErrorKind::Schema, "slot count differs from vertex count in graph " + std::to_string(j + 1));
    n += slots[j].size();
  }
  std::vector<Element> in_elem(n);
  std::vector<char> seen(n, 0);
  for (std::size_t j = 0; j < graphs.size(); ++j) {
    std::vector<int> order(slots[j].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return slots[j][a] < slots[j][b]; });
    graphs[j] = reorder_vertices(graphs[j], order);
    std::vector<int> sorted;
    for (int v : order) sorted.push_back(slots[j][v]);
    slots[j] = sorted;
    for (int v = 0; v < graphs[j].g.n_vertices(); ++v) {
      int k = slots[j][v];
      if (k < 0 || static_cast<std::size_t>(k) >= n || seen[k])
        throw Error(ErrorKind::Validation, "input slots must form a bijection onto 1.." + std::to_string(n));
      seen[k] = 1;
      in_elem[k] = graphs[j].deco[v];
    }
  }
  Profile in, out;
  for (const auto& e : in_elem) in.push_back(Color::of(e));
  for (const auto& g : graphs) out.push_back(Color::of(evaluate(*base_, g)));
  Element x(out, in, std::make_shared<SlicePayload>(base_->name(), std::move(graphs), std::move(slots)));
  if (check) {
    Report r = validate_slice_element(*this, x);
    if (!r.ok()) throw Error(ErrorKind::Validation, r.to_json().dump());
  }
  return x;
}

Element SliceProp::make(std::vector<DecoratedGraph> graphs, std::vector<std::vector<int>> slots) const {
  return build(std::move(graphs), std::move(slots), true);
}

Element SliceProp::from_bookkeeping(const std::vector<DecoratedGraph>& graphs, const Perm& sigma, const Perm& tau) const {
  if (sigma.size() != static_cast<int>(graphs.size())) throw Error(ErrorKind::Arity, "sigma must permute the graphs");
  int n = 0;
  for (const auto& g : graphs) n += g.g.n_vertices();
  if (tau.size() != n) throw Error(ErrorKind::Arity, "tau must permute the vertices");
  Perm ti = tau.inverse();
  std::vector<DecoratedGraph> gs(graphs.size());
  std::vector<std::vector<int>> ss(graphs.size());
  int p = 0;
  for (std::size_t j = 0; j < graphs.size(); ++j) {
    std::vector<int> sl;
    for (int v = 0; v < graphs[j].g.n_vertices(); ++v) sl.push_back(ti(p++));
    gs[sigma(static_cast<int>(j))] = graphs[j];
    ss[sigma(static_cast<int>(j))] = sl;
  }
  return make(std::move(gs), std::move(ss));
}

json SliceProp::file_json(const Element& x) const {
  check_owner(x);
  const auto& p = x.as<SlicePayload>();
  json graphs = json::array(), partition = json::array();
  std::vector<int> tau(x.in().size());
  int flat = 0;
  for (std::size_t j = 0; j < p.graphs.size(); ++j) {
    graphs.push_back(decorated_json(p.graphs[j]));
    partition.push_back(p.graphs[j].g.n_vertices());
    for (int k : p.slots[j]) tau[static_cast<std::size_t>(k)] = flat++;
  }
  return {{"type", "slice-element"},
          {"graphs", graphs},
          {"partition", partition},
          {"sigma", Perm::identity(static_cast<int>(p.graphs.size())).one_based()},
          {"tau", Perm(tau).one_based()}};
}

Element SliceProp::parse_file(const json& j) const {
  if (!j.is_object() || !j.contains("graphs") || !j["graphs"].is_array())
    throw Error(ErrorKind::Schema, "slice element needs a graphs array");
  std::vector<DecoratedGraph> gs;
  int n = 0;
  for (const auto& g : j["graphs"]) {
    gs.push_back(parse_decorated(g, *base_));
    n += gs.back().g.n_vertices();
  }
  if (j.contains("partition")) {
    auto part = j["partition"].get<std::vector<int>>();
    if (part.size() != gs.size()) throw Error(ErrorKind::Schema, "partition length differs from the graph count");
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (part[i] != gs[i].g.n_vertices()) throw Error(ErrorKind::Schema, "partition entry " + std::to_string(i + 1) + " differs from its graph's vertex count");
  }
  Perm sigma = j.contains("sigma") ? Perm::from_one_based(j["sigma"].get<std::vector<int>>())
                                   : Perm::identity(static_cast<int>(gs.size()));
  Perm tau = j.contains("tau") ? Perm::from_one_based(j["tau"].get<std::vector<int>>()) : Perm::identity(n);
  return from_bookkeeping(gs, sigma, tau);
}

Element SliceProp::parse_payload(const Profile& out, const Profile& in, const json& p) const {
  if (!p.is_object() || !p.contains("g") || !p["g"].is_array()) throw Error(ErrorKind::Schema, "slice payload needs g");
  std::vector<DecoratedGraph> gs;
  std::vector<std::vector<int>> ss;
  for (const auto& gj : p["g"]) {
    if (!gj.contains("n") || !gj.contains("v") || !gj.contains("o")) throw Error(ErrorKind::Schema, "slice graph needs n, v, o");
    DecoratedGraph dg;
    dg.g.n_in = gj["n"].get<int>();
    int nv = static_cast<int>(gj["v"].size());
    std::vector<int> sl;
    for (const auto& vj : gj["v"]) {
      if (!vj.is_array() || vj.size() != 3) throw Error(ErrorKind::Schema, "slice vertex is [deco, slot, ins]");
      Element d = base_->parse_element(vj[0]);
      std::vector<Source> ins;
      for (const auto& s : vj[2]) ins.push_back(parse_source(s, nv));
      if (ins.size() != d.in().size()) throw Error(ErrorKind::Arity, "vertex wiring differs from its decoration");
      dg.g.add_vertex(ins, static_cast<int>(d.out().size()));
      dg.deco.push_back(d);
      sl.push_back(vj[1].get<int>() - 1);
    }
    for (const auto& s : gj["o"]) dg.g.out.push_back(parse_source(s, nv));
    dg.in_colors.assign(static_cast<std::size_t>(dg.g.n_in), Color());
    for (int v = 0; v < nv; ++v)
      for (std::size_t q = 0; q < dg.g.v_in[v].size(); ++q) {
        const Source& s = dg.g.v_in[v][q];
        if (s.is_input()) {
          if (s.port >= dg.g.n_in) throw Error(ErrorKind::Schema, "input leg out of range");
          dg.in_colors[static_cast<std::size_t>(s.port)] = dg.deco[v].in()[q];
        }
      }
    for (const auto& c : dg.in_colors)
      if (!c.valid()) throw Error(ErrorKind::Validation, "an input leg feeds no vertex");
    gs.push_back(std::move(dg));
    ss.push_back(std::move(sl));
  }
  Element x = make(std::move(gs), std::move(ss));
  if (x.out() != out || x.in() != in) throw Error(ErrorKind::Validation, "slice element profile differs from its graphs");
  return x;
}

Element SliceProp::do_hcomp(const Element& x, const Element& y) const {
  const auto& px = x.as<SlicePayload>();
  const auto& py = y.as<SlicePayload>();
  auto gs = px.graphs;
  auto ss = px.slots;
  int shift = static_cast<int>(x.in().size());
  for (std::size_t j = 0; j < py.graphs.size(); ++j) {
    gs.push_back(py.graphs[j]);
    auto sl = py.slots[j];
    for (auto& k : sl) k += shift;
    ss.push_back(sl);
  }
  return Element(concat(x.out(), y.out()), concat(x.in(), y.in()),
                 std::make_shared<SlicePayload>(base_->name(), std::move(gs), std::move(ss)));
}

Element SliceProp::do_vcomp(const Element& x, const Element& y) const {
  const auto& px = x.as<SlicePayload>();
  const auto& py = y.as<SlicePayload>();
  std::vector<DecoratedGraph> gs;
  std::vector<std::vector<int>> ss;
  for (std::size_t j = 0; j < px.graphs.size(); ++j) {
    DecoratedGraph g = px.graphs[j];
    std::vector<int> sl = px.slots[j];
    for (int v = g.g.n_vertices() - 1; v >= 0; --v) {
      int k = sl[static_cast<std::size_t>(v)];
      g = substitute(g, v, py.graphs[static_cast<std::size_t>(k)]);
      std::vector<int> next(sl.begin(), sl.begin() + v);
      next.insert(next.end(), py.slots[static_cast<std::size_t>(k)].begin(), py.slots[static_cast<std::size_t>(k)].end());
      next.insert(next.end(), sl.begin() + v + 1, sl.end());
      sl = std::move(next);
    }
    std::vector<int> order(sl.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sl[a] < sl[b]; });
    std::vector<int> sorted;
    for (int v : order) sorted.push_back(sl[v]);
    gs.push_back(reorder_vertices(g, order));
    ss.push_back(sorted);
  }
  return Element(x.out(), y.in(), std::make_shared<SlicePayload>(base_->name(), std::move(gs), std::move(ss)));
}

Element SliceProp::do_biact(const Perm& sigma, const Element& x, const Perm& tau) const {
  const auto& px = x.as<SlicePayload>();
  std::vector<DecoratedGraph> gs(px.graphs.size());
  std::vector<std::vector<int>> ss(px.graphs.size());
  Perm ti = tau.inverse();
  for (std::size_t j = 0; j < px.graphs.size(); ++j) {
    const auto& g = px.graphs[j];
    std::vector<int> sl;
    for (int k : px.slots[j]) sl.push_back(ti(k));
    std::vector<int> order(sl.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sl[a] < sl[b]; });
    std::vector<int> sorted;
    for (int v : order) sorted.push_back(sl[v]);
    std::size_t to = static_cast<std::size_t>(sigma(static_cast<int>(j)));
    gs[to] = reorder_vertices(g, order);
    ss[to] = sorted;
  }
  return Element(act_left(sigma, x.out()), act_right(x.in(), tau),
                 std::make_shared<SlicePayload>(base_->name(), std::move(gs), std::move(ss)));
}

Element SliceProp::do_unit(const Profile& c) const {
  std::vector<DecoratedGraph> gs;
  std::vector<std::vector<int>> ss;
  for (std::size_t i = 0; i < c.size(); ++i) {
    gs.push_back(unit_graph(c[i].element()));
    ss.push_back({static_cast<int>(i)});
  }
  return Element(c, c, std::make_shared<SlicePayload>(base_->name(), std::move(gs), std::move(ss)));
}

Element SliceProp::tensor(const Element& a, const Element& b) const {
  DecoratedGraph dg;
  int na = static_cast<int>(a.in().size()), nb = static_cast<int>(b.in().size());
  dg.g.n_in = na + nb;
  std::vector<Source> ia, ib;
  for (int k = 0; k < na; ++k) ia.push_back(Source::input(k));
  for (int k = 0; k < nb; ++k) ib.push_back(Source::input(na + k));
  dg.g.add_vertex(ia, static_cast<int>(a.out().size()));
  dg.g.add_vertex(ib, static_cast<int>(b.out().size()));
  for (int j = 0; j < static_cast<int>(a.out().size()); ++j) dg.g.out.push_back(Source::at(0, j));
  for (int j = 0; j < static_cast<int>(b.out().size()); ++j) dg.g.out.push_back(Source::at(1, j));
  dg.deco = {a, b};
  dg.in_colors = concat(a.in(), b.in());
  return make({dg}, {{0, 1}});
}

Element SliceProp::circ(const Element& a, const Element& b) const {
  if (a.in() != b.out()) throw Error(ErrorKind::Composition, "circ needs in(α) = out(β)");
  DecoratedGraph dg;
  dg.g.n_in = static_cast<int>(b.in().size());
  std::vector<Source> ia, ib;
  for (int k = 0; k < static_cast<int>(a.in().size()); ++k) ia.push_back(Source::at(1, k));
  for (int k = 0; k < dg.g.n_in; ++k) ib.push_back(Source::input(k));
  dg.g.add_vertex(ia, static_cast<int>(a.out().size()));
  dg.g.add_vertex(ib, static_cast<int>(b.out().size()));
  for (int j = 0; j < static_cast<int>(a.out().size()); ++j) dg.g.out.push_back(Source::at(0, j));
  dg.deco = {a, b};
  dg.in_colors = b.in();
  return make({dg}, {{0, 1}});
}

Element SliceProp::twisted_unit(const Perm& sigma, const Element& a, const Perm& tau) const {
  int n = static_cast<int>(a.in().size()), m = static_cast<int>(a.out().size());
  if (sigma.size() != m || tau.size() != n) throw Error(ErrorKind::Arity, "twisted unit permutations must match α's profiles");
  DecoratedGraph dg;
  dg.g.n_in = n;
  Perm ti = tau.inverse();
  std::vector<Source> ins;
  for (int i = 0; i < n; ++i) ins.push_back(Source::input(ti(i)));
  dg.g.add_vertex(ins, m);
  dg.g.out.assign(static_cast<std::size_t>(m), Source());
  for (int i = 0; i < m; ++i) dg.g.out[static_cast<std::size_t>(sigma(i))] = Source::at(0, i);
  dg.deco = {a};
  dg.in_colors = act_right(a.in(), tau);
  return make({dg}, {{0}});
}

Element SliceProp::unit_tensor(const std::vector<Element>& as) const {
  Profile c;
  for (const auto& a : as) c.push_back(Color::of(a));
  return unit(c);
}

Element SliceProp::random_over(Rng& rng, const std::vector<Element>& decos, int max_groups) const {
  int n = static_cast<int>(decos.size());
  if (n == 0) throw Error(ErrorKind::Arity, "slice elements need at least one input");
  std::vector<int> slots(static_cast<std::size_t>(n));
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  int r = uniform_int(rng, 1, std::max(1, std::min(n, max_groups)));
  // Cut points split the shuffled slots into r non-empty groups.
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(r - 1));
  cuts.push_back(0);
  cuts.push_back(n);
  std::sort(cuts.begin(), cuts.end());
  std::vector<DecoratedGraph> gs;
  std::vector<std::vector<int>> ss;
  for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
    std::vector<int> group(slots.begin() + cuts[g], slots.begin() + cuts[g + 1]);
    std::vector<Element> ds;
    for (int k : group) ds.push_back(decos[static_cast<std::size_t>(k)]);
    DecoratedGraph dg = random_wiring(ds, rng);
    std::vector<int> sl;
    std::vector<char> used(group.size(), 0);
    for (const auto& d : dg.deco)
      for (std::size_t i = 0; i < group.size(); ++i)
        if (!used[i] && decos[static_cast<std::size_t>(group[i])] == d) {
          used[i] = 1;
          sl.push_back(group[i]);
          break;
        }
    gs.push_back(std::move(dg));
    ss.push_back(std::move(sl));
  }
  return build(std::move(gs), std::move(ss), false);
}

std::optional<Element> SliceProp::sample(Rng& rng, const SampleSpec& spec) const {
  if (spec.out) return std::nullopt;
  std::vector<Element> decos;
  if (spec.in) {
    if (spec.in->empty()) return std::nullopt;
    for (const auto& c : *spec.in) {
      if (!c.is_element()) return std::nullopt;
      decos.push_back(c.element());
    }
  } else {
    int n = uniform_int(rng, 1, std::max(1, spec.max_arity));
    SampleSpec bs;
    bs.max_arity = spec.max_arity;
    for (int i = 0; i < n; ++i) {
      auto d = base_->sample(rng, bs);
      if (!d) return std::nullopt;
      decos.push_back(*d);
    }
  }
  try {
    return random_over(rng, decos, spec.max_arity);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Undefined) return std::nullopt;
    throw;
  }
}

Report validate_slice_element(const SliceProp& s, const Element& x) {
  Report r;
  const Prop& base = *s.base();
  const auto* p = x.try_as<SlicePayload>();
  if (p == nullptr || p->base != base.name()) {
    r.add("owner", "not an element of " + s.name());
    return r;
  }
  if (p->graphs.size() != x.out().size()) {
    r.add("outputs", "graph count differs from the output profile");
    return r;
  }
  std::vector<char> seen(x.in().size(), 0);
  for (std::size_t j = 0; j < p->graphs.size(); ++j) {
    const auto& dg = p->graphs[j];
    std::string where = "graph " + std::to_string(j + 1);
    Report gr = validate_decoration(dg, &base, false);
    if (!gr.ok()) {
      r.merge(gr, where + ": ");
      continue;
    }
    const auto& sl = p->slots[j];
    for (int v = 0; v < dg.g.n_vertices(); ++v) {
      if (!base.contains(dg.deco[v])) r.add("decoration", where + " vertex " + std::to_string(v + 1) + " is not in " + base.name());
      int k = sl[static_cast<std::size_t>(v)];
      if (k < 0 || static_cast<std::size_t>(k) >= x.in().size() || seen[k]) {
        r.add("slots", where + " vertex " + std::to_string(v + 1) + " has a repeated or out-of-range slot");
        continue;
      }
      seen[k] = 1;
      if (v > 0 && sl[static_cast<std::size_t>(v - 1)] > k) r.add("normal-form", where + " vertices are not ordered by slot");
      if (Color::of(dg.deco[v]) != x.in()[static_cast<std::size_t>(k)])
        r.add("decoration-order", where + " vertex " + std::to_string(v + 1) + " differs from input " + std::to_string(k + 1));
    }
    try {
      Element ev = evaluate(base, dg);
      if (!x.out()[j].is_element() || ev != x.out()[j].element())
        r.add("evaluation", where + " evaluates to " + ev.key().substr(0, 200) + ", declared " + x.out()[j].key().substr(0, 200));
    } catch (const Error& e) {
      r.add("evaluation", where + ": " + e.what());
    }
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) r.add("slots", "input " + std::to_string(k + 1) + " is not decorated by any vertex");
  return r;
}

PropPtr make_slice(const PropPtr& base) { return std::make_shared<SliceProp>(base); }

PropPtr iterated(const PropPtr& base, int n) {
  if (n < 0) throw Error(ErrorKind::Arity, "iterated slice depth must be non-negative");
  static std::mutex mu;
  static std::map<const Prop*, std::pair<PropPtr, std::vector<PropPtr>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[base.get()];
  if (!entry.first) entry = {base, {base}};
  auto& tower = entry.second;
  while (static_cast<int>(tower.size()) <= n) tower.push_back(make_slice(tower.back()));
  return tower[static_cast<std::size_t>(n)];
}

const SliceProp* as_slice(const Prop& p) { return dynamic_cast<const SliceProp*>(&p); }

}  // namespace hda
