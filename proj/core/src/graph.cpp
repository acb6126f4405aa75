#include "hda/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace hda {

int MNGraph::add_vertex(std::vector<Source> ins, int n_outs) {
  v_in.push_back(std::move(ins));
  v_out.push_back(n_outs);
  return n_vertices() - 1;
}

namespace {

std::map<Source, Sink> sink_map(const MNGraph& g) {
  std::map<Source, Sink> m;
  for (int v = 0; v < g.n_vertices(); ++v)
    for (int p = 0; p < static_cast<int>(g.v_in[v].size()); ++p) m[g.v_in[v][p]] = Sink{v, p};
  for (int j = 0; j < g.n_out(); ++j) m[g.out[j]] = Sink{-1, j};
  return m;
}

std::string src_str(const Source& s) {
  return s.is_input() ? "input " + std::to_string(s.port + 1)
                      : "vertex " + std::to_string(s.vertex + 1) + " out-port " + std::to_string(s.port + 1);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Sink MNGraph::sink_of(const Source& s) const {
  for (int v = 0; v < n_vertices(); ++v)
    for (int p = 0; p < static_cast<int>(v_in[v].size()); ++p)
      if (v_in[v][p] == s) return Sink{v, p};
  for (int j = 0; j < n_out(); ++j)
    if (out[j] == s) return Sink{-1, j};
  throw Error(ErrorKind::Validation, "unused " + src_str(s));
}

std::vector<Component> components(const MNGraph& g) {
  int V = g.n_vertices();
  UnionFind uf(V + g.n_in + g.n_out());
  auto node = [&](const Source& s) { return s.is_input() ? V + s.port : s.vertex; };
  for (int v = 0; v < V; ++v)
    for (const auto& s : g.v_in[v]) uf.unite(v, node(s));
  for (int j = 0; j < g.n_out(); ++j) uf.unite(V + g.n_in + j, node(g.out[j]));
  std::map<int, Component> by_root;
  std::vector<int> root_order;
  auto get = [&](int x) -> Component& {
    int r = uf.find(x);
    if (!by_root.count(r)) root_order.push_back(r);
    return by_root[r];
  };
  for (int v = 0; v < V; ++v) get(v).vertices.push_back(v);
  for (int k = 0; k < g.n_in; ++k) get(V + k).inputs.push_back(k);
  for (int j = 0; j < g.n_out(); ++j) get(V + g.n_in + j).outputs.push_back(j);
  std::vector<Component> r, formal;
  for (int root : root_order) {
    auto& c = by_root[root];
    (c.vertices.empty() ? formal : r).push_back(c);
  }
  std::sort(formal.begin(), formal.end(), [](const Component& a, const Component& b) {
    return (a.inputs.empty() ? -1 : a.inputs[0]) < (b.inputs.empty() ? -1 : b.inputs[0]);
  });
  r.insert(r.end(), formal.begin(), formal.end());
  return r;
}

json Report::to_json() const {
  json j = {{"ok", ok()}, {"issues", json::array()}};
  for (const auto& i : issues) j["issues"].push_back({{"condition", i.condition}, {"where", i.where}});
  return j;
}

void Report::merge(const Report& r, const std::string& prefix) {
  for (const auto& i : r.issues) issues.push_back({i.condition, prefix + i.where});
}

std::vector<int> topological_order(const MNGraph& g) {
  int V = g.n_vertices();
  std::vector<int> indeg(static_cast<std::size_t>(V), 0);
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v)
    for (const auto& s : g.v_in[v])
      if (!s.is_input()) {
        succ[s.vertex].push_back(v);
        ++indeg[v];
      }
  std::vector<int> order, ready;
  for (int v = V - 1; v >= 0; --v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (static_cast<int>(order.size()) != V) throw Error(ErrorKind::Validation, "graph has a wheel (directed cycle)");
  return order;
}

Report validate_mn_graph(const MNGraph& g, bool allow_formal) {
  Report r;
  int V = g.n_vertices();
  if (static_cast<int>(g.v_out.size()) != V) {
    r.add("ports", "vertex tables have different lengths");
    return r;
  }
  if (g.n_in < 0) r.add("legs", "negative input count");
  for (int v = 0; v < V; ++v) {
    if (g.v_in[v].empty()) r.add("ports", "vertex " + std::to_string(v + 1) + " has no in-port");
    if (g.v_out[v] < 1) r.add("ports", "vertex " + std::to_string(v + 1) + " has no out-port");
  }
  std::map<Source, int> uses;
  auto use = [&](const Source& s, const std::string& where) {
    bool ok = s.is_input() ? (s.port >= 0 && s.port < g.n_in)
                           : (s.vertex >= 0 && s.vertex < V && s.port >= 0 && s.port < g.v_out[s.vertex]);
    if (!ok) r.add("edges", where + " refers to a missing " + src_str(s));
    else ++uses[s];
  };
  for (int v = 0; v < V; ++v)
    for (int p = 0; p < static_cast<int>(g.v_in[v].size()); ++p)
      use(g.v_in[v][p], "vertex " + std::to_string(v + 1) + " in-port " + std::to_string(p + 1));
  for (int j = 0; j < g.n_out(); ++j) use(g.out[j], "output " + std::to_string(j + 1));
  if (!r.ok()) return r;
  for (int k = 0; k < g.n_in; ++k) {
    int u = uses[Source::input(k)];
    if (u != 1) r.add("legs", "input " + std::to_string(k + 1) + " is used " + std::to_string(u) + " times");
  }
  for (int v = 0; v < V; ++v)
    for (int q = 0; q < g.v_out[v]; ++q) {
      int u = uses[Source::at(v, q)];
      if (u != 1)
        r.add("edges", "vertex " + std::to_string(v + 1) + " out-port " + std::to_string(q + 1) + " is used " +
                           std::to_string(u) + " times");
    }
  if (!r.ok()) return r;
  try {
    topological_order(g);
  } catch (const Error&) {
    r.add("wheels", "the graph contains a directed cycle (there are no wheels)");
    return r;
  }
  auto comps = components(g);
  if (comps.empty()) r.add("components", "graph has no components");
  for (const auto& c : comps)
    if (c.formal() && !allow_formal)
      r.add("components", "component through input " + std::to_string(c.inputs.empty() ? 0 : c.inputs[0] + 1) +
                              " has no vertex");
  return r;
}

MNGraph canonicalize(const MNGraph& g) {
  MNGraph c;
  c.n_in = g.n_in;
  c.v_out = g.v_out;
  c.v_in = g.v_in;
  c.out = g.out;
  return c;
}

namespace {

json port_ref(const Source& s) { return json::array({s.is_input() ? 0 : s.vertex + 1, s.port + 1}); }

Source parse_from(const json& a, const std::string& where) {
  if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
    throw Error(ErrorKind::Schema, where + ": port reference must be [vertex, port]");
  int v = a[0].get<int>(), p = a[1].get<int>();
  if (v < 0 || p < 1) throw Error(ErrorKind::Schema, where + ": port reference out of range");
  return v == 0 ? Source::input(p - 1) : Source::at(v - 1, p - 1);
}

json edges_json(const MNGraph& g, const DecoratedGraph* dg) {
  // Sorted by sink: output legs ([0,j]) first, then vertex in-ports.
  json edges = json::array();
  auto emit = [&](const Source& s, int to_v, int to_p) {
    json e = {{"from", port_ref(s)}, {"to", json::array({to_v, to_p})}};
    if (dg) e["color"] = dg->source_color(s).to_json();
    edges.push_back(e);
  };
  for (int j = 0; j < g.n_out(); ++j) emit(g.out[j], 0, j + 1);
  for (int v = 0; v < g.n_vertices(); ++v)
    for (int p = 0; p < static_cast<int>(g.v_in[v].size()); ++p) emit(g.v_in[v][p], v + 1, p + 1);
  return edges;
}

// Fills v_in/out from an edge list; counts must already be set.
void wire_edges(MNGraph& g, const json& edges, int n_out, std::vector<json>* colors) {
  std::vector<std::vector<int>> seen(g.v_in.size());
  for (std::size_t v = 0; v < g.v_in.size(); ++v) seen[v].assign(g.v_in[v].size(), 0);
  std::vector<int> out_seen(static_cast<std::size_t>(n_out), 0);
  g.out.assign(static_cast<std::size_t>(n_out), Source{});
  if (!edges.is_array()) throw Error(ErrorKind::Schema, "edges must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "edge " + std::to_string(i + 1);
    const auto& e = edges[i];
    if (!e.is_object() || !e.contains("from") || !e.contains("to")) throw Error(ErrorKind::Schema, where + ": expects from/to");
    Source s = parse_from(e["from"], where);
    const auto& to = e["to"];
    if (!to.is_array() || to.size() != 2) throw Error(ErrorKind::Schema, where + ": to must be [vertex, port]");
    int v = to[0].get<int>(), p = to[1].get<int>() - 1;
    if (v == 0) {
      if (p < 0 || p >= n_out || out_seen[p]++) throw Error(ErrorKind::Schema, where + ": bad or repeated output leg");
      g.out[p] = s;
    } else {
      if (v < 1 || v > g.n_vertices() || p < 0 || p >= static_cast<int>(g.v_in[v - 1].size()) || seen[v - 1][p]++)
        throw Error(ErrorKind::Schema, where + ": bad or repeated vertex in-port");
      g.v_in[v - 1][p] = s;
    }
    if (colors && e.contains("color")) colors->push_back(json::array({e["from"], e["to"], e["color"]}));
  }
  for (int j = 0; j < n_out; ++j)
    if (!out_seen[j]) throw Error(ErrorKind::Schema, "output leg " + std::to_string(j + 1) + " has no edge");
  for (std::size_t v = 0; v < seen.size(); ++v)
    for (std::size_t p = 0; p < seen[v].size(); ++p)
      if (!seen[v][p])
        throw Error(ErrorKind::Schema, "vertex " + std::to_string(v + 1) + " in-port " + std::to_string(p + 1) + " has no edge");
}

}  // namespace

json graph_json(const MNGraph& g) {
  json vs = json::array();
  for (int v = 0; v < g.n_vertices(); ++v) vs.push_back({{"in", g.v_in[v].size()}, {"out", g.v_out[v]}});
  return {{"inputs", g.n_in}, {"outputs", g.n_out()}, {"vertices", vs}, {"edges", edges_json(g, nullptr)}};
}

MNGraph parse_graph(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "graph must be an object");
  for (const char* f : {"inputs", "outputs", "vertices", "edges"})
    if (!j.contains(f)) throw Error(ErrorKind::Schema, std::string("graph is missing ") + f);
  MNGraph g;
  g.n_in = j["inputs"].get<int>();
  int n_out = j["outputs"].get<int>();
  if (g.n_in < 1 || n_out < 1) throw Error(ErrorKind::Arity, "graphs need at least one input and one output leg");
  for (std::size_t v = 0; v < j["vertices"].size(); ++v) {
    const auto& vj = j["vertices"][v];
    int ni = vj.at("in").get<int>(), no = vj.at("out").get<int>();
    if (ni < 1 || no < 1) throw Error(ErrorKind::Arity, "vertex " + std::to_string(v + 1) + " needs in- and out-ports");
    g.add_vertex(std::vector<Source>(static_cast<std::size_t>(ni)), no);
  }
  wire_edges(g, j["edges"], n_out, nullptr);
  return g;
}

Color DecoratedGraph::source_color(const Source& s) const {
  if (s.is_input()) return in_colors.at(static_cast<std::size_t>(s.port));
  return deco.at(static_cast<std::size_t>(s.vertex)).out().at(static_cast<std::size_t>(s.port));
}

Profile DecoratedGraph::out_colors() const {
  Profile p;
  for (const auto& s : g.out) p.push_back(source_color(s));
  return p;
}

bool DecoratedGraph::operator==(const DecoratedGraph& o) const {
  return g == o.g && in_colors == o.in_colors && deco == o.deco;
}

Report validate_decoration(const DecoratedGraph& dg, const Prop* p, bool allow_formal) {
  Report r = validate_mn_graph(dg.g, allow_formal);
  if (!r.ok()) return r;
  const auto& g = dg.g;
  if (static_cast<int>(dg.deco.size()) != g.n_vertices()) {
    r.add("decoration", "decoration count differs from vertex count");
    return r;
  }
  if (static_cast<int>(dg.in_colors.size()) != g.n_in) {
    r.add("decoration", "input color count differs from input legs");
    return r;
  }
  for (int v = 0; v < g.n_vertices(); ++v) {
    const auto& x = dg.deco[v];
    std::string at = "vertex " + std::to_string(v + 1);
    if (p && !p->contains(x)) r.add("decoration", at + " is not decorated by an element of " + p->name());
    if (x.out().size() != static_cast<std::size_t>(g.v_out[v]) || x.in().size() != g.v_in[v].size()) {
      r.add("color-matching", at + " port counts differ from its decoration's profiles");
      continue;
    }
  }
  if (!r.ok()) return r;
  for (int v = 0; v < g.n_vertices(); ++v)
    for (int q = 0; q < static_cast<int>(g.v_in[v].size()); ++q) {
      Color have = dg.source_color(g.v_in[v][q]);
      Color want = dg.deco[v].in()[q];
      if (have != want)
        r.add("color-matching", "vertex " + std::to_string(v + 1) + " in-port " + std::to_string(q + 1) + ": edge color " +
                                    have.name() + " but decoration expects " + want.name());
    }
  return r;
}

DecoratedGraph unit_graph(const Element& x) {
  DecoratedGraph dg;
  dg.g.n_in = static_cast<int>(x.in().size());
  std::vector<Source> ins;
  for (int k = 0; k < dg.g.n_in; ++k) ins.push_back(Source::input(k));
  dg.g.add_vertex(ins, static_cast<int>(x.out().size()));
  for (int j = 0; j < static_cast<int>(x.out().size()); ++j) dg.g.out.push_back(Source::at(0, j));
  dg.deco = {x};
  dg.in_colors = x.in();
  return dg;
}

DecoratedGraph reorder_vertices(const DecoratedGraph& dg, const std::vector<int>& order) {
  const auto& g = dg.g;
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  auto remap = [&](const Source& s) { return s.is_input() ? s : Source::at(pos[s.vertex], s.port); };
  DecoratedGraph r;
  r.g.n_in = g.n_in;
  r.in_colors = dg.in_colors;
  for (int old : order) {
    std::vector<Source> ins;
    for (const auto& s : g.v_in[old]) ins.push_back(remap(s));
    r.g.add_vertex(ins, g.v_out[old]);
    r.deco.push_back(dg.deco[old]);
  }
  for (const auto& s : g.out) r.g.out.push_back(remap(s));
  return r;
}

DecoratedGraph normal_form(const DecoratedGraph& dg) {
  const auto& g = dg.g;
  auto sinks = sink_map(g);
  std::vector<char> seen(static_cast<std::size_t>(g.n_vertices()), 0);
  std::vector<int> order;
  std::function<void(int)> visit = [&](int v) {
    if (seen[v]) return;
    seen[v] = 1;
    order.push_back(v);
    for (const auto& s : g.v_in[v])
      if (!s.is_input()) visit(s.vertex);
    for (int q = 0; q < g.v_out[v]; ++q) {
      auto it = sinks.find(Source::at(v, q));
      if (it != sinks.end() && !it->second.is_output()) visit(it->second.vertex);
    }
  };
  for (int k = 0; k < g.n_in; ++k) {
    auto it = sinks.find(Source::input(k));
    if (it != sinks.end() && !it->second.is_output()) visit(it->second.vertex);
  }
  for (int v = 0; v < g.n_vertices(); ++v) visit(v);
  return reorder_vertices(dg, order);
}

DecoratedGraph substitute(const DecoratedGraph& G, int v, const DecoratedGraph& h) {
  const auto& g = G.g;
  if (v < 0 || v >= g.n_vertices()) throw Error(ErrorKind::Validation, "substitution vertex out of range");
  const Element& xv = G.deco[v];
  if (h.in_colors != xv.in() || h.out_colors() != xv.out())
    throw Error(ErrorKind::Composition, "substituted graph boundary " + profile_str(h.out_colors()) + ";" +
                                            profile_str(h.in_colors) + " differs from vertex profile " +
                                            profile_str(xv.out()) + ";" + profile_str(xv.in()));
  int hV = h.g.n_vertices();
  auto gmap = [&](int u) { return u < v ? u : u + hV - 1; };
  std::function<Source(const Source&)> from_g, from_h;
  from_g = [&](const Source& s) -> Source {
    if (s.is_input()) return s;
    if (s.vertex == v) return from_h(h.g.out[s.port]);
    return Source::at(gmap(s.vertex), s.port);
  };
  from_h = [&](const Source& s) -> Source {
    if (s.is_input()) return from_g(g.v_in[v][s.port]);
    return Source::at(v + s.vertex, s.port);
  };
  DecoratedGraph r;
  r.g.n_in = g.n_in;
  r.in_colors = G.in_colors;
  auto add_g = [&](int u) {
    std::vector<Source> ins;
    for (const auto& s : g.v_in[u]) ins.push_back(from_g(s));
    r.g.add_vertex(ins, g.v_out[u]);
    r.deco.push_back(G.deco[u]);
  };
  for (int u = 0; u < v; ++u) add_g(u);
  for (int w = 0; w < hV; ++w) {
    std::vector<Source> ins;
    for (const auto& s : h.g.v_in[w]) ins.push_back(from_h(s));
    r.g.add_vertex(ins, h.g.v_out[w]);
    r.deco.push_back(h.deco[w]);
  }
  for (int u = v + 1; u < g.n_vertices(); ++u) add_g(u);
  for (const auto& s : g.out) r.g.out.push_back(from_g(s));
  return r;
}

json decorated_json(const DecoratedGraph& dg) {
  json vs = json::array();
  for (const auto& x : dg.deco) vs.push_back({{"deco", x.to_json()}});
  return {{"inputs", dg.g.n_in},
          {"outputs", dg.g.n_out()},
          {"input_colors", profile_json(dg.in_colors)},
          {"vertices", vs},
          {"edges", edges_json(dg.g, &dg)}};
}

DecoratedGraph parse_decorated(const json& j, const Prop& p) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "decorated graph must be an object");
  for (const char* f : {"inputs", "outputs", "input_colors", "vertices", "edges"})
    if (!j.contains(f)) throw Error(ErrorKind::Schema, std::string("decorated graph is missing ") + f);
  DecoratedGraph dg;
  dg.g.n_in = j["inputs"].get<int>();
  int n_out = j["outputs"].get<int>();
  for (const auto& c : j["input_colors"]) dg.in_colors.push_back(p.parse_color(c));
  if (static_cast<int>(dg.in_colors.size()) != dg.g.n_in) throw Error(ErrorKind::Schema, "input_colors length differs from inputs");
  for (std::size_t v = 0; v < j["vertices"].size(); ++v) {
    const auto& vj = j["vertices"][v];
    if (!vj.contains("deco")) throw Error(ErrorKind::Schema, "vertex " + std::to_string(v + 1) + " has no decoration");
    Element x = p.parse_element(vj["deco"]);
    if ((vj.contains("in") && vj["in"].get<std::size_t>() != x.in().size()) ||
        (vj.contains("out") && vj["out"].get<std::size_t>() != x.out().size()))
      throw Error(ErrorKind::Schema, "vertex " + std::to_string(v + 1) + " port counts differ from its decoration");
    dg.g.add_vertex(std::vector<Source>(x.in().size()), static_cast<int>(x.out().size()));
    dg.deco.push_back(x);
  }
  std::vector<json> colors;
  wire_edges(dg.g, j["edges"], n_out, &colors);
  Report r = validate_decoration(dg, &p, true);
  if (!r.ok()) throw Error(ErrorKind::Validation, r.to_json().dump());
  for (const auto& c : colors) {
    Source s = parse_from(c[0], "edge");
    Color declared = p.parse_color(c[2]);
    if (dg.source_color(s) != declared)
      throw Error(ErrorKind::Validation, "edge " + c[0].dump() + "->" + c[1].dump() + " declares color " +
                                             declared.name() + " but its ends carry " + dg.source_color(s).name());
  }
  return dg;
}

DecoratedGraph random_wiring(const std::vector<Element>& decos, Rng& rng, double reuse) {
  std::vector<int> order(decos.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  DecoratedGraph dg;
  std::vector<Source> pool;
  for (int idx : order) {
    const Element& x = decos[idx];
    int v = dg.g.n_vertices();
    std::vector<Source> ins;
    for (const auto& c : x.in()) {
      std::vector<std::size_t> cand;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (dg.source_color(pool[i]) == c) cand.push_back(i);
      if (!cand.empty() && coin(rng, reuse)) {
        std::size_t i = pick(rng, cand);
        ins.push_back(pool[i]);
        pool.erase(pool.begin() + static_cast<long>(i));
      } else {
        ins.push_back(Source::input(dg.g.n_in++));
        dg.in_colors.push_back(c);
      }
    }
    dg.g.add_vertex(ins, static_cast<int>(x.out().size()));
    dg.deco.push_back(x);
    for (int q = 0; q < static_cast<int>(x.out().size()); ++q) pool.push_back(Source::at(v, q));
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  dg.g.out = pool;
  // Relabel input legs.
  Perm relabel = Perm::random(dg.g.n_in, rng);
  auto move_in = [&](Source& s) {
    if (s.is_input()) s.port = relabel(s.port);
  };
  for (auto& ins : dg.g.v_in)
    for (auto& s : ins) move_in(s);
  for (auto& s : dg.g.out) move_in(s);
  dg.in_colors = act_left(relabel, dg.in_colors);
  return dg;
}

}  // namespace hda
