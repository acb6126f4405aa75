#include "hda/evaluate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hda {

namespace {

// Wire = its sink. Index of each wire in a list.
using WireList = std::vector<Sink>;

int index_of(const WireList& l, const Sink& s) {
  auto it = std::find(l.begin(), l.end(), s);
  if (it == l.end()) throw Error(ErrorKind::Validation, "layer interface is missing a wire");
  return static_cast<int>(it - l.begin());
}

struct Wiring {
  const MNGraph& g;
  std::map<Source, Sink> sink;
  explicit Wiring(const MNGraph& graph) : g(graph) {
    for (int v = 0; v < g.n_vertices(); ++v)
      for (int p = 0; p < static_cast<int>(g.v_in[v].size()); ++p) sink[g.v_in[v][p]] = Sink{v, p};
    for (int j = 0; j < g.n_out(); ++j) sink[g.out[j]] = Sink{-1, j};
  }
  Source source(const Sink& s) const { return s.is_output() ? g.out[s.port] : g.v_in[s.vertex][s.port]; }
  WireList inputs_of(const LayerItem& it) const {
    if (it.identity()) return {it.wire};
    WireList w;
    for (int p = 0; p < static_cast<int>(g.v_in[it.vertex].size()); ++p) w.push_back(Sink{it.vertex, p});
    return w;
  }
  WireList outputs_of(const LayerItem& it) const {
    if (it.identity()) return {it.wire};
    WireList w;
    for (int q = 0; q < g.v_out[it.vertex]; ++q) w.push_back(sink.at(Source::at(it.vertex, q)));
    return w;
  }
};

WireList concat_inputs(const Wiring& w, const Layer& l) {
  WireList r;
  for (const auto& it : l.items) {
    auto x = w.inputs_of(it);
    r.insert(r.end(), x.begin(), x.end());
  }
  return r;
}

WireList concat_outputs(const Wiring& w, const Layer& l) {
  WireList r;
  for (const auto& it : l.items) {
    auto x = w.outputs_of(it);
    r.insert(r.end(), x.begin(), x.end());
  }
  return r;
}

ComponentLayers layer_component(const DecoratedGraph& dg, const Wiring& w, const Component& c,
                                const std::vector<int>& level, Rng* shuffle) {
  ComponentLayers cl;
  cl.component = c;
  const auto& g = dg.g;
  if (c.formal()) {
    Layer l;
    l.items.push_back(LayerItem{-1, Sink{-1, c.outputs.at(0)}});
    l.interface = Perm::identity(1);
    cl.layers.push_back(l);
    cl.top = Perm::identity(1);
    cl.bottom = Perm::identity(1);
    return cl;
  }
  int lo_level = 1 << 30, h = 0;
  for (int v : c.vertices) {
    lo_level = std::min(lo_level, level[v]);
    h = std::max(h, level[v]);
  }
  // Shift so the component's first level is 1.
  auto lv = [&](int v) { return level[v] - lo_level + 1; };
  h = h - lo_level + 1;
  // Wires of the component with their level span.
  std::vector<std::pair<Sink, std::pair<int, int>>> wires;
  for (int v : c.vertices)
    for (int p = 0; p < static_cast<int>(g.v_in[v].size()); ++p) {
      Source s = g.v_in[v][p];
      wires.push_back({Sink{v, p}, {s.is_input() ? 0 : lv(s.vertex), lv(v)}});
    }
  for (int j : c.outputs) {
    Source s = g.out[j];
    wires.push_back({Sink{-1, j}, {s.is_input() ? 0 : lv(s.vertex), h + 1}});
  }
  WireList prev_out;
  for (int k = 1; k <= h; ++k) {
    Layer layer;
    for (int v : c.vertices)
      if (lv(v) == k) layer.items.push_back(LayerItem{v, {}});
    std::vector<LayerItem> pass;
    for (const auto& [sk, span] : wires)
      if (span.first < k && k < span.second) pass.push_back(LayerItem{-1, sk});
    if (k == 1) {
      std::sort(pass.begin(), pass.end(), [&](const LayerItem& a, const LayerItem& b) {
        return w.source(a.wire).port < w.source(b.wire).port;
      });
      layer.items.insert(layer.items.end(), pass.begin(), pass.end());
    } else {
      layer.items.insert(layer.items.end(), pass.begin(), pass.end());
      auto first = [&](const LayerItem& it) {
        int best = 1 << 30;
        for (const auto& s : w.inputs_of(it)) best = std::min(best, index_of(prev_out, s));
        return best;
      };
      std::sort(layer.items.begin(), layer.items.end(),
                [&](const LayerItem& a, const LayerItem& b) { return first(a) < first(b); });
    }
    if (shuffle) std::shuffle(layer.items.begin(), layer.items.end(), *shuffle);
    WireList ins = concat_inputs(w, layer);
    if (k == 1) {
      layer.interface = Perm::identity(static_cast<int>(ins.size()));
    } else {
      if (ins.size() != prev_out.size()) throw Error(ErrorKind::Validation, "layer boundary size mismatch");
      std::vector<int> pi(prev_out.size());
      for (std::size_t q = 0; q < prev_out.size(); ++q) pi[q] = index_of(ins, prev_out[q]);
      layer.interface = Perm(pi);
    }
    prev_out = concat_outputs(w, layer);
    cl.layers.push_back(std::move(layer));
  }
  // σ₂(i) = position in the first layer's inputs of the i-th input leg.
  WireList first_in = concat_inputs(w, cl.layers.front());
  std::vector<int> s2;
  for (int k : c.inputs) s2.push_back(index_of(first_in, w.sink.at(Source::input(k))));
  cl.bottom = Perm(s2);
  // σ₁(p) = rank among the component's outputs of the leg fed at position p.
  std::vector<int> s1;
  for (const auto& s : prev_out) {
    if (!s.is_output()) throw Error(ErrorKind::Validation, "top layer feeds a vertex");
    s1.push_back(static_cast<int>(std::lower_bound(c.outputs.begin(), c.outputs.end(), s.port) - c.outputs.begin()));
  }
  cl.top = Perm(s1);
  return cl;
}

}  // namespace

std::vector<int> longest_path_levels(const MNGraph& g) {
  std::vector<int> level(static_cast<std::size_t>(g.n_vertices()), 1);
  for (int v : topological_order(g))
    for (const auto& s : g.v_in[v])
      if (!s.is_input()) level[v] = std::max(level[v], level[s.vertex] + 1);
  return level;
}

std::vector<int> alap_levels(const MNGraph& g) {
  auto order = topological_order(g);
  int V = g.n_vertices();
  std::vector<int> height(static_cast<std::size_t>(V), 1);  // longest path to an output, in vertices
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (const auto& s : g.v_in[v])
      if (!s.is_input()) height[s.vertex] = std::max(height[s.vertex], height[v] + 1);
  }
  auto comps = components(g);
  auto longest = longest_path_levels(g);
  std::vector<int> level(static_cast<std::size_t>(V), 1);
  for (const auto& c : comps) {
    int h = 0;
    for (int v : c.vertices) h = std::max(h, longest[v]);
    for (int v : c.vertices) level[v] = h - height[v] + 1;
  }
  return level;
}

std::vector<int> random_levels(const MNGraph& g, Rng& rng) {
  int V = g.n_vertices();
  std::vector<int> indeg(static_cast<std::size_t>(V), 0);
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v)
    for (const auto& s : g.v_in[v])
      if (!s.is_input()) {
        succ[s.vertex].push_back(v);
        ++indeg[v];
      }
  std::vector<int> ready, level(static_cast<std::size_t>(V), 0);
  for (int v = 0; v < V; ++v)
    if (!indeg[v]) ready.push_back(v);
  int next = 1;
  while (!ready.empty()) {
    std::size_t i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ready.size()) - 1));
    int v = ready[i];
    ready.erase(ready.begin() + static_cast<long>(i));
    level[v] = next++;
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return level;
}

LevelDecomposition decompose_with(const DecoratedGraph& dg, const std::vector<int>& level, Rng* shuffle) {
  const auto& g = dg.g;
  for (int v = 0; v < g.n_vertices(); ++v)
    for (const auto& s : g.v_in[v])
      if (!s.is_input() && level[s.vertex] >= level[v])
        throw Error(ErrorKind::Validation, "level assignment is not increasing along edges");
  Wiring w(g);
  LevelDecomposition d;
  std::vector<int> out_order, in_pos(static_cast<std::size_t>(g.n_in));
  int in_count = 0;
  for (const auto& c : components(g)) {
    d.components.push_back(layer_component(dg, w, c, level, shuffle));
    out_order.insert(out_order.end(), c.outputs.begin(), c.outputs.end());
    for (int k : c.inputs) in_pos[k] = in_count++;
  }
  d.out_assembly = Perm(out_order);
  d.in_assembly = Perm(in_pos);
  return d;
}

LevelDecomposition level_decompose(const DecoratedGraph& dg) {
  return decompose_with(dg, longest_path_levels(dg.g), nullptr);
}

Element evaluate_with(const Prop& p, const DecoratedGraph& dg, const LevelDecomposition& d) {
  Wiring w(dg.g);
  std::vector<Element> parts;
  for (const auto& cl : d.components) {
    std::optional<Element> acc;
    for (std::size_t k = 0; k < cl.layers.size(); ++k) {
      const auto& layer = cl.layers[k];
      std::vector<Element> factors;
      for (const auto& it : layer.items) {
        if (it.identity()) factors.push_back(p.unit({dg.source_color(w.source(it.wire))}));
        else factors.push_back(dg.deco[it.vertex]);
      }
      Element l = p.hcomp_all(factors);
      try {
        if (!acc) {
          acc = l;
        } else {
          Element moved = p.biact(layer.interface, *acc, Perm::identity(static_cast<int>(acc->in().size())));
          acc = p.vcomp(l, moved);
        }
      } catch (const Error& e) {
        throw Error(e.kind(), "layer " + std::to_string(k + 1) + ": " + e.what());
      }
    }
    parts.push_back(p.biact(cl.top, *acc, cl.bottom));
  }
  Element all = p.hcomp_all(parts);
  return p.biact(d.out_assembly, all, d.in_assembly);
}

Element evaluate(const Prop& p, const DecoratedGraph& dg) { return evaluate_with(p, dg, level_decompose(dg)); }

json decomposition_json(const LevelDecomposition& d) {
  json cs = json::array();
  for (const auto& cl : d.components) {
    json layers = json::array();
    for (const auto& l : cl.layers) {
      json items = json::array();
      for (const auto& it : l.items) {
        if (it.identity()) items.push_back({{"identity", json::array({it.wire.is_output() ? 0 : it.wire.vertex + 1, it.wire.port + 1})}});
        else items.push_back({{"vertex", it.vertex + 1}});
      }
      layers.push_back({{"items", items}, {"interface", l.interface.one_based()}});
    }
    cs.push_back({{"layers", layers}, {"sigma1", cl.top.one_based()}, {"sigma2", cl.bottom.one_based()}});
  }
  return {{"components", cs}, {"out_assembly", d.out_assembly.one_based()}, {"in_assembly", d.in_assembly.one_based()}};
}

}  // namespace hda
