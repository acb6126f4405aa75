#include "hda/metagraph.hpp"

#include "hda/slice.hpp"

namespace hda {

namespace {

void encode_into(const Propertope& g, std::vector<json>& levels) {
  int n = g.dim();
  const Element& e = g.element();
  if (n == 1) {
    levels[0].push_back(e.to_json());
    return;
  }
  const auto& pl = e.as<SlicePayload>();
  json entry = json::array();
  for (std::size_t j = 0; j < pl.graphs.size(); ++j) {
    json gj = graph_json(pl.graphs[j].g);
    json labels = json::array();
    for (int k : pl.slots[j]) labels.push_back(k + 1);
    gj["labels"] = labels;
    entry.push_back(gj);
  }
  levels[static_cast<std::size_t>(n - 1)].push_back(entry);
  for (const auto& c : e.in()) encode_into(c, levels);
}

[[noreturn]] void fail(ErrorKind k, const std::string& where, const std::string& what) {
  throw Error(k, where + ": " + what);
}

class Decoder {
 public:
  Decoder(const json& levels, PropPtr base) : levels_(levels), base_(std::move(base)), cursor_(levels.size(), 0) {}

  Propertope next(int k) {
    std::size_t li = static_cast<std::size_t>(k - 1);
    const json& level = levels_[li];
    std::string lw = "levels[" + std::to_string(li) + "]";
    if (cursor_[li] >= level.size()) fail(ErrorKind::Arity, lw, "too few entries for the vertices above");
    std::size_t idx = cursor_[li]++;
    std::string where = lw + "[" + std::to_string(idx) + "]";
    const json& entry = level[idx];
    if (k == 1) {
      try {
        return Color::of(base_->parse_element(entry));
      } catch (const Error& e) {
        fail(e.kind(), where, e.what());
      } catch (const json::exception& e) {
        fail(ErrorKind::Schema, where, e.what());
      }
    }
    if (!entry.is_array() || entry.empty()) fail(ErrorKind::Schema, where, "entry must be a non-empty array of graphs");
    std::vector<DecoratedGraph> graphs;
    std::vector<std::vector<int>> slots;
    std::size_t total = 0;
    for (std::size_t j = 0; j < entry.size(); ++j) {
      std::string gw = where + "[" + std::to_string(j) + "]";
      const json& gj = entry[j];
      DecoratedGraph dg;
      std::vector<int> sl;
      try {
        if (!gj.is_object() || !gj.contains("labels") || !gj["labels"].is_array())
          fail(ErrorKind::Schema, gw, "graph object needs labels");
        dg.g = parse_graph(gj);
        for (const auto& l : gj["labels"]) sl.push_back(l.get<int>() - 1);
      } catch (const Error& e) {
        if (std::string(e.what()).find(gw) != std::string::npos) throw;
        fail(e.kind(), gw, e.what());
      } catch (const json::exception& e) {
        fail(ErrorKind::Schema, gw, e.what());
      }
      if (sl.size() != static_cast<std::size_t>(dg.g.n_vertices())) fail(ErrorKind::Arity, gw, "label count differs from vertex count");
      total += sl.size();
      graphs.push_back(std::move(dg));
      slots.push_back(std::move(sl));
    }
    std::vector<char> seen(total, 0);
    for (std::size_t j = 0; j < slots.size(); ++j)
      for (int s : slots[j]) {
        if (s < 0 || static_cast<std::size_t>(s) >= total || seen[static_cast<std::size_t>(s)])
          fail(ErrorKind::Schema, where + "[" + std::to_string(j) + "].labels", "labels must be a bijection onto 1.." + std::to_string(total));
        seen[static_cast<std::size_t>(s)] = 1;
      }
    std::vector<Element> decos;
    for (std::size_t s = 0; s < total; ++s) decos.push_back(next(k - 1).element());
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      auto& dg = graphs[j];
      std::string gw = where + "[" + std::to_string(j) + "]";
      for (int v = 0; v < dg.g.n_vertices(); ++v) {
        const Element& d = decos[static_cast<std::size_t>(slots[j][static_cast<std::size_t>(v)])];
        if (d.in().size() != dg.g.v_in[v].size() || d.out().size() != static_cast<std::size_t>(dg.g.v_out[v]))
          fail(ErrorKind::Arity, gw, "vertex " + std::to_string(v + 1) + " ports differ from its decoration");
        dg.deco.push_back(d);
      }
      dg.in_colors.assign(static_cast<std::size_t>(dg.g.n_in), Color());
      for (int v = 0; v < dg.g.n_vertices(); ++v)
        for (std::size_t q = 0; q < dg.g.v_in[v].size(); ++q) {
          const Source& src = dg.g.v_in[v][q];
          if (src.is_input() && src.port < dg.g.n_in) dg.in_colors[static_cast<std::size_t>(src.port)] = dg.deco[v].in()[q];
        }
      for (const auto& c : dg.in_colors)
        if (!c.valid()) fail(ErrorKind::Validation, gw, "an input leg feeds no vertex");
    }
    try {
      const auto* s = as_slice(*iterated(base_, k - 1));
      return Color::of(s->make(std::move(graphs), std::move(slots)));
    } catch (const Error& e) {
      fail(e.kind(), where, e.what());
    }
  }

  void finish() const {
    for (std::size_t li = 0; li < cursor_.size(); ++li)
      if (cursor_[li] != levels_[li].size())
        fail(ErrorKind::Arity, "levels[" + std::to_string(li) + "]", std::to_string(levels_[li].size() - cursor_[li]) + " unused entries");
  }

 private:
  const json& levels_;
  PropPtr base_;
  std::vector<std::size_t> cursor_;
};

}  // namespace

json encode_metagraph(const Propertope& g) {
  int n = g.dim();
  if (n == 0) return {{"type", "metagraph"}, {"dim", 0}, {"color", g.to_json()}};
  std::vector<json> levels(static_cast<std::size_t>(n), json::array());
  encode_into(g, levels);
  return {{"type", "metagraph"}, {"dim", n}, {"levels", levels}};
}

Propertope decode_metagraph(const json& m, const PropPtr& base) {
  if (!m.is_object()) fail(ErrorKind::Schema, "metagraph", "must be an object");
  if (m.contains("type") && m["type"] != "metagraph") fail(ErrorKind::Schema, "type", "expected \"metagraph\"");
  if (!m.contains("dim") || !m["dim"].is_number_integer() || m["dim"].get<int>() < 0)
    fail(ErrorKind::Schema, "dim", "must be a non-negative integer");
  int n = m["dim"].get<int>();
  if (n == 0) {
    if (!m.contains("color")) fail(ErrorKind::Schema, "color", "missing");
    Color c;
    try {
      c = base->parse_color(m["color"]);
    } catch (const Error& e) {
      fail(e.kind(), "color", e.what());
    }
    if (!base->has_color(c)) fail(ErrorKind::UnknownColor, "color", c.name());
    return c;
  }
  if (!m.contains("levels") || !m["levels"].is_array()) fail(ErrorKind::Schema, "levels", "missing");
  const json& levels = m["levels"];
  if (levels.size() != static_cast<std::size_t>(n))
    fail(ErrorKind::Arity, "levels", "expected " + std::to_string(n) + " levels, found " + std::to_string(levels.size()));
  for (std::size_t li = 0; li < levels.size(); ++li)
    if (!levels[li].is_array()) fail(ErrorKind::Schema, "levels[" + std::to_string(li) + "]", "must be an array");
  if (levels[static_cast<std::size_t>(n - 1)].size() != 1)
    fail(ErrorKind::Arity, "levels[" + std::to_string(n - 1) + "]", "the top level holds exactly one entry");
  Decoder d(levels, base);
  Propertope g = d.next(n);
  d.finish();
  return g;
}

}  // namespace hda
