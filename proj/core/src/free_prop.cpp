#include "hda/free_prop.hpp"

#include <algorithm>
#include <set>

namespace hda {

json FreeGraphPayload::to_json() const {
  json vs = json::array();
  for (const auto& x : graph.deco) vs.push_back(x.as<GeneratorPayload>().name);
  json j = graph_json(graph.g);
  j["labels"] = vs;
  return {{"free", j}};
}

FreeProp::FreeProp(std::vector<Color> colors, std::vector<Generator> gens)
    : colors_(std::move(colors)), gens_(std::move(gens)) {
  std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) { return a.name < b.name; });
  for (const auto& g : gens_) {
    if (labels_.count(g.name)) throw Error(ErrorKind::Schema, "duplicate generator " + g.name);
    for (const auto& c : concat(g.out, g.in))
      if (!has_color(c)) throw Error(ErrorKind::UnknownColor, c.name() + " in generator " + g.name);
    labels_.emplace(g.name, Element(g.out, g.in, std::make_shared<GeneratorPayload>(g.name)));
  }
}

std::shared_ptr<const FreeProp> make_free_prop(const std::vector<std::string>& colors, const std::vector<Generator>& gens) {
  std::set<std::string> s(colors.begin(), colors.end());
  if (s.empty() || s.size() != colors.size()) throw Error(ErrorKind::Schema, "free PROP needs distinct colors");
  std::vector<Color> cs;
  for (const auto& n : s) cs.push_back(Color::base(n));
  return std::make_shared<FreeProp>(cs, gens);
}

bool FreeProp::has_color(const Color& c) const {
  return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
}

Element FreeProp::generator_label(const std::string& name) const {
  auto it = labels_.find(name);
  if (it == labels_.end()) throw Error(ErrorKind::Schema, "unknown generator " + name);
  return it->second;
}

Element FreeProp::generator(const std::string& name) const { return wrap(unit_graph(generator_label(name))); }

Element FreeProp::wrap(const DecoratedGraph& g) const {
  DecoratedGraph n = normal_form(g);
  Profile out = n.out_colors();
  Profile in = n.in_colors;
  return Element(out, in, std::make_shared<FreeGraphPayload>(std::move(n)));
}

bool FreeProp::contains(const Element& x) const {
  if (!owns(x)) return false;
  const auto& g = x.as<FreeGraphPayload>().graph;
  for (const auto& d : g.deco) {
    auto* gp = d.try_as<GeneratorPayload>();
    if (!gp || !labels_.count(gp->name) || labels_.at(gp->name) != d) return false;
  }
  if (!validate_decoration(g, nullptr, true).ok()) return false;
  return g.out_colors() == x.out() && g.in_colors == x.in() && normal_form(g) == g;
}

Element FreeProp::from_graph(const DecoratedGraph& g) const {
  bool labels = std::all_of(g.deco.begin(), g.deco.end(), [](const Element& d) { return d.try_as<GeneratorPayload>(); });
  if (labels) {
    Report r = validate_decoration(g, nullptr, true);
    if (!r.ok()) throw Error(ErrorKind::Validation, r.to_json().dump());
    for (const auto& d : g.deco)
      if (generator_label(d.as<GeneratorPayload>().name) != d) throw Error(ErrorKind::Validation, "generator profile mismatch");
    return wrap(g);
  }
  return flatten(g);
}

Element FreeProp::flatten(const DecoratedGraph& g) const {
  Report r = validate_decoration(g, this, true);
  if (!r.ok()) throw Error(ErrorKind::Validation, r.to_json().dump());
  // Replace vertices from the last so earlier indices stay valid.
  DecoratedGraph cur = g;
  for (int v = g.g.n_vertices() - 1; v >= 0; --v) cur = substitute(cur, v, g.deco[v].as<FreeGraphPayload>().graph);
  return wrap(cur);
}

Element FreeProp::do_hcomp(const Element& x, const Element& y) const {
  const auto& a = x.as<FreeGraphPayload>().graph;
  const auto& b = y.as<FreeGraphPayload>().graph;
  DecoratedGraph r = a;
  int shift_v = a.g.n_vertices(), shift_in = a.g.n_in;
  auto move = [&](Source s) {
    if (s.is_input()) s.port += shift_in;
    else s.vertex += shift_v;
    return s;
  };
  for (int v = 0; v < b.g.n_vertices(); ++v) {
    std::vector<Source> ins;
    for (const auto& s : b.g.v_in[v]) ins.push_back(move(s));
    r.g.add_vertex(ins, b.g.v_out[v]);
    r.deco.push_back(b.deco[v]);
  }
  for (const auto& s : b.g.out) r.g.out.push_back(move(s));
  r.g.n_in += b.g.n_in;
  r.in_colors = concat(a.in_colors, b.in_colors);
  return wrap(r);
}

Element FreeProp::do_vcomp(const Element& x, const Element& y) const {
  const auto& a = x.as<FreeGraphPayload>().graph;  // upper
  const auto& b = y.as<FreeGraphPayload>().graph;  // lower
  DecoratedGraph r = b;
  r.g.out.clear();
  int shift = b.g.n_vertices();
  auto move = [&](const Source& s) { return s.is_input() ? b.g.out[s.port] : Source::at(s.vertex + shift, s.port); };
  for (int v = 0; v < a.g.n_vertices(); ++v) {
    std::vector<Source> ins;
    for (const auto& s : a.g.v_in[v]) ins.push_back(move(s));
    r.g.add_vertex(ins, a.g.v_out[v]);
    r.deco.push_back(a.deco[v]);
  }
  for (const auto& s : a.g.out) r.g.out.push_back(move(s));
  return wrap(r);
}

Element FreeProp::do_biact(const Perm& s, const Element& x, const Perm& t) const {
  DecoratedGraph r = x.as<FreeGraphPayload>().graph;
  r.g.out = act_left(s, r.g.out);
  Perm ti = t.inverse();
  auto move = [&](Source& src) {
    if (src.is_input()) src.port = ti(src.port);
  };
  for (auto& ins : r.g.v_in)
    for (auto& src : ins) move(src);
  for (auto& src : r.g.out) move(src);
  r.in_colors = act_right(r.in_colors, t);
  return wrap(r);
}

Element FreeProp::do_unit(const Profile& c) const {
  DecoratedGraph r;
  r.g.n_in = static_cast<int>(c.size());
  for (int k = 0; k < r.g.n_in; ++k) r.g.out.push_back(Source::input(k));
  r.in_colors = c;
  return wrap(r);
}

Element FreeProp::parse_payload(const Profile& out, const Profile& in, const json& p) const {
  if (!p.is_object() || !p.contains("free")) throw Error(ErrorKind::Schema, "free payload expects {free}");
  const auto& j = p["free"];
  DecoratedGraph g;
  g.g = parse_graph(j);
  for (const auto& n : j.at("labels")) g.deco.push_back(generator_label(n.get<std::string>()));
  g.in_colors = in;
  Element e = from_graph(g);
  if (e.out() != out) throw Error(ErrorKind::Validation, "free element out-profile mismatch");
  return e;
}

std::optional<Element> FreeProp::parse_short(const json& j) const {
  if (j.is_string()) return generator(j.get<std::string>());
  if (j.is_object() && j.contains("gen")) return generator_label(j["gen"].get<std::string>());
  return std::nullopt;
}

std::optional<Element> FreeProp::sample(Rng& rng, const SampleSpec& spec) const {
  Profile in = spec.in ? *spec.in : random_profile(rng, colors_, 1, spec.max_arity);
  DecoratedGraph g;
  g.g.n_in = static_cast<int>(in.size());
  g.in_colors = in;
  std::vector<Source> pool;
  for (int k = 0; k < g.g.n_in; ++k) pool.push_back(Source::input(k));
  int steps = uniform_int(rng, 0, 3);
  for (int step = 0; step < steps && !gens_.empty(); ++step) {
    const Generator& gen = pick(rng, gens_);
    std::vector<Source> avail = pool, ins;
    bool ok = true;
    for (const auto& c : gen.in) {
      std::vector<std::size_t> cand;
      for (std::size_t i = 0; i < avail.size(); ++i)
        if (g.source_color(avail[i]) == c) cand.push_back(i);
      if (cand.empty()) {
        ok = false;
        break;
      }
      std::size_t i = pick(rng, cand);
      ins.push_back(avail[i]);
      avail.erase(avail.begin() + static_cast<long>(i));
    }
    if (!ok) continue;
    int v = g.g.add_vertex(ins, static_cast<int>(gen.out.size()));
    g.deco.push_back(labels_.at(gen.name));
    pool = avail;
    for (int q = 0; q < static_cast<int>(gen.out.size()); ++q) pool.push_back(Source::at(v, q));
  }
  if (pool.empty()) return std::nullopt;
  std::shuffle(pool.begin(), pool.end(), rng);
  g.g.out = pool;
  Element e = wrap(g);
  if (spec.out && e.out() != *spec.out) return std::nullopt;
  return e;
}

json FreeProp::spec_json() const {
  json gs = json::array();
  for (const auto& g : gens_) gs.push_back({{"name", g.name}, {"out", profile_json(g.out)}, {"in", profile_json(g.in)}});
  json cs = json::array();
  for (const auto& c : colors_) cs.push_back(c.name());
  return {{"kind", "free"}, {"colors", cs}, {"generators", gs}};
}

}  // namespace hda
