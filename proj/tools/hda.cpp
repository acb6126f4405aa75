// hda: batch verbs over PROPs, slices, propertopes and propertopic sets.
// Exit status 0 = all checks pass, 1 = a check failed, 2 = bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <hda/algebra.hpp>
#include <hda/evaluate.hpp>
#include <hda/free_prop.hpp>
#include <hda/io.hpp>
#include <hda/laws.hpp>
#include <hda/metagraph.hpp>
#include <hda/presheaf.hpp>
#include <hda/slice.hpp>

using namespace hda;

namespace {

struct Opts {
  int n = 0;
  int bound = 3;
  int depth_cap = 6;
  int samples = 200;
  std::uint64_t seed = 0;
  std::string prop;
  std::string map;
  std::string out;
  std::vector<std::string> inputs;
};

// Thrown for unreadable or schema-violating input; maps to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto load(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(std::string("Schema: ") + e.what());
  }
}

json input(const Opts& o, std::size_t i) {
  if (o.inputs.size() <= i) throw InputError("missing input file " + std::to_string(i + 1));
  return load([&] { return read_json_file(o.inputs[i]); });
}

PropPtr prop_of(const Opts& o, const json* fallback = nullptr) {
  return load([&]() -> PropPtr {
    if (!o.prop.empty()) {
      if (o.prop == "T" || o.prop == "I" || o.prop == "EBool") return prop_from_spec(o.prop);
      return prop_from_spec(read_json_file(o.prop));
    }
    if (fallback && fallback->contains("prop")) return prop_from_spec((*fallback)["prop"]);
    if (fallback && fallback->contains("base")) return prop_from_spec((*fallback)["base"]);
    throw Error(ErrorKind::Schema, "no PROP given (--prop)");
  });
}

int emit(const Opts& o, const json& artifact, const json& report, bool ok) {
  if (o.out.empty()) {
    std::cout << (artifact.is_null() ? report : artifact).dump(2) << "\n";
  } else {
    std::ofstream f(o.out);
    f << artifact.dump(2) << "\n";
    std::cout << report.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int report_only(const LawReport& r) {
  std::cout << r.to_json().dump(2) << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_validate(const Opts& o) {
  if (o.inputs.empty()) {
    PropPtr p = prop_of(o);
    LawOptions lo;
    lo.samples = o.samples;
    lo.seed = o.seed;
    return report_only(check_prop_laws(*p, lo));
  }
  json j = input(o, 0);
  std::string type = j.value("type", std::string());
  if (type == "ptset") {
    PropPtr p = prop_of(o, &j);
    auto cat = std::make_shared<PropertopeCategory>(p);
    auto x = load([&] { return PropertopicSet::from_json(j, cat); });
    return report_only(validate_presheaf(x));
  }
  if (type == "metagraph") {
    PropPtr p = prop_of(o, &j);
    Propertope g = load([&] { return decode_metagraph(j, p); });
    Report r = PropertopeCategory(p).validate(g);
    std::cout << r.to_json().dump(2) << "\n";
    return r.ok() ? 0 : 1;
  }
  std::string kind = j.value("kind", std::string());
  if (type == "algebra" || j.contains("carrier") || kind == "bool-or" || kind == "tautological" || kind == "derivative") {
    PropPtr p;
    if (!o.prop.empty() || j.contains("prop")) p = prop_of(o, &j);
    auto a = load([&] { return algebra_from_spec(j, p); });
    AlgebraCheckOptions ao;
    ao.samples = o.samples;
    ao.seed = o.seed;
    return report_only(check_algebra(*a, ao));
  }
  PropPtr p = prop_of(o, &j);
  Report r;
  try {
    parse_decorated(j, *p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Validation) throw InputError(e.what());
    r.add("decoration", e.what());
  }
  std::cout << r.to_json().dump(2) << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_eval(const Opts& o) {
  json j = input(o, 0);
  PropPtr p = prop_of(o, &j);
  auto dg = load([&] { return parse_decorated(j, *p); });
  auto d = level_decompose(dg);
  Element e = evaluate_with(*p, dg, d);
  Rng rng(o.seed);
  bool agree = evaluate_with(*p, dg, decompose_with(dg, alap_levels(dg.g))) == e &&
               evaluate_with(*p, dg, decompose_with(dg, random_levels(dg.g, rng), &rng)) == e;
  json r = {{"element", e.to_json()}, {"decomposition", decomposition_json(d)}, {"decompositions_agree", agree}};
  return emit(o, r, r, agree);
}

int cmd_slice_vcomp(const Opts& o) {
  PropPtr p = prop_of(o);
  const auto* s = as_slice(*iterated(p, 1));
  Element a = load([&] { return s->parse_file(input(o, 0)); });
  Element b = load([&] { return s->parse_file(input(o, 1)); });
  Element c = s->vcomp(a, b);
  Report r = validate_slice_element(*s, c);
  return emit(o, s->file_json(c), r.to_json(), r.ok());
}

int cmd_faces(const Opts& o) {
  json j = input(o, 0);
  PropPtr p = prop_of(o, &j);
  PropertopeCategory cat(p);
  Propertope g = load([&] { return decode_metagraph(j, p); });
  json fs = json::array();
  for (const auto& f : faces(g)) fs.push_back({{"face", f.str()}, {"target", encode_metagraph(face_target(g, f))}});
  json rel = json::array();
  bool ok = true;
  for (const auto& r : cat.relations(g)) {
    Verdict v = cat.chain_equal({g, r.lhs}, {g, r.rhs}, o.depth_cap);
    ok = ok && v == Verdict::Equal;
    rel.push_back({{"family", r.family}, {"lhs", Chain{g, r.lhs}.to_json()}, {"rhs", Chain{g, r.rhs}.to_json()}, {"verdict", to_string(v)}});
  }
  json r = {{"dim", g.dim()}, {"faces", fs}, {"relations", rel}};
  return emit(o, r, r, ok);
}

// {"dim": n, "element": x} or {"dim": 0, "color": c}
int cmd_encode(const Opts& o) {
  json j = input(o, 0);
  PropPtr p = prop_of(o, &j);
  Propertope g = load([&]() -> Propertope {
    int d = j.at("dim").get<int>();
    if (d == 0) return p->parse_color(j.at("color"));
    return Color::of(iterated(p, d - 1)->parse_element(j.at("element")));
  });
  json m = encode_metagraph(g);
  return emit(o, m, {{"dim", g.dim()}, {"ok", true}}, true);
}

int cmd_decode(const Opts& o) {
  json j = input(o, 0);
  PropPtr p = prop_of(o, &j);
  Propertope g = load([&] { return decode_metagraph(j, p); });
  json r = {{"dim", g.dim()}};
  if (g.dim() == 0) r["color"] = g.to_json();
  else r["element"] = g.element().to_json();
  r["canonical"] = encode_metagraph(g).dump() == j.dump();
  return emit(o, r, r, true);
}

int cmd_psi(const Opts& o) {
  json j = input(o, 0);
  PropPtr ap;
  if (!o.prop.empty() || j.contains("prop")) ap = prop_of(o, &j);
  auto a = load([&] { return algebra_from_spec(j, ap); });
  PropPtr base = a->prop();
  for (int i = 0; i < o.n; ++i) {
    const auto* s = as_slice(*base);
    if (!s) throw InputError("Arity: the algebra is not over an iterated slice of depth " + std::to_string(o.n));
    base = s->base();
  }
  auto cat = std::make_shared<PropertopeCategory>(base);
  UniverseOptions uo;
  uo.max_dim = o.bound;
  auto u = standard_universe(*cat, uo);
  // With --map, also cover the image of the source universe for a later pullback.
  if (!o.map.empty()) {
    PropMap phi = load([&] { return map_from_spec(read_json_file(o.map)); });
    for (const auto& g : standard_universe(PropertopeCategory(phi.source), uo)) u.push_back(transport(phi, g));
    u = face_closure(u);
  }
  auto x = psi_build(a, o.n, u);
  json stats = {{"shapes", x.support().size()}, {"n", o.n}, {"bound", x.bound()}};
  return emit(o, x.to_json(), stats, true);
}

PropertopicSet load_set(const Opts& o, const json& j) {
  PropPtr p = prop_of(o, &j);
  auto cat = std::make_shared<PropertopeCategory>(p);
  auto x = load([&] { return PropertopicSet::from_json(j, cat); });
  for (const auto& g : x.support())
    if (g.dim() > o.bound) x.erase(g);
  return x;
}

int cmd_check_weak(const Opts& o) {
  json j = input(o, 0);
  auto x = load_set(o, j);
  return report_only(check_weak_n(x, o.n));
}

int cmd_pullback(const Opts& o) {
  if (o.map.empty()) throw InputError("Schema: pullback needs --map");
  PropMap phi = load([&] { return map_from_spec(read_json_file(o.map)); });
  json j = input(o, 0);
  auto x = load_set(o, j);
  auto scat = std::make_shared<PropertopeCategory>(phi.source);
  UniverseOptions uo;
  uo.max_dim = o.bound;
  auto u = standard_universe(*scat, uo);
  json missing = json::array();
  for (const auto& g : u) {
    Propertope h = transport(phi, g);
    if (!x.supported(h)) missing.push_back(encode_metagraph(h));
  }
  auto y = pullback(phi, x, scat, u);
  json r = {{"shapes", y.support().size()}, {"missing", missing}};
  return emit(o, y.to_json(), r, missing.empty());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hda: PROPs, slices, propertopes and propertopic sets"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* c) {
    c->add_option("inputs", o.inputs, "input JSON files");
    c->add_option("--prop", o.prop, "PROP spec file, or T, I, EBool");
    c->add_option("--out", o.out, "write the artifact here; the report goes to stdout");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--samples", o.samples, "samples for sampled law checks")->check(CLI::Range(1, 1000000));
    c->add_option("--n", o.n, "weak-n level")->check(CLI::Range(0, 8));
    c->add_option("--bound", o.bound, "dimension bound")->check(CLI::Range(0, 6));
    c->add_option("--depth-cap", o.depth_cap, "rewrite depth for chain comparison")->check(CLI::Range(0, 64));
  };
  std::map<std::string, std::function<int(const Opts&)>> verbs{
      {"validate", cmd_validate}, {"eval", cmd_eval},     {"slice-vcomp", cmd_slice_vcomp},
      {"faces", cmd_faces},       {"encode", cmd_encode}, {"decode", cmd_decode},
      {"psi", cmd_psi},           {"check-weak", cmd_check_weak}, {"pullback", cmd_pullback}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : verbs) {
    auto* c = app.add_subcommand(name);
    common(c);
    if (name == "pullback" || name == "psi") c->add_option("--map", o.map, "PROP map spec file");
    subs[name] = c;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (const auto& [name, c] : subs) {
    if (!c->parsed()) continue;
    try {
      return verbs[name](o);
    } catch (const InputError& e) {
      std::cout << json{{"ok", false}, {"error", e.what()}}.dump(2) << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cout << json{{"ok", false}, {"error", e.what()}}.dump(2) << "\n";
      return 1;
    }
  }
  return 2;
}
