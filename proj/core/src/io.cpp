#include "hda/io.hpp"

#include <fstream>

#include "hda/builtin.hpp"
#include "hda/free_prop.hpp"
#include "hda/integral.hpp"
#include "hda/operad.hpp"
#include "hda/slice.hpp"

namespace hda {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::Schema, std::string("missing \"") + key + "\"");
  return j[key];
}

std::vector<std::string> names(const json& j) { return j.get<std::vector<std::string>>(); }

}  // namespace

PropPtr prop_from_spec(const json& j) {
  try {
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (s == "T") return make_terminal();
      if (s == "I") return make_initial();
      if (s == "EBool") return make_endomorphism({{"c", {false, true}}});
      throw Error(ErrorKind::Schema, "unknown PROP name " + s);
    }
    if (!j.is_object()) throw Error(ErrorKind::Schema, "PROP spec must be an object or a name");
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "terminal") return make_terminal(j.contains("colors") ? names(j["colors"]) : std::vector<std::string>{"c"});
    if (kind == "initial") return make_initial();
    if (kind == "endomorphism") {
      GradedSet x;
      for (const auto& [c, vs] : need(j, "carrier").items()) x[c] = vs.get<std::vector<json>>();
      return make_endomorphism(x);
    }
    if (kind == "table") return make_table_prop(j);
    if (kind == "weighted") return make_weighted(names(need(j, "colors")), need(j, "k").get<int>());
    if (kind == "product") {
      const json& fs = need(j, "factors");
      if (!fs.is_array() || fs.size() != 2) throw Error(ErrorKind::Schema, "product needs two factors");
      return make_product(prop_from_spec(fs[0]), prop_from_spec(fs[1]));
    }
    if (kind == "monomial") return make_monomial(need(j, "monoid").get<std::vector<std::vector<int>>>());
    if (kind == "free") {
      std::vector<Generator> gens;
      for (const auto& g : need(j, "generators")) {
        Generator gen{need(g, "name").get<std::string>(), {}, {}};
        for (const auto& c : need(g, "out")) gen.out.push_back(Color::base(c.get<std::string>()));
        for (const auto& c : need(g, "in")) gen.in.push_back(Color::base(c.get<std::string>()));
        gens.push_back(std::move(gen));
      }
      return make_free_prop(names(need(j, "colors")), gens);
    }
    if (kind == "operad") return operad_to_prop(operad_from_json(need(j, "operad")));
    if (kind == "terminal-operad") return operad_to_prop(terminal_operad(need(j, "max_arity").get<int>()));
    if (kind == "slice") {
      PropPtr base = prop_from_spec(need(j, "base"));
      return iterated(base, j.value("n", 1));
    }
    throw Error(ErrorKind::Schema, "unknown PROP kind " + kind);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, e.what());
  }
}

PropMap map_from_spec(const json& j) {
  try {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "identity") return identity_map(prop_from_spec(need(j, "prop")));
    if (kind == "projection") return product_projection(prop_from_spec(need(j, "product")), need(j, "factor").get<int>());
    if (kind == "terminal") return map_to_terminal(prop_from_spec(need(j, "source")), prop_from_spec(need(j, "target")));
    throw Error(ErrorKind::Schema, "unknown map kind " + kind);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, e.what());
  }
}

AlgebraPtr algebra_from_spec(const json& j, const PropPtr& fallback) {
  try {
    std::string kind = j.value("kind", std::string("table"));
    PropPtr p = j.contains("prop") ? prop_from_spec(j["prop"]) : fallback;
    if (kind == "derivative") return differentiate(map_from_spec(need(j, "map")));
    if (!p) throw Error(ErrorKind::Schema, "algebra needs a PROP (\"prop\" or --prop)");
    if (kind == "table") return TableAlgebra::from_json(j, p);
    if (kind == "bool-or") return make_bool_or(p);
    if (kind == "tautological") {
      std::map<std::string, std::vector<json>> x;
      for (const auto& [c, vs] : need(p->spec_json(), "carrier").items()) x[c] = vs.get<std::vector<json>>();
      return make_tautological(p, x);
    }
    throw Error(ErrorKind::Schema, "unknown algebra kind " + kind);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace hda
