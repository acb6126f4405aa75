#include "hda/prop.hpp"

namespace hda {

std::vector<Color> Prop::colors() const {
  throw Error(ErrorKind::Unsupported, name() + " has no finite color list");
}

std::optional<std::vector<Element>> Prop::enumerate(const Profile&, const Profile&) const {
  return std::nullopt;
}

std::optional<Element> Prop::parse_short(const json&) const { return std::nullopt; }

json Prop::spec_json() const {
  throw Error(ErrorKind::Unsupported, name() + " has no file description");
}

Color Prop::parse_color(const json& j) const {
  if (!j.is_string()) throw Error(ErrorKind::Schema, "color must be a string: " + j.dump());
  Color c = Color::base(j.get<std::string>());
  if (!has_color(c)) throw Error(ErrorKind::UnknownColor, j.dump() + " in " + name());
  return c;
}

Element Prop::parse_element(const json& j) const {
  if (auto s = parse_short(j)) return *s;
  if (!j.is_object() || !j.contains("o") || !j.contains("i") || !j.contains("p"))
    throw Error(ErrorKind::Schema, "element of " + name() + " expects {o,i,p}: " + j.dump().substr(0, 200));
  Profile out, in;
  if (!j["o"].is_array() || !j["i"].is_array()) throw Error(ErrorKind::Schema, "profiles must be arrays");
  for (const auto& c : j["o"]) out.push_back(parse_color(c));
  for (const auto& c : j["i"]) in.push_back(parse_color(c));
  if (out.empty() || in.empty()) throw Error(ErrorKind::Arity, "0-ary profiles are not allowed");
  Element e = parse_payload(out, in, j["p"]);
  if (!contains(e)) throw Error(ErrorKind::Validation, "not an element of " + name() + ": " + e.key().substr(0, 200));
  return e;
}

void Prop::check_owner(const Element& x) const {
  if (!x.valid() || !owns(x)) throw Error(ErrorKind::Owner, "element not owned by " + name());
}

Element Prop::hcomp(const Element& x, const Element& y) const {
  check_owner(x);
  check_owner(y);
  return do_hcomp(x, y);
}

Element Prop::vcomp(const Element& x, const Element& y) const {
  check_owner(x);
  check_owner(y);
  if (x.in() != y.out())
    throw Error(ErrorKind::Composition, "vcomp profile mismatch in " + name() + ": " + profile_str(x.in()) +
                                            " vs " + profile_str(y.out()));
  return do_vcomp(x, y);
}

Element Prop::biact(const Perm& sigma, const Element& x, const Perm& tau) const {
  check_owner(x);
  if (sigma.size() != static_cast<int>(x.out().size()) || tau.size() != static_cast<int>(x.in().size()))
    throw Error(ErrorKind::Arity, "biact permutation sizes do not match the profiles");
  if (sigma.is_identity() && tau.is_identity()) return x;
  return do_biact(sigma, x, tau);
}

Element Prop::unit(const Profile& c) const {
  if (c.empty()) throw Error(ErrorKind::Arity, "unit of an empty profile");
  for (const auto& col : c)
    if (!has_color(col)) throw Error(ErrorKind::UnknownColor, col.name() + " in " + name());
  if (!unital()) throw Error(ErrorKind::Unsupported, name() + " is not unital");
  return do_unit(c);
}

Element Prop::hcomp_all(const std::vector<Element>& xs) const {
  if (xs.empty()) throw Error(ErrorKind::Arity, "empty horizontal composite");
  Element r = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) r = hcomp(r, xs[i]);
  return r;
}

Profile random_profile(Rng& rng, const std::vector<Color>& colors, int min_len, int max_len) {
  int n = uniform_int(rng, min_len, max_len);
  Profile p;
  for (int i = 0; i < n; ++i) p.push_back(pick(rng, colors));
  return p;
}

Profile PropMap::profile(const Profile& p) const {
  Profile r;
  r.reserve(p.size());
  for (const auto& c : p) r.push_back(color(c));
  return r;
}

PropMap identity_map(const PropPtr& p) {
  return PropMap{p, p, [](const Element& x) { return x; }, {}, "id",
                 [](const Element& x) { return std::vector<Element>{x}; }};
}

}  // namespace hda
