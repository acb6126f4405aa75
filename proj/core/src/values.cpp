#include "hda/values.hpp"

#include <mutex>
#include <unordered_map>

namespace hda {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Arity: return "arity error";
    case ErrorKind::Composition: return "composition error";
    case ErrorKind::UnknownColor: return "unknown color";
    case ErrorKind::Owner: return "owner mismatch";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Undefined: return "undefined";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Cap: return "cap exceeded";
    case ErrorKind::NotWeak: return "not weak-n";
  }
  return "error";
}

namespace detail {

struct ElementData {
  Profile out, in;
  std::shared_ptr<const Payload> payload;
  json j;
  std::string key;
};

struct ColorRec {
  std::string key;
  json j;
  std::shared_ptr<const ElementData> elem;
  int dim = 0;
};

namespace {

struct InternTable {
  std::mutex mu;
  std::unordered_map<std::string, std::unique_ptr<ColorRec>> recs;
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

}  // namespace
}  // namespace detail

Color Color::base(const std::string& name) {
  json j = name;
  std::string key = j.dump();
  auto& t = detail::table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto& slot = t.recs[key];
  if (!slot) {
    slot = std::make_unique<detail::ColorRec>();
    slot->key = key;
    slot->j = j;
  }
  return Color(slot.get());
}

Color Color::of(const Element& e) {
  if (!e.valid()) throw Error(ErrorKind::Validation, "color of an empty element");
  auto& t = detail::table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto& slot = t.recs[e.key()];
  if (!slot) {
    slot = std::make_unique<detail::ColorRec>();
    slot->key = e.key();
    slot->j = e.to_json();
    slot->elem = e.d_;
    slot->dim = e.out().empty() ? 1 : e.out()[0].dim() + 1;
  }
  return Color(slot.get());
}

const std::string& Color::key() const { return rec_->key; }
const json& Color::to_json() const { return rec_->j; }
bool Color::is_element() const { return rec_->elem != nullptr; }
int Color::dim() const { return rec_->dim; }

Element Color::element() const {
  if (!is_element()) throw Error(ErrorKind::Validation, "base color " + key() + " is not an element");
  return Element(rec_->elem);
}

std::string Color::name() const {
  return rec_->j.is_string() ? rec_->j.get<std::string>() : rec_->key;
}

bool operator<(const Color& a, const Color& b) {
  if (a.rec_ == b.rec_) return false;
  return a.key() < b.key();
}

json profile_json(const Profile& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(c.to_json());
  return a;
}

std::string profile_str(const Profile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].name();
  }
  return s + ")";
}

Profile concat(const Profile& a, const Profile& b) {
  Profile r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Element::Element(Profile out, Profile in, std::shared_ptr<const Payload> payload) {
  if (out.empty() || in.empty()) throw Error(ErrorKind::Arity, "profiles must be non-empty");
  auto d = std::make_shared<detail::ElementData>();
  d->out = std::move(out);
  d->in = std::move(in);
  d->payload = std::move(payload);
  d->j = json::object();
  d->j["o"] = profile_json(d->out);
  d->j["i"] = profile_json(d->in);
  d->j["p"] = d->payload->to_json();
  d->key = d->j.dump();
  d_ = std::move(d);
}

const Profile& Element::out() const { return d_->out; }
const Profile& Element::in() const { return d_->in; }
const Payload& Element::payload() const { return *d_->payload; }
const std::shared_ptr<const Payload>& Element::payload_ptr() const { return d_->payload; }
const json& Element::to_json() const { return d_->j; }
const std::string& Element::key() const { return d_->key; }

bool operator==(const Element& a, const Element& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  return a.d_->key == b.d_->key;
}

}  // namespace hda
