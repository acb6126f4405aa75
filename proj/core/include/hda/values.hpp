#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "hda/error.hpp"

namespace hda {

using json = nlohmann::json;

class Element;

namespace detail {
struct ElementData;
struct ColorRec;
}  // namespace detail

// An interned color. Base colors are names; colors of a slice PROP wrap an
// element of the underlying PROP. Equality is identity of the interned
// record, ordering is lexicographic on the canonical key.
class Color {
 public:
  Color() = default;
  static Color base(const std::string& name);
  static Color of(const Element& e);

  bool valid() const { return rec_ != nullptr; }
  const std::string& key() const;
  const json& to_json() const;
  bool is_element() const;
  Element element() const;
  // 0 for base colors; 1 + dimension of the wrapped element's colors otherwise.
  int dim() const;
  // Display name: the base name, or the canonical key.
  std::string name() const;

  friend bool operator==(const Color& a, const Color& b) { return a.rec_ == b.rec_; }
  friend bool operator!=(const Color& a, const Color& b) { return a.rec_ != b.rec_; }
  friend bool operator<(const Color& a, const Color& b);

  std::size_t hash() const { return std::hash<const void*>()(rec_); }

 private:
  explicit Color(const detail::ColorRec* r) : rec_(r) {}
  const detail::ColorRec* rec_ = nullptr;
};

using Profile = std::vector<Color>;

json profile_json(const Profile& p);
std::string profile_str(const Profile& p);
Profile concat(const Profile& a, const Profile& b);

// Implementation-defined canonical payload of an element.
class Payload {
 public:
  virtual ~Payload() = default;
  virtual json to_json() const = 0;
};

// Immutable PROP element: profile pair plus canonical payload. Equality is
// equality of canonical keys.
class Element {
 public:
  Element() = default;
  Element(Profile out, Profile in, std::shared_ptr<const Payload> payload);

  bool valid() const { return d_ != nullptr; }
  const Profile& out() const;
  const Profile& in() const;
  const Payload& payload() const;
  const std::shared_ptr<const Payload>& payload_ptr() const;
  const json& to_json() const;
  const std::string& key() const;
  std::string str() const { return key(); }

  template <class T>
  const T& as() const {
    const T* p = dynamic_cast<const T*>(&payload());
    if (p == nullptr) throw Error(ErrorKind::Owner, "element payload has the wrong owner: " + key());
    return *p;
  }
  template <class T>
  const T* try_as() const {
    return valid() ? dynamic_cast<const T*>(&payload()) : nullptr;
  }

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  friend bool operator<(const Element& a, const Element& b) { return a.key() < b.key(); }

 private:
  friend class Color;
  explicit Element(std::shared_ptr<const detail::ElementData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::ElementData> d_;
};

struct ColorHash {
  std::size_t operator()(const Color& c) const { return c.hash(); }
};

// Payload with no content (one-point components).
class PointPayload : public Payload {
 public:
  json to_json() const override { return json(); }
};

// Payload holding arbitrary canonical JSON.
class JsonPayload : public Payload {
 public:
  explicit JsonPayload(json v) : v_(std::move(v)) {}
  json to_json() const override { return v_; }
  const json& value() const { return v_; }

 private:
  json v_;
};

}  // namespace hda
