#pragma once

#include <string>
#include <vector>

#include "hda/error.hpp"
#include "hda/rng.hpp"

namespace hda {

// A bijection of {0..k-1}. JSON and user-facing forms are 1-based.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  static Perm from_one_based(const std::vector<int>& images);
  static Perm random(int n, Rng& rng);
  // a ⊕ b: a on the first block, b shifted on the second.
  static Perm block_sum(const Perm& a, const Perm& b);
  // Sends block i (of the given sizes) to position order[i] among the blocks.
  static Perm block_permutation(const std::vector<int>& sizes, const Perm& order);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }
  std::vector<int> one_based() const;
  Perm inverse() const;
  bool is_identity() const;
  std::string str() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

// (a * b)(i) = a(b(i)).
Perm operator*(const Perm& a, const Perm& b);

// Left action: result[σ(i)] = v[i].
template <class T>
std::vector<T> act_left(const Perm& s, const std::vector<T>& v) {
  if (s.size() != static_cast<int>(v.size())) throw Error(ErrorKind::Arity, "permutation size mismatch");
  std::vector<T> r(v.size());
  for (int i = 0; i < s.size(); ++i) r[static_cast<std::size_t>(s(i))] = v[static_cast<std::size_t>(i)];
  return r;
}

// Right action: result[i] = v[τ(i)].
template <class T>
std::vector<T> act_right(const std::vector<T>& v, const Perm& t) {
  if (t.size() != static_cast<int>(v.size())) throw Error(ErrorKind::Arity, "permutation size mismatch");
  std::vector<T> r(v.size());
  for (int i = 0; i < t.size(); ++i) r[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(t(i))];
  return r;
}

// All permutations of size n in lexicographic order.
std::vector<Perm> all_perms(int n);

}  // namespace hda
