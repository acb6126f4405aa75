#include "hda/perm.hpp"

#include <algorithm>
#include <numeric>

namespace hda {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v)])
      throw Error(ErrorKind::Validation, "not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  Perm p;
  p.img_ = std::move(v);
  return p;
}

Perm Perm::from_one_based(const std::vector<int>& images) {
  std::vector<int> v;
  v.reserve(images.size());
  for (int x : images) v.push_back(x - 1);
  return Perm(std::move(v));
}

Perm Perm::random(int n, Rng& rng) {
  Perm p = identity(n);
  std::shuffle(p.img_.begin(), p.img_.end(), rng);
  return p;
}

Perm Perm::block_sum(const Perm& a, const Perm& b) {
  Perm p;
  p.img_ = a.img_;
  for (int v : b.img_) p.img_.push_back(v + a.size());
  return p;
}

Perm Perm::block_permutation(const std::vector<int>& sizes, const Perm& order) {
  if (static_cast<int>(sizes.size()) != order.size()) throw Error(ErrorKind::Arity, "block count mismatch");
  auto moved = act_left(order, sizes);
  int acc = 0;
  std::vector<int> starts(sizes.size());
  for (std::size_t k = 0; k < moved.size(); ++k) {
    starts[k] = acc;
    acc += moved[k];
  }
  std::vector<int> img;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int j = 0; j < sizes[b]; ++j) img.push_back(starts[static_cast<std::size_t>(order(static_cast<int>(b)))] + j);
  return Perm(std::move(img));
}

std::vector<int> Perm::one_based() const {
  std::vector<int> v;
  v.reserve(img_.size());
  for (int x : img_) v.push_back(x + 1);
  return v;
}

Perm Perm::inverse() const {
  Perm p;
  p.img_.assign(img_.size(), 0);
  for (std::size_t i = 0; i < img_.size(); ++i) p.img_[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string Perm::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(img_[i] + 1);
  }
  return s + "]";
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Arity, "composing permutations of different sizes");
  std::vector<int> v(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) v[static_cast<std::size_t>(i)] = a(b(i));
  return Perm(std::move(v));
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> r;
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  do {
    r.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return r;
}

}  // namespace hda
