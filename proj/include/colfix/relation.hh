#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "colfix/error.hh"

namespace colfix {

/// A binary relation between the finite carriers {0..dom_size-1} and
/// {0..cod_size-1}, stored as a dense bit matrix.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t dom_size, std::size_t cod_size)
      : dom_(dom_size), cod_(cod_size), bits_(dom_size * cod_size, false) {}

  static Relation identity(std::size_t n) {
    Relation r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.insert(static_cast<int>(i), static_cast<int>(i));
    return r;
  }

  /// Graph of the function `f` (f[x] is the image of x).
  static Relation graph(std::span<const int> f, std::size_t cod_size) {
    Relation r(f.size(), cod_size);
    for (std::size_t x = 0; x < f.size(); ++x) r.insert(static_cast<int>(x), f[x]);
    return r;
  }

  std::size_t dom_size() const noexcept { return dom_; }
  std::size_t cod_size() const noexcept { return cod_; }

  bool contains(int x, int y) const noexcept {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= dom_ || static_cast<std::size_t>(y) >= cod_)
      return false;
    return bits_[static_cast<std::size_t>(x) * cod_ + static_cast<std::size_t>(y)];
  }

  void insert(int x, int y) {
    check(x, y);
    bits_[static_cast<std::size_t>(x) * cod_ + static_cast<std::size_t>(y)] = true;
  }
  void erase(int x, int y) {
    check(x, y);
    bits_[static_cast<std::size_t>(x) * cod_ + static_cast<std::size_t>(y)] = false;
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (bool b : bits_) n += b;
    return n;
  }
  bool empty() const noexcept { return size() == 0; }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t y = 0; y < cod_; ++y)
        if (bits_[x * cod_ + y]) out.emplace_back(static_cast<int>(x), static_cast<int>(y));
    return out;
  }

  Relation converse() const {
    Relation r(cod_, dom_);
    for (auto [x, y] : pairs()) r.insert(y, x);
    return r;
  }

  /// Relational composition this ; other.
  Relation compose(const Relation& other) const {
    if (cod_ != other.dom_) throw CarrierMismatch("relation composition: middle carriers differ");
    Relation r(dom_, other.cod_);
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t z = 0; z < cod_; ++z)
        if (bits_[x * cod_ + z])
          for (std::size_t y = 0; y < other.cod_; ++y)
            if (other.bits_[z * other.cod_ + y]) r.bits_[x * r.cod_ + y] = true;
    return r;
  }

  Relation unite(const Relation& other) const {
    if (dom_ != other.dom_ || cod_ != other.cod_) throw CarrierMismatch("relation union: carriers differ");
    Relation r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || other.bits_[i];
    return r;
  }

  /// Keeps only the pairs inside dom_subset x cod_subset; carriers unchanged.
  Relation restricted(std::span<const int> dom_subset, std::span<const int> cod_subset) const {
    Relation r(dom_, cod_);
    for (int x : dom_subset)
      for (int y : cod_subset)
        if (contains(x, y)) r.insert(x, y);
    return r;
  }

  bool subset_of(const Relation& other) const noexcept {
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t y = 0; y < cod_; ++y)
        if (bits_[x * cod_ + y] && !other.contains(static_cast<int>(x), static_cast<int>(y))) return false;
    return true;
  }

  std::vector<int> domain() const {
    std::vector<int> out;
    for (std::size_t x = 0; x < dom_; ++x)
      for (std::size_t y = 0; y < cod_; ++y)
        if (bits_[x * cod_ + y]) {
          out.push_back(static_cast<int>(x));
          break;
        }
    return out;
  }

  std::vector<int> range() const {
    std::vector<int> out;
    for (std::size_t y = 0; y < cod_; ++y)
      for (std::size_t x = 0; x < dom_; ++x)
        if (bits_[x * cod_ + y]) {
          out.push_back(static_cast<int>(y));
          break;
        }
    return out;
  }

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation& a, const Relation& b) {
    if (auto c = a.dom_ <=> b.dom_; c != 0) return c;
    if (auto c = a.cod_ <=> b.cod_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  void check(int x, int y) const {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= dom_ || static_cast<std::size_t>(y) >= cod_)
      throw CarrierMismatch("relation pair outside declared carriers");
  }

  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  std::vector<bool> bits_;
};

}  // namespace colfix
