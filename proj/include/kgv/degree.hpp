#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "kgv/errors.hpp"

namespace kgv {

// Element of Z^k. Morphism degrees live in N^k; differences may be negative.
// Coordinates are machine integers with overflow-checked addition.
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::vector<long long> coords) : c_(std::move(coords)) {}

  static Degree zero(int rank) { return Degree(std::vector<long long>(rank, 0)); }

  static Degree unit(int rank, int i) {
    std::vector<long long> c(rank, 0);
    c.at(i) = 1;
    return Degree(std::move(c));
  }

  int rank() const { return static_cast<int>(c_.size()); }
  long long operator[](int i) const { return c_.at(i); }
  const std::vector<long long>& coords() const { return c_; }

  bool is_zero() const {
    for (long long v : c_)
      if (v != 0) return false;
    return true;
  }

  bool is_nonnegative() const {
    for (long long v : c_)
      if (v < 0) return false;
    return true;
  }

  // Componentwise order: *this <= o in the lattice sense.
  bool leq(const Degree& o) const {
    check_rank(o);
    for (int i = 0; i < rank(); ++i)
      if (c_[i] > o.c_[i]) return false;
    return true;
  }

  Degree operator+(const Degree& o) const {
    check_rank(o);
    std::vector<long long> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
      if (__builtin_add_overflow(c_[i], o.c_[i], &r[i]))
        throw DegreeError("degree addition overflow");
    return Degree(std::move(r));
  }

  Degree operator-(const Degree& o) const {
    check_rank(o);
    std::vector<long long> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
      if (__builtin_sub_overflow(c_[i], o.c_[i], &r[i]))
        throw DegreeError("degree subtraction overflow");
    return Degree(std::move(r));
  }

  // Componentwise maximum (the lattice join m ∨ n).
  Degree join(const Degree& o) const {
    check_rank(o);
    std::vector<long long> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] > o.c_[i] ? c_[i] : o.c_[i];
    return Degree(std::move(r));
  }

  Degree meet(const Degree& o) const {
    check_rank(o);
    std::vector<long long> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] < o.c_[i] ? c_[i] : o.c_[i];
    return Degree(std::move(r));
  }

  long long total() const {
    long long t = 0;
    for (long long v : c_)
      if (__builtin_add_overflow(t, v, &t)) throw DegreeError("degree total overflow");
    return t;
  }

  bool operator==(const Degree& o) const = default;
  // Lexicographic; used only as a container key, not as the lattice order.
  auto operator<=>(const Degree& o) const = default;

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
    return s.empty() ? std::string("-") : s;
  }

 private:
  void check_rank(const Degree& o) const {
    if (c_.size() != o.c_.size()) throw DegreeError("degree rank mismatch");
  }

  std::vector<long long> c_;
};

}  // namespace kgv
