#pragma once

#include <map>
#include <string>
#include <utility>

#include "kgv/errors.hpp"
#include "kgv/rational.hpp"

namespace kgv {

// Sparse square matrix over the exact complex rationals. Dimensions are
// small (a group order or a window volume), but most operators here are
// permutation-like, so a map of nonzero entries is the right shape.
struct ScalarMat {
  int dim = 0;
  std::map<std::pair<int, int>, CRat> ent;

  explicit ScalarMat(int n = 0) : dim(n) {}

  static ScalarMat zero(int n) { return ScalarMat(n); }
  static ScalarMat identity(int n) {
    ScalarMat m(n);
    for (int i = 0; i < n; ++i) m.ent[{i, i}] = CRat::one();
    return m;
  }
  static ScalarMat unit(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw PreconditionError("matrix unit index out of range");
    ScalarMat m(n);
    m.ent[{i, j}] = CRat::one();
    return m;
  }

  void add_entry(int i, int j, const CRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = ent.emplace(std::make_pair(i, j), c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) ent.erase(it);
    }
  }

  ScalarMat& operator+=(const ScalarMat& o) {
    if (dim != o.dim) throw PreconditionError("matrix dimensions differ");
    for (const auto& [ij, c] : o.ent) add_entry(ij.first, ij.second, c);
    return *this;
  }
  friend ScalarMat operator+(ScalarMat a, const ScalarMat& b) { return a += b; }
  friend ScalarMat operator-(const ScalarMat& a, const ScalarMat& b) {
    if (a.dim != b.dim) throw PreconditionError("matrix dimensions differ");
    ScalarMat out = a;
    for (const auto& [ij, c] : b.ent) out.add_entry(ij.first, ij.second, -c);
    return out;
  }
  friend ScalarMat operator*(const ScalarMat& a, const ScalarMat& b) {
    if (a.dim != b.dim) throw PreconditionError("matrix dimensions differ");
    ScalarMat out(a.dim);
    for (const auto& [ij, c] : a.ent)
      for (const auto& [kl, d] : b.ent)
        if (ij.second == kl.first) out.add_entry(ij.first, kl.second, c * d);
    return out;
  }
  friend ScalarMat operator*(const CRat& c, const ScalarMat& m) {
    ScalarMat out(m.dim);
    for (const auto& [ij, v] : m.ent) out.add_entry(ij.first, ij.second, c * v);
    return out;
  }

  // Conjugate transpose.
  ScalarMat star() const {
    ScalarMat out(dim);
    for (const auto& [ij, c] : ent) out.add_entry(ij.second, ij.first, c.conj());
    return out;
  }

  friend bool operator==(const ScalarMat& a, const ScalarMat& b) {
    return a.dim == b.dim && a.ent == b.ent;
  }
  friend bool operator!=(const ScalarMat& a, const ScalarMat& b) { return !(a == b); }
};

}  // namespace kgv
