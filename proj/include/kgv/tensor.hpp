#pragma once

#include <map>
#include <string>
#include <utility>

#include "kgv/ck.hpp"
#include "kgv/errors.hpp"
#include "kgv/matrix.hpp"

namespace kgv {

// An element of (graph algebra) (x) (matrices of size dim), stored as a
// sparse matrix of algebra elements. Equality is decided entrywise with the
// exact normal-form test, so syntactically different presentations of the
// same operator compare equal.
struct TensorElement {
  int dim = 0;
  std::map<std::pair<int, int>, CKElement> ent;

  explicit TensorElement(int n = 0) : dim(n) {}

  void add_entry(int i, int j, const CKElement& x) {
    if (x.is_syntactically_zero()) return;
    auto [it, fresh] = ent.emplace(std::make_pair(i, j), x);
    if (!fresh) {
      it->second += x;
      if (it->second.is_syntactically_zero()) ent.erase(it);
    }
  }

  TensorElement& operator+=(const TensorElement& o) {
    if (dim != o.dim) throw PreconditionError("tensor dimensions differ");
    for (const auto& [ij, x] : o.ent) add_entry(ij.first, ij.second, x);
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) {
    return a += b;
  }
  friend TensorElement operator-(const TensorElement& a, const TensorElement& b) {
    if (a.dim != b.dim) throw PreconditionError("tensor dimensions differ");
    TensorElement out = a;
    for (const auto& [ij, x] : b.ent)
      out.add_entry(ij.first, ij.second, CRat(-1) * x);
    return out;
  }
};

inline TensorElement tensor(const CKElement& a, const ScalarMat& m) {
  TensorElement out(m.dim);
  for (const auto& [ij, c] : m.ent) out.add_entry(ij.first, ij.second, c * a);
  return out;
}

inline TensorElement tensor_identity(const KGraph& g, int n) {
  return tensor(ck_identity(g), ScalarMat::identity(n));
}

inline TensorElement tensor_mul(const KGraph& g, const TensorElement& a,
                                const TensorElement& b) {
  if (a.dim != b.dim) throw PreconditionError("tensor dimensions differ");
  TensorElement out(a.dim);
  for (const auto& [ij, x] : a.ent)
    for (const auto& [kl, y] : b.ent)
      if (ij.second == kl.first) out.add_entry(ij.first, kl.second, ck_mul(g, x, y));
  return out;
}

inline TensorElement tensor_star(const KGraph& g, const TensorElement& a) {
  TensorElement out(a.dim);
  for (const auto& [ij, x] : a.ent) out.add_entry(ij.second, ij.first, star(g, x));
  return out;
}

inline bool tensor_equal(const KGraph& g, const TensorElement& a,
                         const TensorElement& b) {
  if (a.dim != b.dim) return false;
  for (const auto& [ij, x] : a.ent) {
    auto it = b.ent.find(ij);
    if (it == b.ent.end()) {
      if (!ck_is_zero(g, x)) return false;
    } else if (!ck_equal(g, x, it->second)) {
      return false;
    }
  }
  for (const auto& [ij, y] : b.ent)
    if (!a.ent.count(ij) && !ck_is_zero(g, y)) return false;
  return true;
}

inline bool tensor_is_zero(const KGraph& g, const TensorElement& a) {
  for (const auto& [ij, x] : a.ent)
    if (!ck_is_zero(g, x)) return false;
  return true;
}

}  // namespace kgv
