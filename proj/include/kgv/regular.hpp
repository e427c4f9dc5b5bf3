#pragma once

#include <string>

#include "kgv/errors.hpp"
#include "kgv/matrix.hpp"
#include "kgv/monoid.hpp"

namespace kgv {

// The left and right regular representations of a finite group, together
// with the coordinate projections, as exact matrices indexed by group
// elements. The defining exchange identities are verified exhaustively at
// construction, so downstream checks can rely on them.
class RegularOps {
 public:
  explicit RegularOps(FiniteGroup group) : g_(std::move(group)) {
    int n = g_.order();
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        if (!(lam(g_.mul(h, k)) == lam(h) * lam(k)))
          throw GroupError("left translations fail to compose at (" +
                           std::to_string(h) + "," + std::to_string(k) + ")");
        if (!(rho(g_.mul(h, k)) == rho(h) * rho(k)))
          throw GroupError("right translations fail to compose at (" +
                           std::to_string(h) + "," + std::to_string(k) + ")");
        if (!(rho(k) * lam(h) == lam(h) * rho(k)))
          throw GroupError("left and right translations fail to commute");
      }
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g) {
        if (!(lam(h) * chi(g) == chi(g_.mul(h, g)) * lam(h)))
          throw GroupError("translation/projection exchange fails on the left");
        if (!(rho(h) * chi(g) == chi(g_.mul(g, g_.inv(h))) * rho(h)))
          throw GroupError("translation/projection exchange fails on the right");
      }
  }

  const FiniteGroup& group() const { return g_; }
  int dim() const { return g_.order(); }

  // lam(h): e_g -> e_{hg}.
  ScalarMat lam(int h) const {
    ScalarMat m(dim());
    for (int g = 0; g < dim(); ++g) m.add_entry(g_.mul(h, g), g, CRat::one());
    return m;
  }

  // rho(k): e_g -> e_{g k^{-1}}.
  ScalarMat rho(int k) const {
    ScalarMat m(dim());
    for (int g = 0; g < dim(); ++g) m.add_entry(g_.mul(g, g_.inv(k)), g, CRat::one());
    return m;
  }

  // chi(g): the coordinate projection onto e_g.
  ScalarMat chi(int g) const { return ScalarMat::unit(dim(), g, g); }

  // chi(g)·rho(k) is the matrix unit e_g (x) conj(e_{gk}).
  ScalarMat chirho(int g, int k) const {
    return ScalarMat::unit(dim(), g, g_.mul(g, k));
  }

 private:
  FiniteGroup g_;
};

}  // namespace kgv
