#pragma once

#include <string>
#include <vector>

#include "kgv/ck.hpp"
#include "kgv/fundamental.hpp"
#include "kgv/gross_tucker.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/monoid.hpp"
#include "kgv/paths.hpp"
#include "kgv/regular.hpp"
#include "kgv/report.hpp"
#include "kgv/skew.hpp"
#include "kgv/tensor.hpp"

namespace kgv {

// Verifies, in exact arithmetic, the operator identities that exhibit the
// crossed product of a skew-product graph algebra by the fibre group as the
// base algebra tensored with matrices over the group. All operators are
// realised concretely on (base algebra) (x) (matrices indexed by the
// group): the family S(lambda,g) = s_lambda (x) chi_g rho_{eta(lambda)},
// the translation unitaries U_h = 1 (x) lam_h, the fibre projections
// Y_g = 1 (x) chi_g, the commutant generators W_k = 1 (x) rho_k, and the
// pulled-back family T_lambda. Every identity is checked for all group
// elements and all paths up to the given degree.
//
// `family_eta`, when given, replaces the labelling inside the operator
// family only, leaving the graph side untouched; a mismatched labelling
// must surface as a concrete failed identity.
inline Report verify_skew_crossed_product(
    const KGraph& base, const FiniteGroup& gamma, const std::vector<Monoid::Elt>& eta,
    const Degree& depth, const std::vector<Monoid::Elt>* family_eta = nullptr) {
  Monoid G = Monoid::finite(gamma);
  validate_functor(base, G, eta);
  const std::vector<Monoid::Elt>& fam = family_eta ? *family_eta : eta;
  if (static_cast<int>(fam.size()) != base.num_edges())
    throw PreconditionError("family labelling size mismatch");

  RegularOps reg(gamma);
  const int n = gamma.order();
  const int e1 = gamma.identity();

  auto eta_of = [&](const Path& p, const std::vector<Monoid::Elt>& ev) {
    int k = e1;
    for (int e : p.edges()) k = gamma.mul(k, static_cast<int>(ev[e][0]));
    return k;
  };
  auto S = [&](const Path& lam, int g) {
    return tensor(ck_generator(base, lam), reg.chirho(g, eta_of(lam, fam)));
  };
  auto U = [&](int h) { return tensor(ck_identity(base), reg.lam(h)); };
  auto W = [&](int k) { return tensor(ck_identity(base), reg.rho(k)); };
  auto Y = [&](int g) { return tensor(ck_identity(base), reg.chi(g)); };
  TensorElement one = tensor_identity(base, n);

  auto eq = [&](const TensorElement& a, const TensorElement& b) {
    return tensor_equal(base, a, b);
  };
  auto mul = [&](const TensorElement& a, const TensorElement& b) {
    return tensor_mul(base, a, b);
  };

  std::vector<Degree> degs = detail::degrees_upto(base.rank(), depth);
  std::vector<Path> paths;  // all paths of degree <= depth, vertices first
  for (const Degree& d : degs)
    for (const Path& p : all_paths(base, d)) paths.push_back(p);

  Report rep;
  rep.suite = "skew-crossed-product";

  {
    detail::CheckAcc c(rep, "unit-projections");
    for (int v = 0; v < base.num_vertices(); ++v)
      for (int g = 0; g < n; ++g) {
        Path pv = vertex_path(base, v);
        if (!eq(tensor_star(base, S(pv, g)), S(pv, g)))
          c.fail("S(" + base.vertex_name(v) + "," + std::to_string(g) +
                 ") is not self-adjoint");
        for (int w = 0; w < base.num_vertices(); ++w)
          for (int h = 0; h < n; ++h) {
            Path pw = vertex_path(base, w);
            TensorElement prod = mul(S(pv, g), S(pw, h));
            bool same = v == w && g == h;
            if (same ? !eq(prod, S(pv, g)) : !tensor_is_zero(base, prod))
              c.fail("projections at (" + base.vertex_name(v) + "," + std::to_string(g) +
                     ") and (" + base.vertex_name(w) + "," + std::to_string(h) + ")");
          }
      }
  }

  {
    detail::CheckAcc c(rep, "composition");
    for (const Path& lam : paths)
      for (const Path& mu : paths) {
        if (lam.source() != mu.range()) continue;
        if (!(lam.degree() + mu.degree()).leq(depth)) continue;
        int k = eta_of(lam, eta);
        for (int g = 0; g < n; ++g) {
          TensorElement lhs = mul(S(lam, g), S(mu, gamma.mul(g, k)));
          if (!eq(lhs, S(compose(base, lam, mu), g)))
            c.fail("S(" + lam.str(base) + "," + std::to_string(g) + ")·S(" +
                   mu.str(base) + "," + std::to_string(gamma.mul(g, k)) +
                   ") != S(" + compose(base, lam, mu).str(base) + "," +
                   std::to_string(g) + ")");
        }
      }
  }

  {
    detail::CheckAcc c(rep, "inner-products");
    for (const Path& lam : paths)
      for (int g = 0; g < n; ++g) {
        int gk = gamma.mul(g, eta_of(lam, eta));
        TensorElement lhs = mul(tensor_star(base, S(lam, g)), S(lam, g));
        if (!eq(lhs, S(vertex_path(base, lam.source()), gk)))
          c.fail("S(" + lam.str(base) + "," + std::to_string(g) +
                 ")* S(...) is not the source projection");
      }
  }

  {
    detail::CheckAcc c(rep, "resolution");
    for (int v = 0; v < base.num_vertices(); ++v)
      for (const Degree& d : degs) {
        if (d == Degree::zero(base.rank())) continue;
        std::vector<Path> from;
        try {
          from = paths_from(base, v, d);
        } catch (const WindowExhausted&) {
          c.skip();
          continue;
        }
        for (int g = 0; g < n; ++g) {
          TensorElement sum(n);
          for (const Path& lam : from)
            sum += mul(S(lam, g), tensor_star(base, S(lam, g)));
          if (!eq(sum, S(vertex_path(base, v), g)))
            c.fail("sum over " + base.vertex_name(v) + " paths of degree " + d.str() +
                   " at fibre " + std::to_string(g));
        }
      }
  }

  {
    detail::CheckAcc c(rep, "sums-to-identity");
    TensorElement sum(n);
    for (int v = 0; v < base.num_vertices(); ++v)
      for (int g = 0; g < n; ++g) sum += S(vertex_path(base, v), g);
    if (!eq(sum, one)) c.fail("vertex family does not sum to the identity");
  }

  {
    detail::CheckAcc c(rep, "covariance");
    for (const Path& lam : paths)
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
          if (!eq(mul(U(h), S(lam, g)), mul(S(lam, gamma.mul(h, g)), U(h))))
            c.fail("translation by " + std::to_string(h) + " against S(" +
                   lam.str(base) + "," + std::to_string(g) + ")");
  }

  {
    detail::CheckAcc c(rep, "translation-unitaries");
    for (int h = 0; h < n; ++h) {
      if (!eq(mul(tensor_star(base, U(h)), U(h)), one))
        c.fail("U(" + std::to_string(h) + ") is not an isometry");
      for (int k = 0; k < n; ++k)
        if (!eq(mul(U(h), U(k)), U(gamma.mul(h, k))))
          c.fail("U is not multiplicative at (" + std::to_string(h) + "," +
                 std::to_string(k) + ")");
    }
  }

  {
    detail::CheckAcc c(rep, "fibre-projections");
    for (int g = 0; g < n; ++g) {
      TensorElement sum(n);
      for (int v = 0; v < base.num_vertices(); ++v) sum += S(vertex_path(base, v), g);
      if (!eq(sum, Y(g)))
        c.fail("sum of vertex family at fibre " + std::to_string(g) +
               " is not the fibre projection");
      for (int h = 0; h < n; ++h)
        if (!eq(mul(U(h), Y(g)), mul(Y(gamma.mul(h, g)), U(h))))
          c.fail("U(" + std::to_string(h) + ")Y(" + std::to_string(g) +
                 ") != Y(hg)U(h)");
    }
  }

  {
    detail::CheckAcc c(rep, "commutant-generators");
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h) {
        if (!eq(mul(W(k), U(h)), mul(U(h), W(k))))
          c.fail("W(" + std::to_string(k) + ") does not commute with U(" +
                 std::to_string(h) + ")");
        if (!eq(mul(W(k), Y(h)), mul(Y(gamma.mul(h, gamma.inv(k))), W(k))))
          c.fail("W(" + std::to_string(k) + ")Y(" + std::to_string(h) +
                 ") != Y(hk^-1)W(k)");
      }
  }

  auto E = [&](int g, int h) { return mul(mul(U(g), Y(e1)), tensor_star(base, U(h))); };
  {
    detail::CheckAcc c(rep, "matrix-units");
    TensorElement diag(n);
    for (int g = 0; g < n; ++g) diag += E(g, g);
    if (!eq(diag, one)) c.fail("diagonal matrix units do not sum to the identity");
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        if (!eq(tensor_star(base, E(g, h)), E(h, g)))
          c.fail("matrix unit adjoint at (" + std::to_string(g) + "," +
                 std::to_string(h) + ")");
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) {
            TensorElement prod = mul(E(g, h), E(p, q));
            if (h == p ? !eq(prod, E(g, q)) : !tensor_is_zero(base, prod))
              c.fail("matrix unit product at (" + std::to_string(g) + "," +
                     std::to_string(h) + ")(" + std::to_string(p) + "," +
                     std::to_string(q) + ")");
          }
      }
  }

  auto T = [&](const Path& lam) {
    TensorElement sum(n);
    for (int g = 0; g < n; ++g) sum += S(lam, g);
    return mul(sum, W(gamma.inv(eta_of(lam, fam))));
  };
  {
    detail::CheckAcc c(rep, "pulled-back-family");
    for (const Path& lam : paths) {
      if (!eq(T(lam), tensor(ck_generator(base, lam), ScalarMat::identity(n))))
        c.fail("T(" + lam.str(base) + ") != s_lambda (x) 1");
      for (int h = 0; h < n; ++h) {
        if (!eq(mul(T(lam), U(h)), mul(U(h), T(lam))))
          c.fail("T(" + lam.str(base) + ") does not commute with U(" +
                 std::to_string(h) + ")");
        if (!eq(mul(T(lam), Y(h)), mul(Y(h), T(lam))))
          c.fail("T(" + lam.str(base) + ") does not commute with Y(" +
                 std::to_string(h) + ")");
        if (!eq(mul(T(lam), W(h)), mul(W(h), T(lam))))
          c.fail("T(" + lam.str(base) + ") does not commute with W(" +
                 std::to_string(h) + ")");
      }
    }
    // T is itself a Cuntz-Krieger family for the base graph.
    for (const Path& lam : paths) {
      if (!eq(mul(tensor_star(base, T(lam)), T(lam)),
              T(vertex_path(base, lam.source()))))
        c.fail("T(" + lam.str(base) + ")*T != T(source)");
      for (const Path& mu : paths) {
        if (lam.source() != mu.range()) continue;
        if (!(lam.degree() + mu.degree()).leq(depth)) continue;
        if (!eq(mul(T(lam), T(mu)), T(compose(base, lam, mu))))
          c.fail("T(" + lam.str(base) + ")T(" + mu.str(base) + ") != T(composite)");
      }
    }
    for (int v = 0; v < base.num_vertices(); ++v)
      for (const Degree& d : degs) {
        if (d == Degree::zero(base.rank())) continue;
        std::vector<Path> from;
        try {
          from = paths_from(base, v, d);
        } catch (const WindowExhausted&) {
          c.skip();
          continue;
        }
        TensorElement sum(n);
        for (const Path& lam : from) sum += mul(T(lam), tensor_star(base, T(lam)));
        if (!eq(sum, T(vertex_path(base, v))))
          c.fail("T-resolution at " + base.vertex_name(v) + " degree " + d.str());
      }
  }

  {
    detail::CheckAcc c(rep, "inverse-chain");
    for (const Path& lam : paths) {
      int k = eta_of(lam, eta);
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          int q = gamma.mul(gamma.mul(gamma.inv(h), g), k);
          if (!eq(mul(T(lam), E(g, q)), mul(S(lam, g), U(h))))
            c.fail("round trip at (" + lam.str(base) + "," + std::to_string(g) + "," +
                   std::to_string(h) + ")");
        }
    }
  }

  return rep;
}

}  // namespace kgv
