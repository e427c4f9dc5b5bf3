#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/ck.hpp"
#include "kgv/fundamental.hpp"
#include "kgv/gross_tucker.hpp"
#include "kgv/paths.hpp"
#include "kgv/report.hpp"
#include "kgv/tensor.hpp"
#include "kgv/toeplitz.hpp"

namespace kgv {

// Verifies the generator identities behind the stable isomorphism between
// the crossed product of a graph algebra by a free semigroup action with a
// fundamental domain and the quotient graph algebra tensored with compact
// operators on the semigroup's sequence space.
//
// Every path sigma of the acted-on graph maps to
//   Psi(sigma) = s_{q(sigma)} (x) E(xi(sigma), xi(sigma)·eta(q(sigma)))
// acting on (quotient algebra) (x) (matrices indexed by a finite patch of
// the semigroup), and the semigroup itself maps to the partial translations
// V(u) = 1 (x) lamS(u). Identities whose indices would leave the patch are
// recorded as boundary skips, never as passes or failures.
inline Report verify_main_theorem(const Action& a, const GrossTuckerData& gt,
                                  const Monoid::Elt& box_lo, const Monoid::Elt& box_hi,
                                  const Degree& depth) {
  const KGraph& sig = a.graph();
  const Monoid& s = a.monoid();
  const KGraph& lq = gt.q.graph;
  if (!depth.leq(gt.depth))
    throw PreconditionError("check depth " + depth.str() +
                            " exceeds the decomposition depth " + gt.depth.str());

  WindowSpace W(s, box_lo, box_hi);
  const int n = W.dim();
  if (n == 0) throw PreconditionError("empty semigroup patch");

  // The data of Psi per path: the quotient image q(sigma), the translation
  // part xi(sigma), and the column index xi(sigma)·eta(q(sigma)).
  struct PsiData {
    Path qp;
    Monoid::Elt xi, tgt;
  };
  std::map<Path, PsiData> pd;
  for (const auto& [sigma, mt] : gt.decomp) {
    Path qp = quotient_path(sig, gt.q, mt.first);
    Monoid::Elt tgt = s.mul(mt.second, eta_along(s, gt.eta, qp));
    pd.emplace(sigma, PsiData{std::move(qp), mt.second, std::move(tgt)});
  }

  // Psi(sigma), or nothing if an index leaves the patch.
  auto psi = [&](const Path& sigma) -> std::optional<TensorElement> {
    auto it = pd.find(sigma);
    if (it == pd.end()) return std::nullopt;
    const PsiData& d = it->second;
    if (!W.contains(d.xi) || !W.contains(d.tgt)) return std::nullopt;
    return tensor(ck_generator(lq, d.qp), W.E(d.xi, d.tgt));
  };
  auto V = [&](const Monoid::Elt& u) {
    return tensor(ck_identity(lq), W.translation(u));
  };
  TensorElement one = tensor_identity(lq, n);

  auto eq = [&](const TensorElement& x, const TensorElement& y) {
    return tensor_equal(lq, x, y);
  };
  auto mul = [&](const TensorElement& x, const TensorElement& y) {
    return tensor_mul(lq, x, y);
  };

  // Window paths of each degree, straight from the decomposition.
  std::vector<Degree> degs = detail::degrees_upto(sig.rank(), depth);
  std::map<Degree, std::vector<Path>> by_deg;
  for (const auto& [sigma, mt] : gt.decomp) by_deg[sigma.degree()].push_back(sigma);

  Report rep;
  rep.suite = "main-theorem";

  {
    detail::CheckAcc c(rep, "psi-projections");
    for (const Path& x : by_deg[Degree::zero(sig.rank())]) {
      auto px = psi(x);
      if (!px) {
        c.skip();
        continue;
      }
      if (!eq(tensor_star(lq, *px), *px))
        c.fail("Psi(" + x.str(sig) + ") is not self-adjoint");
      for (const Path& y : by_deg[Degree::zero(sig.rank())]) {
        auto py = psi(y);
        if (!py) continue;
        TensorElement prod = mul(*px, *py);
        if (x == y ? !eq(prod, *px) : !tensor_is_zero(lq, prod))
          c.fail("projections at " + x.str(sig) + " and " + y.str(sig));
      }
    }
  }

  {
    detail::CheckAcc c(rep, "psi-composition");
    for (const Degree& m : degs)
      for (const Degree& d : degs) {
        if (!(m + d).leq(depth)) continue;
        for (const Path& sigma : by_deg[m])
          for (const Path& tau : by_deg[d]) {
            if (sigma.source() != tau.range()) continue;
            auto ps = psi(sigma), pt = psi(tau);
            auto pboth = psi(compose(sig, sigma, tau));
            if (!ps || !pt || !pboth) {
              c.skip();
              continue;
            }
            if (!eq(mul(*ps, *pt), *pboth))
              c.fail("Psi(" + sigma.str(sig) + ")·Psi(" + tau.str(sig) +
                     ") != Psi(composite)");
          }
      }
  }

  {
    detail::CheckAcc c(rep, "psi-inner");
    for (const Degree& d : degs)
      for (const Path& sigma : by_deg[d]) {
        auto ps = psi(sigma);
        auto pv = psi(vertex_path(sig, sigma.source()));
        if (!ps || !pv) {
          c.skip();
          continue;
        }
        if (!eq(mul(tensor_star(lq, *ps), *ps), *pv))
          c.fail("Psi(" + sigma.str(sig) + ")*Psi != Psi(source)");
      }
  }

  {
    detail::CheckAcc c(rep, "psi-resolution");
    for (const Path& x : by_deg[Degree::zero(sig.rank())]) {
      auto px = psi(x);
      if (!px) {
        c.skip();
        continue;
      }
      for (const Degree& d : degs) {
        if (d == Degree::zero(sig.rank())) continue;
        std::vector<Path> from;
        try {
          from = paths_from(sig, x.range(), d);
        } catch (const WindowExhausted&) {
          c.skip();
          continue;
        }
        TensorElement sum(n);
        bool complete = true;
        for (const Path& sigma : from) {
          auto ps = psi(sigma);
          if (!ps) {
            complete = false;
            break;
          }
          sum += mul(*ps, tensor_star(lq, *ps));
        }
        if (!complete) {
          c.skip();
          continue;
        }
        if (!eq(sum, *px))
          c.fail("resolution at " + x.str(sig) + " degree " + d.str());
      }
    }
  }

  // Translations to exercise: the generators and their pairwise products.
  std::vector<Monoid::Elt> gens = s.generators();
  std::vector<Monoid::Elt> us = gens;
  for (const auto& u : gens)
    for (const auto& w : gens) {
      Monoid::Elt uw = s.mul(u, w);
      bool seen = false;
      for (const auto& x : us) seen = seen || x == uw;
      if (!seen) us.push_back(uw);
    }

  {
    detail::CheckAcc c(rep, "toeplitz-homomorphism");
    for (const auto& u : gens)
      for (const auto& w : gens) {
        TensorElement lhs = mul(V(u), V(w));
        TensorElement rhs = V(s.mul(u, w));
        for (int col = 0; col < n; ++col) {
          const Monoid::Elt& t = W.point(col);
          if (!W.contains(s.mul(w, t)) || !W.contains(s.mul(s.mul(u, w), t))) {
            c.skip();
            continue;
          }
          TensorElement pc = tensor(ck_identity(lq), W.E(t, t));
          if (!eq(mul(lhs, pc), mul(rhs, pc)))
            c.fail("V(" + s.str(u) + ")V(" + s.str(w) + ") != V(uw) at column " +
                   s.str(t));
        }
      }
  }

  {
    detail::CheckAcc c(rep, "toeplitz-isometry");
    for (const auto& u : us) {
      TensorElement vstarv = mul(tensor_star(lq, V(u)), V(u));
      for (int col = 0; col < n; ++col) {
        const Monoid::Elt& t = W.point(col);
        if (!W.interior_for(u, col)) {
          c.skip();
          continue;
        }
        TensorElement pc = tensor(ck_identity(lq), W.E(t, t));
        if (!eq(mul(vstarv, pc), pc))
          c.fail("V(" + s.str(u) + ")*V(u) is not the identity at column " + s.str(t));
      }
    }
  }

  {
    detail::CheckAcc c(rep, "covariance");
    for (const Degree& d : degs)
      for (const Path& sigma : by_deg[d])
        for (const auto& u : us) {
          auto moved = a.path_image(u, sigma);
          if (!moved) {
            c.skip();
            continue;
          }
          auto ps = psi(sigma), pm = psi(*moved);
          if (!ps || !pm) {
            c.skip();
            continue;
          }
          if (!eq(*pm, mul(mul(V(u), *ps), tensor_star(lq, V(u)))))
            c.fail("Psi(alpha_" + s.str(u) + "(" + sigma.str(sig) +
                   ")) != V Psi V*");
        }
  }

  {
    detail::CheckAcc c(rep, "window-unit");
    // Each (quotient vertex, patch point) must be hit exactly once by the
    // vertices of the acted-on graph.
    std::set<std::pair<int, int>> seen;
    TensorElement sum(n);
    bool dup = false;
    for (const Path& x : by_deg[Degree::zero(sig.rank())]) {
      const PsiData& d = pd.at(x);
      auto i = W.at(d.xi);
      if (!i) continue;
      if (!seen.insert({d.qp.range(), *i}).second) {
        c.fail("two vertices decompose onto (" + lq.vertex_name(d.qp.range()) + "," +
               s.str(d.xi) + ")");
        dup = true;
        break;
      }
      sum += *psi(x);
    }
    if (!dup) {
      if (static_cast<int>(seen.size()) < lq.num_vertices() * n)
        c.skip();  // patch reaches past the recorded window
      else if (!eq(sum, one))
        c.fail("vertex projections do not sum to the identity on the patch");
    }
  }

  return rep;
}

}  // namespace kgv
