#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgv/ck.hpp"
#include "kgv/errors.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/paths.hpp"

namespace kgv {

// A finite set of paths of one common degree whose sources are pairwise
// distinct. The associated sum of generators is a partial isometry, and
// multiplication against it is given by closed formulas checked in the
// tests; the source condition is what makes those formulas single-valued.
struct PISet {
  Degree deg;
  std::vector<Path> paths;
};

inline PISet make_pis(const KGraph& g, const Degree& deg, std::vector<Path> paths) {
  if (deg.rank() != g.rank()) throw PreconditionError("degree rank mismatch");
  std::set<int> sources;
  for (const Path& p : paths) {
    if (!(p.degree() == deg))
      throw PreconditionError("path " + p.str(g) + " has degree " + p.degree().str() +
                              ", expected " + deg.str());
    if (!sources.insert(p.source()).second)
      throw PreconditionError("two paths share the source " +
                              g.vertex_name(p.source()));
  }
  return PISet{deg, std::move(paths)};
}

inline CKElement sum_pis(const KGraph& g, const PISet& V) {
  CKElement x;
  for (const Path& p : V.paths) x += ck_generator(g, p);
  return x;
}

// Left multiplication: s_V · s_alpha s_beta^* is s_{mu·alpha} s_beta^* for
// the unique mu in V with s(mu) = r(alpha), and 0 if there is none.
inline CKElement sv_left_mult(const KGraph& g, const PISet& V, const CKTerm& t) {
  for (const Path& mu : V.paths)
    if (mu.source() == t.alpha.range()) {
      CKElement out;
      out.add(ck_term(g, compose(g, mu, t.alpha), t.beta), CRat::one());
      return out;
    }
  return ck_zero();
}

// Right multiplication, defined when d(beta) >= deg(V):
// s_alpha s_beta^* · s_V is s_alpha s_{beta'}^* if beta = mu·beta' with
// mu in V, and 0 otherwise. The head of beta at deg(V) is unique, so the
// formula amounts to one factorisation and one membership test.
inline CKElement sv_right_mult(const KGraph& g, const PISet& V, const CKTerm& t) {
  if (!V.deg.leq(t.beta.degree()))
    throw PreconditionError("right multiplication needs d(beta) >= " + V.deg.str() +
                            ", got " + t.beta.degree().str());
  auto [head, tail] = factorise(g, t.beta, V.deg);
  for (const Path& mu : V.paths)
    if (mu == head) {
      CKElement out;
      out.add(ck_term(g, t.alpha, tail), CRat::one());
      return out;
    }
  return ck_zero();
}

// The composite set VW = {mu·nu : mu in V, nu in W, s(mu) = r(nu)}. Its
// sources are automatically distinct: the source of mu·nu is the source of
// nu, and the nu are pairwise distinct by assumption on W.
inline PISet pis_product(const KGraph& g, const PISet& V, const PISet& W) {
  std::vector<Path> out;
  for (const Path& mu : V.paths)
    for (const Path& nu : W.paths)
      if (mu.source() == nu.range()) out.push_back(compose(g, mu, nu));
  return make_pis(g, V.deg + W.deg, std::move(out));
}

}  // namespace kgv
