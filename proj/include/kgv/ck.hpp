#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kgv/errors.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/paths.hpp"
#include "kgv/rational.hpp"

namespace kgv {

// One spanning monomial s_alpha s_beta^* of the graph algebra. The two paths
// must share a source; degree-zero beta gives a plain generator s_alpha and
// alpha = beta = v gives the vertex projection p_v.
struct CKTerm {
  Path alpha;
  Path beta;

  friend bool operator<(const CKTerm& a, const CKTerm& b) {
    if (a.alpha < b.alpha) return true;
    if (b.alpha < a.alpha) return false;
    return a.beta < b.beta;
  }
  friend bool operator==(const CKTerm& a, const CKTerm& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }

  std::string str(const KGraph& g) const {
    return "s_" + alpha.str(g) + " s_" + beta.str(g) + "*";
  }
};

inline CKTerm ck_term(const KGraph& g, Path alpha, Path beta) {
  if (alpha.source() != beta.source())
    throw CompositionError("monomial paths must share a source: s(" + alpha.str(g) +
                           ") != s(" + beta.str(g) + ")");
  return CKTerm{std::move(alpha), std::move(beta)};
}

// Finite linear combination of spanning monomials with exact complex
// rational coefficients. Zero coefficients are never stored.
struct CKElement {
  std::map<CKTerm, CRat> terms;

  bool is_syntactically_zero() const { return terms.empty(); }

  void add(const CKTerm& t, const CRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(t, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  CKElement& operator+=(const CKElement& o) {
    for (const auto& [t, c] : o.terms) add(t, c);
    return *this;
  }
  CKElement& operator-=(const CKElement& o) {
    for (const auto& [t, c] : o.terms) add(t, -c);
    return *this;
  }
  friend CKElement operator+(CKElement a, const CKElement& b) { return a += b; }
  friend CKElement operator-(CKElement a, const CKElement& b) { return a -= b; }
  friend CKElement operator*(const CRat& c, const CKElement& x) {
    CKElement out;
    for (const auto& [t, v] : x.terms) out.add(t, c * v);
    return out;
  }

  std::string str(const KGraph& g) const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [t, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")·" + t.str(g);
    }
    return s;
  }
};

inline CKElement ck_zero() { return CKElement{}; }

// s_lambda, as the monomial (lambda, s(lambda)).
inline CKElement ck_generator(const KGraph& g, const Path& lambda) {
  CKElement x;
  x.add(ck_term(g, lambda, vertex_path(g, lambda.source())), CRat::one());
  return x;
}

inline CKElement ck_vertex(const KGraph& g, int v) {
  return ck_generator(g, vertex_path(g, v));
}

// The unit of the algebra: with finitely many vertices the vertex
// projections sum to the identity.
inline CKElement ck_identity(const KGraph& g) {
  CKElement x;
  for (int v = 0; v < g.num_vertices(); ++v) x += ck_vertex(g, v);
  return x;
}

// Adjoint: (c·s_alpha s_beta^*)^* = conj(c)·s_beta s_alpha^*.
inline CKElement star(const KGraph& g, const CKElement& x) {
  CKElement out;
  for (const auto& [t, c] : x.terms) out.add(ck_term(g, t.beta, t.alpha), c.conj());
  return out;
}

// Product of two monomials. The middle factor s_beta^* s_gamma expands over
// the minimal common extensions: pairs (beta', gamma') with
// beta·beta' = gamma·gamma' of degree d(beta) v d(gamma). Each candidate
// beta' is enumerated from s(beta) and matched against gamma by unique
// factorisation. Throws WindowExhausted if the enumeration leaves the
// recorded part of the graph.
inline CKElement term_product(const KGraph& g, const CKTerm& s, const CKTerm& t) {
  CKElement out;
  if (s.beta.range() != t.alpha.range()) return out;
  Degree big = s.beta.degree().join(t.alpha.degree());
  Degree ext_b = big - s.beta.degree();
  Degree d_gamma = t.alpha.degree();
  for (const Path& bp : paths_from(g, s.beta.source(), ext_b)) {
    Path tau = compose(g, s.beta, bp);
    auto [head, tail] = factorise(g, tau, d_gamma);
    if (!(head == t.alpha)) continue;
    out.add(ck_term(g, compose(g, s.alpha, bp), compose(g, t.beta, tail)), CRat::one());
  }
  return out;
}

inline CKElement operator*(const CKElement& x, const CKElement& y) = delete;

inline CKElement ck_mul(const KGraph& g, const CKElement& x, const CKElement& y) {
  CKElement out;
  for (const auto& [s, cs] : x.terms)
    for (const auto& [t, ct] : y.terms) {
      CRat c = cs * ct;
      for (const auto& [u, cu] : term_product(g, s, t).terms) out.add(u, c * cu);
    }
  return out;
}

// Componentwise maximum of all path degrees appearing in x.
inline Degree ck_level(const KGraph& g, const CKElement& x) {
  Degree L = Degree::zero(g.rank());
  for (const auto& [t, c] : x.terms) L = L.join(t.alpha.degree()).join(t.beta.degree());
  return L;
}

// Normal form at level L: every monomial (alpha, beta) is replaced by
// sum over lambda from s(alpha) of degree L - d(alpha) of
// (alpha·lambda, beta·lambda). This substitution holds in the algebra
// because the range projections of the fixed-degree extensions of any
// vertex sum to that vertex projection. In the normal form every left path
// has degree exactly L, and monomials with equal left degree are linearly
// independent: distinct degree differences d(alpha)-d(beta) are separated
// by the canonical grading, and within one difference class the compression
// s_mu^* (·) s_nu isolates single coefficients because same-degree distinct
// paths are orthogonal. Hence two elements are equal iff their normal forms
// at a common level match termwise.
inline CKElement ck_normal_form(const KGraph& g, const CKElement& x, const Degree& L) {
  CKElement out;
  for (const auto& [t, c] : x.terms) {
    if (!t.alpha.degree().leq(L))
      throw PreconditionError("normal-form level " + L.str() +
                              " is below the term degree " + t.alpha.degree().str());
    for (const Path& lam : paths_from(g, t.alpha.source(), L - t.alpha.degree()))
      out.add(ck_term(g, compose(g, t.alpha, lam), compose(g, t.beta, lam)), c);
  }
  return out;
}

// Exact equality in the graph algebra, decided through normal forms at the
// join of all degrees present on either side.
inline bool ck_equal(const KGraph& g, const CKElement& x, const CKElement& y) {
  Degree L = ck_level(g, x).join(ck_level(g, y));
  CKElement nx = ck_normal_form(g, x, L);
  CKElement ny = ck_normal_form(g, y, L);
  return nx.terms == ny.terms;
}

inline bool ck_is_zero(const KGraph& g, const CKElement& x) {
  return ck_equal(g, x, ck_zero());
}

// Degree-preserving functor between graphs of the same rank, given by
// vertex and edge tables. Validated to respect colours, endpoints and the
// factorisation squares, so it carries canonical paths to canonical paths.
struct GraphMorphism {
  std::vector<int> vmap;
  std::vector<int> emap;
};

inline void validate_morphism(const KGraph& a, const KGraph& b, const GraphMorphism& m) {
  if (a.rank() != b.rank()) throw FunctorError("graph ranks differ");
  if (static_cast<int>(m.vmap.size()) != a.num_vertices() ||
      static_cast<int>(m.emap.size()) != a.num_edges())
    throw FunctorError("morphism tables do not match the source graph");
  for (int v : m.vmap)
    if (v < 0 || v >= b.num_vertices()) throw FunctorError("vertex image out of range");
  for (int e = 0; e < a.num_edges(); ++e) {
    const Edge& ea = a.edge(e);
    if (m.emap[e] < 0 || m.emap[e] >= b.num_edges())
      throw FunctorError("edge image out of range");
    const Edge& eb = b.edge(m.emap[e]);
    if (ea.color != eb.color)
      throw FunctorError("morphism changes the colour of " + ea.id);
    if (m.vmap[ea.range] != eb.range || m.vmap[ea.source] != eb.source)
      throw FunctorError("morphism breaks the endpoints of " + ea.id);
  }
  for (const Square& sq : a.squares()) {
    auto img = b.square_fwd(m.emap[sq.f], m.emap[sq.g]);
    if (!img || img->first != m.emap[sq.gp] || img->second != m.emap[sq.fp])
      throw FunctorError("morphism breaks the square at " + a.edge(sq.f).id + "·" +
                         a.edge(sq.g).id);
  }
}

inline Path morph_path(const KGraph& a, const KGraph& b, const GraphMorphism& m,
                       const Path& p) {
  std::vector<int> edges;
  edges.reserve(p.edges().size());
  for (int e : p.edges()) edges.push_back(m.emap[e]);
  if (edges.empty()) return vertex_path(b, m.vmap[p.range()]);
  return make_path(b, edges);
}

// The homomorphism of graph algebras induced by a graph morphism, applied
// termwise.
inline CKElement induced_hom(const KGraph& a, const KGraph& b, const GraphMorphism& m,
                             const CKElement& x) {
  CKElement out;
  for (const auto& [t, c] : x.terms)
    out.add(ck_term(b, morph_path(a, b, m, t.alpha), morph_path(a, b, m, t.beta)), c);
  return out;
}

}  // namespace kgv
