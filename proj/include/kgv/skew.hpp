#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/monoid.hpp"
#include "kgv/paths.hpp"

namespace kgv {

// Checks that an edge labelling eta extends to a functor into s: square
// consistency eta(f)eta(g) = eta(g')eta(f'). Lattice-valued labellings must
// take values in the positive cone; that keeps window truncation of the skew
// product closed under factorisation squares.
inline void validate_functor(const KGraph& base, const Monoid& s,
                             const std::vector<Monoid::Elt>& eta) {
  if (static_cast<int>(eta.size()) != base.num_edges())
    throw FunctorError("labelling size does not match edge count");
  for (int e = 0; e < base.num_edges(); ++e) {
    if (!s.is_element(eta[e]))
      throw FunctorError("label of edge " + base.edge(e).id + " is not a monoid element");
    if (s.kind() != Monoid::Kind::finite)
      for (long long v : eta[e])
        if (v < 0)
          throw FunctorError("label of edge " + base.edge(e).id +
                             " leaves the positive cone");
  }
  for (const Square& sq : base.squares()) {
    Monoid::Elt left = s.mul(eta[sq.f], eta[sq.g]);
    Monoid::Elt right = s.mul(eta[sq.gp], eta[sq.fp]);
    if (left != right)
      throw FunctorError("labelling is not a functor on square " + base.edge(sq.f).id + "·" +
                         base.edge(sq.g).id + " ~ " + base.edge(sq.gp).id + "·" +
                         base.edge(sq.fp).id + ": " + s.str(left) + " != " + s.str(right));
  }
}

// Skew product base ×_eta s, restricted to fibres in the box [wlo, whi]
// (a finite group always contributes all its elements). Vertices are pairs
// (v, t); an edge (e, t) runs from (s(e), t·eta(e)) to (r(e), t) and exists
// when both fibres are in the window. Degrees are inherited from the base.
struct SkewProduct {
  KGraph graph;
  Monoid s = Monoid::nat(1);
  std::vector<Monoid::Elt> eta;  // per base edge
  Monoid::Elt wlo, whi;
  std::vector<int> v_base, e_base;
  std::vector<Monoid::Elt> v_fiber, e_fiber;
  std::map<std::pair<int, Monoid::Elt>, int> v_at, e_at;

  std::optional<int> vertex_at(int bv, const Monoid::Elt& t) const {
    auto it = v_at.find({bv, t});
    return it == v_at.end() ? std::nullopt : std::optional<int>(it->second);
  }
  std::optional<int> edge_at(int be, const Monoid::Elt& t) const {
    auto it = e_at.find({be, t});
    return it == e_at.end() ? std::nullopt : std::optional<int>(it->second);
  }

  // Functor value along a base path (left-to-right product over the
  // canonical edge sequence).
  Monoid::Elt eta_of(const Path& p) const {
    Monoid::Elt acc = s.identity();
    for (int e : p.edges()) acc = s.mul(acc, eta[e]);
    return acc;
  }

  // The path (p, t); nullopt when a fibre leaves the window.
  std::optional<Path> lift(const KGraph& base, const Path& p, const Monoid::Elt& t) const {
    if (p.is_vertex()) {
      auto v = vertex_at(p.range(), t);
      if (!v) return std::nullopt;
      return vertex_path(graph, *v);
    }
    std::vector<int> seq;
    Monoid::Elt fib = t;
    for (int e : p.edges()) {
      auto img = edge_at(e, fib);
      if (!img) return std::nullopt;
      seq.push_back(*img);
      fib = s.mul(fib, eta[e]);
    }
    return make_path_trusted(graph, std::move(seq), graph.edge(seq.front()).range);
  }

  // Inverse of lift on its image: the base path and the range fibre.
  std::pair<Path, Monoid::Elt> project(const KGraph& base, const Path& sp) const {
    Monoid::Elt t = v_fiber[sp.range()];
    if (sp.is_vertex()) return {vertex_path(base, v_base[sp.range()]), t};
    std::vector<int> seq;
    for (int e : sp.edges()) seq.push_back(e_base[e]);
    return {make_path_trusted(base, std::move(seq), v_base[sp.range()]), t};
  }
};

inline SkewProduct skew_product(const KGraph& base, const Monoid& s,
                                const std::vector<Monoid::Elt>& eta, const Monoid::Elt& wlo,
                                const Monoid::Elt& whi) {
  validate_functor(base, s, eta);
  SkewProduct sk;
  sk.s = s;
  sk.eta = eta;
  sk.wlo = wlo;
  sk.whi = whi;

  std::vector<Monoid::Elt> fibres = s.box(wlo, whi);
  KGraphBuilder b(base.rank());

  auto vname = [&](int v, const Monoid::Elt& t) {
    return base.vertex_name(v) + "@" + s.tag(t);
  };
  auto ename = [&](int e, const Monoid::Elt& t) { return base.edge(e).id + "@" + s.tag(t); };

  for (const auto& t : fibres)
    for (int v = 0; v < base.num_vertices(); ++v) {
      int idx = b.add_vertex(vname(v, t));
      sk.v_base.push_back(v);
      sk.v_fiber.push_back(t);
      sk.v_at[{v, t}] = idx;
    }
  for (const auto& t : fibres)
    for (int e = 0; e < base.num_edges(); ++e) {
      Monoid::Elt src = s.mul(t, eta[e]);
      if (!s.in_box(src, wlo, whi)) continue;
      const Edge& be = base.edge(e);
      int idx = b.add_edge(be.color, ename(e, t), vname(be.range, t), vname(be.source, src));
      sk.e_base.push_back(e);
      sk.e_fiber.push_back(t);
      sk.e_at[{e, t}] = idx;
    }
  // Incompleteness: (v, t) lacks colour-c in-edges when the base vertex does,
  // or when some base in-edge's source fibre falls outside the window.
  for (const auto& t : fibres)
    for (int v = 0; v < base.num_vertices(); ++v)
      for (int c = 0; c < base.rank(); ++c) {
        bool cut = base.incomplete(v, c);
        for (int e : base.in_edges(c, v))
          if (!s.in_box(s.mul(t, eta[e]), wlo, whi)) cut = true;
        if (cut) b.mark_incomplete(vname(v, t), c);
      }
  for (const auto& t : fibres)
    for (const Square& sq : base.squares()) {
      Monoid::Elt tf = s.mul(t, eta[sq.f]);
      Monoid::Elt tgp = s.mul(t, eta[sq.gp]);
      if (!sk.e_at.count({sq.f, t}) || !sk.e_at.count({sq.g, tf}) ||
          !sk.e_at.count({sq.gp, t}) || !sk.e_at.count({sq.fp, tgp}))
        continue;
      b.add_square(ename(sq.f, t), ename(sq.g, tf), ename(sq.gp, t), ename(sq.fp, tgp));
    }
  sk.graph = b.build();
  return sk;
}

// The left-translation action lt_u(x, t) = (x, u·t) on a skew product,
// presented on the monoid's generators. Always free.
inline Action left_translation(const SkewProduct& sk) {
  std::vector<Action::GenMap> gens;
  for (const Monoid::Elt& u : sk.s.generators()) {
    Action::GenMap gm;
    gm.elt = u;
    gm.vmap.assign(sk.graph.num_vertices(), -1);
    gm.emap.assign(sk.graph.num_edges(), -1);
    for (int v = 0; v < sk.graph.num_vertices(); ++v) {
      auto img = sk.vertex_at(sk.v_base[v], sk.s.mul(u, sk.v_fiber[v]));
      if (img) gm.vmap[v] = *img;
    }
    for (int e = 0; e < sk.graph.num_edges(); ++e) {
      auto img = sk.edge_at(sk.e_base[e], sk.s.mul(u, sk.e_fiber[e]));
      if (img) gm.emap[e] = *img;
    }
    gens.push_back(std::move(gm));
  }
  return Action(sk.graph, sk.s, std::move(gens));
}

}  // namespace kgv
