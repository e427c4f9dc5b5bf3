#pragma once

#include <string>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/monoid.hpp"

namespace kgv {

namespace detail {
inline std::string coord_tag(const std::vector<long long>& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(m[i]);
  }
  return s;
}
}  // namespace detail

// Window [lo, hi]^ of the rank-k lattice graph: vertices are lattice points,
// one morphism (m, n) for every m <= n, generated by the unit steps
// m -> m+e_i. The graph is tagged Family::lattice_delta so consumers may use
// family facts that hold beyond any window (every vertex has a predecessor
// in every colour); boundary vertices carry incomplete flags.
inline KGraph delta_graph(int rank, std::vector<long long> lo, std::vector<long long> hi) {
  if (static_cast<int>(lo.size()) != rank || static_cast<int>(hi.size()) != rank)
    throw StructuralError("delta_graph: window rank mismatch");
  for (int i = 0; i < rank; ++i)
    if (lo[i] > hi[i]) throw StructuralError("delta_graph: empty window");

  KGraphBuilder b(rank);
  std::vector<std::vector<long long>> points;
  {
    std::vector<long long> cur(lo);
    while (true) {
      points.push_back(cur);
      int i = rank - 1;
      while (i >= 0) {
        if (cur[i] < hi[i]) {
          ++cur[i];
          break;
        }
        cur[i] = lo[i];
        --i;
      }
      if (i < 0) break;
    }
  }

  auto vname = [](const std::vector<long long>& m) { return "p" + detail::coord_tag(m); };
  auto ename = [](int c, const std::vector<long long>& m) {
    return "d" + std::to_string(c + 1) + "@" + detail::coord_tag(m);
  };
  auto inside = [&](const std::vector<long long>& m) {
    for (int i = 0; i < rank; ++i)
      if (m[i] < lo[i] || m[i] > hi[i]) return false;
    return true;
  };

  for (const auto& m : points) b.add_vertex(vname(m));
  for (const auto& m : points)
    for (int c = 0; c < rank; ++c) {
      auto n = m;
      ++n[c];
      if (inside(n))
        b.add_edge(c, ename(c, m), vname(m), vname(n));
      else
        b.mark_incomplete(vname(m), c);
    }
  for (const auto& m : points)
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        auto mi = m, mj = m, mij = m;
        ++mi[i];
        ++mj[j];
        ++mij[i];
        ++mij[j];
        if (!inside(mij)) continue;
        b.add_square(ename(i, m), ename(j, mi), ename(j, m), ename(i, mj));
      }

  b.set_family(KGraph::Family::lattice_delta, std::move(points), std::move(lo), std::move(hi));
  return b.build();
}

// The coordinate translation action of N^k on a lattice_delta window:
// generator e_i sends the vertex at m to the vertex at m + e_i (partial at
// the window boundary). Edge images are resolved through the unique edge
// with matching colour and endpoints.
inline Action delta_translation(const KGraph& d) {
  if (d.family() != KGraph::Family::lattice_delta)
    throw PreconditionError("delta_translation: graph is not a lattice_delta window");
  Monoid s = Monoid::nat(d.rank());
  std::vector<Action::GenMap> gens;
  for (int axis = 0; axis < d.rank(); ++axis) {
    Action::GenMap gm;
    gm.elt = Monoid::Elt(d.rank(), 0);
    gm.elt[axis] = 1;
    gm.vmap.assign(d.num_vertices(), -1);
    gm.emap.assign(d.num_edges(), -1);
    std::map<std::vector<long long>, int> at;
    for (int v = 0; v < d.num_vertices(); ++v) at[d.vertex_coord(v)] = v;
    for (int v = 0; v < d.num_vertices(); ++v) {
      auto m = d.vertex_coord(v);
      ++m[axis];
      auto it = at.find(m);
      if (it != at.end()) gm.vmap[v] = it->second;
    }
    for (int e = 0; e < d.num_edges(); ++e) {
      const Edge& ed = d.edge(e);
      int nr = gm.vmap[ed.range], ns = gm.vmap[ed.source];
      if (nr < 0 || ns < 0) continue;
      for (int cand : d.in_edges(ed.color, nr))
        if (d.edge(cand).source == ns) gm.emap[e] = cand;
    }
    gens.push_back(std::move(gm));
  }
  return Action(d, std::move(s), std::move(gens));
}

}  // namespace kgv
