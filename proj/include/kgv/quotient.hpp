#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/paths.hpp"

namespace kgv {

namespace detail {
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};
}  // namespace detail

// Quotient of the graph by the orbit equivalence of an action: x ~ y iff
// alpha_t(x) = alpha_u(y) for some t, u. On the window this is the connected
// component relation of the generator translation maps.
//
// Representatives are the members with lexicographically least id. Quotient
// classes keep their representative's id, colour and (class-wise) endpoints;
// squares descend square-wise.
struct QuotientResult {
  KGraph graph;
  std::vector<int> vclass, eclass;  // base index -> quotient index
  std::vector<int> vrep, erep;      // quotient index -> representative base index
  bool orbits_complete = true;      // every class has a window-complete member per colour
  std::vector<std::string> notes;
};

inline QuotientResult quotient(const Action& a) {
  const KGraph& g = a.graph();
  detail::UnionFind uv(g.num_vertices()), ue(g.num_edges());
  for (const Action::GenMap& gm : a.generator_maps()) {
    for (int v = 0; v < g.num_vertices(); ++v)
      if (gm.vmap[v] >= 0) uv.unite(v, gm.vmap[v]);
    for (int e = 0; e < g.num_edges(); ++e)
      if (gm.emap[e] >= 0) ue.unite(e, gm.emap[e]);
  }

  QuotientResult out;
  out.vclass.assign(g.num_vertices(), -1);
  out.eclass.assign(g.num_edges(), -1);

  // Representative = lexicographically least member id; class numbering by
  // first appearance in base order.
  std::map<int, int> vroot2class, eroot2class;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int r = uv.find(v);
    auto [it, fresh] = vroot2class.try_emplace(r, static_cast<int>(out.vrep.size()));
    if (fresh)
      out.vrep.push_back(v);
    else if (g.vertex_name(v) < g.vertex_name(out.vrep[it->second]))
      out.vrep[it->second] = v;
    out.vclass[v] = it->second;
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    int r = ue.find(e);
    auto [it, fresh] = eroot2class.try_emplace(r, static_cast<int>(out.erep.size()));
    if (fresh)
      out.erep.push_back(e);
    else if (g.edge(e).id < g.edge(out.erep[it->second]).id)
      out.erep[it->second] = e;
    out.eclass[e] = it->second;
  }

  // Endpoint classes must not depend on the member; the generator maps are
  // graph morphisms so this holds by construction. Verify anyway.
  for (int e = 0; e < g.num_edges(); ++e) {
    int rep = out.erep[out.eclass[e]];
    if (out.vclass[g.edge(e).range] != out.vclass[g.edge(rep).range] ||
        out.vclass[g.edge(e).source] != out.vclass[g.edge(rep).source] ||
        g.edge(e).color != g.edge(rep).color)
      throw ActionError("quotient ill-defined: edges " + g.edge(e).id + " and " +
                        g.edge(rep).id + " are equivalent but incompatible");
  }

  KGraphBuilder b(g.rank());
  for (int c = 0; c < static_cast<int>(out.vrep.size()); ++c)
    b.add_vertex(g.vertex_name(out.vrep[c]));
  for (int c = 0; c < static_cast<int>(out.erep.size()); ++c) {
    const Edge& e = g.edge(out.erep[c]);
    b.add_edge(e.color, e.id, g.vertex_name(out.vrep[out.vclass[e.range]]),
               g.vertex_name(out.vrep[out.vclass[e.source]]));
  }
  std::set<std::array<int, 4>> seen;
  for (const Square& sq : g.squares()) {
    std::array<int, 4> cls = {out.eclass[sq.f], out.eclass[sq.g], out.eclass[sq.gp],
                              out.eclass[sq.fp]};
    if (!seen.insert(cls).second) continue;
    b.add_square(g.edge(out.erep[cls[0]]).id, g.edge(out.erep[cls[1]]).id,
                 g.edge(out.erep[cls[2]]).id, g.edge(out.erep[cls[3]]).id);
  }

  // A class inherits completeness from any window-complete member: for free
  // actions the quotient map restricts to bijections vΛ^n -> [v]Λ^n, so one
  // complete member already sees every in-edge class. Classes with no
  // complete member stay incomplete and are flagged.
  for (int c = 0; c < static_cast<int>(out.vrep.size()); ++c)
    for (int col = 0; col < g.rank(); ++col) {
      bool has_complete = false;
      for (int v = 0; v < g.num_vertices() && !has_complete; ++v)
        if (out.vclass[v] == c && !g.incomplete(v, col)) has_complete = true;
      if (!has_complete) {
        b.mark_incomplete(g.vertex_name(out.vrep[c]), col);
        out.orbits_complete = false;
        out.notes.push_back("orbit of " + g.vertex_name(out.vrep[c]) +
                            " has no window-complete member in colour " +
                            std::to_string(col + 1));
      }
    }

  out.graph = b.build();

  // Covering sanity: the in-edge classes at a complete member biject with
  // the quotient's in-edges. A mismatch means the action was not free/Ore.
  for (int c = 0; c < static_cast<int>(out.vrep.size()); ++c)
    for (int col = 0; col < g.rank(); ++col) {
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (out.vclass[v] != c || g.incomplete(v, col)) continue;
        std::set<int> member_classes;
        for (int e : g.in_edges(col, v)) member_classes.insert(out.eclass[e]);
        if (member_classes.size() != g.in_edges(col, v).size() ||
            member_classes.size() != out.graph.in_edges(col, c).size())
          throw ActionError("quotient covering violated at vertex " + g.vertex_name(v) +
                            ", colour " + std::to_string(col + 1) +
                            " (action not free, or orbit data inconsistent)");
        break;  // one complete member suffices
      }
    }

  return out;
}

// Image of a base path under the quotient map. Colour order is preserved,
// so the image of a canonical sequence is canonical.
inline Path quotient_path(const KGraph& base, const QuotientResult& q, const Path& p) {
  if (p.is_vertex()) return vertex_path(q.graph, q.vclass[p.range()]);
  std::vector<int> seq;
  for (int e : p.edges()) seq.push_back(q.eclass[e]);
  return make_path_trusted(q.graph, std::move(seq), q.vclass[p.range()]);
}

}  // namespace kgv
