#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgv/fundamental.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/paths.hpp"
#include "kgv/report.hpp"

namespace kgv {

namespace detail {

inline std::string degree_tag(const Degree& d) {
  std::string s;
  for (int i = 0; i < d.rank(); ++i) {
    if (i) s += '.';
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace detail

// A path at v whose two shifted windows disagree:
//   lam(m, m+depth) != lam(n, n+depth).
// Such a path rules out the period pair (m, n) at v as far as the window
// can see. Returns the first witness in enumeration order, or nothing if
// every path of degree (m v n)+depth has equal windows.
inline std::optional<Path> find_period_witness(const KGraph& g, int v, const Degree& m,
                                               const Degree& n, const Degree& depth) {
  if (m.rank() != g.rank() || n.rank() != g.rank() || depth.rank() != g.rank())
    throw DegreeError("find_period_witness: rank mismatch");
  for (const Path& lam : paths_from(g, v, m.join(n) + depth))
    if (!(segment(g, lam, m, m + depth) == segment(g, lam, n, n + depth))) return lam;
  return std::nullopt;
}

// Bounded periodicity scan. For every candidate pair m != n below `bound`, a
// separating path is sought at every vertex; finding one everywhere is
// evidence against that period. A candidate with no separating path anywhere
// is reported as periodic-on-window. Nothing here is a global aperiodicity
// verdict: the search is confined to paths of degree (m v n)+depth.
inline Report aperiodicity_search(const KGraph& g, const Degree& bound, const Degree& depth) {
  if (bound.rank() != g.rank() || depth.rank() != g.rank())
    throw DegreeError("aperiodicity_search: rank mismatch");
  Report rep;
  rep.suite = "aperiodicity";

  std::vector<Degree> cands = detail::degrees_upto(g.rank(), bound);
  for (size_t i = 0; i < cands.size(); ++i)
    for (size_t j = i + 1; j < cands.size(); ++j) {
      const Degree& m = cands[i];
      const Degree& n = cands[j];
      std::string id = "period-" + detail::degree_tag(m) + "-vs-" + detail::degree_tag(n);

      std::string witness;
      int blocked = -1, unwitnessed = -1;
      for (int v = 0; v < g.num_vertices() && unwitnessed < 0; ++v) {
        try {
          auto lam = find_period_witness(g, v, m, n, depth);
          if (lam)
            witness = lam->str(g) + " separates " + m.str() + " from " + n.str() + " at " +
                      g.vertex_name(v);
          else
            unwitnessed = v;
        } catch (const WindowExhausted&) {
          blocked = v;
        }
      }
      if (unwitnessed >= 0)
        rep.untested(id, "periodic-on-window: every path of degree " +
                             (m.join(n) + depth).str() + " at " + g.vertex_name(unwitnessed) +
                             " has equal windows");
      else if (blocked >= 0)
        rep.untested(id, "window cut before degree " + (m.join(n) + depth).str() + " at " +
                             g.vertex_name(blocked));
      else
        rep.add(id, Status::pass, witness);
    }
  return rep;
}

// Windowed cofinality: from every vertex, some path of degree <= depth must
// end at every other vertex. Passing is a genuine sufficient condition;
// failing only means the bound was not enough unless the graph is complete,
// which is why the witness names the unreached vertex and the bound.
inline Report cofinality_check(const KGraph& g, const Degree& depth) {
  if (depth.rank() != g.rank()) throw DegreeError("cofinality_check: rank mismatch");
  Report rep;
  rep.suite = "cofinality";
  if (g.num_vertices() == 1) {
    rep.add("cofinal", Status::pass, "single vertex");
    return rep;
  }

  for (int v = 0; v < g.num_vertices(); ++v) {
    std::string id = "cofinal-from-" + g.vertex_name(v);
    std::set<int> reached;
    bool blocked = false;
    for (const Degree& d : detail::degrees_upto(g.rank(), depth)) {
      try {
        for (const Path& lam : paths_from(g, v, d)) reached.insert(lam.source());
      } catch (const WindowExhausted&) {
        blocked = true;
      }
    }
    int missing = -1;
    for (int w = 0; w < g.num_vertices(); ++w)
      if (!reached.count(w)) {
        missing = w;
        break;
      }
    if (missing < 0)
      rep.pass(id);
    else if (blocked)
      rep.untested(id, g.vertex_name(missing) + " not seen, but the window cut the search");
    else
      rep.fail(id, g.vertex_name(missing) + " is not reached from " + g.vertex_name(v) +
                       " by any path of degree <= " + depth.str());
  }
  return rep;
}

}  // namespace kgv
