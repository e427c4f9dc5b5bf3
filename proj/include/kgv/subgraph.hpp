#pragma once

#include <string>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/report.hpp"
#include "kgv/skew.hpp"

namespace kgv {

// A subgraph given by indicator vectors over an ambient graph.
struct Subgraph {
  std::vector<char> vin, ein;
};

// Fibre slice of a skew product: vertices with fibre in [lo, hi] and edges
// whose range AND source fibres both lie there.
inline Subgraph fibre_slice(const SkewProduct& sk, const Monoid::Elt& lo,
                            const Monoid::Elt& hi) {
  Subgraph sub;
  sub.vin.assign(sk.graph.num_vertices(), 0);
  sub.ein.assign(sk.graph.num_edges(), 0);
  for (int v = 0; v < sk.graph.num_vertices(); ++v)
    sub.vin[v] = sk.s.in_box(sk.v_fiber[v], lo, hi);
  for (int e = 0; e < sk.graph.num_edges(); ++e) {
    const Edge& ed = sk.graph.edge(e);
    sub.ein[e] = sub.vin[ed.range] && sub.vin[ed.source];
  }
  return sub;
}

// Saturation: r(sigma) in Omega forces sigma in Omega. It is enough to check
// edges: a longer path factors as edge·rest, the edge lands in Omega by the
// edge-level check, and rest starts at its source, closing the induction.
inline Report check_saturated(const KGraph& g, const Subgraph& omega) {
  Report rep;
  rep.suite = "saturated-subgraph";
  {
    bool ok = true;
    for (int e = 0; e < g.num_edges() && ok; ++e)
      if (omega.ein[e] && (!omega.vin[g.edge(e).range] || !omega.vin[g.edge(e).source])) {
        rep.fail("subgraph-well-formed",
                 "edge " + g.edge(e).id + " is included but an endpoint is not");
        ok = false;
      }
    if (ok) rep.pass("subgraph-well-formed");
  }
  {
    bool ok = true;
    for (int e = 0; e < g.num_edges() && ok; ++e)
      if (omega.vin[g.edge(e).range] && !omega.ein[e]) {
        rep.fail("saturated", "r(" + g.edge(e).id + ") = " +
                                  g.vertex_name(g.edge(e).range) +
                                  " lies in Omega but the edge does not");
        ok = false;
      }
    if (ok) rep.pass("saturated");
  }
  return rep;
}

// Hypotheses for dilating an endomorphic action on Omega to the ambient
// graph: Omega saturated, invariant under the positive cone, and exhausting
// (every vertex translates into Omega for some positive u; by saturation
// this extends from vertices to all paths). `pos_hi` bounds the witness
// search box [0, pos_hi] inside the acting lattice group.
inline Report check_dilation_hypotheses(const KGraph& g, const Subgraph& omega,
                                        const Action& beta, const Monoid::Elt& pos_hi) {
  const Monoid& s = beta.monoid();
  if (s.kind() != Monoid::Kind::integers)
    throw PreconditionError("dilation hypotheses are checked inside a lattice group");

  Report rep = check_saturated(g, omega);
  rep.suite = "dilation-hypotheses";

  {
    bool ok = true;
    int skipped = 0;
    for (int axis = 0; axis < s.dim() && ok; ++axis) {
      Monoid::Elt u(s.dim(), 0);
      u[axis] = 1;
      for (int v = 0; v < g.num_vertices() && ok; ++v) {
        if (!omega.vin[v]) continue;
        auto img = beta.vertex_image(u, v);
        if (!img) {
          ++skipped;
          continue;
        }
        if (!omega.vin[*img]) {
          rep.fail("omega-invariant", "beta_{" + s.str(u) + "}(" + g.vertex_name(v) +
                                          ") = " + g.vertex_name(*img) + " leaves Omega");
          ok = false;
        }
      }
      for (int e = 0; e < g.num_edges() && ok; ++e) {
        if (!omega.ein[e]) continue;
        auto img = beta.edge_image(u, e);
        if (!img) {
          ++skipped;
          continue;
        }
        if (!omega.ein[*img]) {
          rep.fail("omega-invariant", "beta_{" + s.str(u) + "}(" + g.edge(e).id + ") = " +
                                          g.edge(*img).id + " leaves Omega");
          ok = false;
        }
      }
    }
    if (ok) rep.pass("omega-invariant");
    if (skipped > 0)
      rep.untested("omega-invariant-boundary",
                   std::to_string(skipped) + " images undefined at the window boundary");
  }

  {
    Monoid::Elt zero(s.dim(), 0);
    std::vector<Monoid::Elt> cone = s.box(zero, pos_hi);
    bool all_found = true;
    bool had_boundary = false;
    std::string witnesses;
    std::string missing;
    for (int v = 0; v < g.num_vertices(); ++v) {
      bool found = false;
      bool undef = false;
      for (const Monoid::Elt& u : cone) {
        auto img = beta.vertex_image(u, v);
        if (!img) {
          undef = true;
          continue;
        }
        if (omega.vin[*img]) {
          if (witnesses.size() < 160) {
            if (!witnesses.empty()) witnesses += "; ";
            witnesses += g.vertex_name(v) + " via u=" + s.str(u);
          } else if (!witnesses.ends_with(" ...")) {
            witnesses += " ...";
          }
          found = true;
          break;
        }
      }
      if (!found) {
        all_found = false;
        had_boundary = had_boundary || undef;
        if (missing.empty()) missing = g.vertex_name(v);
      }
    }
    if (all_found)
      rep.add("omega-exhausting", Status::pass, witnesses);
    else
      rep.untested("omega-exhausting",
                   "no positive witness u <= " + s.str(pos_hi) + " for vertex " + missing +
                       (had_boundary ? " (window-limited)" : "; enlarge the search box"));
  }

  return rep;
}

}  // namespace kgv
