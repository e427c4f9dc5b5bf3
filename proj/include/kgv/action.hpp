#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgv/kgraph.hpp"
#include "kgv/monoid.hpp"
#include "kgv/paths.hpp"
#include "kgv/report.hpp"

namespace kgv {

// Action of a monoid on a k-graph, presented by one partial graph morphism
// per generator (entry -1 = image left the data window). The constructor
// validates the morphism property per generator, square preservation,
// commutation/inverse laws for lattice monoids, and full closure for finite
// groups; it does NOT check freeness (see check_free).
class Action {
 public:
  struct GenMap {
    Monoid::Elt elt;
    std::vector<int> vmap, emap;
  };

  Action(const KGraph& g, Monoid s, std::vector<GenMap> gens)
      : g_(&g), s_(std::move(s)), gens_(std::move(gens)) {
    for (const GenMap& gm : gens_) validate_morphism(gm);
    switch (s_.kind()) {
      case Monoid::Kind::nat:
      case Monoid::Kind::integers:
        index_lattice_gens();
        validate_commutation();
        break;
      case Monoid::Kind::finite:
        close_group();
        break;
    }
  }

  const KGraph& graph() const { return *g_; }
  const Monoid& monoid() const { return s_; }
  const std::vector<GenMap>& generator_maps() const { return gens_; }

  std::optional<int> vertex_image(const Monoid::Elt& t, int v) const {
    return apply(t, v, true);
  }
  std::optional<int> edge_image(const Monoid::Elt& t, int e) const { return apply(t, e, false); }

  std::optional<Path> path_image(const Monoid::Elt& t, const Path& p) const {
    if (p.is_vertex()) {
      auto v = vertex_image(t, p.range());
      if (!v) return std::nullopt;
      return vertex_path(*g_, *v);
    }
    std::vector<int> seq;
    seq.reserve(p.edges().size());
    for (int e : p.edges()) {
      auto img = edge_image(t, e);
      if (!img) return std::nullopt;
      seq.push_back(*img);
    }
    // A graph morphism preserves colours and squares, so the image of a
    // canonical sequence is canonical.
    return make_path_trusted(*g_, std::move(seq), g_->edge(seq.front()).range);
  }

 private:
  void validate_morphism(const GenMap& gm) const {
    const std::string who = "generator " + s_.str(gm.elt);
    if (!s_.is_element(gm.elt)) throw ActionError(who + ": not a monoid element");
    if (static_cast<int>(gm.vmap.size()) != g_->num_vertices() ||
        static_cast<int>(gm.emap.size()) != g_->num_edges())
      throw ActionError(who + ": map size mismatch");
    for (int v = 0; v < g_->num_vertices(); ++v)
      if (gm.vmap[v] < -1 || gm.vmap[v] >= g_->num_vertices())
        throw ActionError(who + ": vertex image out of range");
    for (int e = 0; e < g_->num_edges(); ++e) {
      int img = gm.emap[e];
      if (img < -1 || img >= g_->num_edges()) throw ActionError(who + ": edge image out of range");
      if (img < 0) continue;
      const Edge& src = g_->edge(e);
      const Edge& dst = g_->edge(img);
      if (src.color != dst.color)
        throw ActionError(who + ": image of " + src.id + " changes colour");
      if (gm.vmap[src.range] < 0 || gm.vmap[src.source] < 0)
        throw ActionError(who + ": edge " + src.id + " mapped but an endpoint is not");
      if (gm.vmap[src.range] != dst.range || gm.vmap[src.source] != dst.source)
        throw ActionError(who + ": image of " + src.id + " is not a morphism (r/s mismatch)");
    }
    for (const Square& sq : g_->squares()) {
      int f = gm.emap[sq.f], h = gm.emap[sq.g], gp = gm.emap[sq.gp], fp = gm.emap[sq.fp];
      if (f < 0 || h < 0 || gp < 0 || fp < 0) continue;
      auto img = g_->square_fwd(f, h);
      if (!img || img->first != gp || img->second != fp)
        throw ActionError(who + ": square " + g_->edge(sq.f).id + "·" + g_->edge(sq.g).id +
                          " is not preserved");
    }
    if (gm.elt == s_.identity()) {
      for (int v = 0; v < g_->num_vertices(); ++v)
        if (gm.vmap[v] >= 0 && gm.vmap[v] != v)
          throw ActionError("identity generator does not act as the identity");
    }
  }

  void index_lattice_gens() {
    pos_.assign(s_.dim(), -1);
    neg_.assign(s_.dim(), -1);
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
      const Monoid::Elt& e = gens_[i].elt;
      int axis = -1, sign = 0, nonzero = 0;
      for (int j = 0; j < s_.dim(); ++j)
        if (e[j] != 0) {
          ++nonzero;
          axis = j;
          sign = e[j] > 0 ? 1 : -1;
        }
      if (nonzero != 1 || (e[axis] != 1 && e[axis] != -1))
        throw ActionError("lattice actions take unit-vector generators, got " + s_.str(e));
      (sign > 0 ? pos_ : neg_)[axis] = i;
    }
    for (int j = 0; j < s_.dim(); ++j) {
      if (pos_[j] < 0) throw ActionError("missing generator +e" + std::to_string(j + 1));
      if (s_.kind() == Monoid::Kind::integers && neg_[j] < 0)
        throw ActionError("missing generator -e" + std::to_string(j + 1));
    }
  }

  void validate_commutation() const {
    auto compose_defined = [&](const GenMap& a, const GenMap& b, int v) -> int {
      int w = b.vmap[v];
      return w < 0 ? -1 : a.vmap[w];
    };
    for (size_t i = 0; i < gens_.size(); ++i)
      for (size_t j = i + 1; j < gens_.size(); ++j)
        for (int v = 0; v < g_->num_vertices(); ++v) {
          int ab = compose_defined(gens_[i], gens_[j], v);
          int ba = compose_defined(gens_[j], gens_[i], v);
          if (ab >= 0 && ba >= 0 && ab != ba)
            throw ActionError("generators " + s_.str(gens_[i].elt) + " and " +
                              s_.str(gens_[j].elt) + " do not commute at vertex " +
                              g_->vertex_name(v));
        }
    if (s_.kind() == Monoid::Kind::integers)
      for (int j = 0; j < s_.dim(); ++j)
        for (int v = 0; v < g_->num_vertices(); ++v) {
          int w = gens_[neg_[j]].vmap[v];
          if (w >= 0 && gens_[pos_[j]].vmap[w] >= 0 && gens_[pos_[j]].vmap[w] != v)
            throw ActionError("generator -e" + std::to_string(j + 1) +
                              " is not inverse to +e" + std::to_string(j + 1));
        }
  }

  // Finite group: build the map of every element by closing the generators,
  // and verify the composition law so that word representations agree.
  void close_group() {
    const FiniteGroup& G = s_.group();
    int n = G.order();
    for (const GenMap& gm : gens_)
      for (int v : gm.vmap)
        if (v < 0) throw ActionError("finite-group actions must be total");
    ev_.assign(n, {});
    ee_.assign(n, {});
    std::vector<bool> have(n, false);
    ev_[G.identity()].resize(g_->num_vertices());
    ee_[G.identity()].resize(g_->num_edges());
    for (int v = 0; v < g_->num_vertices(); ++v) ev_[G.identity()][v] = v;
    for (int e = 0; e < g_->num_edges(); ++e) ee_[G.identity()][e] = e;
    have[G.identity()] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const GenMap& gm : gens_) {
        int u = static_cast<int>(gm.elt[0]);
        for (int a = 0; a < n; ++a) {
          if (!have[a]) continue;
          int ua = G.mul(u, a);
          std::vector<int> nv(g_->num_vertices()), ne(g_->num_edges());
          for (int v = 0; v < g_->num_vertices(); ++v) nv[v] = gm.vmap[ev_[a][v]];
          for (int e = 0; e < g_->num_edges(); ++e) ne[e] = gm.emap[ee_[a][e]];
          if (!have[ua]) {
            ev_[ua] = std::move(nv);
            ee_[ua] = std::move(ne);
            have[ua] = true;
            grew = true;
          } else if (ev_[ua] != nv || ee_[ua] != ne) {
            throw ActionError("group relations violated: two words for element " +
                              std::to_string(ua) + " act differently");
          }
        }
      }
    }
    for (int a = 0; a < n; ++a)
      if (!have[a])
        throw ActionError("provided generators do not generate the group (element " +
                          std::to_string(a) + " unreachable)");
  }

  std::optional<int> apply(const Monoid::Elt& t, int x, bool vertices) const {
    if (!s_.is_element(t)) throw ActionError("not a monoid element: " + s_.str(t));
    if (s_.kind() == Monoid::Kind::finite) {
      const auto& m = vertices ? ev_[t[0]] : ee_[t[0]];
      return m.at(x);
    }
    int cur = x;
    for (int j = 0; j < s_.dim(); ++j) {
      long long steps = t[j];
      int gi = steps >= 0 ? pos_[j] : neg_[j];
      if (steps < 0) steps = -steps;
      const auto& m = vertices ? gens_[gi].vmap : gens_[gi].emap;
      for (long long s = 0; s < steps; ++s) {
        cur = m[cur];
        if (cur < 0) return std::nullopt;
      }
    }
    return cur;
  }

  const KGraph* g_;
  Monoid s_;
  std::vector<GenMap> gens_;
  std::vector<int> pos_, neg_;          // lattice: generator index per axis
  std::vector<std::vector<int>> ev_, ee_;  // finite: full element maps
};

// Freeness on vertices: alpha_t(v) = alpha_u(v) with t != u is a violation.
// Freeness on all paths reduces to this because r intertwines the action.
inline Report check_free(const Action& a, const std::vector<Monoid::Elt>& elts) {
  Report rep;
  rep.suite = "free-action";
  const KGraph& g = a.graph();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (size_t i = 0; i < elts.size(); ++i)
      for (size_t j = i + 1; j < elts.size(); ++j) {
        auto x = a.vertex_image(elts[i], v);
        auto y = a.vertex_image(elts[j], v);
        if (x && y && *x == *y) {
          rep.fail("free-on-vertices",
                   "alpha_{" + a.monoid().str(elts[i]) + "}(" + g.vertex_name(v) +
                       ") = alpha_{" + a.monoid().str(elts[j]) + "}(" + g.vertex_name(v) +
                       ") = " + g.vertex_name(*x));
          return rep;
        }
      }
  rep.pass("free-on-vertices");
  return rep;
}

}  // namespace kgv
