#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kgv/kgraph.hpp"

namespace kgv {

// A morphism in canonical form: edges listed in composition order, grouped in
// ascending colour blocks (all colour-0 edges first, then colour-1, ...).
// Composition order is range-to-source: edges_[0] carries the range.
// Pure value type; operations take the owning graph explicitly.
class Path {
 public:
  Path() = default;

  const std::vector<int>& edges() const { return edges_; }
  int range() const { return range_; }
  int source() const { return source_; }
  const Degree& degree() const { return degree_; }
  bool is_vertex() const { return edges_.empty(); }

  bool operator==(const Path& o) const { return edges_ == o.edges_ && range_ == o.range_; }
  bool operator<(const Path& o) const {
    if (edges_ != o.edges_) return edges_ < o.edges_;
    return range_ < o.range_;
  }

  std::string str(const KGraph& g) const {
    if (edges_.empty()) return "(" + g.vertex_name(range_) + ")";
    std::string s;
    for (size_t i = 0; i < edges_.size(); ++i) {
      if (i) s += '.';
      s += g.edge(edges_[i]).id;
    }
    return s;
  }

 private:
  friend Path vertex_path(const KGraph&, int);
  friend Path make_path_trusted(const KGraph&, std::vector<int>, int);

  std::vector<int> edges_;
  int range_ = -1;
  int source_ = -1;
  Degree degree_;
};

inline Path vertex_path(const KGraph& g, int v) {
  if (v < 0 || v >= g.num_vertices()) throw StructuralError("vertex_path: bad vertex index");
  Path p;
  p.range_ = p.source_ = v;
  p.degree_ = Degree::zero(g.rank());
  return p;
}

// Internal: seq already canonical and composable. base is the range vertex
// (meaningful when seq is empty).
inline Path make_path_trusted(const KGraph& g, std::vector<int> seq, int base) {
  Path p;
  p.degree_ = Degree::zero(g.rank());
  if (seq.empty()) {
    p.range_ = p.source_ = base;
    return p;
  }
  std::vector<long long> d(g.rank(), 0);
  for (int e : seq) ++d[g.edge(e).color];
  p.degree_ = Degree(std::move(d));
  p.range_ = g.edge(seq.front()).range;
  p.source_ = g.edge(seq.back()).source;
  p.edges_ = std::move(seq);
  return p;
}

// Rewrites a composable edge sequence to canonical colour-block form by
// repeatedly resolving the leftmost colour inversion through its square.
// Deterministic; terminates because each rewrite removes one inversion.
// Throws AxiomError if a needed square is missing (unvalidated graph).
inline std::vector<int> normalize_edge_seq(const KGraph& g, std::vector<int> seq) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q + 1 < seq.size(); ++q) {
      const Edge& a = g.edge(seq[q]);
      const Edge& b = g.edge(seq[q + 1]);
      if (a.color > b.color) {
        auto sq = g.square_bwd(seq[q], seq[q + 1]);
        if (!sq)
          throw AxiomError("no factorisation square for " + a.id + "·" + b.id);
        seq[q] = sq->first;
        seq[q + 1] = sq->second;
        changed = true;
        break;
      }
    }
  }
  return seq;
}

// Builds a path from an arbitrary (not necessarily canonical) composable edge
// sequence. Checks composability; normalizes.
inline Path make_path(const KGraph& g, const std::vector<int>& seq) {
  if (seq.empty()) throw StructuralError("make_path: empty sequence has no range; use vertex_path");
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (g.edge(seq[i]).source != g.edge(seq[i + 1]).range)
      throw CompositionError("make_path: sequence not composable at position " +
                             std::to_string(i));
  return make_path_trusted(g, normalize_edge_seq(g, seq), g.edge(seq.front()).range);
}

inline Path edge_path(const KGraph& g, int e) {
  if (e < 0 || e >= g.num_edges()) throw StructuralError("edge_path: bad edge index");
  return make_path_trusted(g, {e}, g.edge(e).range);
}

inline Path compose(const KGraph& g, const Path& a, const Path& b) {
  if (a.source() != b.range())
    throw CompositionError("compose: s(first) = " + g.vertex_name(a.source()) +
                           " but r(second) = " + g.vertex_name(b.range()));
  if (a.is_vertex()) return b;
  if (b.is_vertex()) return a;
  std::vector<int> seq = a.edges();
  seq.insert(seq.end(), b.edges().begin(), b.edges().end());
  return make_path_trusted(g, normalize_edge_seq(g, std::move(seq)), a.range());
}

// Unique factorisation p = mu·nu with d(mu) = m. Requires 0 <= m <= d(p).
// Works block-wise: for each colour in ascending order, bubbles the required
// number of edges of that colour to the front through forward squares.
inline std::pair<Path, Path> factorise(const KGraph& g, const Path& p, const Degree& m) {
  if (m.rank() != g.rank()) throw DegreeError("factorise: rank mismatch");
  if (!m.is_nonnegative() || !m.leq(p.degree()))
    throw DegreeError("factorise: prefix degree " + m.str() + " not in [0, " +
                      p.degree().str() + "]");
  std::vector<int> rest = p.edges();
  std::vector<int> head;
  for (int c = 0; c < g.rank(); ++c) {
    for (long long taken = 0; taken < m[c]; ++taken) {
      // rest is canonical, so its first colour-c edge is preceded only by
      // edges of smaller colours; the degree check guarantees it exists.
      size_t pos = 0;
      while (g.edge(rest[pos]).color != c) ++pos;
      for (size_t q = pos; q > 0; --q) {
        // Rewrite (f, g) with color(f) < c = color(g) to (g', f'): the
        // colour-c edge moves one slot left.
        auto sq = g.square_fwd(rest[q - 1], rest[q]);
        if (!sq)
          throw AxiomError("no factorisation square for " + g.edge(rest[q - 1]).id + "·" +
                           g.edge(rest[q]).id);
        rest[q - 1] = sq->first;
        rest[q] = sq->second;
      }
      head.push_back(rest.front());
      rest.erase(rest.begin());
    }
  }
  Path mu = make_path_trusted(g, std::move(head), p.range());
  Path nu = make_path_trusted(g, std::move(rest), mu.source());
  return {mu, nu};
}

// Segment p(a, b): the middle factor of p = head·mid·tail with d(head) = a,
// d(mid) = b - a. Defined through two factorisations.
inline Path segment(const KGraph& g, const Path& p, const Degree& a, const Degree& b) {
  if (!a.leq(b)) throw DegreeError("segment: a must be <= b");
  auto [head, rest] = factorise(g, p, a);
  auto [mid, tail] = factorise(g, rest, b - a);
  (void)head;
  (void)tail;
  return mid;
}

namespace detail {
inline void paths_from_rec(const KGraph& g, int v, const Degree& n, std::vector<int>& cur,
                           std::vector<Path>& out, int base) {
  int c = -1;
  for (int i = 0; i < g.rank(); ++i)
    if (n[i] > 0) {
      c = i;
      break;
    }
  if (c < 0) {
    out.push_back(make_path_trusted(g, cur, base));
    return;
  }
  if (g.incomplete(v, c))
    throw WindowExhausted("paths_from: in-edges of colour " + std::to_string(c + 1) +
                          " at vertex " + g.vertex_name(v) + " are cut by the window");
  for (int e : g.in_edges(c, v)) {
    cur.push_back(e);
    paths_from_rec(g, g.edge(e).source, n - Degree::unit(g.rank(), c), cur, out, base);
    cur.pop_back();
  }
}
}  // namespace detail

// All paths of degree n with range v, i.e. the finite set vΛ^n, in canonical
// form, enumerated deterministically (colour blocks ascending, edges in
// insertion order). Unique factorisation makes each path appear once.
inline std::vector<Path> paths_from(const KGraph& g, int v, const Degree& n) {
  if (n.rank() != g.rank()) throw DegreeError("paths_from: rank mismatch");
  if (!n.is_nonnegative()) throw DegreeError("paths_from: negative degree");
  std::vector<Path> out;
  std::vector<int> cur;
  detail::paths_from_rec(g, v, n, cur, out, v);
  return out;
}

// All paths of degree n in the whole graph.
inline std::vector<Path> all_paths(const KGraph& g, const Degree& n) {
  std::vector<Path> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto part = paths_from(g, v, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace kgv
