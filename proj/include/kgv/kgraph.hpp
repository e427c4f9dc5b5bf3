#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgv/degree.hpp"
#include "kgv/errors.hpp"

namespace kgv {

// One generating edge of the coloured 1-skeleton. Colours are 0-based
// internally; the text format uses 1-based colour numbers.
struct Edge {
  int color = 0;
  std::string id;
  int range = -1;   // vertex index
  int source = -1;  // vertex index
};

// A factorisation square f·g = g'·f' with color(f) = color(f') = i,
// color(g) = color(g') = j and i < j. Stored as edge indices (f, g, g', f').
struct Square {
  int f, g, gp, fp;
};

// Finite presentation of (a window of) a k-graph: coloured 1-skeleton plus
// factorisation squares. Immutable once built; construct via KGraphBuilder.
//
// Window truncation: a vertex may be flagged incomplete in a colour, meaning
// its in-edges of that colour are only partially known. Operations that would
// need the missing data throw WindowExhausted; validators skip such checks
// and report them as untested.
class KGraph {
 public:
  // Tag for graphs generated from an infinite family by window truncation.
  // Family knowledge justifies certificates that a bare finite window cannot
  // (e.g. "every vertex has a predecessor in each colour" for lattice_delta).
  enum class Family { none, lattice_delta };

  int rank() const { return rank_; }
  int num_vertices() const { return static_cast<int>(vnames_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return vnames_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }

  std::optional<int> vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    return it == vindex_.end() ? std::nullopt : std::optional<int>(it->second);
  }
  std::optional<int> edge_index(const std::string& id) const {
    auto it = eindex_.find(id);
    return it == eindex_.end() ? std::nullopt : std::optional<int>(it->second);
  }

  // Edges e with colour c and r(e) = v, in insertion order.
  const std::vector<int>& in_edges(int c, int v) const { return in_edges_.at(c).at(v); }

  const std::vector<Square>& squares() const { return squares_; }

  // f·g -> (g', f') for color(f) < color(g).
  std::optional<std::pair<int, int>> square_fwd(int f, int g) const {
    auto it = sq_fwd_.find({f, g});
    return it == sq_fwd_.end() ? std::nullopt : std::optional(it->second);
  }
  // g'·f' -> (f, g) for color(g') > color(f').
  std::optional<std::pair<int, int>> square_bwd(int gp, int fp) const {
    auto it = sq_bwd_.find({gp, fp});
    return it == sq_bwd_.end() ? std::nullopt : std::optional(it->second);
  }

  // Pairs listed twice in the input with conflicting partners. Kept so the
  // validator can report non-functional square data; lookups use the first.
  const std::vector<std::pair<Square, Square>>& conflicting_squares() const {
    return sq_conflicts_;
  }

  bool truncated() const { return truncated_; }
  bool incomplete(int v, int c) const { return (incomplete_.at(v) >> c) & 1u; }

  Family family() const { return family_; }
  // Lattice coordinate of a vertex; only for Family::lattice_delta.
  const std::vector<long long>& vertex_coord(int v) const { return vcoords_.at(v); }
  const std::vector<long long>& window_lo() const { return win_lo_; }
  const std::vector<long long>& window_hi() const { return win_hi_; }

 private:
  friend class KGraphBuilder;

  int rank_ = 0;
  std::vector<std::string> vnames_;
  std::vector<Edge> edges_;
  std::map<std::string, int> vindex_, eindex_;
  std::vector<std::vector<std::vector<int>>> in_edges_;  // [color][vertex]
  std::vector<Square> squares_;
  std::map<std::pair<int, int>, std::pair<int, int>> sq_fwd_, sq_bwd_;
  std::vector<std::pair<Square, Square>> sq_conflicts_;
  std::vector<uint32_t> incomplete_;
  bool truncated_ = false;
  Family family_ = Family::none;
  std::vector<std::vector<long long>> vcoords_;
  std::vector<long long> win_lo_, win_hi_;
};

// Accumulates raw presentation data and checks it is *structurally* sound:
// ids unique, endpoints exist, squares well-typed. Whether the data satisfies
// the k-graph axioms is a separate question answered by validate_kgraph().
class KGraphBuilder {
 public:
  explicit KGraphBuilder(int rank) {
    if (rank < 1 || rank > 30) throw StructuralError("rank out of range [1,30]");
    g_.rank_ = rank;
  }

  int add_vertex(const std::string& id) {
    require_fresh_id(id);
    g_.vindex_[id] = static_cast<int>(g_.vnames_.size());
    g_.vnames_.push_back(id);
    return static_cast<int>(g_.vnames_.size()) - 1;
  }

  int add_edge(int color, const std::string& id, const std::string& range,
               const std::string& source) {
    if (color < 0 || color >= g_.rank_)
      throw StructuralError("edge '" + id + "': colour out of range");
    require_fresh_id(id);
    auto r = g_.vindex_.find(range);
    auto s = g_.vindex_.find(source);
    if (r == g_.vindex_.end())
      throw StructuralError("edge '" + id + "': dangling range vertex '" + range + "'");
    if (s == g_.vindex_.end())
      throw StructuralError("edge '" + id + "': dangling source vertex '" + source + "'");
    g_.eindex_[id] = static_cast<int>(g_.edges_.size());
    g_.edges_.push_back(Edge{color, id, r->second, s->second});
    return static_cast<int>(g_.edges_.size()) - 1;
  }

  // Square line f g ~ g' f', all by edge id.
  void add_square(const std::string& f, const std::string& g, const std::string& gp,
                  const std::string& fp) {
    int ef = edge_of(f), eg = edge_of(g), egp = edge_of(gp), efp = edge_of(fp);
    const Edge &F = g_.edges_[ef], &G = g_.edges_[eg], &GP = g_.edges_[egp],
               &FP = g_.edges_[efp];
    if (F.color >= G.color)
      throw StructuralError("square " + f + " " + g + ": colours must ascend on the left side");
    if (GP.color != G.color || FP.color != F.color)
      throw StructuralError("square " + f + " " + g + ": right side colours do not match");
    if (F.source != G.range) throw StructuralError("square: " + f + " " + g + " not composable");
    if (GP.source != FP.range)
      throw StructuralError("square: " + gp + " " + fp + " not composable");
    if (F.range != GP.range || G.source != FP.source)
      throw StructuralError("square " + f + " " + g + " ~ " + gp + " " + fp +
                            ": outer range/source mismatch");
    g_.squares_.push_back(Square{ef, eg, egp, efp});
  }

  // Declare the in-edge list of (vertex, colour) possibly cut by the window.
  void mark_incomplete(const std::string& vertex, int color) {
    auto v = g_.vindex_.find(vertex);
    if (v == g_.vindex_.end()) throw StructuralError("mark_incomplete: unknown vertex");
    if (color < 0 || color >= g_.rank_) throw StructuralError("mark_incomplete: bad colour");
    pending_incomplete_.emplace_back(v->second, color);
  }

  void set_family(KGraph::Family f, std::vector<std::vector<long long>> vcoords,
                  std::vector<long long> lo, std::vector<long long> hi) {
    g_.family_ = f;
    g_.vcoords_ = std::move(vcoords);
    g_.win_lo_ = std::move(lo);
    g_.win_hi_ = std::move(hi);
  }

  KGraph build() {
    g_.in_edges_.assign(g_.rank_, std::vector<std::vector<int>>(g_.vnames_.size()));
    for (int e = 0; e < static_cast<int>(g_.edges_.size()); ++e)
      g_.in_edges_[g_.edges_[e].color][g_.edges_[e].range].push_back(e);
    g_.incomplete_.assign(g_.vnames_.size(), 0);
    for (auto [v, c] : pending_incomplete_) {
      g_.incomplete_[v] |= 1u << c;
      g_.truncated_ = true;
    }
    for (const Square& s : g_.squares_) {
      auto [itf, newf] = g_.sq_fwd_.try_emplace({s.f, s.g}, std::pair{s.gp, s.fp});
      if (!newf && itf->second != std::pair{s.gp, s.fp})
        g_.sq_conflicts_.push_back(
            {Square{s.f, s.g, itf->second.first, itf->second.second}, s});
      auto [itb, newb] = g_.sq_bwd_.try_emplace({s.gp, s.fp}, std::pair{s.f, s.g});
      if (!newb && itb->second != std::pair{s.f, s.g})
        g_.sq_conflicts_.push_back(
            {Square{itb->second.first, itb->second.second, s.gp, s.fp}, s});
    }
    return std::move(g_);
  }

 private:
  void require_fresh_id(const std::string& id) {
    if (id.empty()) throw StructuralError("empty id");
    for (char ch : id)
      if (ch == '#' || ch == ' ' || ch == '\t' || ch == '\n')
        throw StructuralError("id '" + id + "' contains reserved characters");
    if (g_.vindex_.count(id) || g_.eindex_.count(id))
      throw StructuralError("duplicate id '" + id + "'");
  }

  int edge_of(const std::string& id) const {
    auto it = g_.eindex_.find(id);
    if (it == g_.eindex_.end()) throw StructuralError("square references unknown edge '" + id + "'");
    return it->second;
  }

  KGraph g_;
  std::vector<std::pair<int, int>> pending_incomplete_;
};

}  // namespace kgv
