#include <gtest/gtest.h>

#include <algorithm>
#include <climits>
#include <random>
#include <set>

#include "graphs_common.hpp"
#include "kgv/degree.hpp"
#include "kgv/family.hpp"
#include "kgv/paths.hpp"
#include "kgv/validate.hpp"

using namespace kgv;
using kgvtest::f2theta;

namespace {

Degree deg2(long long a, long long b) { return Degree({a, b}); }

Path by_ids(const KGraph& g, const std::vector<std::string>& ids) {
  std::vector<int> seq;
  for (const auto& id : ids) seq.push_back(*g.edge_index(id));
  return make_path(g, seq);
}

std::vector<std::string> ids_of(const KGraph& g, const Path& p) {
  std::vector<std::string> out;
  for (int e : p.edges()) out.push_back(g.edge(e).id);
  return out;
}

Status status_of(const Report& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return c.status;
  ADD_FAILURE() << "no check named " << id;
  return Status::untested;
}

std::string witness_of(const Report& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return c.witness;
  return "";
}

}  // namespace

TEST(Degree, Arithmetic) {
  Degree a = deg2(2, 1), b = deg2(1, 3);
  EXPECT_EQ((a + b), deg2(3, 4));
  EXPECT_EQ((b - a), deg2(-1, 2));
  EXPECT_EQ(a.join(b), deg2(2, 3));
  EXPECT_EQ(a.meet(b), deg2(1, 1));
  EXPECT_TRUE(deg2(1, 1).leq(a));
  EXPECT_FALSE(a.leq(b));
  EXPECT_FALSE(b.leq(a));
  EXPECT_EQ(a.total(), 3);
  EXPECT_EQ(a.str(), "2,1");
  EXPECT_TRUE(Degree::zero(2).is_zero());
  EXPECT_EQ(Degree::unit(3, 1), Degree({0, 1, 0}));
}

TEST(Degree, OverflowChecked) {
  Degree big({LLONG_MAX, 0});
  EXPECT_THROW(big + Degree({1, 0}), DegreeError);
  Degree small({LLONG_MIN, 0});
  EXPECT_THROW(small - Degree({1, 0}), DegreeError);
  EXPECT_THROW(deg2(1, 0) + Degree({1, 2, 3}), DegreeError);
}

TEST(Builder, StructuralErrors) {
  {
    KGraphBuilder b(2);
    b.add_vertex("v");
    EXPECT_THROW(b.add_vertex("v"), StructuralError);
    b.add_edge(0, "e", "v", "v");
    EXPECT_THROW(b.add_edge(1, "e", "v", "v"), StructuralError);
    EXPECT_THROW(b.add_edge(0, "x", "v", "nowhere"), StructuralError);
    EXPECT_THROW(b.add_edge(2, "y", "v", "v"), StructuralError);
  }
  {
    // Ill-typed squares are structural, not axiom, failures.
    KGraphBuilder b(2);
    b.add_vertex("v");
    b.add_edge(0, "f", "v", "v");
    b.add_edge(1, "g", "v", "v");
    EXPECT_THROW(b.add_square("g", "f", "f", "g"), StructuralError);  // colours descend
    EXPECT_THROW(b.add_square("f", "missing", "g", "f"), StructuralError);
    EXPECT_THROW(b.add_square("f", "g", "f", "g"), StructuralError);  // right side colours
  }
  {
    KGraphBuilder b(2);
    b.add_vertex("u");
    b.add_vertex("w");
    b.add_edge(0, "a", "u", "u");
    b.add_edge(1, "b", "w", "w");
    // a and b are not composable.
    EXPECT_THROW(b.add_square("a", "b", "b", "a"), StructuralError);
  }
}

TEST(Validate, F2ThetaPasses) {
  Report r = validate_kgraph(f2theta());
  EXPECT_TRUE(r.all_pass()) << (r.first_fail() ? r.first_fail()->witness : "untested entries");
  EXPECT_EQ(status_of(r, "squares-functional"), Status::pass);
  EXPECT_EQ(status_of(r, "squares-total-injective"), Status::pass);
  EXPECT_EQ(status_of(r, "squares-surjective"), Status::pass);
  EXPECT_EQ(status_of(r, "triple-consistency"), Status::pass);
  EXPECT_EQ(status_of(r, "row-finite-no-sources"), Status::pass);
}

TEST(Validate, SmallExamplesPass) {
  for (const KGraph& g :
       {kgvtest::torus(1), kgvtest::torus(2), kgvtest::torus(3), kgvtest::flip2(),
        kgvtest::three_colour(true)}) {
    Report r = validate_kgraph(g);
    EXPECT_TRUE(r.all_pass()) << (r.first_fail() ? r.first_fail()->witness : "untested entries");
  }
}

TEST(Validate, MissingSquareWitness) {
  Report r = validate_kgraph(kgvtest::f2theta_missing_square());
  EXPECT_EQ(status_of(r, "squares-total-injective"), Status::fail);
  EXPECT_NE(witness_of(r, "squares-total-injective").find("f3·g3"), std::string::npos);
  EXPECT_EQ(status_of(r, "squares-surjective"), Status::fail);
}

TEST(Validate, NonBijectiveWitness) {
  Report r = validate_kgraph(kgvtest::f2theta_nonbijective());
  EXPECT_EQ(status_of(r, "squares-total-injective"), Status::fail);
  EXPECT_NE(witness_of(r, "squares-total-injective").find("not injective"), std::string::npos);
  EXPECT_EQ(status_of(r, "squares-surjective"), Status::fail);
}

TEST(Validate, NoSourcesWitness) {
  KGraphBuilder b(2);
  b.add_vertex("v");
  b.add_edge(0, "f", "v", "v");
  // No colour-2 edge at all: vΛ^{e_2} is empty.
  Report r = validate_kgraph(b.build());
  EXPECT_EQ(status_of(r, "row-finite-no-sources"), Status::fail);
  EXPECT_NE(witness_of(r, "row-finite-no-sources").find("colour 2"), std::string::npos);
}

TEST(Validate, TripleConsistencyFails) {
  Report r = validate_kgraph(kgvtest::three_colour(false));
  EXPECT_EQ(status_of(r, "squares-functional"), Status::pass);
  EXPECT_EQ(status_of(r, "squares-total-injective"), Status::pass);
  EXPECT_EQ(status_of(r, "squares-surjective"), Status::pass);
  EXPECT_EQ(status_of(r, "triple-consistency"), Status::fail);
  EXPECT_FALSE(witness_of(r, "triple-consistency").empty());
}

TEST(Paths, ComposeCanonicalForm) {
  KGraph g = f2theta();
  Path f2 = edge_path(g, *g.edge_index("f2"));
  Path g1 = edge_path(g, *g.edge_index("g1"));

  Path p = compose(g, f2, g1);
  EXPECT_EQ(ids_of(g, p), (std::vector<std::string>{"f2", "g1"}));
  EXPECT_EQ(p.degree(), deg2(1, 1));

  // The reversed word rewrites through the square g1·f2 = f1·g1.
  Path q = compose(g, g1, f2);
  EXPECT_EQ(ids_of(g, q), (std::vector<std::string>{"f1", "g1"}));
  EXPECT_EQ(q, compose(g, edge_path(g, *g.edge_index("f1")), g1));
}

TEST(Paths, FactoriseRedPrefix) {
  KGraph g = f2theta();
  Path p = by_ids(g, {"f2", "g1"});
  auto [mu, nu] = factorise(g, p, deg2(0, 1));
  EXPECT_EQ(ids_of(g, mu), (std::vector<std::string>{"g1"}));
  EXPECT_EQ(ids_of(g, nu), (std::vector<std::string>{"f1"}));

  // Independent oracle: the unique square with left side f2·g1 determines the
  // red-first factorisation; exhaustive search over the 9 squares.
  int found = 0;
  for (const Square& s : g.squares())
    if (g.edge(s.f).id == "f2" && g.edge(s.g).id == "g1") {
      ++found;
      EXPECT_EQ(g.edge(s.gp).id, ids_of(g, mu)[0]);
      EXPECT_EQ(g.edge(s.fp).id, ids_of(g, nu)[0]);
    }
  EXPECT_EQ(found, 1);
}

TEST(Paths, EnumerationCounts) {
  KGraph g = f2theta();
  EXPECT_EQ(paths_from(g, 0, deg2(1, 1)).size(), 9u);
  EXPECT_EQ(paths_from(g, 0, deg2(2, 1)).size(), 27u);
  EXPECT_EQ(paths_from(g, 0, deg2(2, 2)).size(), 81u);

  // Enumerated paths are pairwise distinct and canonical.
  auto ps = paths_from(g, 0, deg2(2, 2));
  std::set<Path> dedup(ps.begin(), ps.end());
  EXPECT_EQ(dedup.size(), ps.size());
  for (const Path& p : ps) {
    for (size_t i = 0; i + 1 < p.edges().size(); ++i)
      EXPECT_LE(g.edge(p.edges()[i]).color, g.edge(p.edges()[i + 1]).color);
  }
}

TEST(Paths, CountingIdentity) {
  // |vΛ^{m+n}| = sum over λ in vΛ^m of |s(λ)Λ^n|.
  for (const KGraph& g : {f2theta(), kgvtest::flip2(), kgvtest::three_colour(true)}) {
    int k = g.rank();
    std::vector<Degree> degs;
    if (k == 2) {
      degs = {deg2(1, 0), deg2(0, 1), deg2(1, 1), deg2(2, 1)};
    } else {
      degs = {Degree({1, 0, 0}), Degree({0, 1, 1}), Degree({1, 1, 1})};
    }
    for (int v = 0; v < g.num_vertices(); ++v)
      for (const Degree& m : degs)
        for (const Degree& n : degs) {
          size_t direct = paths_from(g, v, m + n).size();
          size_t split = 0;
          for (const Path& lam : paths_from(g, v, m))
            split += paths_from(g, lam.source(), n).size();
          EXPECT_EQ(direct, split);
        }
  }
}

TEST(Paths, FactoriseRoundTripExhaustive) {
  KGraph g = f2theta();
  Degree top = deg2(2, 2);
  for (const Path& p : paths_from(g, 0, top)) {
    for (long long a = 0; a <= 2; ++a)
      for (long long b = 0; b <= 2; ++b) {
        auto [mu, nu] = factorise(g, p, deg2(a, b));
        EXPECT_EQ(mu.degree(), deg2(a, b));
        EXPECT_EQ(nu.degree(), top - deg2(a, b));
        EXPECT_EQ(mu.range(), p.range());
        EXPECT_EQ(mu.source(), nu.range());
        EXPECT_EQ(nu.source(), p.source());
        EXPECT_EQ(compose(g, mu, nu), p);
      }
  }
}

TEST(Paths, FactoriseCoherence) {
  // Factorising by m and then m' off the remainder agrees with factorising
  // by m + m' in one step.
  KGraph g = f2theta();
  std::vector<Degree> small = {deg2(0, 0), deg2(1, 0), deg2(0, 1), deg2(1, 1), deg2(2, 0)};
  for (const Path& p : paths_from(g, 0, deg2(2, 2))) {
    for (const Degree& m : small)
      for (const Degree& mp : small) {
        if (!(m + mp).leq(p.degree())) continue;
        auto [alpha, rest] = factorise(g, p, m);
        auto [beta, tail] = factorise(g, rest, mp);
        auto [mu, nu] = factorise(g, p, m + mp);
        EXPECT_EQ(compose(g, alpha, beta), mu);
        EXPECT_EQ(tail, nu);
      }
  }
}

TEST(Paths, SegmentConsistency) {
  KGraph g = f2theta();
  for (const Path& p : paths_from(g, 0, deg2(2, 2))) {
    EXPECT_EQ(segment(g, p, deg2(0, 0), p.degree()), p);
    Degree a = deg2(1, 0), bnd = deg2(2, 1);
    Path mid = segment(g, p, a, bnd);
    EXPECT_EQ(mid.degree(), bnd - a);
    auto [head, rest] = factorise(g, p, a);
    auto [mid2, tail] = factorise(g, rest, bnd - a);
    EXPECT_EQ(mid, mid2);
    EXPECT_EQ(compose(g, compose(g, head, mid), tail), p);
  }
}

TEST(Paths, ConfluenceRandomWalks) {
  // Build random composable words and fold them with compose() under random
  // association orders; all orders and the one-shot normalisation agree.
  std::mt19937 rng(20260815);
  for (const KGraph& g : {f2theta(), kgvtest::flip2(), kgvtest::three_colour(true)}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<int> len_d(1, 6);
      int len = len_d(rng);
      std::vector<int> word;
      int at = std::uniform_int_distribution<int>(0, g.num_vertices() - 1)(rng);
      for (int s = 0; s < len; ++s) {
        std::vector<int> options;
        for (int c = 0; c < g.rank(); ++c)
          for (int e : g.in_edges(c, at)) options.push_back(e);
        ASSERT_FALSE(options.empty());
        int e = options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
        word.push_back(e);
        at = g.edge(e).source;
      }
      Path direct = make_path(g, word);
      // Random association: repeatedly merge a random adjacent pair.
      std::vector<Path> parts;
      for (int e : word) parts.push_back(edge_path(g, e));
      while (parts.size() > 1) {
        size_t i = std::uniform_int_distribution<size_t>(0, parts.size() - 2)(rng);
        parts[i] = compose(g, parts[i], parts[i + 1]);
        parts.erase(parts.begin() + i + 1);
      }
      EXPECT_EQ(parts[0], direct);
    }
  }
}

TEST(Paths, ErrorCases) {
  KGraph g = kgvtest::flip2();
  Path au = edge_path(g, *g.edge_index("au"));
  Path aw = edge_path(g, *g.edge_index("aw"));
  EXPECT_THROW(compose(g, au, aw), CompositionError);
  EXPECT_THROW(make_path(g, {}), StructuralError);
  EXPECT_THROW(make_path(g, {*g.edge_index("au"), *g.edge_index("aw")}), CompositionError);
  EXPECT_THROW(factorise(g, au, deg2(2, 0)), DegreeError);
  EXPECT_THROW(factorise(g, au, deg2(-1, 0)), DegreeError);
  EXPECT_THROW(paths_from(g, 0, deg2(-1, 0)), DegreeError);
}

TEST(Paths, MissingSquareIsAxiomError) {
  KGraph g = kgvtest::f2theta_missing_square();
  Path g3 = edge_path(g, *g.edge_index("g3"));
  Path f3 = edge_path(g, *g.edge_index("f3"));
  EXPECT_THROW(compose(g, g3, f3), AxiomError);
  Path p = compose(g, f3, g3);  // already canonical, no square needed
  EXPECT_THROW(factorise(g, p, deg2(0, 1)), AxiomError);
}

TEST(Delta, WindowGraphBasics) {
  KGraph d = delta_graph(2, {0, 0}, {2, 2});
  EXPECT_EQ(d.num_vertices(), 9);
  EXPECT_TRUE(d.truncated());
  EXPECT_EQ(d.family(), KGraph::Family::lattice_delta);

  int origin = *d.vertex_index("p0.0");
  EXPECT_EQ(d.vertex_coord(origin), (std::vector<long long>{0, 0}));

  // Exactly one morphism for each (vertex, degree) inside the window.
  auto ps = paths_from(d, origin, deg2(2, 2));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].source(), *d.vertex_index("p2.2"));

  // Requests that leave the window are refused, not silently truncated.
  EXPECT_THROW(paths_from(d, origin, deg2(3, 0)), WindowExhausted);

  Report r = validate_kgraph(d);
  EXPECT_FALSE(r.any_fail()) << r.first_fail()->witness;
  EXPECT_EQ(status_of(r, "row-finite-no-sources"), Status::untested);
  EXPECT_EQ(status_of(r, "squares-total-injective"), Status::pass);
}

TEST(Delta, SymmetricWindow) {
  KGraph d = delta_graph(2, {-3, -3}, {3, 3});
  EXPECT_EQ(d.num_vertices(), 49);
  Report r = validate_kgraph(d);
  EXPECT_FALSE(r.any_fail());
  // Interior factorisation works as in the full graph.
  int v = *d.vertex_index("p-1.-1");
  auto ps = paths_from(d, v, deg2(2, 2));
  ASSERT_EQ(ps.size(), 1u);
  auto [mu, nu] = factorise(d, ps[0], deg2(1, 1));
  EXPECT_EQ(mu.source(), *d.vertex_index("p0.0"));
  EXPECT_EQ(nu.range(), *d.vertex_index("p0.0"));
}

TEST(Delta, Rank3Window) {
  KGraph d = delta_graph(3, {0, 0, 0}, {1, 1, 1});
  EXPECT_EQ(d.num_vertices(), 8);
  Report r = validate_kgraph(d);
  EXPECT_FALSE(r.any_fail());
  auto ps = paths_from(d, *d.vertex_index("p0.0.0"), Degree({1, 1, 1}));
  ASSERT_EQ(ps.size(), 1u);
}
