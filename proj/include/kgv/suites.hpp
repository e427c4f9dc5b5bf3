#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kgv/analysis.hpp"
#include "kgv/ck.hpp"
#include "kgv/fundamental.hpp"
#include "kgv/gross_tucker.hpp"
#include "kgv/pis.hpp"
#include "kgv/specfile.hpp"
#include "kgv/subgraph.hpp"
#include "kgv/thm_main.hpp"
#include "kgv/thm_skew.hpp"

namespace kgv {

// Knobs shared by the suite runners; the file's own WINDOW section is used
// unless overridden here.
struct SuiteOptions {
  std::optional<std::pair<Monoid::Elt, Monoid::Elt>> window;
  std::optional<Degree> bound;
  std::optional<Degree> depth;
  int trials = 100;
  unsigned seed = 20260815;
};

namespace detail {

inline Degree ones(int rank) { return Degree(std::vector<long long>(rank, 1)); }

inline std::pair<Monoid::Elt, Monoid::Elt> suite_window(const SpecData& sd,
                                                        const SuiteOptions& opt) {
  if (opt.window) return *opt.window;
  if (sd.window) return *sd.window;
  if (sd.monoid && sd.monoid->kind() == Monoid::Kind::finite)
    return {sd.monoid->identity(), sd.monoid->identity()};
  throw PreconditionError("no window given (WINDOW section or --window)");
}

inline const Monoid& suite_monoid(const SpecData& sd) {
  if (!sd.monoid) throw PreconditionError("suite needs a MONOID section");
  return *sd.monoid;
}

inline const std::vector<Monoid::Elt>& suite_functor(const SpecData& sd) {
  if (!sd.functor) throw PreconditionError("suite needs a FUNCTOR section");
  return *sd.functor;
}

}  // namespace detail

// Randomised exercise of the closed multiplication formulas for sets of
// partial isometries with distinct sources: s_V is a partial isometry, the
// one-term left/right product formulas agree with the expansion engine, and
// s_V s_W = s_{VW}. Deterministic for a fixed seed.
inline Report run_lemma21(const KGraph& g, int trials, unsigned seed) {
  Report rep;
  rep.suite = "lemma21";
  std::mt19937 rng(seed);
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::map<Degree, std::vector<Path>> pool;
  auto paths_of = [&](const Degree& n) -> const std::vector<Path>& {
    auto it = pool.find(n);
    if (it != pool.end()) return it->second;
    std::vector<Path> all;
    for (int v = 0; v < g.num_vertices(); ++v)
      for (const Path& p : paths_from(g, v, n)) all.push_back(p);
    return pool.emplace(n, std::move(all)).first->second;
  };
  auto random_degree = [&](int cap) {
    std::vector<long long> c(g.rank());
    for (auto& x : c) x = rnd(0, cap);
    return Degree(std::move(c));
  };
  auto random_pis = [&]() -> std::optional<PISet> {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Degree n = random_degree(1);
      const auto& all = paths_of(n);
      if (all.empty()) continue;
      std::map<int, std::vector<const Path*>> by_src;
      for (const Path& p : all) by_src[p.source()].push_back(&p);
      std::vector<Path> chosen;
      for (auto& [src, list] : by_src)
        if (rnd(0, 1)) chosen.push_back(*list[rnd(0, static_cast<int>(list.size()) - 1)]);
      if (chosen.empty()) chosen.push_back(all[rnd(0, static_cast<int>(all.size()) - 1)]);
      return make_pis(g, n, std::move(chosen));
    }
    return std::nullopt;
  };
  // A spanning term s_alpha s_beta~ whose beta has degree >= floor.
  auto random_term = [&](const Degree& floor) -> std::optional<CKTerm> {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Degree db = floor + random_degree(1);
      const auto& bs = paths_of(db);
      if (bs.empty()) continue;
      const Path& beta = bs[rnd(0, static_cast<int>(bs.size()) - 1)];
      std::vector<const Path*> as;
      for (const Path& a : paths_of(random_degree(1)))
        if (a.source() == beta.source()) as.push_back(&a);
      if (as.empty()) continue;
      return ck_term(g, *as[rnd(0, static_cast<int>(as.size()) - 1)], beta);
    }
    return std::nullopt;
  };
  auto one_term = [&](const CKTerm& t) {
    CKElement e;
    e.add(t, CRat::one());
    return e;
  };

  {
    detail::CheckAcc iso(rep, "partial-isometry");
    detail::CheckAcc lm(rep, "left-multiplication");
    detail::CheckAcc rm(rep, "right-multiplication");
    detail::CheckAcc sp(rep, "set-product");
    auto skip_all = [&] {
      iso.skip();
      lm.skip();
      rm.skip();
      sp.skip();
    };
    for (int t = 0; t < trials; ++t) {
      try {
        auto V = random_pis();
        auto W = random_pis();
        if (!V || !W) {
          skip_all();
          continue;
        }
        CKElement sv = sum_pis(g, *V);
        if (!ck_equal(g, ck_mul(g, ck_mul(g, sv, star(g, sv)), sv), sv))
          iso.fail("s_V (s_V)* s_V != s_V for V of degree " + V->deg.str());

        auto lt = random_term(Degree::zero(g.rank()));
        if (lt && !ck_equal(g, sv_left_mult(g, *V, *lt), ck_mul(g, sv, one_term(*lt))))
          lm.fail("closed form disagrees with expansion on s_V · " + lt->str(g));

        auto rt = random_term(V->deg);
        if (rt && !ck_equal(g, sv_right_mult(g, *V, *rt), ck_mul(g, one_term(*rt), sv)))
          rm.fail("closed form disagrees with expansion on " + rt->str(g) + " · s_V");

        PISet VW = pis_product(g, *V, *W);
        if (!ck_equal(g, ck_mul(g, sv, sum_pis(g, *W)), sum_pis(g, VW)))
          sp.fail("s_V s_W != s_{VW} for degrees " + V->deg.str() + ", " + W->deg.str());
      } catch (const WindowExhausted&) {
        skip_all();
      }
    }
  }
  return rep;
}

// Fundamental-domain search followed by the classification identities and
// the isomorphism onto the rebuilt skew product. A missing domain leaves
// everything untested (with the search's certificate or note as reason).
inline Report run_gross_tucker(const Action& a, const Monoid::Elt& lo, const Monoid::Elt& hi,
                               const Degree& depth) {
  Report rep;
  rep.suite = "gross-tucker";
  DomainSearchResult dom = find_fundamental_domain(a, lo, hi, depth);
  if (dom.status == DomainStatus::infeasible) {
    const DomainCertificate& c = *dom.certificate;
    rep.untested("fundamental-domain",
                 "no fundamental domain exists: " + c.reason + "; alpha_{" +
                     a.monoid().str(c.t_a) + "}(" + c.vertex_a + ") = alpha_{" +
                     a.monoid().str(c.t_b) + "}(" + c.vertex_b + ") = " + c.meet_vertex);
    return rep;
  }
  if (dom.status == DomainStatus::inconclusive) {
    rep.untested("fundamental-domain", dom.note.empty() ? "search inconclusive" : dom.note);
    return rep;
  }
  rep.add("fundamental-domain", Status::pass,
          std::to_string(dom.domain.size()) + " orbit representatives");
  GrossTuckerData gt = gross_tucker(a, dom.domain, lo, hi, depth);
  rep.merge(verify_gross_tucker(a, gt));
  rep.merge(verify_iso(a, gt));
  return rep;
}

inline Report run_suite(const SpecData& sd, const std::string& name, const SuiteOptions& opt) {
  const KGraph& g = *sd.graph;
  Degree depth = opt.depth ? *opt.depth : detail::ones(g.rank());

  if (name == "lemma21") return run_lemma21(g, opt.trials, opt.seed);

  if (name == "gross-tucker") {
    auto [lo, hi] = detail::suite_window(sd, opt);
    // With no written action, a labelled spec means: act by left translation
    // on the windowed skew product it describes.
    if (!sd.has_action && !sd.family_delta && sd.functor) {
      SkewProduct sk = skew_product(g, detail::suite_monoid(sd), *sd.functor, lo, hi);
      return run_gross_tucker(left_translation(sk), lo, hi, depth);
    }
    return run_gross_tucker(build_action(sd), lo, hi, depth);
  }

  if (name == "thm51") {
    const Monoid& s = detail::suite_monoid(sd);
    if (s.kind() != Monoid::Kind::finite)
      throw PreconditionError("thm51 needs a finite-group MONOID");
    return verify_skew_crossed_product(g, s.group(), detail::suite_functor(sd), depth);
  }

  if (name == "main") {
    const Monoid& s = detail::suite_monoid(sd);
    auto [lo, hi] = detail::suite_window(sd, opt);
    SkewProduct sk = skew_product(g, s, detail::suite_functor(sd), lo, hi);
    Action lt = left_translation(sk);
    Report rep;
    rep.suite = "main-theorem";
    DomainSearchResult dom = find_fundamental_domain(lt, lo, hi, depth);
    if (dom.status != DomainStatus::found) {
      rep.untested("fundamental-domain",
                   dom.status == DomainStatus::infeasible ? "no fundamental domain exists"
                                                          : dom.note);
      return rep;
    }
    rep.add("fundamental-domain", Status::pass,
            std::to_string(dom.domain.size()) + " orbit representatives");
    GrossTuckerData gt = gross_tucker(lt, dom.domain, lo, hi, depth);
    rep.merge(verify_main_theorem(lt, gt, lo, hi, depth));
    return rep;
  }

  if (name == "dilation-hyp") {
    const Monoid& s = detail::suite_monoid(sd);
    if (s.kind() != Monoid::Kind::integers)
      throw PreconditionError("dilation-hyp needs an INT MONOID (lattice group)");
    auto [lo, hi] = detail::suite_window(sd, opt);
    for (long long c : hi)
      if (c < 0) throw PreconditionError("dilation-hyp needs a window reaching the positive cone");
    SkewProduct sk = skew_product(g, s, detail::suite_functor(sd), lo, hi);
    Subgraph omega = fibre_slice(sk, s.identity(), hi);
    return check_dilation_hypotheses(sk.graph, omega, left_translation(sk), hi);
  }

  if (name == "aperiodicity") {
    Degree bound = opt.bound ? *opt.bound : detail::ones(g.rank());
    Report rep = aperiodicity_search(g, bound, depth);
    rep.merge(cofinality_check(g, depth));
    return rep;
  }

  throw PreconditionError("unknown suite '" + name +
                          "' (expected lemma21, gross-tucker, thm51, main, dilation-hyp, "
                          "or aperiodicity)");
}

}  // namespace kgv
