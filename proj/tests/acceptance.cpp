// Acceptance suite: one line per criterion, every check exact (zero
// tolerance). Returns the number of failed criteria.

#include <cstdio>
#include <vector>

#include "mixedcone/laws.hpp"

using namespace mixedcone;

namespace {

int failures = 0;

void report(int idx, const char* what, bool pass, long cases, double seconds,
            const std::string& detail = "") {
    std::printf("%s  [%2d] %-58s cases=%-6ld %6.2fs%s%s\n", pass ? "PASS" : "FAIL", idx,
                what, cases, seconds, detail.empty() ? "" : "  ", detail.c_str());
    if (!pass) ++failures;
}

void report(int idx, const char* what, const LawResult& r) {
    report(idx, what, r.pass, r.cases, r.seconds, r.pass ? "" : r.message);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    const uint64_t seed = 20240915;

    // 1. Polytope support characterization on >= 200 random tuples.
    {
        auto r = law_suppchar_poly(seed, 200);
        bool pass = r.pass && r.seconds < 60.0;
        report(1, "support characterization: atoms == extreme rays", pass, r.cases,
               r.seconds, r.pass ? (r.seconds < 60.0 ? "" : "over 60s budget") : r.message);
    }

    // 2. Oracle equivalence and duality identity on >= 200 random tuples.
    report(2, "mixed_volume == volume_oracle and duality identity",
           law_oracle(seed + 1, 200));

    // 3. Reduction formulas on >= 100 constructed instances.
    {
        auto r = law_reduction(seed + 2, 100);
        // Degenerate case dim C_[k] < k => S(C) = 0, checked explicitly.
        auto t0 = std::chrono::steady_clock::now();
        bool degenerate_ok = true;
        try {
            Subspace e2 = Subspace::span(3, {QVec{Rat(1), Rat(0), Rat(0)},
                                             QVec{Rat(0), Rat(1), Rat(0)}});
            auto seg = QPolytope::from_points(
                3, {QVec{Rat(0), Rat(0), Rat(0)}, QVec{Rat(1), Rat(0), Rat(0)}});
            auto seg2 = QPolytope::from_points(
                3, {QVec{Rat(0), Rat(0), Rat(0)}, QVec{Rat(2), Rat(0), Rat(0)}});
            auto rep = reduction_check({seg, seg2}, 3, 2, e2);
            degenerate_ok = rep.degenerate && rep.ok;
        } catch (const std::exception&) {
            degenerate_ok = false;
        }
        report(3, "reduction formulas (volume and measure, atom-by-atom)",
               r.pass && degenerate_ok, r.cases + 1, r.seconds + seconds_since(t0),
               r.pass ? (degenerate_ok ? "" : "degenerate case fails") : r.message);
    }

    // 4. Criticality: exhaustive equivalence, reduction/additivity laws,
    //    switching on >= 500 instances.
    {
        auto a = law_critindep(seed + 3, 200);
        auto b = law_switching(seed + 4, 500);
        report(4, "criticality: classify<=>selection, laws, switching",
               a.pass && b.pass, a.cases + b.cases, a.seconds + b.seconds,
               a.pass ? (b.pass ? "" : b.message) : a.message);
    }

    // 5. Cusp and touching-space equivalences (>=200 x 5 dirs), projection
    //    identities (>=100), finite-sum law (>=100).
    {
        auto a = law_cusps(seed + 5, 200, 100);
        auto b = law_tc3(seed + 6, 100);
        report(5, "cusps: touching equivalence, sum law, projections",
               a.pass && b.pass, a.cases + b.cases, a.seconds + b.seconds,
               a.pass ? (b.pass ? "" : b.message) : a.message);
    }

    // 6.-8. The worked examples, individually timed (< 1 s each).
    {
        auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail;
        try {
            QVec u{Rat(0), Rat(1)};
            auto mu = lawgen::family_measure(lawgen::witness_family());
            pass = ts_nontrivial(mu, u);
            auto sup = supp_membership({mu}, u);
            pass = pass && sup.verdict == SuppVerdict::IN &&
                   sup.support.contains_exact(primitive(u));
            pass = pass && certify_extreme({mu}, u).verdict == ExtremeVerdict::EXTREME;
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double dt = seconds_since(t0);
        report(6, "worked example: simple witness family at e2", pass && dt < 1.0, 1,
               dt, detail);
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail;
        try {
            QVec u{Rat(0), Rat(1)};
            IVec up = primitive(u);
            auto fam = lawgen::prune_family();
            auto mu = lawgen::family_measure(fam);
            for (int l = 1; l <= 8 && pass; ++l)
                pass = mixed_area_measure({fam.at(Rat(1, l))}, 2).rho_at(up) == 0;
            pass = pass && mixed_area_measure({fam.limit()}, 2).rho_at(up) == 0;
            auto sup = supp_membership({mu}, u);
            pass = pass && sup.verdict == SuppVerdict::IN &&
                   !sup.support.contains_exact(up);
            auto trace = prune_star_witness(fam, u);
            auto expect = QPolytope::from_points(
                2, {QVec{Rat(0), Rat(0)}, QVec{Rat(-1), Rat(0)}});
            pass = pass && trace.effective_steps == 1 && trace.witness == expect;
            auto local = local_measure_equality_check(fam, u, {});
            pass = pass && local.ok && local.rescale_order == 1;
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double dt = seconds_since(t0);
        report(7, "worked example: pruning family, branch membership at e2",
               pass && dt < 1.0, 1, dt, detail);
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail;
        try {
            QVec u{Rat(0), Rat(1)};
            auto fam = lawgen::double_family();
            pass = sticky_check(fam, u);
            PruneStepInfo info;
            auto f1 = prune_step(fam, u, &info);
            pass = pass && sticky_check(f1, u);
            auto trace = prune_star_witness(fam, u);
            pass = pass && trace.effective_steps == 2 && trace.witness.dim() == 1;
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double dt = seconds_since(t0);
        report(8, "worked example: double pruning, two effective steps",
               pass && dt < 1.0, 1, dt, detail);
    }

    // 9. Support characterization on discrete tuples plus the support
    //    decomposition over atom combinations.
    {
        auto a = law_supp_extreme_agreement(seed + 7, 100);
        auto b = law_suppint(seed + 8, 100);
        report(9, "support == extremeness on discrete polyoids + decomposition",
               a.pass && b.pass, a.cases + b.cases, a.seconds + b.seconds,
               a.pass ? (b.pass ? "" : b.message) : a.message);
    }

    // 10. AFI sanity and monotonicity equality law.
    {
        auto a = law_afi_nonneg(seed + 9, 500);
        auto b = law_monotonicity_ext(seed + 10, 100);
        report(10, "AFI gap >= 0, homothet equality, monotonicity law",
               a.pass && b.pass, a.cases + b.cases, a.seconds + b.seconds,
               a.pass ? (b.pass ? "" : b.message) : a.message);
    }

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
