#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixedcone/polyoid.hpp"
#include "mixedcone/pruning.hpp"

using namespace mixedcone;

namespace {

QVec qv(std::initializer_list<int> xs) {
    QVec v;
    for (int x : xs) v.push_back(Rat(x));
    return v;
}

QPolytope poly(int n, std::initializer_list<std::initializer_list<int>> pts) {
    std::vector<QVec> ps;
    for (auto& p : pts) ps.push_back(qv(p));
    return QPolytope::from_points(n, std::move(ps));
}

Eps E() { return Eps::variable(); }

// conv{-e2, 0, -eps e1 - eps^2 e2}: the pruning example.
PolytopeFamily prune_family() {
    return PolytopeFamily::make(
        2, {{Eps(0), Eps(-1)}, {Eps(0), Eps(0)}, {-E(), -(E() * E())}});
}

// conv{0, e2, e1 + (1+eps)e2}: the simple witness example.
PolytopeFamily witness_family() {
    return PolytopeFamily::make(
        2, {{Eps(0), Eps(0)}, {Eps(0), Eps(1)}, {Eps(1), Eps(1) + E()}});
}

// conv{-e2, 0, -eps e1 - eps e2, -eps^2 e1 - eps^3 e2}: double pruning.
PolytopeFamily double_family() {
    return PolytopeFamily::make(2, {{Eps(0), Eps(-1)},
                                    {Eps(0), Eps(0)},
                                    {-E(), -E()},
                                    {-(E() * E()), -(E() * E() * E())}});
}

} // namespace

TEST_CASE("prune_step on the pruning example") {
    PruneStepInfo info;
    auto out = prune_step(prune_family(), qv({0, 1}), &info);
    CHECK(info.selected == std::vector<int>{1, 2});
    CHECK(info.base == 1);
    CHECK(info.rescale_order == 1);
    REQUIRE(out.trajectories.size() == 2);
    CHECK(out.trajectories[0] == EVec{Eps(0), Eps(0)});
    CHECK(out.trajectories[1] == EVec{Eps(-1), -E()}); // conv{0, -e1 - eps e2}
}

TEST_CASE("prune_step on a constant family selects the face") {
    // Constant square, u = e2: selection = top edge, m = 0, re-centered.
    auto sq = poly(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    std::vector<EVec> trajs;
    for (const auto& v : sq.vertices()) trajs.push_back(to_evec(v));
    PruneStepInfo info;
    auto out = prune_step(PolytopeFamily::make(2, trajs), qv({0, 1}), &info);
    CHECK(info.rescale_order == 0);
    CHECK(info.selected.size() == 2);
    CHECK(limit_at_zero(out.body()) == poly(2, {{0, 0}, {1, 0}}));
}

TEST_CASE("prune_step on the double-pruning example") {
    PruneStepInfo info;
    auto f1 = prune_step(double_family(), qv({0, 1}), &info);
    CHECK(info.selected == std::vector<int>{1, 2, 3});
    CHECK(info.rescale_order == 1);
    REQUIRE(f1.trajectories.size() == 3);
    // conv{0, -e1-e2, -eps e1 - eps^2 e2}
    CHECK(f1.trajectories[0] == EVec{Eps(0), Eps(0)});
    CHECK(f1.trajectories[1] == EVec{Eps(-1), Eps(-1)});
    CHECK(f1.trajectories[2] == EVec{-E(), -(E() * E())});
}

TEST_CASE("prune_star_witness: pruning example") {
    auto trace = prune_star_witness(prune_family(), qv({0, 1}));
    CHECK(trace.effective_steps == 1);
    CHECK(trace.witness == poly(2, {{0, 0}, {-1, 0}})); // conv{0, -e1}
}

TEST_CASE("prune_star_witness: double pruning needs two effective steps") {
    auto trace = prune_star_witness(double_family(), qv({0, 1}));
    CHECK(trace.effective_steps == 2);
    CHECK(trace.witness == poly(2, {{0, 0}, {-1, 0}}));
    CHECK(trace.witness.dim() == 1); // nondegenerate segment
}

TEST_CASE("prune_star_witness: simple witness example") {
    auto trace = prune_star_witness(witness_family(), qv({0, 1}));
    CHECK(trace.witness == poly(2, {{0, 0}, {1, 0}}));
}

TEST_CASE("prune_star_witness: constant family with an edge face") {
    auto tri = poly(2, {{0, 0}, {0, 1}, {1, 1}});
    std::vector<EVec> trajs;
    for (const auto& v : tri.vertices()) trajs.push_back(to_evec(v));
    auto trace = prune_star_witness(PolytopeFamily::make(2, trajs), qv({0, 1}));
    CHECK(trace.effective_steps == 1);
    // F(P, e2) - vertex = conv{0, e1} up to the base choice.
    CHECK(trace.witness.dim() == 1);
    CHECK(trace.witness.contains(zero_vec<Rat>(2)));
}

TEST_CASE("witness geometry and termination on all examples") {
    for (const auto& fam : {prune_family(), witness_family(), double_family()}) {
        auto trace = prune_star_witness(fam, qv({0, 1}));
        CHECK(int(trace.steps.size()) <= int(fam.trajectories.size()));
        CHECK(trace.witness.contains(zero_vec<Rat>(2)));
        for (const auto& v : trace.witness.vertices()) CHECK(v[1] == 0);
        CHECK(trace.witness.vertices().size() >= 2); // sticky families: not a point
        CHECK(sticky_check(fam, qv({0, 1})));
    }
}

TEST_CASE("witness transfer: witness membership implies original membership") {
    // For each worked example, the witness polytope certifies e2-membership
    // of the original polyoid's measure support; both sides computed
    // independently.
    QVec u{Rat(0), Rat(1)};
    for (const auto& fam : {prune_family(), witness_family(), double_family()}) {
        auto trace = prune_star_witness(fam, u);
        GeneratingMeasure wit_mu = GeneratingMeasure::discrete(trace.witness);
        GeneratingMeasure orig_mu;
        orig_mu.n = 2;
        orig_mu.families.push_back({fam});
        auto wit_rep = supp_membership({wit_mu}, u);
        auto orig_rep = supp_membership({orig_mu}, u);
        CHECK(wit_rep.verdict == SuppVerdict::IN);
        CHECK(orig_rep.verdict == SuppVerdict::IN);
    }
}

TEST_CASE("scaling robustness of the witness") {
    for (const Rat& q : {Rat(1, 2), Rat(1), Rat(3)}) {
        auto trace = prune_star_witness(prune_family(), qv({0, 1}), q);
        // Witness equals conv{0,-e1} up to positive scaling.
        REQUIRE(trace.witness.vertices().size() == 2);
        QVec nonzero = trace.witness.vertices()[0];
        if (is_zero_vec(nonzero)) nonzero = trace.witness.vertices()[1];
        CHECK(nonzero[1] == 0);
        CHECK(nonzero[0] < 0);
        CHECK(trace.effective_steps == 1);
        // Support verdicts are unchanged under the rescale choice.
        auto wit_mu = GeneratingMeasure::discrete(trace.witness);
        CHECK(supp_membership({wit_mu}, qv({0, 1})).verdict == SuppVerdict::IN);
        CHECK(supp_membership({wit_mu}, qv({1, 0})).verdict == SuppVerdict::NOT_IN);
    }
}

TEST_CASE("sticky_check on the worked examples") {
    // Pruning example at u = e2: orders 2*2 > 2.
    CHECK(sticky_check(prune_family(), qv({0, 1})));
    // Simple witness at u = e2: the two top vertices give order 1 vs 0.
    CHECK(sticky_check(witness_family(), qv({0, 1})));
    // Constant cusped triangle: orders 0 vs 0, no sticky pair.
    auto tri = poly(2, {{0, 0}, {1, -1}, {-1, -1}});
    std::vector<EVec> trajs;
    for (const auto& v : tri.vertices()) trajs.push_back(to_evec(v));
    CHECK_FALSE(sticky_check(PolytopeFamily::make(2, trajs), qv({0, 1})));
}

TEST_CASE("local measure equality across one prune step, n = 2") {
    auto rep = local_measure_equality_check(prune_family(), qv({0, 1}), {});
    CHECK(rep.ok);
    CHECK(rep.rescale_order == 1); // lambda = eps
    CHECK(rep.matches.size() == 1);

    // Constant family: lambda = 1 and identical atoms.
    auto tri = poly(2, {{0, 0}, {0, 1}, {1, 1}});
    std::vector<EVec> trajs;
    for (const auto& v : tri.vertices()) trajs.push_back(to_evec(v));
    auto rep2 = local_measure_equality_check(PolytopeFamily::make(2, trajs), qv({0, 1}), {});
    CHECK(rep2.ok);
    CHECK(rep2.rescale_order == 0);
}

TEST_CASE("local measure equality with a mixed tuple, n = 3") {
    // The pruning example embedded in the xy-plane, with a z-segment as the
    // extra body: mixed atoms near e2 match with lambda = eps.
    PolytopeFamily fam = PolytopeFamily::make(
        3, {{Eps(0), Eps(-1), Eps(0)},
            {Eps(0), Eps(0), Eps(0)},
            {-E(), -(E() * E()), Eps(0)}});
    auto segz = poly(3, {{0, 0, 0}, {0, 0, 1}});
    auto rep = local_measure_equality_check(fam, qv({0, 1, 0}), {segz});
    CHECK(rep.ok);
    CHECK(rep.rescale_order == 1);
    CHECK(!rep.matches.empty());
}
