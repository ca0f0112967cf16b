#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mixedcone/polyoid.hpp"

using namespace mixedcone;

namespace {

std::mt19937_64 rng(112233);

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

QPolytope rand_poly(int n, int max_pts = 6) {
    std::uniform_int_distribution<int> npts(1, max_pts);
    std::uniform_int_distribution<int> coord(-2, 2);
    std::vector<QVec> pts;
    int m = npts(rng);
    for (int i = 0; i < m; ++i) {
        QVec p(size_t(n), Rat(0));
        for (auto& x : p) x = coord(rng);
        pts.push_back(std::move(p));
    }
    return QPolytope::from_points(n, std::move(pts));
}

Eps E() { return Eps::variable(); }

GeneratingMeasure prune_measure() {
    GeneratingMeasure mu;
    mu.n = 2;
    mu.families.push_back({PolytopeFamily::make(
        2, {{Eps(0), Eps(-1)}, {Eps(0), Eps(0)}, {-E(), -(E() * E())}})});
    return mu;
}

GeneratingMeasure witness_measure() {
    GeneratingMeasure mu;
    mu.n = 2;
    mu.families.push_back({PolytopeFamily::make(
        2, {{Eps(0), Eps(0)}, {Eps(0), Eps(1)}, {Eps(1), Eps(1) + E()}})});
    return mu;
}

GeneratingMeasure rand_discrete_measure(int n, int max_atoms = 3) {
    std::uniform_int_distribution<int> na(1, max_atoms);
    std::uniform_int_distribution<int> wd(1, 3);
    GeneratingMeasure mu;
    mu.n = n;
    for (int i = 0, m = na(rng); i < m; ++i)
        mu.atoms.push_back({Rat(wd(rng)), rand_poly(n, 4)});
    return mu;
}

} // namespace

TEST_CASE("measure projection") {
    // Single square atom onto span e1.
    GeneratingMeasure mu = GeneratingMeasure::discrete(
        poly(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    Subspace e1 = Subspace::span(2, {qv({1, 0})});
    auto proj = measure_projection(mu, e1);
    CHECK(proj.atoms.size() == 1);
    CHECK(proj.atoms[0].body == poly(2, {{0, 0}, {1, 0}}));

    // Family atoms project coordinatewise.
    auto pm = prune_measure();
    Subspace e2 = Subspace::span(2, {qv({0, 1})});
    auto projf = measure_projection(pm, e2);
    REQUIRE(projf.families.size() == 1);
    CHECK(projf.families[0].family.trajectories[0] == EVec{Eps(0), Eps(-1)});
    CHECK(projf.families[0].family.trajectories[2] == EVec{Eps(0), -(E() * E())});

    // Atoms that collide after projection merge with summed weight.
    GeneratingMeasure two;
    two.n = 2;
    two.atoms.push_back({Rat(1), poly(2, {{0, 0}, {1, 0}})});
    two.atoms.push_back({Rat(2), poly(2, {{0, 0}, {1, 1}})});
    auto merged = measure_projection(two, e1);
    REQUIRE(merged.atoms.size() == 1);
    CHECK(merged.atoms[0].weight == 3);

    // Projection support equals projected support for discrete measures.
    for (int trial = 0; trial < 30; ++trial) {
        auto m = rand_discrete_measure(3);
        Subspace w = Subspace::span(3, {qv({1, 0, 0}), qv({0, 1, 1})});
        auto p = measure_projection(m, w);
        std::set<QPolytope> got;
        for (const auto& a : p.atoms) got.insert(a.body);
        std::set<QPolytope> expect;
        for (const auto& a : m.atoms) expect.insert(a.body.project(w));
        CHECK(got == expect);
    }
}

TEST_CASE("ts_nontrivial on the worked families") {
    // Simple witness: the limit triangle has a 1-dimensional e2-face.
    CHECK(ts_nontrivial(witness_measure(), qv({0, 1})));
    // Pruning example: every body has a cusp but the constants degenerate.
    CHECK(ts_nontrivial(prune_measure(), qv({0, 1})));
    // A single triangle with a genuine cusp at u: trivial touching space.
    auto tri = GeneratingMeasure::discrete(poly(2, {{0, 0}, {1, -1}, {-1, -1}}));
    CHECK_FALSE(ts_nontrivial(tri, qv({0, 1})));
}

TEST_CASE("certify_extreme on the worked families") {
    // Pruning measure at e2: one unknown entry, vacuously EXTREME (n=2).
    auto rep = certify_extreme({prune_measure()}, qv({0, 1}));
    CHECK(rep.verdict == ExtremeVerdict::EXTREME);
    CHECK(rep.unknown_entries == std::vector<int>{0});

    // Simple witness at e2: the limit body contributes a known line.
    rep = certify_extreme({witness_measure()}, qv({0, 1}));
    CHECK(rep.verdict == ExtremeVerdict::EXTREME);
    CHECK(rep.unknown_entries.empty());

    // Single cusped triangle: NOT_EXTREME via exact trivial TS.
    auto tri = GeneratingMeasure::discrete(poly(2, {{0, 0}, {1, -1}, {-1, -1}}));
    rep = certify_extreme({tri}, qv({0, 1}));
    CHECK(rep.verdict == ExtremeVerdict::NOT_EXTREME);

    // Polytope tuple in R^3 with TS spans e1 and e2 at u = e3.
    auto kx = GeneratingMeasure::discrete(poly(3, {{0, 0, 0}, {1, 0, 0}}));
    auto ky = GeneratingMeasure::discrete(poly(3, {{0, 0, 0}, {0, 1, 0}}));
    rep = certify_extreme({kx, ky}, qv({0, 0, 1}));
    CHECK(rep.verdict == ExtremeVerdict::EXTREME);
    rep = certify_extreme({kx, kx}, qv({0, 0, 1}));
    CHECK(rep.verdict == ExtremeVerdict::NOT_EXTREME);
}

TEST_CASE("supp_membership on the worked families") {
    // Simple witness: e2 enters through the limit-body atom.
    auto rep = supp_membership({witness_measure()}, qv({0, 1}));
    CHECK(rep.verdict == SuppVerdict::IN);
    CHECK(rep.support.contains_exact(primitive(qv({0, 1}))));

    // Pruning example: every individual body excludes e2, yet the branch
    // limit direction reaches it.
    auto pm = prune_measure();
    for (int l = 1; l <= 6; ++l) {
        auto body = pm.families[0].family.at(Rat(1, l));
        auto s = mixed_area_measure({body}, 2);
        CHECK(s.rho_at(primitive(qv({0, 1}))) == 0);
    }
    auto limit_body = pm.families[0].family.limit();
    CHECK(mixed_area_measure({limit_body}, 2).rho_at(primitive(qv({0, 1}))) == 0);
    rep = supp_membership({pm}, qv({0, 1}));
    CHECK(rep.verdict == SuppVerdict::IN);
    CHECK_FALSE(rep.support.contains_exact(primitive(qv({0, 1}))));
    bool has_branch_to_u = false;
    for (const auto& b : rep.support.branches)
        has_branch_to_u = has_branch_to_u ||
                          (b.limit == primitive(qv({0, 1})) && b.eventually_positive);
    CHECK(has_branch_to_u);

    // A direction that is no facet normal of the sum: NOT_IN.
    auto sq = GeneratingMeasure::discrete(poly(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    rep = supp_membership({sq}, qv({1, 2}));
    CHECK(rep.verdict == SuppVerdict::NOT_IN);
    rep = supp_membership({sq}, qv({0, 1}));
    CHECK(rep.verdict == SuppVerdict::IN);
}

TEST_CASE("supp_membership finds isolated branch samples") {
    // Segment family [0, (1, 3eps - 1)]: the moving edge normal is
    // proportional to (1 - 3eps, 1), which degenerates to the axis direction
    // exactly at eps = 1/3 where the segment becomes [0, e1].
    PolytopeFamily fam = PolytopeFamily::make(
        2, {{Eps(0), Eps(0)}, {Eps(1), Eps::from_coeffs({Rat(-1), Rat(3)})}});
    GeneratingMeasure mu;
    mu.n = 2;
    mu.families.push_back({fam});
    auto rep = supp_membership({mu}, qv({0, 1}), /*explicit_l=*/2);
    CHECK(rep.verdict == SuppVerdict::IN);
    CHECK(rep.via == "branch sample at l=3");
    // Branch limit direction (1, 1) is reached in the closure.
    auto rep2 = supp_membership({mu}, qv({1, 1}), /*explicit_l=*/2);
    CHECK(rep2.verdict == SuppVerdict::IN);
    // (-1, 1) is never a normal of any support body nor a limit.
    auto rep3 = supp_membership({mu}, qv({-1, 1}), /*explicit_l=*/2);
    CHECK(rep3.verdict == SuppVerdict::NOT_IN);
}

TEST_CASE("polytope support characterization: atoms equal extreme rays") {
    for (int trial = 0; trial < 80; ++trial) {
        int n = (trial % 2) ? 2 : 3;
        std::uniform_int_distribution<int> nb(1, n - 1 == 0 ? 1 : n - 1);
        std::vector<QPolytope> tuple;
        for (int i = 0; i < n - 1; ++i) tuple.push_back(rand_poly(n));
        if (tuple.empty()) continue;
        auto s = mixed_area_measure(tuple, n);
        auto rays = extreme_rays(tuple);
        CHECK(s.directions() == rays);
    }
}

TEST_CASE("dimensionality obstruction: cells of cone-dimension >= 2 are not extreme") {
    for (int trial = 0; trial < 25; ++trial) {
        int n = (trial % 2) ? 2 : 3;
        std::vector<QPolytope> tuple;
        for (int i = 0; i < n - 1; ++i) tuple.push_back(rand_poly(n, 5));
        if (tuple.empty()) continue;
        auto sum = minkowski_sum(tuple);
        for (const auto& cell : fan_cells(tuple)) {
            auto face = sum.face_polytope(cell.sum_face);
            if (face.dim() <= n - 2) {
                SubspaceTuple ts;
                for (size_t i = 0; i < tuple.size(); ++i)
                    ts.push_back(face_pspan(tuple[i], cell.body_faces[i].vidx));
                CHECK_FALSE(classify(ts).semicritical);
            }
        }
    }
}

TEST_CASE("support decomposition for finite discrete measures") {
    for (int trial = 0; trial < 40; ++trial) {
        int n = (trial % 2) ? 2 : 3;
        auto mu = rand_discrete_measure(n, 3);
        std::vector<QPolytope> rest;
        for (int i = 0; i < n - 2; ++i) rest.push_back(rand_poly(n, 4));
        // supp S(polyoid(mu), rest) = union over atoms of supp S(P, rest).
        std::vector<QPolytope> lhs_tuple{mu.discrete_body()};
        lhs_tuple.insert(lhs_tuple.end(), rest.begin(), rest.end());
        auto lhs = mixed_area_measure(lhs_tuple, n).directions();
        std::set<IVec> rhs;
        for (const auto& a : mu.atoms) {
            std::vector<QPolytope> t{a.body};
            t.insert(t.end(), rest.begin(), rest.end());
            for (const auto& d : mixed_area_measure(t, n).directions()) rhs.insert(d);
        }
        CHECK(lhs == std::vector<IVec>(rhs.begin(), rhs.end()));
    }
}

TEST_CASE("support equals extremeness on discrete polyoid tuples") {
    int done = 0;
    while (done < 40) {
        int n = (done % 2) ? 2 : 3;
        std::vector<GeneratingMeasure> tuple;
        std::vector<QPolytope> bodies;
        for (int i = 0; i < n - 1; ++i) {
            tuple.push_back(rand_discrete_measure(n));
            bodies.push_back(tuple.back().discrete_body());
        }
        if (bodies.empty()) continue;
        ++done;
        auto support = limit_support_set(tuple);
        for (const auto& cell : fan_cells(bodies)) {
            QVec u = to_qvec(cell.representative);
            auto ext = certify_extreme(tuple, u);
            auto sup = supp_membership_against(support, tuple, u);
            REQUIRE(ext.verdict != ExtremeVerdict::UNKNOWN);
            CHECK((ext.verdict == ExtremeVerdict::EXTREME) ==
                  (sup.verdict == SuppVerdict::IN));
        }
    }
}

TEST_CASE("support and extremeness agree on the worked families at e2") {
    for (const auto& mu : {witness_measure(), prune_measure()}) {
        auto ext = certify_extreme({mu}, qv({0, 1}));
        auto sup = supp_membership({mu}, qv({0, 1}));
        CHECK(ext.verdict == ExtremeVerdict::EXTREME);
        CHECK(sup.verdict == SuppVerdict::IN);
    }
}

TEST_CASE("normal cone of a discrete polyoid is the intersection of atom cones") {
    for (int trial = 0; trial < 30; ++trial) {
        int n = (trial % 2) ? 2 : 3;
        auto mu = rand_discrete_measure(n);
        std::uniform_int_distribution<int> coord(-2, 2);
        QVec u(size_t(n), Rat(0));
        for (auto& x : u) x = coord(rng);
        if (is_zero_vec(u)) continue;
        CHECK(norcone_intersection_check(mu, u));
    }
}

TEST_CASE("measure-level witness extraction") {
    QVec u = qv({0, 1});
    // Family-based: both eps examples prune to conv{0, -e1}-type segments.
    auto trace = prune_star_witness(prune_measure(), u);
    CHECK(trace.witness.vertices().size() >= 2);
    CHECK(trace.witness == poly(2, {{-1, 0}, {0, 0}}));

    // Discrete trigger: a single triangle with a 1-dim top face prunes as a
    // constant family to that face.
    GeneratingMeasure tri = GeneratingMeasure::discrete(poly(2, {{0, 0}, {0, 1}, {1, 1}}));
    auto trace2 = prune_star_witness(tri, u);
    CHECK(trace2.witness.dim() == 1);
    CHECK(trace2.witness.contains(zero_vec<Rat>(2)));

    // Trivial touching space is rejected.
    GeneratingMeasure spike =
        GeneratingMeasure::discrete(poly(2, {{0, 0}, {1, -1}, {-1, -1}}));
    CHECK_THROWS_AS(prune_star_witness(spike, u), domain_error);
}

TEST_CASE("support_equal_on_ext and monotonicity") {
    // n=2, C = ([0,e1]): ext = {+-e2}; K = [0,e1], L = K + [0,e2].
    auto k = poly(2, {{0, 0}, {1, 0}});
    auto l = k + poly(2, {{0, 0}, {0, 1}});
    CHECK_FALSE(support_equal_on_ext(k, l, {k}));
    CHECK(mixed_volume({k, k}, 2) == 0);
    CHECK(mixed_volume({l, k}, 2) > 0);

    // n=2, C = ([0,e2]): ext = {+-e1}; K = [0,e2], L = 2K: equal supports on
    // ext, equal (zero) mixed volumes.
    auto ky = poly(2, {{0, 0}, {0, 1}});
    auto ly = poly(2, {{0, 0}, {0, 2}});
    CHECK(support_equal_on_ext(ky, ly, {ky}));
    CHECK(mixed_volume({ky, ky}, 2) == mixed_volume({ly, ky}, 2));

    CHECK(support_equal_on_ext(k, k, {k}));
}

TEST_CASE("monotonicity equality law on nested pairs") {
    int done = 0;
    while (done < 60) {
        int n = (done % 2) ? 2 : 3;
        std::vector<QPolytope> c;
        for (int i = 0; i < n - 1; ++i) c.push_back(rand_poly(n, 4));
        auto l = rand_poly(n, 6);
        // K = hull of a vertex subset of L, so K subset of L.
        std::uniform_int_distribution<size_t> pickcount(1, l.vertices().size());
        size_t cnt = pickcount(rng);
        std::vector<QVec> pts;
        std::vector<size_t> order(l.vertices().size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t i = 0; i < cnt; ++i) pts.push_back(l.vertices()[order[i]]);
        auto k = QPolytope::from_points(n, pts);
        ++done;
        std::vector<QPolytope> kt{k};
        kt.insert(kt.end(), c.begin(), c.end());
        std::vector<QPolytope> lt{l};
        lt.insert(lt.end(), c.begin(), c.end());
        bool eq_vol = mixed_volume(kt, n) == mixed_volume(lt, n);
        CHECK(eq_vol == support_equal_on_ext(k, l, c));
    }
}
