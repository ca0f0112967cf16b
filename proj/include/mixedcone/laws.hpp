#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "mixedcone/io.hpp"

namespace mixedcone {

struct LawResult {
    std::string law;
    bool pass = false;
    long cases = 0;
    std::string message;
    double seconds = 0;
};

namespace lawgen {

inline QPolytope rand_poly(std::mt19937_64& rng, int n, int max_pts = 6, int lo = -2,
                           int hi = 2) {
    std::uniform_int_distribution<int> npts(1, max_pts);
    std::uniform_int_distribution<int> coord(lo, hi);
    std::vector<QVec> pts;
    int m = npts(rng);
    for (int i = 0; i < m; ++i) {
        QVec p(size_t(n), Rat(0));
        for (auto& x : p) x = coord(rng);
        pts.push_back(std::move(p));
    }
    return QPolytope::from_points(n, std::move(pts));
}

inline QPolytope rand_shape(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> coord(-2, 2);
    auto pt = [&] {
        QVec p(size_t(n), Rat(0));
        for (auto& x : p) x = coord(rng);
        return p;
    };
    switch (kind(rng)) {
        case 0: return QPolytope::from_points(n, {pt(), pt()});
        case 1: return QPolytope::from_points(n, {pt(), pt(), pt()});
        default: {
            QVec a = pt(), d1 = pt(), d2 = pt();
            return QPolytope::from_points(
                n, {a, vadd(a, d1), vadd(a, d2), vadd(vadd(a, d1), d2)});
        }
    }
}

inline QVec rand_dir(std::mt19937_64& rng, int n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> coord(lo, hi);
    while (true) {
        QVec u(size_t(n), Rat(0));
        for (auto& x : u) x = coord(rng);
        if (!is_zero_vec(u)) return u;
    }
}

inline Subspace rand_subspace_of(std::mt19937_64& rng, const Subspace& ambient_sub,
                                 int dim_lo, int dim_hi) {
    std::uniform_int_distribution<int> dd(dim_lo, dim_hi);
    std::uniform_int_distribution<int> coord(-2, 2);
    int target = std::min(dd(rng), ambient_sub.dim());
    QMat rows;
    int guard = 0;
    while (rank_of(rows) < target && ++guard < 300) {
        QVec c(size_t(ambient_sub.dim()), Rat(0));
        for (auto& x : c) x = coord(rng);
        QVec v = zero_vec<Rat>(ambient_sub.ambient());
        for (int i = 0; i < ambient_sub.dim(); ++i)
            v = vadd(v, vscale(c[size_t(i)], ambient_sub.basis()[size_t(i)]));
        rows.push_back(v);
        if (rank_of(rows) < int(rows.size())) rows.pop_back();
    }
    return Subspace::span(ambient_sub.ambient(), rows);
}

inline Eps E() { return Eps::variable(); }

inline PolytopeFamily prune_family() {
    return PolytopeFamily::make(
        2, {{Eps(0), Eps(-1)}, {Eps(0), Eps(0)}, {-E(), -(E() * E())}});
}

inline PolytopeFamily witness_family() {
    return PolytopeFamily::make(
        2, {{Eps(0), Eps(0)}, {Eps(0), Eps(1)}, {Eps(1), Eps(1) + E()}});
}

inline PolytopeFamily double_family() {
    return PolytopeFamily::make(2, {{Eps(0), Eps(-1)},
                                    {Eps(0), Eps(0)},
                                    {-E(), -E()},
                                    {-(E() * E()), -(E() * E() * E())}});
}

inline GeneratingMeasure family_measure(const PolytopeFamily& f) {
    GeneratingMeasure mu;
    mu.n = f.n;
    mu.families.push_back({f});
    return mu;
}

} // namespace lawgen

namespace detail {

template <class Body>
LawResult run_law(const std::string& name, Body&& body) {
    LawResult r;
    r.law = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = true;
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && r.message.empty()) r.message = "ok";
    return r;
}

inline void law_fail(LawResult& r, const std::string& msg) {
    r.pass = false;
    if (r.message.empty()) r.message = msg;
}

} // namespace detail

// Positive-weight atoms of the mixed area measure equal the extreme-ray set,
// as finite sets of primitive directions.
inline LawResult law_suppchar_poly(uint64_t seed, long count = 200) {
    return detail::run_law("suppchar-poly", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::vector<QPolytope> tuple;
            for (int i = 0; i < n - 1; ++i)
                tuple.push_back(lawgen::rand_poly(rng, n, 6));
            ++r.cases;
            auto atoms = mixed_area_measure(tuple, n).directions();
            auto rays = extreme_rays(tuple);
            if (atoms != rays) return detail::law_fail(r, "atom/ray set mismatch");
        }
    });
}

// mixed_volume == volume_oracle and the duality identity, on the
// segment/triangle/square corpus.
inline LawResult law_oracle(uint64_t seed, long count = 200) {
    return detail::run_law("oracle", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::vector<QPolytope> tuple;
            for (int i = 0; i < n; ++i) tuple.push_back(lawgen::rand_shape(rng, n));
            ++r.cases;
            Rat v = mixed_volume(tuple, n);
            if (v != volume_oracle(tuple, n))
                return detail::law_fail(r, "oracle disagreement");
            std::vector<QPolytope> head(tuple.begin(), tuple.end() - 1);
            auto s = mixed_area_measure(head, n);
            Rat acc(0);
            for (const auto& a : s.atoms)
                acc += tuple.back().support_value(to_qvec(a.w)) * a.rho;
            if (acc != Rat(n) * v) return detail::law_fail(r, "duality identity fails");
        }
    });
}

// Volume and measure reduction formulas on instances with the first k bodies
// forced into a k-subspace, including the degenerate dim < k case.
inline LawResult law_reduction(uint64_t seed, long count = 100) {
    return detail::run_law("reduction", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coord(-2, 2);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::uniform_int_distribution<int> kd(1, n - 1);
            int k = kd(rng);
            Subspace e = lawgen::rand_subspace_of(rng, Subspace::full(n), k, k);
            if (e.dim() != k) continue;
            auto rand_in_e = [&] {
                std::uniform_int_distribution<int> npts(1, 3);
                std::vector<QVec> pts;
                for (int i = 0, m = npts(rng); i < m; ++i) {
                    QVec p = zero_vec<Rat>(n);
                    for (int j = 0; j < k; ++j)
                        p = vadd(p, vscale(Rat(coord(rng)), e.basis()[size_t(j)]));
                    pts.push_back(p);
                }
                return QPolytope::from_points(n, pts);
            };
            ++r.cases;
            std::vector<QPolytope> vt;
            for (int i = 0; i < k; ++i) vt.push_back(rand_in_e());
            for (int i = k; i < n; ++i) vt.push_back(lawgen::rand_poly(rng, n, 4));
            if (!reduction_check(vt, n, k, e).ok)
                return detail::law_fail(r, "volume reduction fails");
            if (k <= n - 1) {
                std::vector<QPolytope> mt;
                for (int i = 0; i < k; ++i) mt.push_back(rand_in_e());
                for (int i = k; i < n - 1; ++i) mt.push_back(lawgen::rand_poly(rng, n, 4));
                auto rep = reduction_check(mt, n, k, e);
                if (!rep.ok) return detail::law_fail(r, "measure reduction fails");
            }
        }
    });
}

// classify <=> independent_selection on the exhaustive sign-line corpus, plus
// the reduction/additivity laws on random subspace tuples.
inline LawResult law_critindep(uint64_t seed, long random_count = 200) {
    return detail::run_law("critindep", [&](LawResult& r) {
        // Exhaustive part: the 13 lines spanned by {-1,0,1}-vectors in R^3.
        std::vector<Subspace> lines;
        std::set<QMat> seen;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c) {
                    if (!a && !b && !c) continue;
                    QVec v{Rat(a), Rat(b), Rat(c)};
                    Subspace s = Subspace::span(3, {v});
                    if (seen.insert(s.basis()).second) lines.push_back(s);
                }
        auto seg = [&](const Subspace& s) {
            return std::vector<QVec>{zero_vec<Rat>(3), s.basis()[0]};
        };
        for (size_t i = 0; i < lines.size(); ++i) {
            ++r.cases;
            if (independent_selection({seg(lines[i])}).has_value() !=
                classify({lines[i]}).semicritical)
                return detail::law_fail(r, "classify/selection mismatch (size 1)");
            for (size_t j = 0; j < lines.size(); ++j) {
                ++r.cases;
                if (independent_selection({seg(lines[i]), seg(lines[j])}).has_value() !=
                    classify({lines[i], lines[j]}).semicritical)
                    return detail::law_fail(r, "classify/selection mismatch (size 2)");
                for (size_t k = 0; k < lines.size(); ++k) {
                    ++r.cases;
                    bool sel = independent_selection({seg(lines[i]), seg(lines[j]),
                                                      seg(lines[k])})
                                   .has_value();
                    if (sel != classify({lines[i], lines[j], lines[k]}).semicritical)
                        return detail::law_fail(r, "classify/selection mismatch (size 3)");
                }
            }
        }
        // Random part: reduction and additivity laws.
        std::mt19937_64 rng(seed);
        for (long t = 0; t < random_count; ++t) {
            int n = (t % 2) ? 3 : 4;
            Subspace full = Subspace::full(n);
            std::uniform_int_distribution<int> kd(0, 2), ld(0, 2);
            int k = kd(rng);
            Subspace e = lawgen::rand_subspace_of(rng, full, k, k);
            k = e.dim();
            SubspaceTuple tup;
            for (int i = 0; i < k; ++i)
                tup.push_back(lawgen::rand_subspace_of(rng, e, 0, k));
            for (int i = ld(rng); i > 0; --i)
                tup.push_back(lawgen::rand_subspace_of(rng, full, 0, n));
            ++r.cases;
            SubspaceTuple head(tup.begin(), tup.begin() + k);
            SubspaceTuple tail_proj;
            Subspace eperp = e.orthocomplement();
            for (size_t i = size_t(k); i < tup.size(); ++i) {
                QMat rows;
                for (const auto& b : tup[i].basis()) rows.push_back(eperp.project(b));
                tail_proj.push_back(Subspace::span(n, rows));
            }
            if (semicritical(tup) != (semicritical(head) && semicritical(tail_proj)))
                return detail::law_fail(r, "semicritical reduction fails");

            Subspace b = lawgen::rand_subspace_of(rng, full, 0, 2);
            Subspace c = lawgen::rand_subspace_of(rng, full, 0, 2);
            SubspaceTuple rest;
            for (int i = ld(rng); i > 0; --i)
                rest.push_back(lawgen::rand_subspace_of(rng, full, 0, n));
            auto with = [&](const Subspace& first) {
                SubspaceTuple t2{first};
                t2.insert(t2.end(), rest.begin(), rest.end());
                return t2;
            };
            if (semicritical(with(b.sum(c))) !=
                (semicritical(with(b)) || semicritical(with(c))))
                return detail::law_fail(r, "semicritical additivity fails");
        }
    });
}

// Switching postconditions, re-verified from scratch.
inline LawResult law_switching(uint64_t seed, long count = 500) {
    return detail::run_law("switching", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 3 : 4;
            QVec u = zero_vec<Rat>(n);
            u[size_t(n - 1)] = 1;
            Subspace uperp = Subspace::span(n, QMat{u}).orthocomplement();
            SubspaceTuple t, rr;
            for (int i = 0; i < n - 1; ++i) {
                t.push_back(lawgen::rand_subspace_of(rng, uperp, 1, n - 1));
                rr.push_back(lawgen::rand_subspace_of(rng, uperp, 1, n - 1));
            }
            bool ok = semicritical(t);
            for (const auto& s : rr) ok = ok && s.dim() >= 1;
            if (!ok) continue;
            ++r.cases;
            auto res = switching(t, rr, u);
            QMat ri;
            for (int i : res.i_set)
                for (const auto& b : rr[size_t(i)].basis()) ri.push_back(b);
            bool good = !res.i_set.empty() &&
                        std::includes(res.j_set.begin(), res.j_set.end(),
                                      res.i_set.begin(), res.i_set.end()) &&
                        rank_of(ri) == int(res.i_set.size()) &&
                        res.e.dim() == int(res.i_set.size());
            SubspaceTuple mixed;
            for (int i = 0; i < n - 1; ++i) {
                bool inj = std::binary_search(res.j_set.begin(), res.j_set.end(), i);
                mixed.push_back(inj ? rr[size_t(i)] : t[size_t(i)]);
            }
            good = good && semicritical(mixed);
            if (!good) return detail::law_fail(r, "switching postcondition fails");
        }
    });
}

// tc3 projection identities on random (polytope, subspace, direction) triples.
inline LawResult law_tc3(uint64_t seed, long count = 100) {
    return detail::run_law("tc3", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> wd(1, 3);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            auto p = lawgen::rand_poly(rng, n, 5);
            QMat rows;
            int target = std::min(wd(rng), n);
            int guard = 0;
            while (rank_of(rows) < target && ++guard < 50)
                rows.push_back(lawgen::rand_dir(rng, n));
            Subspace w = Subspace::span(n, rows);
            if (w.dim() == 0) continue;
            QVec u = w.project(lawgen::rand_dir(rng, n));
            if (is_zero_vec(u)) continue;
            ++r.cases;
            auto chk = projection_ts_check(p, w, u);
            if (!chk.cones_equal || !chk.ts_equal)
                return detail::law_fail(r, "tc3 identity fails");
        }
    });
}

// Cusp equivalences: trivial touching space iff positive cusp constant, and
// the finite-sum law (cusp constants combine by min).
inline LawResult law_cusps(uint64_t seed, long equiv_count = 200, long sum_count = 100) {
    return detail::run_law("cusps", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        for (long t = 0; t < equiv_count; ++t) {
            int n = (t % 2) ? 2 : 3;
            auto p = lawgen::rand_poly(rng, n);
            for (int d = 0; d < 5; ++d) {
                QVec u = lawgen::rand_dir(rng, n);
                ++r.cases;
                auto ts = touching_space_polytope(p, u).ts;
                auto c = cusp(p, u);
                if ((ts.dim() == 0) != (c.max_cusp_sq > 0))
                    return detail::law_fail(r, "cusp/touching-space equivalence fails");
            }
        }
        for (long t = 0; t < sum_count; ++t) {
            int n = (t % 2) ? 2 : 3;
            auto a = lawgen::rand_poly(rng, n, 4);
            auto b = lawgen::rand_poly(rng, n, 4);
            QVec u = lawgen::rand_dir(rng, n);
            ++r.cases;
            auto ra = cusp(a, u), rb = cusp(b, u), rs = cusp(a + b, u);
            if (rs.max_cusp_sq != std::min(ra.max_cusp_sq, rb.max_cusp_sq))
                return detail::law_fail(r, "cusp sum min-law fails");
            for (const Rat& c2 : {Rat(1, 10), Rat(1, 2), Rat(1)})
                if (rs.has_cusp(c2) != (ra.has_cusp(c2) && rb.has_cusp(c2)))
                    return detail::law_fail(r, "cusp sum iff fails");
        }
    });
}

// Locality of mixed area measures: same support sets over the atom
// directions of a region imply equal weights there.
inline LawResult law_matau(uint64_t seed, long count = 100) {
    return detail::run_law("matau", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::vector<QPolytope> tuple;
            for (int i = 0; i < n - 1; ++i) tuple.push_back(lawgen::rand_poly(rng, n, 5));
            auto s = mixed_area_measure(tuple, n);
            if (s.atoms.empty()) continue;
            ++r.cases;
            size_t cut = 1 + (s.atoms.size() > 1 ? size_t(rng() % (s.atoms.size() - 1)) : 0);
            std::vector<QVec> pts;
            for (size_t i = 0; i < cut; ++i) {
                auto f = tuple[0].support(to_qvec(s.atoms[i].w)).second;
                for (int vi : f.vidx) pts.push_back(tuple[0].vertices()[size_t(vi)]);
            }
            auto repl = tuple;
            repl[0] = QPolytope::from_points(n, pts);
            auto s2 = mixed_area_measure(repl, n);
            for (size_t i = 0; i < cut; ++i)
                if (s.atoms[i].rho != s2.rho_at(s.atoms[i].w))
                    return detail::law_fail(r, "locality fails");
        }
    });
}

// AFI gap nonnegativity, with exact equality for homothetic pairs.
inline LawResult law_afi_nonneg(uint64_t seed, long count = 500) {
    return detail::run_law("afi-nonneg", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> scale_num(1, 3);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            auto k = lawgen::rand_poly(rng, n, 5);
            auto l = lawgen::rand_poly(rng, n, 5);
            std::vector<QPolytope> rest;
            for (int i = 0; i < n - 2; ++i) rest.push_back(lawgen::rand_poly(rng, n, 4));
            ++r.cases;
            auto rep = afi_gap(k, l, rest, n);
            if (rep.gap < 0) return detail::law_fail(r, "negative AFI gap");
            // Homothet: exact equality.
            auto l2 = k.scaled(Rat(scale_num(rng), 2))
                          .translated(lawgen::rand_dir(rng, n, -2, 2));
            auto rep2 = afi_gap(k, l2, rest, n);
            if (rep2.gap != 0) return detail::law_fail(r, "homothet gap nonzero");
        }
    });
}

// Monotonicity equality cases: V(K, C) = V(L, C) iff h_K = h_L on ext C, for
// K inside L.
inline LawResult law_monotonicity_ext(uint64_t seed, long count = 100) {
    return detail::run_law("monotonicity-ext", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::vector<QPolytope> c;
            for (int i = 0; i < n - 1; ++i) c.push_back(lawgen::rand_poly(rng, n, 4));
            auto l = lawgen::rand_poly(rng, n, 6);
            std::uniform_int_distribution<size_t> pickcount(1, l.vertices().size());
            size_t cnt = pickcount(rng);
            std::vector<size_t> order(l.vertices().size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<QVec> pts;
            for (size_t i = 0; i < cnt; ++i) pts.push_back(l.vertices()[order[i]]);
            auto k = QPolytope::from_points(n, pts);
            ++r.cases;
            std::vector<QPolytope> kt{k}, lt{l};
            kt.insert(kt.end(), c.begin(), c.end());
            lt.insert(lt.end(), c.begin(), c.end());
            Rat vk = mixed_volume(kt, n), vl = mixed_volume(lt, n);
            if (vk > vl) return detail::law_fail(r, "monotonicity violated");
            if ((vk == vl) != support_equal_on_ext(k, l, c))
                return detail::law_fail(r, "equality characterization fails");
        }
    });
}

// Support decomposition for finite discrete measures: the support of the
// mixed measure of the summed bodies is the union over atom combinations.
inline LawResult law_suppint(uint64_t seed, long count = 100) {
    return detail::run_law("suppint", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> na(1, 3), wd(1, 3);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            GeneratingMeasure mu;
            mu.n = n;
            for (int i = 0, m = na(rng); i < m; ++i)
                mu.atoms.push_back({Rat(wd(rng)), lawgen::rand_poly(rng, n, 3)});
            std::vector<QPolytope> rest;
            for (int i = 0; i < n - 2; ++i) rest.push_back(lawgen::rand_poly(rng, n, 4));
            ++r.cases;
            std::vector<QPolytope> lhs_tuple{mu.discrete_body()};
            lhs_tuple.insert(lhs_tuple.end(), rest.begin(), rest.end());
            auto lhs = mixed_area_measure(lhs_tuple, n).directions();
            std::set<IVec> rhs;
            for (const auto& a : mu.atoms) {
                std::vector<QPolytope> t{a.body};
                t.insert(t.end(), rest.begin(), rest.end());
                for (const auto& d : mixed_area_measure(t, n).directions()) rhs.insert(d);
            }
            if (lhs != std::vector<IVec>(rhs.begin(), rhs.end()))
                return detail::law_fail(r, "support decomposition fails");
        }
    });
}

// Support characterization on discrete polyoid tuples: supp membership and
// the extremeness certificate agree on every fan representative.
inline LawResult law_supp_extreme_agreement(uint64_t seed, long count = 100) {
    return detail::run_law("supp-extreme", [&](LawResult& r) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> na(1, 3), wd(1, 3);
        while (r.cases < count) {
            int n = (r.cases % 2) ? 2 : 3;
            std::vector<GeneratingMeasure> tuple;
            std::vector<QPolytope> bodies;
            for (int i = 0; i < n - 1; ++i) {
                GeneratingMeasure mu;
                mu.n = n;
                for (int j = 0, m = na(rng); j < m; ++j)
                    mu.atoms.push_back({Rat(wd(rng)), lawgen::rand_poly(rng, n, 4)});
                bodies.push_back(mu.discrete_body());
                tuple.push_back(std::move(mu));
            }
            ++r.cases;
            auto support = limit_support_set(tuple);
            for (const auto& cell : fan_cells(bodies)) {
                QVec u = to_qvec(cell.representative);
                auto ext = certify_extreme(tuple, u);
                auto sup = supp_membership_against(support, tuple, u);
                if (ext.verdict == ExtremeVerdict::UNKNOWN)
                    return detail::law_fail(r, "UNKNOWN on discrete input");
                if ((ext.verdict == ExtremeVerdict::EXTREME) !=
                    (sup.verdict == SuppVerdict::IN))
                    return detail::law_fail(r, "supp/extreme disagreement");
            }
        }
    });
}

// The three worked pruning examples, end to end.
inline LawResult law_prune_examples(uint64_t /*seed*/) {
    return detail::run_law("prune-examples", [&](LawResult& r) {
        QVec u{Rat(0), Rat(1)};
        auto fail = [&](const std::string& m) { detail::law_fail(r, m); };

        // Simple witness: ts_nontrivial, membership through the limit body,
        // certified extreme.
        {
            auto mu = lawgen::family_measure(lawgen::witness_family());
            ++r.cases;
            if (!ts_nontrivial(mu, u)) return fail("witness: ts_nontrivial false");
            auto sup = supp_membership({mu}, u);
            if (sup.verdict != SuppVerdict::IN ||
                !sup.support.contains_exact(primitive(u)))
                return fail("witness: membership not via the limit atom");
            if (certify_extreme({mu}, u).verdict != ExtremeVerdict::EXTREME)
                return fail("witness: not certified extreme");
        }

        // Pruning example: every support body excludes e2, the branch limit
        // reaches it; one effective prune yields conv{0, -e1}; the local
        // measures match with lambda = eps.
        {
            auto fam = lawgen::prune_family();
            auto mu = lawgen::family_measure(fam);
            ++r.cases;
            IVec up = primitive(u);
            for (int l = 1; l <= 8; ++l)
                if (mixed_area_measure({fam.at(Rat(1, l))}, 2).rho_at(up) != 0)
                    return fail("prune: sample body contains e2");
            if (mixed_area_measure({fam.limit()}, 2).rho_at(up) != 0)
                return fail("prune: limit body contains e2");
            auto sup = supp_membership({mu}, u);
            if (sup.verdict != SuppVerdict::IN || sup.support.contains_exact(up))
                return fail("prune: membership must come from a branch");
            auto trace = prune_star_witness(fam, u);
            auto expect = QPolytope::from_points(
                2, {QVec{Rat(0), Rat(0)}, QVec{Rat(-1), Rat(0)}});
            if (trace.effective_steps != 1 || !(trace.witness == expect))
                return fail("prune: wrong witness or step count");
            auto local = local_measure_equality_check(fam, u, {});
            if (!local.ok || local.rescale_order != 1)
                return fail("prune: local measure equality fails");
            if (certify_extreme({mu}, u).verdict != ExtremeVerdict::EXTREME)
                return fail("prune: not certified extreme");
        }

        // Double pruning: two effective prunes, nondegenerate segment
        // witness, sticky at every stage.
        {
            auto fam = lawgen::double_family();
            ++r.cases;
            if (!sticky_check(fam, u)) return fail("double: not sticky initially");
            PruneStepInfo info;
            auto f1 = prune_step(fam, u, &info);
            if (!sticky_check(f1, u)) return fail("double: not sticky after step 1");
            auto trace = prune_star_witness(fam, u);
            if (trace.effective_steps != 2)
                return fail("double: expected exactly two effective prunes");
            if (trace.witness.dim() != 1)
                return fail("double: witness must be a nondegenerate segment");
        }
    });
}

inline std::vector<std::string> law_names() {
    return {"suppchar-poly", "suppint",    "reduction",        "critindep",
            "tc3",           "matau",      "afi-nonneg",       "monotonicity-ext",
            "prune-examples"};
}

inline LawResult run_named_law(const std::string& name, uint64_t seed) {
    if (name == "suppchar-poly") return law_suppchar_poly(seed);
    if (name == "suppint") return law_suppint(seed);
    if (name == "reduction") return law_reduction(seed);
    if (name == "critindep") return law_critindep(seed);
    if (name == "tc3") return law_tc3(seed);
    if (name == "matau") return law_matau(seed);
    if (name == "afi-nonneg") return law_afi_nonneg(seed);
    if (name == "monotonicity-ext") return law_monotonicity_ext(seed);
    if (name == "prune-examples") return law_prune_examples(seed);
    fail("UnknownLaw", "no law named '" + name + "'");
}

} // namespace mixedcone
