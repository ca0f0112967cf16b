#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mixedcone/criticality.hpp"
#include "mixedcone/pruning.hpp"

namespace mixedcone {

// Finite description of a polyoid: discrete weighted polytope atoms plus
// eps-parametrized family atoms (standing for the countable sub-measure of
// bodies at eps = 1/l, l in N, together with the limit body). Weight
// schedules of family atoms are tags; support computations only use
// positivity of the weights.
struct GeneratingMeasure {
    struct Atom {
        Rat weight; // > 0
        QPolytope body;
    };
    struct FamilyAtom {
        PolytopeFamily family;
        std::string schedule = "geometric";
    };
    int n = 0;
    std::vector<Atom> atoms;
    std::vector<FamilyAtom> families;

    static GeneratingMeasure discrete(const QPolytope& body, const Rat& weight = Rat(1)) {
        GeneratingMeasure m;
        m.n = body.ambient();
        m.atoms.push_back({weight, body});
        return m;
    }

    bool is_discrete() const { return families.empty(); }

    void validate() const {
        require(!atoms.empty() || !families.empty(), "EmptyMeasure",
                "generating measure needs at least one atom");
        for (const auto& a : atoms) {
            require(a.weight > 0, "NonpositiveWeight", "atom weights must be positive");
            require(a.body.ambient() == n, "DimensionMismatch", "atom ambient mismatch");
        }
        for (const auto& f : families)
            require(f.family.n == n, "DimensionMismatch", "family ambient mismatch");
    }

    // Discrete polyoids are polytopes: the weighted Minkowski sum of the
    // support bodies, evaluated once and cached.
    const QPolytope& discrete_body() const {
        require(is_discrete(), "UnsupportedMeasureShape",
                "family atoms have no finite body");
        if (!cached_body_) {
            QPolytope acc = atoms[0].body.scaled(atoms[0].weight);
            for (size_t i = 1; i < atoms.size(); ++i)
                acc = acc + atoms[i].body.scaled(atoms[i].weight);
            cached_body_ = std::move(acc);
        }
        return *cached_body_;
    }

private:
    mutable std::optional<QPolytope> cached_body_;
};

inline GeneratingMeasure measure_projection(const GeneratingMeasure& mu, const Subspace& w) {
    require(w.dim() >= 1, "TrivialSubspace", "projection onto the zero space");
    GeneratingMeasure out;
    out.n = mu.n;
    QMat p = w.projection_matrix();
    for (const auto& a : mu.atoms) out.atoms.push_back({a.weight, a.body.project(w)});
    for (const auto& f : mu.families) {
        std::vector<EVec> trajs;
        for (const auto& t : f.family.trajectories)
            trajs.push_back(EPolytope::apply_qmat(p, t));
        out.families.push_back({PolytopeFamily::make(mu.n, std::move(trajs)), f.schedule});
    }
    // Image-measure semantics: atoms landing on the same body merge.
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const auto& a, const auto& b) { return a.body < b.body; });
    std::vector<GeneratingMeasure::Atom> merged;
    for (auto& a : out.atoms) {
        if (!merged.empty() && merged.back().body == a.body)
            merged.back().weight += a.weight;
        else
            merged.push_back(std::move(a));
    }
    out.atoms = std::move(merged);
    return out;
}

// TS(polyoid, u) != {0} iff the support bodies fail to keep a uniform cusp:
// some support body has no cusp at u at all (including family samples at
// small eps = 1/l and the family limit), or a family's cusp constant
// degenerates as eps -> 0.
inline bool ts_nontrivial(const GeneratingMeasure& mu, const QVec& u,
                          int explicit_l = 24) {
    require(!is_zero_vec(u), "ZeroDirection", "ts_nontrivial needs u != 0");
    for (const auto& a : mu.atoms)
        if (cusp(a.body, u).max_cusp_sq == 0) return true;
    for (const auto& f : mu.families) {
        if (cusp(f.family.limit(), u).max_cusp_sq == 0) return true;
        auto r = cusp_eps(f.family.body(), u);
        if (r.max_cusp_sq.sign() == 0) return true; // no cusp along the family
        auto ord = r.max_cusp_sq.order();
        if (ord && *ord >= 1) return true; // constants tend to zero
        for (int l = 1; l <= explicit_l; ++l)
            if (cusp(f.family.at(Rat(1, l)), u).max_cusp_sq == 0) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// C-extreme certification. Discrete entries have exact touching spaces
// (pspan of the support set of the evaluated body). Family entries only admit
// a lower bound L_i (span of the per-support-body face spans) plus the exact
// triviality test above; when L_i is trivial but TS is nontrivial the entry
// contributes an unknown line in u^perp.

enum class ExtremeVerdict { EXTREME, NOT_EXTREME, UNKNOWN };

struct ExtremeReport {
    ExtremeVerdict verdict = ExtremeVerdict::UNKNOWN;
    std::vector<Subspace> known; // exact TS or lower bound per entry
    std::vector<int> unknown_entries;
    std::vector<int> trivial_entries;
    std::string reason;
};

namespace detail {

// Lower bound for span over supp mu of pspan F(P, u): coefficient vectors of
// the symbolic face differences recover the span of all large-l samples;
// small-l samples and the limit are added explicitly.
inline Subspace family_face_span(const PolytopeFamily& fam, const QVec& u, int sample_l) {
    const int n = fam.n;
    QMat rows;
    auto add_face_span = [&](const QPolytope& p) {
        auto f = p.support(u).second;
        for (size_t i = 1; i < f.vidx.size(); ++i)
            rows.push_back(vsub(p.vertices()[size_t(f.vidx[i])],
                                p.vertices()[size_t(f.vidx[0])]));
    };
    add_face_span(fam.limit());
    for (int l = 1; l <= sample_l; ++l) add_face_span(fam.at(Rat(1, l)));
    EPolytope body = fam.body();
    auto ef = body.support(to_evec(u)).second;
    for (size_t i = 1; i < ef.vidx.size(); ++i) {
        EVec d = vsub(body.vertices()[size_t(ef.vidx[i])],
                      body.vertices()[size_t(ef.vidx[0])]);
        int maxdeg = 0;
        for (const auto& x : d) maxdeg = std::max(maxdeg, x.degree());
        for (int q = 0; q <= maxdeg; ++q) {
            QVec coeff(d.size());
            for (size_t c = 0; c < d.size(); ++c) coeff[c] = d[c].coeff(q);
            if (!is_zero_vec(coeff)) rows.push_back(std::move(coeff));
        }
    }
    return Subspace::span(n, rows);
}

} // namespace detail

inline ExtremeReport certify_extreme(const std::vector<GeneratingMeasure>& tuple,
                                     const QVec& u, int sample_l = 16) {
    require(!is_zero_vec(u), "ZeroDirection", "certify_extreme needs u != 0");
    const int n = int(u.size());
    require(int(tuple.size()) == n - 1, "SizeMismatch",
            "certify_extreme needs an (n-1)-tuple");
    ExtremeReport rep;
    const Subspace uperp = Subspace::span(n, QMat{u}).orthocomplement();

    SubspaceTuple known;  // exact TS for discrete entries, lower bound else
    SubspaceTuple uppers; // exact TS or u^perp
    int unknowns = 0;
    bool all_exact = true;
    for (size_t i = 0; i < tuple.size(); ++i) {
        const auto& mu = tuple[i];
        mu.validate();
        if (mu.is_discrete()) {
            QPolytope body = mu.discrete_body();
            auto f = body.support(u).second;
            QMat rows;
            for (size_t j = 1; j < f.vidx.size(); ++j)
                rows.push_back(vsub(body.vertices()[size_t(f.vidx[j])],
                                    body.vertices()[size_t(f.vidx[0])]));
            Subspace ts = Subspace::span(n, rows);
            if (ts.dim() == 0) rep.trivial_entries.push_back(int(i));
            known.push_back(ts);
            uppers.push_back(ts);
            continue;
        }
        all_exact = false;
        if (!ts_nontrivial(mu, u)) {
            rep.trivial_entries.push_back(int(i));
            known.push_back(Subspace(n));
            uppers.push_back(Subspace(n));
            continue;
        }
        QMat rows;
        for (const auto& a : mu.atoms) {
            auto f = a.body.support(u).second;
            for (size_t j = 1; j < f.vidx.size(); ++j)
                rows.push_back(vsub(a.body.vertices()[size_t(f.vidx[j])],
                                    a.body.vertices()[size_t(f.vidx[0])]));
        }
        Subspace lower = Subspace::span(n, rows);
        for (const auto& fam : mu.families)
            lower = lower.sum(detail::family_face_span(fam.family, u, sample_l));
        if (lower.dim() >= 1) {
            known.push_back(lower);
        } else {
            known.push_back(Subspace(n)); // placeholder, tracked as unknown
            rep.unknown_entries.push_back(int(i));
            ++unknowns;
        }
        uppers.push_back(uperp);
    }
    rep.known = known;

    if (!rep.trivial_entries.empty()) {
        rep.verdict = ExtremeVerdict::NOT_EXTREME;
        rep.reason = "an entry has trivial touching space";
        return rep;
    }
    if (all_exact) {
        rep.verdict = classify(known).semicritical ? ExtremeVerdict::EXTREME
                                                   : ExtremeVerdict::NOT_EXTREME;
        rep.reason = "exact touching spaces";
        return rep;
    }
    // Sound rejections first: even the upper bounds fail.
    if (!classify(uppers).semicritical) {
        rep.verdict = ExtremeVerdict::NOT_EXTREME;
        rep.reason = "fails semicriticality even with full upper bounds";
        return rep;
    }
    if (unknowns == 0) {
        if (classify(known).semicritical) {
            rep.verdict = ExtremeVerdict::EXTREME;
            rep.reason = "lower bounds already semicritical";
            return rep;
        }
    } else if (unknowns == 1) {
        // One unknown nontrivial entry consumes one unit of margin: appending
        // any at-least-one-dimensional set to a critical tuple stays
        // semicritical. Two or more unknowns could collapse onto a common
        // line, so no sound certificate exists along this route.
        SubspaceTuple rest;
        for (size_t i = 0; i < known.size(); ++i)
            if (int(i) != rep.unknown_entries[0]) rest.push_back(known[i]);
        if (classify(rest).critical) {
            rep.verdict = ExtremeVerdict::EXTREME;
            rep.reason = "known part critical, one unknown nontrivial entry";
            return rep;
        }
    }
    rep.verdict = ExtremeVerdict::UNKNOWN;
    rep.reason = "bounds too weak to decide";
    return rep;
}

// ---------------------------------------------------------------------------
// Support membership via the integral-representation decomposition: the
// support of S(C_1, ..., C_{n-1}) is the closed union of the supports over
// all combinations of support bodies of the generating measures.

struct LimitSupportSet {
    std::vector<IVec> exact_directions;
    struct Branch {
        EVec trajectory;
        IVec limit;
        bool eventually_positive = true;
    };
    std::vector<Branch> branches;

    bool contains_exact(const IVec& w) const {
        for (const auto& d : exact_directions)
            if (d == w) return true;
        return false;
    }
};

enum class SuppVerdict { IN, NOT_IN };

struct SuppReport {
    SuppVerdict verdict = SuppVerdict::NOT_IN;
    LimitSupportSet support;
    std::string via;
};

namespace detail {

// Integer roots l >= 1 of an eps-polynomial evaluated at eps = 1/l: roots of
// the reversed polynomial, bounded by the Cauchy bound.
inline std::vector<long> unit_fraction_roots(const Eps& p, long cap = 100000) {
    std::vector<long> out;
    if (p.is_zero()) return out; // identically zero handled by the caller
    int deg = p.degree();
    // reversed coefficients: r_j = c_{deg - j}
    int lead_idx = 0;
    while (p.coeff(lead_idx) == 0) ++lead_idx; // lowest nonzero of p = leading of reversed
    Rat lead = p.coeff(lead_idx);
    Rat maxratio(0);
    for (int j = lead_idx; j <= deg; ++j) {
        Rat r = rat_abs(p.coeff(j) / lead);
        if (r > maxratio) maxratio = r;
    }
    Rat bound = maxratio + 1;
    long b = cap;
    if (bound < Rat(cap)) {
        Int num = rat_num(bound), den = rat_den(bound);
        b = long(num / den) + 1;
    }
    for (long l = 1; l <= b; ++l)
        if (p.eval(Rat(1, l)) == 0) out.push_back(l);
    return out;
}

} // namespace detail

// The full limit support set of a measure tuple: exact atoms over all
// rational support-body combinations, branch atoms over the symbolic ones.
// Independent of the query direction, so callers probing many directions
// compute it once.
inline LimitSupportSet limit_support_set(const std::vector<GeneratingMeasure>& tuple,
                                         int explicit_l = 24) {
    const size_t entries = tuple.size();
    const int n = int(entries) + 1;
    for (const auto& mu : tuple) {
        mu.validate();
        require(mu.n == n, "DimensionMismatch", "measure ambient mismatch");
        require(mu.families.size() <= 1, "UnsupportedMeasureShape",
                "at most one family atom per entry");
    }
    LimitSupportSet out;

    // Per entry: rational support bodies (atoms, family limit, small-l
    // samples) and at most one symbolic family body.
    struct Choice {
        std::vector<QPolytope> rational;
        std::optional<EPolytope> symbolic;
    };
    std::vector<Choice> choices;
    for (const auto& mu : tuple) {
        Choice c;
        for (const auto& a : mu.atoms) c.rational.push_back(a.body);
        for (const auto& f : mu.families) {
            c.rational.push_back(f.family.limit());
            for (int l = 1; l <= explicit_l; ++l) c.rational.push_back(f.family.at(Rat(1, l)));
            c.symbolic = f.family.body();
        }
        choices.push_back(std::move(c));
    }

    // Enumerate combinations; each entry picks a rational body or the
    // symbolic family.
    std::vector<int> pick(entries, 0); // index; -1 encodes symbolic
    std::function<void(size_t)> walk = [&](size_t depth) {
        if (depth == entries) {
            bool symbolic = false;
            for (size_t i = 0; i < pick.size(); ++i) symbolic = symbolic || pick[i] < 0;
            if (!symbolic) {
                std::vector<QPolytope> bodies;
                for (size_t i = 0; i < pick.size(); ++i)
                    bodies.push_back(choices[i].rational[size_t(pick[i])]);
                auto s = mixed_area_measure(bodies, n);
                for (const auto& a : s.atoms) out.exact_directions.push_back(a.w);
            } else {
                std::vector<EPolytope> bodies;
                for (size_t i = 0; i < pick.size(); ++i)
                    bodies.push_back(pick[i] < 0
                                         ? *choices[i].symbolic
                                         : promote(choices[i].rational[size_t(pick[i])]));
                auto s = mixed_area_measure_eps(bodies, n);
                for (const auto& a : s.atoms)
                    out.branches.push_back({a.w, limit_direction(a.w), a.rho.sign() > 0});
            }
            return;
        }
        for (int i = 0; i < int(choices[depth].rational.size()); ++i) {
            pick[depth] = i;
            walk(depth + 1);
        }
        if (choices[depth].symbolic) {
            pick[depth] = -1;
            walk(depth + 1);
        }
    };
    walk(0);

    std::sort(out.exact_directions.begin(), out.exact_directions.end());
    out.exact_directions.erase(
        std::unique(out.exact_directions.begin(), out.exact_directions.end()),
        out.exact_directions.end());
    return out;
}

inline SuppReport supp_membership_against(const LimitSupportSet& support,
                                          const std::vector<GeneratingMeasure>& tuple,
                                          const QVec& u, int explicit_l = 24) {
    require(!is_zero_vec(u), "ZeroDirection", "supp_membership needs u != 0");
    const int n = int(u.size());
    require(int(tuple.size()) == n - 1, "SizeMismatch",
            "supp_membership needs an (n-1)-tuple");
    SuppReport rep;
    rep.support = support;
    IVec uprim = primitive(u);

    if (rep.support.contains_exact(uprim)) {
        rep.verdict = SuppVerdict::IN;
        rep.via = "exact atom";
        return rep;
    }
    QVec uq = to_qvec(uprim);
    EVec ue = to_evec(uq);
    for (const auto& br : rep.support.branches) {
        if (!br.eventually_positive) continue;
        if (parallel_same_orientation(br.trajectory, ue)) {
            rep.verdict = SuppVerdict::IN;
            rep.via = "branch parallel to u for all small eps";
            return rep;
        }
        if (br.limit == uprim) {
            rep.verdict = SuppVerdict::IN;
            rep.via = "branch limit direction";
            return rep;
        }
        // Samples where the branch passes through u: common integer roots of
        // the cross minors at eps = 1/l, each verified on the evaluated
        // measure.
        Eps g;
        bool oriented_possible = true;
        for (size_t i = 0; i < ue.size() && oriented_possible; ++i)
            for (size_t j = i + 1; j < ue.size(); ++j) {
                Eps minor = br.trajectory[i] * ue[j] - br.trajectory[j] * ue[i];
                g = eps_gcd(g, minor);
            }
        if (!g.is_zero()) {
            for (long l : detail::unit_fraction_roots(g)) {
                if (l <= explicit_l) continue; // already covered exactly
                // Verify against every support-body combination evaluated at
                // eps = 1/l.
                std::vector<std::vector<QPolytope>> lists;
                for (const auto& mu : tuple) {
                    std::vector<QPolytope> c;
                    for (const auto& a : mu.atoms) c.push_back(a.body);
                    for (const auto& f : mu.families) {
                        c.push_back(f.family.at(Rat(1, l)));
                        c.push_back(f.family.limit());
                    }
                    lists.push_back(std::move(c));
                }
                std::vector<size_t> idx(lists.size(), 0);
                bool found = false;
                std::function<void(size_t)> combos = [&](size_t depth) {
                    if (found) return;
                    if (depth == lists.size()) {
                        std::vector<QPolytope> bodies;
                        for (size_t i = 0; i < lists.size(); ++i)
                            bodies.push_back(lists[i][idx[i]]);
                        found = mixed_area_measure(bodies, n).rho_at(uprim) > 0;
                        return;
                    }
                    for (idx[depth] = 0; idx[depth] < lists[depth].size(); ++idx[depth])
                        combos(depth + 1);
                };
                combos(0);
                if (found) {
                    rep.verdict = SuppVerdict::IN;
                    rep.via = "branch sample at l=" + std::to_string(l);
                    return rep;
                }
            }
        }
    }
    rep.verdict = SuppVerdict::NOT_IN;
    return rep;
}

inline SuppReport supp_membership(const std::vector<GeneratingMeasure>& tuple,
                                  const QVec& u, int explicit_l = 24) {
    return supp_membership_against(limit_support_set(tuple, explicit_l), tuple, u,
                                   explicit_l);
}

// ---------------------------------------------------------------------------
// Witness extraction from a measure: requires a nontrivial touching space,
// picks a family atom by the sticky-vertex criterion and prunes it. The
// resulting witness is guaranteed non-degenerate (asserted).

inline PruneTrace prune_star_witness(const GeneratingMeasure& mu, const QVec& u,
                                     const Rat& extra_scale = Rat(1)) {
    require(ts_nontrivial(mu, u), "TrivialTouchingSpace",
            "witness extraction requires a nontrivial touching space");
    std::optional<PolytopeFamily> chosen;
    for (const auto& f : mu.families)
        if (sticky_check(f.family, u)) {
            chosen = f.family;
            break;
        }
    if (!chosen) {
        // A support body with a nontrivial touching space prunes as a
        // constant family (its u-face is the witness).
        std::vector<QPolytope> bodies;
        for (const auto& a : mu.atoms) bodies.push_back(a.body);
        for (const auto& f : mu.families) bodies.push_back(f.family.limit());
        for (const auto& b : bodies) {
            if (cusp(b, u).max_cusp_sq != 0) continue;
            std::vector<EVec> trajs;
            for (const auto& v : b.vertices()) trajs.push_back(to_evec(v));
            chosen = PolytopeFamily::make(mu.n, std::move(trajs));
            break;
        }
    }
    require(bool(chosen), "UnsupportedMeasureShape", "no sticky atom to prune");
    PruneTrace trace = prune_star_witness(*chosen, u, extra_scale);
    require(trace.witness.vertices().size() >= 2, "InternalError",
            "sticky pruning produced a singleton witness");
    return trace;
}

// ---------------------------------------------------------------------------
// h_K = h_L on ext C, decided on the extreme rays of the fan of the polytope
// tuple C (only facet-normal rays can be extreme; their touching-space tuples
// must be semicritical).

// An extreme direction of a polytope tuple forces dim F(sum, u) = n-1, so
// only facet-atom directions of the sum qualify (this covers sums of
// dimension n-1, whose candidate directions are no proper-face fan cells).
inline std::vector<IVec> extreme_rays(const std::vector<QPolytope>& bodies) {
    std::vector<IVec> rays;
    QPolytope sum = minkowski_sum(bodies);
    for (const auto& [w, face] : facet_atoms(sum)) {
        SubspaceTuple ts;
        for (const auto& b : bodies)
            ts.push_back(face_pspan(b, b.support(w).second.vidx));
        if (classify(ts).semicritical) rays.push_back(primitive(w));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

inline bool support_equal_on_ext(const QPolytope& k, const QPolytope& l,
                                 const std::vector<QPolytope>& c) {
    const int n = k.ambient();
    require(int(c.size()) == n - 1, "SizeMismatch",
            "support_equal_on_ext needs an (n-1)-tuple");
    for (const auto& w : extreme_rays(c)) {
        QVec wq = to_qvec(w);
        if (k.support_value(wq) != l.support_value(wq)) return false;
    }
    return true;
}

// Normal-cone identity for discrete measures: N(sum, F(sum,u)) equals the
// intersection of the per-atom normal cones.
inline bool norcone_intersection_check(const GeneratingMeasure& mu, const QVec& u) {
    require(mu.is_discrete(), "UnsupportedMeasureShape", "discrete measures only");
    const int n = mu.n;
    QPolytope body = mu.discrete_body();
    PolyhedralCone nb = touching_space_polytope(body, u).normal_cone;
    std::vector<PolyhedralCone> parts;
    for (const auto& a : mu.atoms)
        parts.push_back(touching_space_polytope(a.body, u).normal_cone);

    // nb subset of the intersection: generators and lineality of nb lie in
    // every part.
    for (const auto& p : parts)
        if (!nb.subset_of(p)) return false;
    // Intersection subset of nb: no point satisfying all parts' H-forms may
    // violate an H-constraint (or span constraint) of nb.
    std::vector<QMat> part_h;
    for (const auto& p : parts) part_h.push_back(p.hform());
    std::vector<QMat> part_span_eq;
    for (const auto& p : parts) {
        Subspace sp = p.span().orthocomplement();
        part_span_eq.push_back(sp.basis());
    }
    auto feasible_with = [&](const QVec& a) {
        LinSystem sys(n);
        for (size_t i = 0; i < parts.size(); ++i) {
            for (const auto& row : part_h[i]) sys.add_le(row, Rat(0));
            for (const auto& row : part_span_eq[i]) sys.add_eq(row, Rat(0));
        }
        sys.add_ge(a, Rat(0), /*strict=*/true);
        return sys.feasible();
    };
    for (const auto& row : nb.hform())
        if (feasible_with(row)) return false;
    Subspace nb_span_perp = nb.span().orthocomplement();
    for (const auto& row : nb_span_perp.basis())
        if (feasible_with(row) || feasible_with(vscale(Rat(-1), row))) return false;
    return true;
}

} // namespace mixedcone
