#pragma once

#include <optional>
#include <vector>

#include "mixedcone/mixedvol.hpp"
#include "mixedcone/touching.hpp"

namespace mixedcone {

// A polytope family keeps its vertex trajectories un-canonicalized: vertex
// identities persist across eps, which is what pruning manipulates. Distinct
// polynomial trajectories evaluate to distinct points for all but finitely
// many eps, so no extra invariant is needed.
struct PolytopeFamily {
    int n = 0;
    std::vector<EVec> trajectories;

    static PolytopeFamily make(int ambient, std::vector<EVec> trajs) {
        require(!trajs.empty(), "EmptyPolytope", "family needs at least one trajectory");
        for (const auto& t : trajs)
            require(int(t.size()) == ambient, "DimensionMismatch", "trajectory dimension");
        return PolytopeFamily{ambient, std::move(trajs)};
    }

    EPolytope body() const { return EPolytope::from_points(n, trajectories); }

    QPolytope limit() const {
        std::vector<QVec> pts;
        for (const auto& t : trajectories) {
            QVec p(t.size());
            for (size_t i = 0; i < t.size(); ++i) p[i] = t[i].limit_at_zero();
            pts.push_back(std::move(p));
        }
        return QPolytope::from_points(n, std::move(pts));
    }

    QPolytope at(const Rat& epsval) const {
        std::vector<QVec> pts;
        for (const auto& t : trajectories) {
            QVec p(t.size());
            for (size_t i = 0; i < t.size(); ++i) p[i] = t[i].eval(epsval);
            pts.push_back(std::move(p));
        }
        return QPolytope::from_points(n, std::move(pts));
    }

    friend bool operator==(const PolytopeFamily& a, const PolytopeFamily& b) {
        return a.n == b.n && a.trajectories == b.trajectories;
    }
};

struct PruneStepInfo {
    std::vector<int> selected; // I: trajectories whose limits lie in F(Q, u)
    int base = 0;              // i0: smallest index in I
    int rescale_order = 0;     // m
};

// One pruning step: keep the trajectories converging into the u-face of the
// limit body, re-center at the base trajectory and rescale by eps^{-m}. The
// eps-order rescaling differs from a diameter normalization by a factor
// bounded between positive constants, which every support statement
// tolerates; it keeps all trajectories polynomial. An optional extra positive
// rational factor exercises exactly that robustness in tests.
inline PolytopeFamily prune_step(const PolytopeFamily& f, const QVec& u,
                                 PruneStepInfo* info = nullptr,
                                 const Rat& extra_scale = Rat(1)) {
    require(!is_zero_vec(u), "ZeroDirection", "prune direction must be nonzero");
    require(extra_scale > 0, "NegativeScale", "rescale factor must be positive");
    QPolytope q = f.limit();
    Rat h = q.support_value(u);

    std::vector<int> sel;
    for (size_t i = 0; i < f.trajectories.size(); ++i) {
        QVec lim(f.trajectories[i].size());
        for (size_t j = 0; j < lim.size(); ++j) lim[j] = f.trajectories[i][j].limit_at_zero();
        if (dot(lim, u) == h) sel.push_back(int(i));
    }
    int base = sel[0];

    int m = 0;
    bool have = false;
    for (int i : sel) {
        if (i == base) continue;
        EVec d = vsub(f.trajectories[size_t(i)], f.trajectories[size_t(base)]);
        int ord = -1;
        for (const auto& x : d) {
            auto o = x.order();
            if (o && (ord < 0 || *o < ord)) ord = *o;
        }
        if (ord >= 0 && (!have || ord < m)) {
            m = ord;
            have = true;
        }
    }
    if (!have) m = 0;

    std::vector<EVec> out;
    for (int i : sel) {
        EVec d = vsub(f.trajectories[size_t(i)], f.trajectories[size_t(base)]);
        EVec scaled(d.size());
        for (size_t j = 0; j < d.size(); ++j)
            scaled[j] = d[j].shifted(-m) * Eps(extra_scale);
        out.push_back(std::move(scaled));
    }
    if (info) *info = PruneStepInfo{sel, base, m};
    return PolytopeFamily::make(f.n, std::move(out));
}

struct PruneTrace {
    std::vector<PruneStepInfo> steps;
    int effective_steps = 0; // steps that dropped trajectories or rescaled
    PolytopeFamily fixpoint;
    QPolytope witness; // limit of the fixpoint; subset of u^perp containing 0
};

// Iterate prune steps to the fixpoint (total selection, no rescale, base
// trajectory already at the origin) and extract the witness polytope.
inline PruneTrace prune_star_witness(const PolytopeFamily& f, const QVec& u,
                                     const Rat& extra_scale = Rat(1)) {
    PruneTrace trace;
    PolytopeFamily cur = f;
    const int guard = 2 * int(f.trajectories.size()) + 4;
    for (int iter = 0;; ++iter) {
        require(iter < guard, "InternalError", "pruning failed to reach a fixpoint");
        PruneStepInfo info;
        PolytopeFamily next = prune_step(cur, u, &info, extra_scale);
        bool idle = int(info.selected.size()) == int(cur.trajectories.size()) &&
                    info.rescale_order == 0 &&
                    is_zero_vec(cur.trajectories[size_t(info.base)]);
        if (idle) break; // the step would only translate/scale in place
        trace.steps.push_back(info);
        if (int(info.selected.size()) < int(cur.trajectories.size()) ||
            info.rescale_order > 0)
            ++trace.effective_steps;
        cur = next;
    }
    trace.fixpoint = cur;
    trace.witness = cur.limit();
    // Witness geometry: 0 in witness, witness in u^perp.
    require(trace.witness.contains(zero_vec<Rat>(f.n)), "InternalError",
            "witness must contain the origin");
    for (const auto& v : trace.witness.vertices())
        require(dot(v, u) == 0, "InternalError", "witness must lie in u^perp");
    return trace;
}

// Sticky vertices: some trajectory is a vertex of the u-face of the evaluated
// body for small eps, and a second trajectory approaches it faster along u
// than in distance (squared order comparison keeps everything rational).
inline bool sticky_check(const PolytopeFamily& f, const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "sticky check needs u != 0");
    EPolytope body = f.body();
    EVec ue = to_evec(u);
    auto face = body.support(ue).second;
    EPolytope facebody = body.face_polytope(face);
    for (size_t i = 0; i < f.trajectories.size(); ++i) {
        // Trajectory must be an (eventual) vertex of the face.
        bool is_vertex = false;
        for (const auto& v : facebody.vertices()) is_vertex = is_vertex || v == f.trajectories[i];
        if (!is_vertex) continue;
        for (size_t j = 0; j < f.trajectories.size(); ++j) {
            if (i == j) continue;
            EVec d = vsub(f.trajectories[i], f.trajectories[j]);
            if (is_zero_vec(d)) continue;
            Eps along = dot(d, ue);
            Eps dist_sq = norm_sq(d);
            auto oa = along.order();
            auto od = dist_sq.order();
            // <d,u>/|d| -> 0 iff 2 ord<d,u> > ord |d|^2.
            if (!oa || (od && 2 * *oa > *od)) return true;
        }
    }
    return false;
}

// Local measure equality across one prune step: near u (atoms whose limit
// direction is exactly u) the eps-atomic measures of the original and the
// pruned family agree up to the common factor lambda = eps^m.
struct LocalMeasureReport {
    bool ok = false;
    int rescale_order = 0; // lambda = eps^m
    struct Match {
        EVec dir_original, dir_pruned;
    };
    std::vector<Match> matches;
    std::string mismatch; // names the first unmatched atom, if any
};

inline LocalMeasureReport local_measure_equality_check(const PolytopeFamily& f,
                                                       const QVec& u,
                                                       const std::vector<QPolytope>& rest) {
    const int n = f.n;
    require(int(rest.size()) == n - 2, "SizeMismatch",
            "local measure check needs an (n-2)-tuple");
    LocalMeasureReport rep;
    PruneStepInfo info;
    PolytopeFamily pruned = prune_step(f, u, &info);
    rep.rescale_order = info.rescale_order;
    Eps lambda = Eps(1).shifted(info.rescale_order); // eps^m

    std::vector<EPolytope> orig_tuple{f.body()};
    std::vector<EPolytope> pruned_tuple{pruned.body()};
    for (const auto& c : rest) {
        orig_tuple.push_back(promote(c));
        pruned_tuple.push_back(promote(c));
    }
    EpsAreaMeasure so = mixed_area_measure_eps(orig_tuple, n);
    EpsAreaMeasure sp = mixed_area_measure_eps(pruned_tuple, n);

    IVec u_prim = primitive(u);
    auto near_u = [&](const EpsAreaMeasure& s) {
        std::vector<const EpsAreaMeasure::Atom*> out;
        for (const auto& a : s.atoms)
            if (limit_direction(a.w) == u_prim) out.push_back(&a);
        return out;
    };
    auto ao = near_u(so), ap = near_u(sp);

    std::vector<bool> used(ap.size(), false);
    for (const auto* a : ao) {
        bool matched = false;
        for (size_t j = 0; j < ap.size(); ++j) {
            if (used[j] || !parallel_same_orientation(a->w, ap[j]->w)) continue;
            // Masses must satisfy mass_orig = eps^m * mass_pruned. With
            // w_o = (p/q) w_p (p, q > 0), this reads
            // rho_o * p * q = eps^m * rho_p * q^2 after clearing |w| factors;
            // cross-multiplied through the fraction weights below.
            size_t coord = 0;
            while (ap[j]->w[coord].sign() == 0) ++coord;
            Eps p = a->w[coord], q = ap[j]->w[coord];
            if (p.sign() < 0) { // align signs so the ratio is positive
                p = -p;
                q = -q;
            }
            // rho_o |w_o| = eps^m rho_p |w_p| and |w_o| = (p/q)|w_p|.
            EpsFrac lhs = a->rho * EpsFrac(p);
            EpsFrac rhs = EpsFrac(lambda) * ap[j]->rho * EpsFrac(q);
            if (lhs == rhs) {
                used[j] = true;
                matched = true;
                rep.matches.push_back({a->w, ap[j]->w});
                break;
            }
        }
        if (!matched) {
            rep.mismatch = "unmatched original atom with limit direction u";
            return rep;
        }
    }
    for (size_t j = 0; j < ap.size(); ++j)
        if (!used[j]) {
            rep.mismatch = "unmatched pruned atom with limit direction u";
            return rep;
        }
    rep.ok = true;
    return rep;
}

} // namespace mixedcone
