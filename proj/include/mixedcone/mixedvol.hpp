#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "mixedcone/polytope.hpp"

namespace mixedcone {

// Atomic mixed area measure. An atom (w, rho) with primitive integer w stands
// for mass rho * |w| at the unit vector w/|w|; the lattice-normalized rho is
// always rational, the spherical mass usually is not.
struct AtomicAreaMeasure {
    struct Atom {
        IVec w;
        Rat rho;
    };
    int n = 0;
    std::vector<Atom> atoms; // sorted lex by w, rho > 0

    Rat rho_at(const IVec& w) const {
        for (const auto& a : atoms)
            if (a.w == w) return a.rho;
        return Rat(0);
    }

    std::vector<IVec> directions() const {
        std::vector<IVec> d;
        for (const auto& a : atoms) d.push_back(a.w);
        return d;
    }

    friend bool operator==(const AtomicAreaMeasure& a, const AtomicAreaMeasure& b) {
        if (a.n != b.n || a.atoms.size() != b.atoms.size()) return false;
        for (size_t i = 0; i < a.atoms.size(); ++i)
            if (a.atoms[i].w != b.atoms[i].w || a.atoms[i].rho != b.atoms[i].rho) return false;
        return true;
    }
};

inline void sort_atoms(AtomicAreaMeasure& m) {
    std::sort(m.atoms.begin(), m.atoms.end(),
              [](const auto& a, const auto& b) { return a.w < b.w; });
}

struct MixedVolumeStats {
    long measure_evaluations = 0;
    int max_depth = 0;
};

inline Rat mixed_volume(const std::vector<QPolytope>& bodies, int n,
                        MixedVolumeStats* stats = nullptr, int depth = 0);

// S(C_1, ..., C_{n-1}) for polytopes: atoms at the facet normals of the sum,
// weights are (n-1)-dimensional mixed volumes of the support sets. The
// subspace mixed volume is evaluated after deleting the coordinate k with the
// largest |w_k|, which scales (n-1)-volumes by |w_k| / |w|; together with the
// lattice normalization all arithmetic stays rational.
inline AtomicAreaMeasure mixed_area_measure(const std::vector<QPolytope>& bodies, int n,
                                            MixedVolumeStats* stats = nullptr,
                                            int depth = 0) {
    require(int(bodies.size()) == n - 1, "SizeMismatch",
            "mixed area measure needs an (n-1)-tuple");
    for (const auto& b : bodies)
        require(b.ambient() == n, "DimensionMismatch", "body ambient mismatch");
    if (stats) {
        ++stats->measure_evaluations;
        stats->max_depth = std::max(stats->max_depth, depth);
    }
    AtomicAreaMeasure m;
    m.n = n;
    if (n == 1) { // counting measure on S^0
        m.atoms.push_back({IVec{Int(1)}, Rat(1)});
        m.atoms.push_back({IVec{Int(-1)}, Rat(1)});
        sort_atoms(m);
        return m;
    }
    QPolytope sum = minkowski_sum(bodies);
    for (const auto& [w, face] : facet_atoms(sum)) {
        IVec wi = primitive(w);
        int k = 0;
        for (int j = 1; j < n; ++j)
            if (int_abs(wi[size_t(j)]) > int_abs(wi[size_t(k)])) k = j;
        std::vector<QPolytope> proj_faces;
        for (const auto& b : bodies)
            proj_faces.push_back(b.face_polytope(b.support(w).second).delete_coordinate(k));
        Rat rho =
            mixed_volume(proj_faces, n - 1, stats, depth + 1) / Rat(int_abs(wi[size_t(k)]));
        if (rho > 0) m.atoms.push_back({std::move(wi), std::move(rho)});
    }
    sort_atoms(m);
    return m;
}

// V(C_1, ..., C_n) through the defining relation: the last entry sits in the
// support-function slot.
inline Rat mixed_volume(const std::vector<QPolytope>& bodies, int n,
                        MixedVolumeStats* stats, int depth) {
    require(int(bodies.size()) == n, "SizeMismatch", "mixed volume needs an n-tuple");
    if (n == 0) return Rat(1); // V() := V_0({0}) = 1
    std::vector<QPolytope> head(bodies.begin(), bodies.end() - 1);
    AtomicAreaMeasure s = mixed_area_measure(head, n, stats, depth);
    Rat acc(0);
    for (const auto& a : s.atoms) acc += bodies.back().support_value(to_qvec(a.w)) * a.rho;
    return acc / n;
}

// Report wrapper: the value plus a fingerprint of the canonical input tuple
// and recursion statistics.
struct MixedVolumeReport {
    Rat value;
    uint64_t tuple_fingerprint = 0;
    MixedVolumeStats stats;
};

inline uint64_t tuple_fingerprint(const std::vector<QPolytope>& bodies) {
    uint64_t h = 1469598103934665603ull; // FNV-1a over the canonical text form
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& b : bodies) {
        mix(";");
        for (const auto& v : b.vertices()) {
            mix("|");
            for (const auto& x : v) mix(rat_str(x) + ",");
        }
    }
    return h;
}

inline MixedVolumeReport mixed_volume_report(const std::vector<QPolytope>& bodies, int n) {
    MixedVolumeReport rep;
    rep.tuple_fingerprint = tuple_fingerprint(bodies);
    rep.value = mixed_volume(bodies, n, &rep.stats);
    require(rep.value >= 0, "InternalError", "negative mixed volume");
    return rep;
}

// ---------------------------------------------------------------------------
// Eps-parametrized atomic measures: directions are polynomial vectors (not
// normalized), weights are exact rational functions of eps. Used for polytope
// families, where only signs, orders and ratios of weights matter.

struct EpsAreaMeasure {
    struct Atom {
        EVec w;
        EpsFrac rho; // with the same mass convention relative to this w
    };
    int n = 0;
    std::vector<Atom> atoms; // eventually-positive weights only
};

inline bool parallel_same_orientation(const EVec& a, const EVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if ((a[i] * b[j] - a[j] * b[i]).sign() != 0) return false;
    return dot(a, b).sign() > 0;
}

// Limit direction of a polynomial direction trajectory: the coefficient
// vector at the minimal vanishing order, primitively normalized.
inline IVec limit_direction(const EVec& w) {
    int q = -1;
    for (const auto& x : w) {
        auto o = x.order();
        if (o && (q < 0 || *o < q)) q = *o;
    }
    require(q >= 0, "ZeroDirection", "limit direction of zero trajectory");
    QVec v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[i] = w[i].coeff(q);
    return primitive(v);
}

inline EpsFrac mixed_volume_eps(const std::vector<EPolytope>& bodies, int n);

inline EpsAreaMeasure mixed_area_measure_eps(const std::vector<EPolytope>& bodies, int n) {
    require(int(bodies.size()) == n - 1, "SizeMismatch",
            "mixed area measure needs an (n-1)-tuple");
    EpsAreaMeasure m;
    m.n = n;
    if (n == 1) {
        m.atoms.push_back({EVec{Eps(1)}, EpsFrac(Rat(1))});
        m.atoms.push_back({EVec{Eps(-1)}, EpsFrac(Rat(1))});
        return m;
    }
    EPolytope sum = minkowski_sum(bodies);
    for (const auto& [w, face] : facet_atoms(sum)) {
        int k = -1;
        for (int j = 0; j < n; ++j) {
            if (w[size_t(j)].sign() == 0) continue;
            Eps aj = w[size_t(j)].sign() > 0 ? w[size_t(j)] : -w[size_t(j)];
            if (k < 0) {
                k = j;
                continue;
            }
            Eps ak = w[size_t(k)].sign() > 0 ? w[size_t(k)] : -w[size_t(k)];
            if (ak < aj) k = j;
        }
        std::vector<EPolytope> proj_faces;
        for (const auto& b : bodies)
            proj_faces.push_back(b.face_polytope(b.support(w).second).delete_coordinate(k));
        Eps wk = w[size_t(k)].sign() > 0 ? w[size_t(k)] : -w[size_t(k)];
        EpsFrac rho = mixed_volume_eps(proj_faces, n - 1) / EpsFrac(wk);
        require(rho.sign() >= 0, "InternalError", "negative eps measure weight");
        if (rho.sign() > 0) m.atoms.push_back({w, std::move(rho)});
    }
    return m;
}

inline EpsFrac mixed_volume_eps(const std::vector<EPolytope>& bodies, int n) {
    require(int(bodies.size()) == n, "SizeMismatch", "mixed volume needs an n-tuple");
    if (n == 0) return EpsFrac(Rat(1));
    std::vector<EPolytope> head(bodies.begin(), bodies.end() - 1);
    EpsAreaMeasure s = mixed_area_measure_eps(head, n);
    EpsFrac acc;
    for (const auto& a : s.atoms)
        acc = acc + EpsFrac(bodies.back().support_value(a.w)) * a.rho;
    return acc / EpsFrac(Rat(n));
}

// ---------------------------------------------------------------------------
// Independent volume oracle: exact finite differences of plain volumes over
// the {0,1}^n corner grid (volume is homogeneous of degree n, so first-order
// differences per axis already isolate the multilinear coefficient).

namespace detail {

// Simplices (as vertex tuples) covering a polytope, by recursive apex
// decomposition over the facet structure.
template <class F>
std::vector<std::vector<Vec<F>>> triangulate(const Polytope<F>& p) {
    const auto& vs = p.vertices();
    if (int(vs.size()) == p.dim() + 1) return {vs};
    std::vector<std::vector<Vec<F>>> out;
    const Vec<F>& apex = vs[0];
    for (const auto& f : p.rel_facets()) {
        if (std::binary_search(f.vidx.begin(), f.vidx.end(), 0)) continue;
        std::vector<Vec<F>> fverts;
        for (int i : f.vidx) fverts.push_back(vs[size_t(i)]);
        Polytope<F> facet = Polytope<F>::from_points(p.ambient(), std::move(fverts));
        for (auto& simplex : triangulate(facet)) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

} // namespace detail

// n-volume of a single polytope by simplicial decomposition (determinant
// pyramids); independent of the mixed-measure recursion.
inline Rat single_volume(const QPolytope& p) {
    const int n = p.ambient();
    if (n == 0) return Rat(1);
    if (p.dim() < n) return Rat(0);
    Rat vol(0);
    Rat fact(1);
    for (int i = 2; i <= n; ++i) fact *= i;
    for (const auto& simplex : detail::triangulate(p)) {
        QMat m;
        for (size_t i = 1; i < simplex.size(); ++i) m.push_back(vsub(simplex[i], simplex[0]));
        vol += rat_abs(det(std::move(m)));
    }
    return vol / fact;
}

inline Rat volume_oracle(const std::vector<QPolytope>& bodies, int n) {
    require(int(bodies.size()) == n, "SizeMismatch", "volume oracle needs an n-tuple");
    require(n >= 1, "SizeMismatch", "volume oracle needs n >= 1");
    Rat acc(0);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<QPolytope> sel;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sel.push_back(bodies[size_t(i)]);
        Rat v = single_volume(minkowski_sum(sel));
        int missing = n - __builtin_popcount(mask);
        acc += (missing % 2 == 0) ? v : -v;
    }
    Rat fact(1);
    for (int i = 2; i <= n; ++i) fact *= i;
    return acc / fact;
}

// ---------------------------------------------------------------------------
// Alexandrov-Fenchel gap.

struct AfiReport {
    Rat lhs, rhs, gap;
};

inline AfiReport afi_gap(const QPolytope& k, const QPolytope& l,
                         const std::vector<QPolytope>& rest, int n) {
    require(int(rest.size()) == n - 2, "SizeMismatch", "AFI needs an (n-2)-tuple");
    auto tup = [&](const QPolytope& a, const QPolytope& b) {
        std::vector<QPolytope> t{a, b};
        t.insert(t.end(), rest.begin(), rest.end());
        return t;
    };
    AfiReport r;
    Rat vkl = mixed_volume(tup(k, l), n);
    r.lhs = vkl * vkl;
    r.rhs = mixed_volume(tup(k, k), n) * mixed_volume(tup(l, l), n);
    r.gap = r.lhs - r.rhs;
    require(r.gap >= 0, "InternalError",
            "Alexandrov-Fenchel violated: arithmetic bug, not a counterexample");
    return r;
}

// ---------------------------------------------------------------------------
// Reduction formulas. Mixed volumes inside rational subspaces are irrational
// in general; both sides are therefore assembled from lattice-normalized
// volumes, whose covolume factors recombine into one integer determinant.

// Mixed volume of bodies inside the rational subspace V, normalized by the
// covolume of the lattice V cap Z^n (a rational number).
inline Rat lattice_mixed_volume(const std::vector<QPolytope>& bodies, const Subspace& v) {
    const int d = v.dim();
    require(int(bodies.size()) == d, "SizeMismatch", "lattice mixed volume tuple size");
    if (d == 0) return Rat(1);
    std::vector<IVec> basis = lattice_basis(v);
    std::vector<QPolytope> mapped;
    for (const auto& b : bodies) {
        const QVec& anchor = b.vertices()[0];
        std::vector<QVec> pts;
        for (const auto& vert : b.vertices())
            pts.push_back(lattice_coords(basis, vsub(vert, anchor)));
        mapped.push_back(QPolytope::from_points(d, std::move(pts)));
    }
    return mixed_volume(mapped, d);
}

struct ReductionReport {
    bool applicable = true;
    // Volume identity (n-tuples): binom(n,k) V(C) == V(C_[k]) V(proj rest).
    bool volume_checked = false;
    Rat volume_lhs, volume_rhs;
    // Measure identity (n-1 tuples), atom by atom.
    bool measure_checked = false;
    bool degenerate = false; // dim C_[k] < k forces S(C) = 0
    struct AtomPair {
        IVec w;
        Rat lhs, rhs;
    };
    std::vector<AtomPair> atom_pairs;
    bool ok = true;
};

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return Int(0);
    Int r(1);
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline ReductionReport reduction_check(const std::vector<QPolytope>& bodies, int n, int k,
                                       const Subspace& e) {
    require(k >= 0 && k <= int(bodies.size()), "SizeMismatch", "invalid k");
    require(e.dim() == k, "SizeMismatch", "dim E must equal k");
    require(e.ambient() == n, "DimensionMismatch", "subspace ambient mismatch");
    for (int i = 0; i < k; ++i)
        for (size_t j = 1; j < bodies[size_t(i)].vertices().size(); ++j)
            require(e.contains(vsub(bodies[size_t(i)].vertices()[j],
                                    bodies[size_t(i)].vertices()[0])),
                    "BodiesNotInSubspace", "first k bodies must be parallel to E");

    ReductionReport rep;
    Subspace eperp = e.orthocomplement();
    std::vector<IVec> basis_e = lattice_basis(e);

    std::vector<QPolytope> head(bodies.begin(), bodies.begin() + k);
    Rat lat_e = lattice_mixed_volume(head, e);

    auto proj_rest = [&](size_t from) {
        std::vector<QPolytope> out;
        for (size_t i = from; i < bodies.size(); ++i)
            out.push_back(k == n ? bodies[i].scaled(Rat(0))
                                 : bodies[i].project(eperp));
        return out;
    };

    if (int(bodies.size()) == n) {
        rep.volume_checked = true;
        rep.volume_lhs = Rat(binomial(n, k)) * mixed_volume(bodies, n);
        Rat lat_perp;
        if (k == n) {
            lat_perp = Rat(1);
        } else {
            lat_perp = lattice_mixed_volume(proj_rest(size_t(k)), eperp);
        }
        std::vector<IVec> det_rows = basis_e;
        for (const auto& r : lattice_basis(eperp)) det_rows.push_back(r);
        rep.volume_rhs = lat_e * lat_perp * Rat(int_abs(int_det(det_rows)));
        rep.ok = rep.volume_lhs == rep.volume_rhs;
        return rep;
    }

    require(int(bodies.size()) == n - 1, "SizeMismatch",
            "reduction check expects an n- or (n-1)-tuple");
    rep.measure_checked = true;
    AtomicAreaMeasure s = mixed_area_measure(bodies, n);

    QMat head_diffs;
    for (int i = 0; i < k; ++i)
        for (size_t j = 1; j < bodies[size_t(i)].vertices().size(); ++j)
            head_diffs.push_back(vsub(bodies[size_t(i)].vertices()[j],
                                      bodies[size_t(i)].vertices()[0]));
    rep.degenerate = rank_of(head_diffs) < k;
    if (rep.degenerate) { // dim C_[k] < k forces the measure to vanish
        rep.ok = s.atoms.empty();
        return rep;
    }

    // Candidate directions of the projected measure inside E^perp.
    std::vector<QPolytope> rest = proj_rest(size_t(k));
    std::vector<IVec> candidates;
    if (!rest.empty()) {
        QPolytope q = minkowski_sum(rest);
        const int dperp = n - k;
        if (q.dim() == dperp) {
            // pspan Q = E^perp, so the relative facet normals are the atoms.
            for (const auto& f : q.rel_facets()) candidates.push_back(primitive(f.normal));
        } else if (q.dim() == dperp - 1) {
            // w spans E^perp cap (pspan Q)^perp.
            QMat rows = e.basis();
            for (const auto& r : q.span_rows()) rows.push_back(r);
            Subspace perp_both = Subspace::span(n, rows).orthocomplement();
            require(perp_both.dim() == 1, "InternalError", "expected a unique normal line");
            IVec w0 = primitive(perp_both.basis()[0]);
            candidates.push_back(w0);
            IVec w1 = w0;
            for (auto& x : w1) x = -x;
            candidates.push_back(w1);
        }
    } else if (n - k == 1) {
        // Empty projected tuple in a line: counting measure on S^0.
        IVec w0 = primitive(eperp.basis()[0]);
        candidates.push_back(w0);
        IVec w1 = w0;
        for (auto& x : w1) x = -x;
        candidates.push_back(w1);
    }

    const Rat binom = Rat(binomial(n - 1, k));
    std::map<IVec, Rat> rhs_map;
    for (const auto& w : candidates) {
        QVec wq = to_qvec(w);
        // W = w^perp cap E^perp carries the (n-k-1)-dimensional face volumes.
        QMat rows = e.basis();
        rows.push_back(wq);
        Subspace wsub = Subspace::span(n, rows).orthocomplement();
        require(wsub.dim() == n - k - 1, "InternalError", "unexpected W dimension");
        std::vector<QPolytope> faces;
        for (const auto& b : rest) faces.push_back(b.face_polytope(b.support(wq).second));
        Rat lat_w = lattice_mixed_volume(faces, wsub);
        std::vector<IVec> det_rows = basis_e;
        for (const auto& r : lattice_basis(wsub)) det_rows.push_back(r);
        det_rows.push_back(w);
        Rat val = lat_e * lat_w * Rat(int_abs(int_det(det_rows))) / Rat(dot(wq, wq));
        if (val != 0) rhs_map[w] = val;
    }

    std::map<IVec, Rat> lhs_map;
    for (const auto& a : s.atoms) lhs_map[a.w] = binom * a.rho;

    std::set<IVec> keys;
    for (const auto& [w, v] : lhs_map) keys.insert(w);
    for (const auto& [w, v] : rhs_map) keys.insert(w);
    rep.ok = true;
    for (const auto& w : keys) {
        ReductionReport::AtomPair pair;
        pair.w = w;
        pair.lhs = lhs_map.count(w) ? lhs_map[w] : Rat(0);
        pair.rhs = rhs_map.count(w) ? rhs_map[w] : Rat(0);
        if (pair.lhs != pair.rhs) rep.ok = false;
        rep.atom_pairs.push_back(std::move(pair));
    }
    return rep;
}

} // namespace mixedcone
