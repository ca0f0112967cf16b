#pragma once

#include <optional>
#include <vector>

#include "mixedcone/mixedvol.hpp"

namespace mixedcone {

// Closed convex cone: nonnegative span of the generators plus a lineality
// subspace. Generators are nonzero.
struct PolyhedralCone {
    int n = 0;
    QMat generators;
    Subspace lineality;

    static PolyhedralCone make(int ambient, QMat gens, Subspace lin) {
        PolyhedralCone c;
        c.n = ambient;
        c.lineality = std::move(lin);
        for (auto& g : gens)
            if (!is_zero_vec(g)) c.generators.push_back(to_qvec(primitive(g)));
        std::sort(c.generators.begin(), c.generators.end());
        c.generators.erase(std::unique(c.generators.begin(), c.generators.end()),
                           c.generators.end());
        return c;
    }

    Subspace span() const {
        QMat rows = generators;
        for (const auto& b : lineality.basis()) rows.push_back(b);
        return Subspace::span(n, rows);
    }

    // Membership: x = sum lambda_i g_i + l with lambda >= 0.
    bool contains(const QVec& x) const {
        const int g = int(generators.size()), l = lineality.dim();
        LinSystem sys(g + l);
        for (int coord = 0; coord < n; ++coord) {
            QVec a(size_t(g + l), Rat(0));
            for (int i = 0; i < g; ++i) a[size_t(i)] = generators[size_t(i)][size_t(coord)];
            for (int j = 0; j < l; ++j)
                a[size_t(g + j)] = lineality.basis()[size_t(j)][size_t(coord)];
            sys.add_eq(a, x[size_t(coord)]);
        }
        for (int i = 0; i < g; ++i) {
            QVec a(size_t(g + l), Rat(0));
            a[size_t(i)] = -1;
            sys.add_le(a, Rat(0));
        }
        return sys.feasible();
    }

    // Relative interior membership: all generator coefficients strictly
    // positive (exact for a finitely generated cone listed with all its
    // generators).
    bool relint_contains(const QVec& x) const {
        if (generators.empty()) return lineality.contains(x);
        const int g = int(generators.size()), l = lineality.dim();
        LinSystem sys(g + l);
        for (int coord = 0; coord < n; ++coord) {
            QVec a(size_t(g + l), Rat(0));
            for (int i = 0; i < g; ++i) a[size_t(i)] = generators[size_t(i)][size_t(coord)];
            for (int j = 0; j < l; ++j)
                a[size_t(g + j)] = lineality.basis()[size_t(j)][size_t(coord)];
            sys.add_eq(a, x[size_t(coord)]);
        }
        for (int i = 0; i < g; ++i) {
            QVec a(size_t(g + l), Rat(0));
            a[size_t(i)] = -1;
            sys.add_le(a, Rat(0), /*strict=*/true);
        }
        return sys.feasible();
    }

    // H-form {<a, x> <= 0} by projecting the membership system onto x.
    QMat hform() const {
        const int g = int(generators.size()), l = lineality.dim();
        LinSystem sys(n + g + l);
        for (int coord = 0; coord < n; ++coord) {
            QVec a(size_t(n + g + l), Rat(0));
            a[size_t(coord)] = 1;
            for (int i = 0; i < g; ++i) a[size_t(n + i)] = -generators[size_t(i)][size_t(coord)];
            for (int j = 0; j < l; ++j)
                a[size_t(n + g + j)] = -lineality.basis()[size_t(j)][size_t(coord)];
            sys.add_eq(a, Rat(0));
        }
        for (int i = 0; i < g; ++i) {
            QVec a(size_t(n + g + l), Rat(0));
            a[size_t(n + i)] = -1;
            sys.add_le(a, Rat(0));
        }
        QMat constraints;
        for (const auto& [a, b, strict] : sys.project(n)) {
            require(b == 0 && !strict, "InternalError", "cone H-form must be homogeneous");
            if (!is_zero_vec(a)) constraints.push_back(to_qvec(primitive(a)));
        }
        std::sort(constraints.begin(), constraints.end());
        constraints.erase(std::unique(constraints.begin(), constraints.end()),
                          constraints.end());
        return constraints;
    }

    bool subset_of(const PolyhedralCone& other) const {
        for (const auto& g : generators)
            if (!other.contains(g)) return false;
        for (const auto& b : lineality.basis())
            if (!other.contains(b) || !other.contains(vscale(Rat(-1), b))) return false;
        return true;
    }

    friend bool cone_equal(const PolyhedralCone& a, const PolyhedralCone& b) {
        return a.subset_of(b) && b.subset_of(a);
    }
};

struct TouchingData {
    PolyhedralCone normal_cone;   // N(P, F(P,u))
    PolyhedralCone touching_cone; // T(P,u) = N for polytopes
    Subspace ts;                  // TS(P,u) = pspan F(P,u)
    FaceDescriptor<Rat> face;
    bool relint_checked = false;
};

// Normal cone of the support set, touching cone and touching space of a
// polytope. Generators come from the relative facets containing the face; the
// lineality is (pspan P)^perp.
inline TouchingData touching_space_polytope(const QPolytope& p, const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "touchingctx needs u != 0");
    TouchingData t;
    t.face = p.support(u).second;
    QMat diffs;
    for (size_t i = 1; i < t.face.vidx.size(); ++i)
        diffs.push_back(vsub(p.vertices()[size_t(t.face.vidx[i])],
                             p.vertices()[size_t(t.face.vidx[0])]));
    t.ts = Subspace::span(p.ambient(), diffs);

    QMat gens;
    for (const auto& f : p.rel_facets())
        if (std::includes(f.vidx.begin(), f.vidx.end(), t.face.vidx.begin(),
                          t.face.vidx.end()))
            gens.push_back(f.normal);
    Subspace lin = Subspace::span(p.ambient(), p.ortho_rows());
    t.normal_cone = PolyhedralCone::make(p.ambient(), std::move(gens), std::move(lin));
    t.touching_cone = t.normal_cone;
    t.relint_checked = t.normal_cone.relint_contains(u);
    require(t.relint_checked, "InternalError", "u must lie in relint N(P, F(P,u))");
    return t;
}

// ---------------------------------------------------------------------------
// Cusps. K has a c-cusp in direction u iff K sits inside x + {y : <y,u> <=
// -c|y||u|} for the apex x. All inequalities are kept in squared rational
// form; c is passed as c^2 in (0, 1].

struct CuspReport {
    Rat max_cusp_sq;            // 0 iff no cusp
    std::optional<QVec> apex;
    bool singleton_face = false;

    bool has_cusp(const Rat& c_sq) const {
        require(c_sq > 0 && c_sq <= 1, "CuspRangeError", "c^2 must lie in (0,1]");
        return singleton_face && max_cusp_sq >= c_sq;
    }
};

inline CuspReport cusp(const QPolytope& p, const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "cusp direction must be nonzero");
    CuspReport r;
    r.max_cusp_sq = 0;
    auto [h, face] = p.support(u);
    if (face.vidx.size() != 1) return r;
    r.singleton_face = true;
    const QVec& x = p.vertices()[size_t(face.vidx[0])];
    r.apex = x;
    // A singleton support set makes every other vertex strictly lower, so the
    // squared ratio is well-defined and positive.
    Rat best(1);
    const Rat uu = norm_sq(u);
    for (const auto& y : p.vertices()) {
        if (y == x) continue;
        QVec d = vsub(y, x);
        Rat s = dot(d, u);
        Rat ratio = s * s / (norm_sq(d) * uu);
        if (ratio < best) best = ratio;
    }
    r.max_cusp_sq = best;
    return r;
}

// Eps-parametrized version: the squared cusp constant as an exact rational
// function of eps (0 when the eventual support set is not a singleton).
struct EpsCuspReport {
    EpsFrac max_cusp_sq;
    bool singleton_face = false;
};

inline EpsCuspReport cusp_eps(const EPolytope& p, const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "cusp direction must be nonzero");
    EpsCuspReport r;
    EVec ue = to_evec(u);
    auto [h, face] = p.support(ue);
    if (face.vidx.size() != 1) return r;
    r.singleton_face = true;
    const EVec& x = p.vertices()[size_t(face.vidx[0])];
    EpsFrac best(Rat(1));
    const Eps uu = norm_sq(ue);
    for (const auto& y : p.vertices()) {
        if (y == x) continue;
        EVec d = vsub(y, x);
        Eps s = dot(d, ue);
        EpsFrac ratio(s * s, norm_sq(d) * uu);
        if (ratio < best) best = ratio;
    }
    r.max_cusp_sq = best;
    return r;
}

// ---------------------------------------------------------------------------
// Projection identities: T_W(pi_W(K), u) = W cap T(K, u) and TS_W(pi_W(K), u)
// = pi_W(TS(K, u)) for u in W \ {0}.

struct ProjectionCheck {
    bool cones_equal = false;
    bool ts_equal = false;
    Subspace ts_lhs, ts_rhs;
};

inline ProjectionCheck projection_ts_check(const QPolytope& p, const Subspace& w,
                                           const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "projection check needs u != 0");
    require(w.contains(u), "DirectionOutsideSubspace", "u must lie in W");
    const int n = p.ambient();
    QPolytope proj = p.project(w);

    // LHS: touching cone of the projection, computed within W.
    auto face = proj.support(u).second;
    QMat gens;
    for (const auto& f : proj.rel_facets())
        if (std::includes(f.vidx.begin(), f.vidx.end(), face.vidx.begin(), face.vidx.end()))
            gens.push_back(f.normal);
    Subspace proj_span = Subspace::span(n, proj.span_rows());
    // Lineality within W: W cap (pspan proj)^perp.
    QMat cat = w.orthocomplement().basis();
    for (const auto& r : proj_span.basis()) cat.push_back(r);
    Subspace lin = Subspace::span(n, cat).orthocomplement();
    PolyhedralCone lhs = PolyhedralCone::make(n, std::move(gens), std::move(lin));

    TouchingData td = touching_space_polytope(p, u);
    const PolyhedralCone& t = td.touching_cone;

    ProjectionCheck out;
    // lhs subset of W cap T: generators/lineality lie in W by construction.
    bool sub = true;
    for (const auto& g : lhs.generators) sub = sub && t.contains(g) && w.contains(g);
    for (const auto& b : lhs.lineality.basis())
        sub = sub && t.contains(b) && t.contains(vscale(Rat(-1), b)) && w.contains(b);

    // W cap T subset of lhs: no point of W cap T violates any H-constraint of
    // lhs.
    bool super = true;
    QMat t_h = t.hform();
    QMat lhs_h = lhs.hform();
    Subspace lhs_span = lhs.span();
    QMat w_eq = w.orthocomplement().basis();
    auto violates = [&](const QVec& a) {
        LinSystem sys(n);
        for (const auto& e : w_eq) sys.add_eq(e, Rat(0));
        for (const auto& c : t_h) sys.add_le(c, Rat(0));
        sys.add_ge(a, Rat(0), /*strict=*/true);
        return sys.feasible();
    };
    for (const auto& a : lhs_h)
        if (violates(a)) {
            super = false;
            break;
        }
    // Also the span constraints of lhs must hold on W cap T.
    Subspace lhs_span_perp = lhs_span.orthocomplement();
    for (const auto& e : lhs_span_perp.basis()) {
        if (violates(e) || violates(vscale(Rat(-1), e))) {
            super = false;
            break;
        }
    }
    out.cones_equal = sub && super;

    // Touching spaces: within W the projection is a polytope, so TS = pspan of
    // its support set; the right side is the projected touching space.
    QMat fdiffs;
    for (size_t i = 1; i < face.vidx.size(); ++i)
        fdiffs.push_back(vsub(proj.vertices()[size_t(face.vidx[i])],
                              proj.vertices()[size_t(face.vidx[0])]));
    out.ts_lhs = Subspace::span(n, fdiffs);
    QMat proj_ts;
    for (const auto& b : td.ts.basis()) proj_ts.push_back(w.project(b));
    out.ts_rhs = Subspace::span(n, proj_ts);
    out.ts_equal = out.ts_lhs == out.ts_rhs;
    return out;
}

} // namespace mixedcone
