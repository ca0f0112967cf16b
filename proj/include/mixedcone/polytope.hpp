#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "mixedcone/fm.hpp"
#include "mixedcone/linalg.hpp"

namespace mixedcone {

template <class F>
struct FaceDescriptor {
    std::vector<int> vidx; // indices into the parent polytope's canonical vertices
    Vec<F> normal;         // a direction whose support set is exactly this face
};

// V-representation polytope over an ordered exact field (Rat or Eps). The
// canonical form keeps extreme points only, lex-sorted, plus the affine hull
// and the relative facet structure (dim-1 faces within the affine hull).
template <class F>
class Polytope {
public:
    struct Facet {
        Vec<F> normal; // lies in pspan; primitive integer entries over Rat
        F offset;      // <v, normal> == offset on the facet, < offset off it
        std::vector<int> vidx;
    };

    Polytope() : n_(0), d_(-1) {}

    static Polytope from_points(int ambient, std::vector<Vec<F>> pts) {
        require(!pts.empty(), "EmptyPolytope", "a polytope needs at least one point");
        for (const auto& p : pts)
            require(int(p.size()) == ambient, "DimensionMismatch", "point dimension mismatch");
        Polytope p;
        p.n_ = ambient;
        p.build(std::move(pts));
        return p;
    }

    int ambient() const { return n_; }
    int dim() const { return d_; }
    const std::vector<Vec<F>>& vertices() const { return verts_; }
    const std::vector<Facet>& rel_facets() const { return facets_; }
    const Mat<F>& span_rows() const { return span_rows_; }
    const Mat<F>& ortho_rows() const { return ortho_rows_; }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.n_ == b.n_ && a.verts_ == b.verts_;
    }
    friend bool operator!=(const Polytope& a, const Polytope& b) { return !(a == b); }
    friend bool operator<(const Polytope& a, const Polytope& b) {
        return a.verts_ < b.verts_;
    }

    // Support value and support set. The comparison over Eps decides "for all
    // sufficiently small eps > 0".
    std::pair<F, FaceDescriptor<F>> support(const Vec<F>& u) const {
        require(!is_zero_vec(u), "ZeroDirection", "support direction must be nonzero");
        F h = dot(verts_[0], u);
        for (size_t i = 1; i < verts_.size(); ++i) {
            F v = dot(verts_[i], u);
            if (h < v) h = v;
        }
        FaceDescriptor<F> f;
        f.normal = u;
        for (size_t i = 0; i < verts_.size(); ++i)
            if (dot(verts_[i], u) == h) f.vidx.push_back(int(i));
        return {h, f};
    }

    F support_value(const Vec<F>& u) const { return support(u).first; }

    Polytope face_polytope(const FaceDescriptor<F>& f) const {
        std::vector<Vec<F>> pts;
        for (int i : f.vidx) pts.push_back(verts_[size_t(i)]);
        return from_points(n_, std::move(pts));
    }

    friend Polytope operator+(const Polytope& a, const Polytope& b) {
        require(a.n_ == b.n_, "DimensionMismatch", "Minkowski sum of different ambients");
        std::vector<Vec<F>> pts;
        pts.reserve(a.verts_.size() * b.verts_.size());
        for (const auto& x : a.verts_)
            for (const auto& y : b.verts_) pts.push_back(vadd(x, y));
        if constexpr (std::is_same_v<F, Rat>) {
            // In R^3 every facet normal of a full-dimensional sum supports a
            // facet of a summand or is orthogonal to a pair of summand edges;
            // enumerating those directions beats the subset scan once the
            // candidate cloud grows.
            if (a.n_ == 3 && pts.size() > 32) {
                QMat dirs;
                for (const auto& [w, f] : facet_atoms3(a)) dirs.push_back(w);
                for (const auto& [w, f] : facet_atoms3(b)) dirs.push_back(w);
                for (const auto& ea : edge_directions(a))
                    for (const auto& eb : edge_directions(b)) {
                        Vec<F> c = crossgen(Mat<F>{ea, eb});
                        if (is_zero_vec(c)) continue;
                        dirs.push_back(c);
                        dirs.push_back(vscale(F(-1), c));
                    }
                return from_candidate_directions(3, std::move(pts), std::move(dirs));
            }
        }
        return from_points(a.n_, std::move(pts));
    }

    // Directions of the 1-dimensional faces (edges); for segments the span
    // itself, for polygons the relative facets, for 3-polytopes the pairwise
    // facet intersections of rank 1.
    friend Mat<F> edge_directions(const Polytope& p) {
        Mat<F> out;
        if (p.d_ == 1) {
            out.push_back(p.span_rows_[0]);
        } else if (p.d_ == 2) {
            for (const auto& f : p.rel_facets())
                out.push_back(vsub(p.verts_[size_t(f.vidx[1])], p.verts_[size_t(f.vidx[0])]));
        } else if (p.d_ >= 3) {
            for (size_t i = 0; i < p.facets_.size(); ++i)
                for (size_t j = i + 1; j < p.facets_.size(); ++j) {
                    std::vector<int> common;
                    std::set_intersection(p.facets_[i].vidx.begin(), p.facets_[i].vidx.end(),
                                          p.facets_[j].vidx.begin(), p.facets_[j].vidx.end(),
                                          std::back_inserter(common));
                    if (common.size() < 2) continue;
                    out.push_back(vsub(p.verts_[size_t(common[1])], p.verts_[size_t(common[0])]));
                }
        }
        return out;
    }

    // Ambient facet-normal directions regardless of dimension, for the sum
    // fast path (dim d faces of an n-polytope with d = n-1).
    friend std::vector<std::pair<Vec<F>, int>> facet_atoms3(const Polytope& p) {
        std::vector<std::pair<Vec<F>, int>> out;
        if (p.d_ == p.n_) {
            for (const auto& f : p.facets_) out.emplace_back(f.normal, 0);
        } else if (p.d_ == p.n_ - 1) {
            out.emplace_back(p.ortho_rows_[0], 0);
            out.emplace_back(vscale(F(-1), p.ortho_rows_[0]), 0);
        }
        return out;
    }

    Polytope scaled(const F& c) const {
        require(fsign(c) >= 0, "NegativeScale", "polytope scaling expects c >= 0");
        std::vector<Vec<F>> pts;
        if (fsign(c) == 0) {
            pts.push_back(zero_vec<F>(n_));
        } else {
            for (const auto& v : verts_) pts.push_back(vscale(c, v));
        }
        return from_points(n_, std::move(pts));
    }

    Polytope translated(const Vec<F>& t) const {
        std::vector<Vec<F>> pts;
        for (const auto& v : verts_) pts.push_back(vadd(v, t));
        return from_points(n_, std::move(pts));
    }

    // Orthogonal projection onto a rational subspace (images stay in ambient
    // coordinates).
    Polytope project(const Subspace& w) const {
        require(w.dim() >= 1, "TrivialSubspace", "projection onto the zero space");
        require(w.ambient() == n_, "DimensionMismatch", "subspace ambient mismatch");
        QMat p = w.projection_matrix();
        std::vector<Vec<F>> pts;
        for (const auto& v : verts_) pts.push_back(apply_qmat(p, v));
        return from_points(n_, std::move(pts));
    }

    // Coordinate-deletion map (drops coordinate k); ambient shrinks by one.
    Polytope delete_coordinate(int k) const {
        std::vector<Vec<F>> pts;
        for (const auto& v : verts_) {
            Vec<F> w;
            for (int j = 0; j < n_; ++j)
                if (j != k) w.push_back(v[size_t(j)]);
            pts.push_back(std::move(w));
        }
        return from_points(n_ - 1, std::move(pts));
    }

    bool contains(const Vec<F>& p) const {
        if (d_ == 0) return p == verts_[0];
        for (const auto& o : ortho_rows_)
            if (fsign(dot(vsub(p, verts_[0]), o)) != 0) return false;
        for (const auto& f : facets_)
            if (dot(p, f.normal) > f.offset) return false;
        return true;
    }

    static Vec<F> apply_qmat(const QMat& m, const Vec<F>& v) {
        Vec<F> r(m.size());
        for (size_t i = 0; i < m.size(); ++i) {
            F s{};
            for (size_t j = 0; j < v.size(); ++j) s += F(m[i][j]) * v[j];
            r[i] = s;
        }
        return r;
    }

private:
    void build(std::vector<Vec<F>> pts) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        const Vec<F>& p0 = pts[0];
        Mat<F> diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], p0));
        EchelonInfo info = echelon(diffs);
        d_ = info.rank;
        span_rows_.clear();
        for (int r : info.pivot_rows) span_rows_.push_back(diffs[size_t(r)]);
        ortho_rows_ = d_ == n_ ? Mat<F>{} : (d_ == 0 ? identity_rows() : kernel_basis(span_rows_, n_));

        std::vector<int> vertex_ids; // indices into pts
        std::vector<Facet> raw;      // vidx referring to pts

        if (d_ == 0) {
            vertex_ids = {0};
        } else if (d_ == 1) {
            const Vec<F>& t = span_rows_[0];
            int lo = 0, hi = 0;
            for (int i = 1; i < int(pts.size()); ++i) {
                if (dot(pts[size_t(i)], t) < dot(pts[size_t(lo)], t)) lo = i;
                if (dot(pts[size_t(i)], t) > dot(pts[size_t(hi)], t)) hi = i;
            }
            vertex_ids = {lo, hi};
            raw.push_back(make_facet(t, pts, {hi}));
            raw.push_back(make_facet(vscale(F(-1), t), pts, {lo}));
        } else if (d_ == 2) {
            build_2d(pts, vertex_ids, raw);
        } else {
            build_general(pts, vertex_ids, raw);
        }

        finish(pts, vertex_ids, raw);
    }

    // Full-dimensional construction from a complete candidate list of facet
    // directions (Rat only; used by the 3D Minkowski-sum path).
    static Polytope from_candidate_directions(int ambient, std::vector<Vec<F>> pts,
                                              Mat<F> dirs) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        Polytope p;
        p.n_ = ambient;
        Mat<F> diffs;
        for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], pts[0]));
        EchelonInfo info = echelon(diffs);
        if (info.rank < ambient) return from_points(ambient, std::move(pts));
        p.d_ = ambient;
        p.span_rows_.clear();
        for (int r : info.pivot_rows) p.span_rows_.push_back(diffs[size_t(r)]);
        p.ortho_rows_.clear();

        std::set<std::vector<Int>> seen;
        std::vector<Facet> raw;
        for (auto& u : dirs) {
            if (is_zero_vec(u)) continue;
            IVec key = primitive(u);
            if (!seen.insert(key).second) continue;
            Vec<F> w = to_qvec(key);
            F h = dot(pts[0], w);
            for (size_t i = 1; i < pts.size(); ++i) {
                F v = dot(pts[i], w);
                if (h < v) h = v;
            }
            std::vector<int> on;
            for (size_t i = 0; i < pts.size(); ++i)
                if (dot(pts[i], w) == h) on.push_back(int(i));
            Mat<F> fdiffs;
            for (size_t i = 1; i < on.size(); ++i)
                fdiffs.push_back(vsub(pts[size_t(on[i])], pts[size_t(on[0])]));
            if (rank_of(fdiffs) != ambient - 1) continue;
            Facet f;
            f.normal = std::move(w);
            f.offset = h;
            f.vidx = std::move(on);
            raw.push_back(std::move(f));
        }

        std::vector<int> vertex_ids;
        for (size_t i = 0; i < pts.size(); ++i) {
            Mat<F> act;
            for (const Facet& f : raw)
                if (std::binary_search(f.vidx.begin(), f.vidx.end(), int(i)))
                    act.push_back(f.normal);
            if (int(act.size()) >= ambient && rank_of(act) == ambient)
                vertex_ids.push_back(int(i));
        }
        p.finish(pts, vertex_ids, raw);
        return p;
    }

private:
    void finish(const std::vector<Vec<F>>& pts, const std::vector<int>& vertex_ids,
                std::vector<Facet>& raw) {
        std::vector<Vec<F>> vs;
        for (int id : vertex_ids) vs.push_back(pts[size_t(id)]);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        verts_ = std::move(vs);

        // Re-anchor affine data on the canonical first vertex.
        if (d_ > 0) {
            Mat<F> vdiffs;
            for (size_t i = 1; i < verts_.size(); ++i)
                vdiffs.push_back(vsub(verts_[i], verts_[0]));
            EchelonInfo vinfo = echelon(vdiffs);
            span_rows_.clear();
            for (int r : vinfo.pivot_rows) span_rows_.push_back(vdiffs[size_t(r)]);
        } else {
            span_rows_.clear();
        }

        // Map facet vertex lists to canonical indices (dropping non-extreme
        // on-facet points).
        std::map<Vec<F>, int> where;
        for (size_t i = 0; i < verts_.size(); ++i) where[verts_[i]] = int(i);
        facets_.clear();
        for (Facet& f : raw) {
            std::vector<int> keep;
            for (int id : f.vidx) {
                auto it = where.find(pts[size_t(id)]);
                if (it != where.end()) keep.push_back(it->second);
            }
            std::sort(keep.begin(), keep.end());
            keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
            f.vidx = std::move(keep);
            facets_.push_back(std::move(f));
        }
        std::sort(facets_.begin(), facets_.end(),
                  [](const Facet& a, const Facet& b) { return a.vidx < b.vidx; });
    }

    Mat<F> identity_rows() const {
        Mat<F> rows;
        for (int i = 0; i < n_; ++i) {
            Vec<F> e = zero_vec<F>(n_);
            e[size_t(i)] = F(1);
            rows.push_back(std::move(e));
        }
        return rows;
    }

    Facet make_facet(Vec<F> normal, const std::vector<Vec<F>>& pts,
                     std::vector<int> on) const {
        normalize_normal(normal);
        Facet f;
        f.offset = dot(pts[size_t(on[0])], normal);
        f.normal = std::move(normal);
        f.vidx = std::move(on);
        return f;
    }

    static void normalize_normal(Vec<F>& normal) {
        if constexpr (std::is_same_v<F, Rat>) {
            normal = to_qvec(primitive(normal));
        }
    }

    void build_2d(const std::vector<Vec<F>>& pts, std::vector<int>& vertex_ids,
                  std::vector<Facet>& raw) const {
        // Pick two coordinates on which the plane projects bijectively.
        int c1 = -1, c2 = -1;
        for (int i = 0; i < n_ && c1 < 0; ++i)
            for (int j = i + 1; j < n_; ++j) {
                F dd = span_rows_[0][size_t(i)] * span_rows_[1][size_t(j)] -
                       span_rows_[0][size_t(j)] * span_rows_[1][size_t(i)];
                if (fsign(dd) != 0) {
                    c1 = i;
                    c2 = j;
                    break;
                }
            }
        require(c1 >= 0, "InternalError", "rank-2 span without invertible projection");

        std::vector<int> order(pts.size());
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](int i) {
            return std::make_pair(pts[size_t(i)][size_t(c1)], pts[size_t(i)][size_t(c2)]);
        };
        std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
        auto cross2 = [&](int o, int a, int b) {
            F ax = pts[size_t(a)][size_t(c1)] - pts[size_t(o)][size_t(c1)];
            F ay = pts[size_t(a)][size_t(c2)] - pts[size_t(o)][size_t(c2)];
            F bx = pts[size_t(b)][size_t(c1)] - pts[size_t(o)][size_t(c1)];
            F by = pts[size_t(b)][size_t(c2)] - pts[size_t(o)][size_t(c2)];
            return ax * by - ay * bx;
        };
        // Andrew's monotone chain with strict turns (collinear points dropped).
        std::vector<int> hull;
        for (int pass = 0; pass < 2; ++pass) {
            size_t start = hull.size();
            for (int idx : order) {
                while (hull.size() >= start + 2 &&
                       fsign(cross2(hull[hull.size() - 2], hull[hull.size() - 1], idx)) <= 0)
                    hull.pop_back();
                hull.push_back(idx);
            }
            hull.pop_back(); // endpoint repeats as the next pass's start
            std::reverse(order.begin(), order.end());
        }
        vertex_ids = hull;

        const int m = int(hull.size());
        for (int t = 0; t < m; ++t) {
            int i = hull[size_t(t)], j = hull[size_t((t + 1) % m)];
            Mat<F> rows;
            rows.push_back(vsub(pts[size_t(j)], pts[size_t(i)]));
            for (const auto& o : ortho_rows_) rows.push_back(o);
            Vec<F> normal = crossgen(rows);
            // Orient outward using any vertex off this edge.
            for (int w : hull) {
                if (w == i || w == j) continue;
                int s = fsign(dot(pts[size_t(w)], normal) - dot(pts[size_t(i)], normal));
                if (s > 0)
                    for (auto& x : normal) x = F(0) - x;
                if (s != 0) break;
            }
            raw.push_back(make_facet(std::move(normal), pts, {i, j}));
        }
    }

    void build_general(const std::vector<Vec<F>>& pts, std::vector<int>& vertex_ids,
                       std::vector<Facet>& raw) const {
        const int m = int(pts.size());
        std::vector<Vec<F>> plane_normals;
        std::vector<F> plane_offsets;
        std::map<std::pair<QMat, Rat>, bool> seen_q; // Rat-only dedupe key

        std::vector<int> subset(size_t(d_), 0);
        std::iota(subset.begin(), subset.end(), 0);
        auto advance = [&]() {
            int k = d_ - 1;
            while (k >= 0 && subset[size_t(k)] == m - d_ + k) --k;
            if (k < 0) return false;
            ++subset[size_t(k)];
            for (int j = k + 1; j < d_; ++j) subset[size_t(j)] = subset[size_t(j - 1)] + 1;
            return true;
        };

        do {
            Mat<F> rows;
            for (int i = 1; i < d_; ++i)
                rows.push_back(vsub(pts[size_t(subset[size_t(i)])], pts[size_t(subset[0])]));
            for (const auto& o : ortho_rows_) rows.push_back(o);
            Vec<F> normal = crossgen(rows);
            if (is_zero_vec(normal)) continue; // subset does not span a hyperplane
            F offset = dot(pts[size_t(subset[0])], normal);

            if constexpr (std::is_same_v<F, Rat>) {
                IVec key = primitive(normal);
                QVec kq = to_qvec(key);
                Rat koff = offset / (dot(normal, kq) / dot(kq, kq)); // offset of the primitive rep
                // Canonical orientation for the key only.
                QVec kcan = kq;
                Rat ocan = koff;
                for (const Rat& x : kcan) {
                    if (x == 0) continue;
                    if (x < 0) {
                        kcan = vscale(Rat(-1), kcan);
                        ocan = -ocan;
                    }
                    break;
                }
                if (!seen_q.emplace(std::make_pair(QMat{kcan}, ocan), true).second) continue;
                normal = kq;
                offset = F(koff);
            } else {
                bool dup = false;
                for (size_t q = 0; q < plane_normals.size() && !dup; ++q)
                    dup = same_hyperplane(plane_normals[q], plane_offsets[q], normal, offset);
                if (dup) continue;
            }

            int pos = 0, neg = 0;
            std::vector<int> on;
            for (int i = 0; i < m; ++i) {
                int s = fsign(dot(pts[size_t(i)], normal) - offset);
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
                else on.push_back(i);
                if (pos && neg) break;
            }
            if constexpr (!std::is_same_v<F, Rat>) {
                plane_normals.push_back(normal);
                plane_offsets.push_back(offset);
            }
            if (pos && neg) continue;
            if (pos) { // flip outward
                for (auto& x : normal) x = F(0) - x;
                offset = F(0) - offset;
            }
            Facet f;
            f.normal = std::move(normal);
            f.offset = offset;
            f.vidx = std::move(on);
            normalize_normal(f.normal);
            f.offset = dot(pts[size_t(f.vidx[0])], f.normal);
            raw.push_back(std::move(f));
        } while (advance());

        // A point is extreme iff its active facet normals span the full d
        // dimensions of the hull.
        for (int i = 0; i < m; ++i) {
            Mat<F> act;
            for (const Facet& f : raw)
                if (std::binary_search(f.vidx.begin(), f.vidx.end(), i)) act.push_back(f.normal);
            if (int(act.size()) >= d_ && rank_of(act) == d_) vertex_ids.push_back(i);
        }
    }

    static bool same_hyperplane(const Vec<F>& n1, const F& o1, const Vec<F>& n2, const F& o2) {
        // n2 = t n1, o2 = t o1 for some t != 0.
        for (size_t i = 0; i < n1.size(); ++i)
            for (size_t j = i + 1; j < n1.size(); ++j)
                if (fsign(n1[i] * n2[j] - n1[j] * n2[i]) != 0) return false;
        for (size_t i = 0; i < n1.size(); ++i)
            if (fsign(n1[i] * o2 - n2[i] * o1) != 0) return false;
        return true;
    }

    int n_;
    std::vector<Vec<F>> verts_;
    int d_;
    Mat<F> span_rows_;
    Mat<F> ortho_rows_;
    std::vector<Facet> facets_;
};

using QPolytope = Polytope<Rat>;
using EPolytope = Polytope<Eps>;

template <class F>
Polytope<F> minkowski_sum(const std::vector<Polytope<F>>& bodies) {
    require(!bodies.empty(), "EmptyTuple", "sum of an empty tuple");
    Polytope<F> s = bodies[0];
    for (size_t i = 1; i < bodies.size(); ++i) s = s + bodies[i];
    return s;
}

// The directions u (one primitive representative each) with dim F(P, u) = n-1.
template <class F>
std::vector<std::pair<Vec<F>, FaceDescriptor<F>>> facet_atoms(const Polytope<F>& p) {
    std::vector<std::pair<Vec<F>, FaceDescriptor<F>>> out;
    const int n = p.ambient();
    if (p.dim() == n) {
        for (const auto& f : p.rel_facets()) {
            FaceDescriptor<F> fd{f.vidx, f.normal};
            out.emplace_back(f.normal, std::move(fd));
        }
    } else if (p.dim() == n - 1) {
        Vec<F> o = p.ortho_rows()[0];
        if constexpr (std::is_same_v<F, Rat>) o = to_qvec(primitive(o));
        std::vector<int> all(p.vertices().size());
        std::iota(all.begin(), all.end(), 0);
        out.emplace_back(o, FaceDescriptor<F>{all, o});
        Vec<F> no = vscale(F(-1), o);
        out.emplace_back(no, FaceDescriptor<F>{all, no});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Evaluate an eps-family at eps = 0 (vertex limits, then canonicalize).
inline QPolytope limit_at_zero(const EPolytope& p) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices()) {
        QVec q(v.size());
        for (size_t i = 0; i < v.size(); ++i) q[i] = v[i].limit_at_zero();
        pts.push_back(std::move(q));
    }
    return QPolytope::from_points(p.ambient(), std::move(pts));
}

inline QPolytope eval_at(const EPolytope& p, const Rat& x) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices()) {
        QVec q(v.size());
        for (size_t i = 0; i < v.size(); ++i) q[i] = v[i].eval(x);
        pts.push_back(std::move(q));
    }
    return QPolytope::from_points(p.ambient(), std::move(pts));
}

inline EPolytope promote(const QPolytope& p) {
    std::vector<EVec> pts;
    for (const auto& v : p.vertices()) pts.push_back(to_evec(v));
    return EPolytope::from_points(p.ambient(), std::move(pts));
}

struct FanCell {
    FaceDescriptor<Rat> sum_face;
    std::vector<FaceDescriptor<Rat>> body_faces; // F(C_i, representative)
    IVec representative;                         // interior normal of the cell
};

// One cell per nonempty proper face of the Minkowski sum of the tuple. For a
// full-dimensional sum the representative is the sum of the primitive outer
// normals of the facets containing the face; lower-dimensional sums fall back
// to an exact relative-interior point of the normal cone.
inline std::vector<FanCell> fan_cells(const std::vector<QPolytope>& bodies) {
    require(!bodies.empty(), "EmptyTuple", "fan of an empty tuple");
    const int n = bodies[0].ambient();
    QPolytope p = minkowski_sum(bodies);
    std::vector<FanCell> cells;
    if (p.dim() <= 0) return cells;

    // Proper faces = closure of the relative facet vertex sets under
    // intersection.
    std::set<std::vector<int>> faceset;
    std::vector<std::vector<int>> queue;
    for (const auto& f : p.rel_facets())
        if (faceset.insert(f.vidx).second) queue.push_back(f.vidx);
    while (!queue.empty()) {
        std::vector<int> f = std::move(queue.back());
        queue.pop_back();
        for (const auto& g : p.rel_facets()) {
            std::vector<int> inter;
            std::set_intersection(f.begin(), f.end(), g.vidx.begin(), g.vidx.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            if (faceset.insert(inter).second) queue.push_back(std::move(inter));
        }
    }
    std::vector<std::vector<int>> faces(faceset.begin(), faceset.end());

    for (const auto& face : faces) {
        QVec rep;
        if (p.dim() == n) {
            rep = zero_vec<Rat>(n);
            for (const auto& f : p.rel_facets())
                if (std::includes(f.vidx.begin(), f.vidx.end(), face.begin(), face.end()))
                    rep = vadd(rep, f.normal);
        } else {
            // Exact interior point of the normal cone: equal on the face,
            // strictly below elsewhere.
            LinSystem sys(n);
            const QVec& x0 = p.vertices()[size_t(face[0])];
            for (size_t i = 0; i < p.vertices().size(); ++i) {
                QVec a = vsub(p.vertices()[i], x0);
                if (std::binary_search(face.begin(), face.end(), int(i)))
                    sys.add_eq(a, Rat(0));
                else
                    sys.add_le(a, Rat(-1));
            }
            auto y = sys.sample();
            require(bool(y), "InternalError", "face without a normal-cone interior point");
            rep = *y;
        }
        FanCell cell;
        cell.representative = primitive(rep);
        QVec u = to_qvec(cell.representative);
        cell.sum_face = FaceDescriptor<Rat>{face, u};
        for (const auto& b : bodies) cell.body_faces.push_back(b.support(u).second);
        cells.push_back(std::move(cell));
    }
    std::sort(cells.begin(), cells.end(), [](const FanCell& a, const FanCell& b) {
        return std::make_pair(a.sum_face.vidx.size(), a.sum_face.vidx) <
               std::make_pair(b.sum_face.vidx.size(), b.sum_face.vidx);
    });
    return cells;
}

// pspan of a face as a rational subspace.
inline Subspace face_pspan(const QPolytope& p, const std::vector<int>& vidx) {
    QMat rows;
    for (size_t i = 1; i < vidx.size(); ++i)
        rows.push_back(vsub(p.vertices()[size_t(vidx[i])], p.vertices()[size_t(vidx[0])]));
    return Subspace::span(p.ambient(), rows);
}

} // namespace mixedcone
