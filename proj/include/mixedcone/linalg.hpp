#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "mixedcone/eps.hpp"
#include "mixedcone/rational.hpp"

namespace mixedcone {

template <class F>
using Vec = std::vector<F>;
template <class F>
using Mat = std::vector<std::vector<F>>; // row major

using QVec = Vec<Rat>;
using QMat = Mat<Rat>;
using EVec = Vec<Eps>;
using EMat = Mat<Eps>;
using IVec = std::vector<Int>;

template <class F>
int fsign(const F& x) {
    if constexpr (std::is_same_v<F, Rat>) return sgn(x);
    else return x.sign();
}

// Division that is exact in the coefficient domain (field for Rat; Q[eps] for
// Eps, where Bareiss pivots guarantee zero remainders).
template <class F>
F exact_div(const F& a, const F& b) {
    return a / b;
}

template <class F>
Vec<F> vsub(const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class F>
Vec<F> vadd(const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class F, class S>
Vec<F> vscale(const S& c, const Vec<F>& a) {
    Vec<F> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F(c) * a[i];
    return r;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
    F r{};
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

template <class F>
bool is_zero_vec(const Vec<F>& a) {
    for (const auto& x : a)
        if (fsign(x) != 0) return false;
    return true;
}

template <class F>
Vec<F> zero_vec(int n) {
    return Vec<F>(size_t(n), F(0));
}

inline QVec unit_vec(int n, int k) {
    QVec v(size_t(n), Rat(0));
    v[size_t(k)] = 1;
    return v;
}

template <class F>
F norm_sq(const Vec<F>& a) {
    return dot(a, a);
}

// Determinant by fraction-free (Bareiss) elimination; square input.
template <class F>
F det(Mat<F> m) {
    const int n = int(m.size());
    if (n == 0) return F(1);
    F prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (fsign(m[size_t(r)][size_t(k)]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return F(0);
        if (piv != k) {
            std::swap(m[size_t(piv)], m[size_t(k)]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c)
                m[size_t(r)][size_t(c)] = exact_div(
                    m[size_t(k)][size_t(k)] * m[size_t(r)][size_t(c)] -
                        m[size_t(r)][size_t(k)] * m[size_t(k)][size_t(c)],
                    prev);
            m[size_t(r)][size_t(k)] = F(0);
        }
        prev = m[size_t(k)][size_t(k)];
    }
    F d = m[size_t(n - 1)][size_t(n - 1)];
    return sign > 0 ? d : F(0) - d;
}

struct EchelonInfo {
    int rank = 0;
    std::vector<int> pivot_rows; // indices into the original row list
    std::vector<int> pivot_cols;
};

// Fraction-free row echelon; returns rank and pivot positions of the original
// matrix. The matrix itself is consumed.
template <class F>
EchelonInfo echelon(Mat<F> m) {
    EchelonInfo info;
    if (m.empty()) return info;
    const int rows = int(m.size()), cols = int(m[0].size());
    std::vector<int> rowidx(size_t(rows), 0);
    for (int i = 0; i < rows; ++i) rowidx[size_t(i)] = i;
    F prev(1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (fsign(m[size_t(i)][size_t(c)]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[size_t(piv)], m[size_t(r)]);
        std::swap(rowidx[size_t(piv)], rowidx[size_t(r)]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                m[size_t(i)][size_t(j)] = exact_div(
                    m[size_t(r)][size_t(c)] * m[size_t(i)][size_t(j)] -
                        m[size_t(i)][size_t(c)] * m[size_t(r)][size_t(j)],
                    prev);
            m[size_t(i)][size_t(c)] = F(0);
        }
        prev = m[size_t(r)][size_t(c)];
        info.pivot_rows.push_back(rowidx[size_t(r)]);
        info.pivot_cols.push_back(c);
        ++r;
    }
    info.rank = r;
    return info;
}

template <class F>
int rank_of(const Mat<F>& m) {
    return echelon(m).rank;
}

// Kernel basis via Cramer minors: one vector per free column, entries are
// signed rank-size minors. Exact over any ordered field / Q[eps].
template <class F>
Mat<F> kernel_basis(const Mat<F>& m, int cols) {
    EchelonInfo info = echelon(m);
    std::vector<bool> is_pivot(size_t(cols), false);
    for (int c : info.pivot_cols) is_pivot[size_t(c)] = true;

    auto minor_det = [&](int replace_t, int free_col) {
        Mat<F> b(size_t(info.rank), Vec<F>(size_t(info.rank), F(0)));
        for (int i = 0; i < info.rank; ++i)
            for (int t = 0; t < info.rank; ++t) {
                int col = (t == replace_t) ? free_col : info.pivot_cols[size_t(t)];
                b[size_t(i)][size_t(t)] = m[size_t(info.pivot_rows[size_t(i)])][size_t(col)];
            }
        return det(std::move(b));
    };

    F base = minor_det(-1, 0); // det of the pivot block
    Mat<F> basis;
    for (int j = 0; j < cols; ++j) {
        if (is_pivot[size_t(j)]) continue;
        Vec<F> v = zero_vec<F>(cols);
        v[size_t(j)] = base;
        for (int t = 0; t < info.rank; ++t)
            v[size_t(info.pivot_cols[size_t(t)])] = F(0) - minor_det(t, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Generalized cross product: the (up to sign unique) vector orthogonal to n-1
// independent rows in R^n, via cofactor expansion.
template <class F>
Vec<F> crossgen(const Mat<F>& rows) {
    const int n = int(rows.size()) + 1;
    Vec<F> v(size_t(n), F(0));
    for (int k = 0; k < n; ++k) {
        Mat<F> sub(size_t(n - 1), Vec<F>(size_t(n - 1), F(0)));
        for (int i = 0; i < n - 1; ++i) {
            int jj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                sub[size_t(i)][size_t(jj++)] = rows[size_t(i)][size_t(j)];
            }
        }
        F d = det(std::move(sub));
        v[size_t(k)] = (k % 2 == 0) ? d : F(0) - d;
    }
    return v;
}

// Canonical primitive integer representative of a nonzero rational direction:
// integer entries, gcd 1, positive multiple of the input.
inline IVec primitive(const QVec& v) {
    require(!is_zero_vec(v), "ZeroDirection", "primitive() of the zero vector");
    Int l(1);
    for (const Rat& x : v) l = int_lcm(l, rat_den(x));
    IVec w(v.size());
    Int g(0);
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
        g = int_gcd(g, int_abs(w[i]));
    }
    for (auto& x : w) x /= g;
    return w;
}

inline QVec to_qvec(const IVec& w) {
    QVec v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[i] = Rat(w[i]);
    return v;
}

inline EVec to_evec(const QVec& v) {
    EVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Eps(v[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Rational linear subspaces with a canonical (RREF) basis, so that equality of
// subspaces is plain matrix equality.

class Subspace {
public:
    Subspace() : n_(0) {}
    explicit Subspace(int ambient) : n_(ambient) {}

    static Subspace span(int ambient, const QMat& vectors) {
        Subspace s(ambient);
        s.basis_ = rref(vectors, ambient);
        return s;
    }

    static Subspace full(int ambient) {
        QMat rows;
        for (int i = 0; i < ambient; ++i) rows.push_back(unit_vec(ambient, i));
        return span(ambient, rows);
    }

    int ambient() const { return n_; }
    int dim() const { return int(basis_.size()); }
    bool is_trivial() const { return basis_.empty(); }
    const QMat& basis() const { return basis_; }

    bool contains(const QVec& v) const {
        if (is_zero_vec(v)) return true;
        QMat m = basis_;
        m.push_back(v);
        return rank_of(m) == dim();
    }

    bool contains(const Subspace& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    Subspace sum(const Subspace& other) const {
        QMat rows = basis_;
        rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
        return span(n_, rows);
    }

    Subspace orthocomplement() const {
        if (basis_.empty()) return full(n_);
        return span(n_, kernel_basis(basis_, n_));
    }

    // Matrix of the orthogonal projection onto this subspace.
    QMat projection_matrix() const {
        QMat p(size_t(n_), QVec(size_t(n_), Rat(0)));
        if (basis_.empty()) return p;
        const int d = dim();
        QMat gram(size_t(d), QVec(size_t(d), Rat(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) gram[size_t(i)][size_t(j)] = dot(basis_[size_t(i)], basis_[size_t(j)]);
        QMat inv = invert(gram);
        // P = B^T G^{-1} B with basis rows B.
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                Rat s(0);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        s += basis_[size_t(i)][size_t(a)] * inv[size_t(i)][size_t(j)] *
                             basis_[size_t(j)][size_t(b)];
                p[size_t(a)][size_t(b)] = s;
            }
        return p;
    }

    QVec project(const QVec& v) const {
        QMat p = projection_matrix();
        QVec r(size_t(n_), Rat(0));
        for (int i = 0; i < n_; ++i) r[size_t(i)] = dot(p[size_t(i)], v);
        return r;
    }

    static QMat rref(QMat m, int cols) {
        int r = 0;
        for (int c = 0; c < cols && r < int(m.size()); ++c) {
            int piv = -1;
            for (int i = r; i < int(m.size()); ++i)
                if (m[size_t(i)][size_t(c)] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(m[size_t(piv)], m[size_t(r)]);
            Rat lead = m[size_t(r)][size_t(c)];
            for (int j = 0; j < cols; ++j) m[size_t(r)][size_t(j)] /= lead;
            for (int i = 0; i < int(m.size()); ++i) {
                if (i == r || m[size_t(i)][size_t(c)] == 0) continue;
                Rat f = m[size_t(i)][size_t(c)];
                for (int j = 0; j < cols; ++j)
                    m[size_t(i)][size_t(j)] -= f * m[size_t(r)][size_t(j)];
            }
            ++r;
        }
        m.resize(size_t(r));
        return m;
    }

    static QMat invert(QMat m) {
        const int d = int(m.size());
        QMat aug = m;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) aug[size_t(i)].push_back(i == j ? Rat(1) : Rat(0));
        }
        aug = rref(std::move(aug), 2 * d);
        require(int(aug.size()) == d, "SingularMatrix", "matrix not invertible");
        QMat inv(size_t(d), QVec(size_t(d), Rat(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) inv[size_t(i)][size_t(j)] = aug[size_t(i)][size_t(d + j)];
        return inv;
    }

private:
    int n_;
    QMat basis_; // RREF rows, canonical
};

struct RankKernel {
    int rank = 0;
    Subspace kernel;
};

inline RankKernel rank_and_kernel(const QMat& m, int cols) {
    RankKernel rk;
    if (m.empty()) {
        rk.rank = 0;
        rk.kernel = Subspace::full(cols);
        return rk;
    }
    rk.rank = rank_of(m);
    rk.kernel = rk.rank == cols ? Subspace(cols)
                                : Subspace::span(cols, kernel_basis(m, cols));
    return rk;
}

// ---------------------------------------------------------------------------
// Integer lattice utilities (used by the reduction formulas, where mixed
// volumes inside rational subspaces are normalized by sublattice covolumes).

// Basis of {x in Z^n : A x = 0} via column reduction with a unimodular
// transform. Rows of the result generate the full saturated kernel lattice.
inline std::vector<IVec> integer_kernel(const std::vector<IVec>& a_rows, int n) {
    std::vector<IVec> h = a_rows;       // m x n, columns get reduced
    std::vector<IVec> u(size_t(n), IVec(size_t(n), Int(0))); // n x n transform, column form
    for (int i = 0; i < n; ++i) u[size_t(i)][size_t(i)] = 1;
    const int m = int(h.size());
    auto col_sub = [&](int dst, int src, const Int& q) {
        for (int r = 0; r < m; ++r) h[size_t(r)][size_t(dst)] -= q * h[size_t(r)][size_t(src)];
        for (int r = 0; r < n; ++r) u[size_t(r)][size_t(dst)] -= q * u[size_t(r)][size_t(src)];
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(h[size_t(r)][size_t(i)], h[size_t(r)][size_t(j)]);
        for (int r = 0; r < n; ++r) std::swap(u[size_t(r)][size_t(i)], u[size_t(r)][size_t(j)]);
    };
    int fixed = 0;
    for (int row = 0; row < m && fixed < n; ++row) {
        // Reduce columns fixed..n-1 on this row to a single nonzero pivot.
        while (true) {
            int best = -1;
            for (int c = fixed; c < n; ++c)
                if (h[size_t(row)][size_t(c)] != 0 &&
                    (best < 0 || int_abs(h[size_t(row)][size_t(c)]) < int_abs(h[size_t(row)][size_t(best)])))
                    best = c;
            if (best < 0) break;
            bool others = false;
            for (int c = fixed; c < n; ++c) {
                if (c == best || h[size_t(row)][size_t(c)] == 0) continue;
                Int q = h[size_t(row)][size_t(c)] / h[size_t(row)][size_t(best)];
                col_sub(c, best, q);
                if (h[size_t(row)][size_t(c)] != 0) others = true;
            }
            if (!others) {
                col_swap(fixed, best);
                ++fixed;
                break;
            }
        }
    }
    std::vector<IVec> kernel;
    for (int c = fixed; c < n; ++c) {
        IVec v(size_t(n), Int(0));
        for (int r = 0; r < n; ++r) v[size_t(r)] = u[size_t(r)][size_t(c)];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

// Basis of the lattice V cap Z^n for a rational subspace V (rows span V).
inline std::vector<IVec> lattice_basis(const Subspace& v) {
    if (v.dim() == 0) return {};
    Subspace perp = v.orthocomplement();
    std::vector<IVec> constraints;
    for (const auto& row : perp.basis()) constraints.push_back(primitive(row));
    std::vector<IVec> kb = integer_kernel(constraints, v.ambient());
    require(int(kb.size()) == v.dim(), "InternalError", "lattice basis rank mismatch");
    return kb;
}

inline Int int_det(std::vector<IVec> m) {
    Mat<Rat> q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = to_qvec(m[i]);
    Rat d = det(std::move(q));
    require(rat_den(d) == 1, "InternalError", "integer determinant not integral");
    return rat_num(d);
}

// Coordinates of v in the row basis L (v must lie in the row span).
inline QVec lattice_coords(const std::vector<IVec>& basis, const QVec& v) {
    const int d = int(basis.size());
    const int n = int(v.size());
    QMat rows(size_t(d), QVec(size_t(n), Rat(0)));
    for (int i = 0; i < d; ++i) rows[size_t(i)] = to_qvec(basis[size_t(i)]);
    // Solve x * rows = v by picking d independent columns.
    EchelonInfo info = echelon(rows);
    require(info.rank == d, "InternalError", "degenerate lattice basis");
    QMat sq(size_t(d), QVec(size_t(d), Rat(0)));
    QVec rhs(size_t(d), Rat(0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            sq[size_t(i)][size_t(j)] = rows[size_t(j)][size_t(info.pivot_cols[size_t(i)])];
        rhs[size_t(i)] = v[size_t(info.pivot_cols[size_t(i)])];
    }
    QMat inv = Subspace::invert(sq);
    QVec x(size_t(d), Rat(0));
    for (int i = 0; i < d; ++i) x[size_t(i)] = dot(inv[size_t(i)], rhs);
    // Consistency: v must be reproduced on every coordinate.
    for (int j = 0; j < n; ++j) {
        Rat s(0);
        for (int i = 0; i < d; ++i) s += x[size_t(i)] * Rat(basis[size_t(i)][size_t(j)]);
        require(s == v[size_t(j)], "BodiesNotInSubspace", "point outside subspace");
    }
    return x;
}

} // namespace mixedcone
