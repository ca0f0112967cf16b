#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "mixedcone/linalg.hpp"

namespace mixedcone {

// Exact linear feasibility, sample extraction and projection over Q by
// Fourier-Motzkin elimination. Rows encode <a, x> <= b, optionally strict.
class LinSystem {
public:
    explicit LinSystem(int vars) : vars_(vars) {}

    int vars() const { return vars_; }

    void add_le(QVec a, const Rat& b, bool strict = false) {
        rows_.push_back(Row{std::move(a), b, strict});
    }
    void add_ge(const QVec& a, const Rat& b, bool strict = false) {
        add_le(vscale(Rat(-1), a), -b, strict);
    }
    void add_eq(const QVec& a, const Rat& b) {
        add_le(a, b);
        add_ge(a, b);
    }

    bool feasible() const {
        std::vector<Row> rows = rows_;
        for (int v = 0; v < vars_; ++v) {
            auto next = eliminate(rows, v);
            if (!next) return false;
            rows = std::move(*next);
        }
        return check_constants(rows);
    }

    // A rational solution, if one exists.
    std::optional<QVec> sample() const {
        std::vector<std::vector<Row>> stages; // rows before eliminating var v
        std::vector<Row> rows = rows_;
        for (int v = 0; v < vars_; ++v) {
            stages.push_back(rows);
            auto next = eliminate(rows, v);
            if (!next) return std::nullopt;
            rows = std::move(*next);
        }
        if (!check_constants(rows)) return std::nullopt;
        QVec x(size_t(vars_), Rat(0));
        for (int v = vars_ - 1; v >= 0; --v) {
            std::optional<Rat> lo, hi;
            bool lo_strict = false, hi_strict = false;
            for (const Row& r : stages[size_t(v)]) {
                const Rat& c = r.a[size_t(v)];
                if (c == 0) continue;
                Rat rest = r.b;
                for (int j = v + 1; j < vars_; ++j) rest -= r.a[size_t(j)] * x[size_t(j)];
                Rat bound = rest / c;
                if (c > 0) { // x_v <= bound
                    if (!hi || bound < *hi) {
                        hi = bound;
                        hi_strict = r.strict;
                    } else if (bound == *hi) {
                        hi_strict = hi_strict || r.strict;
                    }
                } else { // x_v >= bound
                    if (!lo || bound > *lo) {
                        lo = bound;
                        lo_strict = r.strict;
                    } else if (bound == *lo) {
                        lo_strict = lo_strict || r.strict;
                    }
                }
            }
            if (lo && hi) {
                if (*lo == *hi)
                    x[size_t(v)] = *lo; // feasibility guarantees both non-strict
                else
                    x[size_t(v)] = (*lo + *hi) / 2;
            } else if (lo) {
                x[size_t(v)] = lo_strict ? *lo + 1 : *lo;
            } else if (hi) {
                x[size_t(v)] = hi_strict ? *hi - 1 : *hi;
            }
        }
        return x;
    }

    // Projection onto the first `keep` variables: eliminates the rest and
    // returns the surviving constraints (used to turn V-form cones into
    // H-form).
    std::vector<std::tuple<QVec, Rat, bool>> project(int keep) const {
        std::vector<Row> rows = rows_;
        for (int v = vars_ - 1; v >= keep; --v) {
            auto next = eliminate(rows, v);
            require(bool(next), "InternalError", "projection of infeasible system");
            rows = std::move(*next);
        }
        std::vector<std::tuple<QVec, Rat, bool>> out;
        for (const Row& r : rows) {
            QVec a(r.a.begin(), r.a.begin() + keep);
            out.emplace_back(std::move(a), r.b, r.strict);
        }
        return out;
    }

private:
    struct Row {
        QVec a;
        Rat b;
        bool strict = false;
    };

    static bool check_constants(const std::vector<Row>& rows) {
        for (const Row& r : rows) {
            if (r.b < 0) return false;
            if (r.strict && r.b == 0) return false;
        }
        return true;
    }

    // Normalize to primitive integer coefficients for cheap deduplication.
    static void normalize(Row& r) {
        Int l(1);
        for (const Rat& x : r.a) l = int_lcm(l, rat_den(x));
        l = int_lcm(l, rat_den(r.b));
        Int g(0);
        for (const Rat& x : r.a) g = int_gcd(g, int_abs(rat_num(x) * (l / rat_den(x))));
        g = int_gcd(g, int_abs(rat_num(r.b) * (l / rat_den(r.b))));
        if (g == 0) return;
        Rat f = Rat(l, g);
        for (Rat& x : r.a) x *= f;
        r.b *= f;
    }

    // nullopt signals proven infeasibility.
    static std::optional<std::vector<Row>> eliminate(const std::vector<Row>& rows, int v) {
        std::vector<const Row*> pos, neg;
        std::vector<Row> out;
        for (const Row& r : rows) {
            int s = sgn(r.a[size_t(v)]);
            if (s > 0) pos.push_back(&r);
            else if (s < 0) neg.push_back(&r);
            else out.push_back(r);
        }
        for (const Row* p : pos)
            for (const Row* q : neg) {
                Row r;
                const Rat cp = p->a[size_t(v)], cq = q->a[size_t(v)];
                r.a.resize(p->a.size());
                for (size_t j = 0; j < p->a.size(); ++j)
                    r.a[j] = (-cq) * p->a[j] + cp * q->a[j];
                r.b = (-cq) * p->b + cp * q->b;
                r.strict = p->strict || q->strict;
                r.a[size_t(v)] = 0;
                if (is_zero_vec(r.a)) {
                    if (r.b < 0 || (r.strict && r.b == 0)) return std::nullopt;
                    continue;
                }
                normalize(r);
                out.push_back(std::move(r));
            }
        // Deduplicate; keep the strict variant when both occur.
        std::map<std::pair<QMat, Rat>, bool> seen;
        std::vector<Row> dedup;
        for (Row& r : out) {
            if (is_zero_vec(r.a)) {
                if (r.b < 0 || (r.strict && r.b == 0)) return std::nullopt;
                continue;
            }
            auto key = std::make_pair(QMat{r.a}, r.b);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(key, r.strict);
                dedup.push_back(std::move(r));
            } else if (r.strict && !it->second) {
                it->second = true;
                for (Row& d : dedup)
                    if (d.a == r.a && d.b == r.b) d.strict = true;
            }
        }
        return dedup;
    }

    int vars_;
    std::vector<Row> rows_;
};

} // namespace mixedcone
