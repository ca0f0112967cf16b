#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "mixedcone/linalg.hpp"

namespace mixedcone {

using SubspaceTuple = std::vector<Subspace>;

constexpr int kMaxCritTuple = 12; // 2^l exhaustive subset enumeration cap

struct CritReport {
    bool semicritical = false;
    bool critical = false;
    bool supercritical = false;
    // Subset realizing the minimal dim - size margin (empty for the empty
    // tuple); doubles as the violating subset for failed verdicts.
    std::vector<int> witness_subset;
    int margin = 0; // min over nonempty subsets of dim span - size
};

// Exhaustive subset classification: a tuple is semicritical iff every
// nonempty subtuple spans at least its size (+1 critical, +2 supercritical).
inline CritReport classify(const SubspaceTuple& t) {
    const int l = int(t.size());
    require(l <= kMaxCritTuple, "TupleTooLarge",
            "criticality enumeration capped at 12 entries");
    CritReport r;
    if (l == 0) { // the empty tuple is supercritical
        r.semicritical = r.critical = r.supercritical = true;
        r.margin = 1 << 20;
        return r;
    }
    int best = 1 << 20;
    for (unsigned mask = 1; mask < (1u << l); ++mask) {
        QMat rows;
        std::vector<int> idx;
        for (int i = 0; i < l; ++i)
            if (mask & (1u << i)) {
                idx.push_back(i);
                for (const auto& b : t[size_t(i)].basis()) rows.push_back(b);
            }
        int margin = rank_of(rows) - int(idx.size());
        if (margin < best) {
            best = margin;
            r.witness_subset = idx;
        }
    }
    r.margin = best;
    r.semicritical = best >= 0;
    r.critical = best >= 1;
    r.supercritical = best >= 2;
    return r;
}

inline bool semicritical(const SubspaceTuple& t) { return classify(t).semicritical; }

// Independent-selection oracle: pairs (x_i, y_i) in A_i^2 with
// linearly independent differences, found by depth-first search with rank
// pruning; exists iff the pspan tuple is semicritical.
struct Selection {
    std::vector<std::pair<QVec, QVec>> pairs;
};

inline std::optional<Selection> independent_selection(
    const std::vector<std::vector<QVec>>& point_sets) {
    const int l = int(point_sets.size());
    std::vector<std::pair<QVec, QVec>> chosen;
    QMat diffs;
    std::function<bool(int)> dfs = [&](int depth) {
        if (depth == l) return true;
        const auto& pts = point_sets[size_t(depth)];
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < pts.size(); ++j) {
                if (i == j) continue;
                QVec d = vsub(pts[j], pts[i]);
                if (is_zero_vec(d)) continue;
                diffs.push_back(d);
                if (rank_of(diffs) == depth + 1) {
                    chosen.emplace_back(pts[i], pts[j]);
                    if (dfs(depth + 1)) return true;
                    chosen.pop_back();
                }
                diffs.pop_back();
            }
        return false;
    };
    if (!dfs(0)) return std::nullopt;
    return Selection{std::move(chosen)};
}

// ---------------------------------------------------------------------------
// Switching: given a semicritical tuple T and nontrivial R inside u^perp, find
// index sets {} != I <= J <= [n-1] with dim span R_I = |I| and R_J + T_{J^c}
// semicritical. J grows greedily in index order (inclusion-maximality follows
// from monotonicity of semicriticality under entrywise supersets); I is the
// first subcritical subset in size-then-lex order, hence inclusion-minimal.

struct SwitchingResult {
    std::vector<int> i_set, j_set; // 0-based indices
    Subspace e;                    // span of the I-indexed sum subspaces
};

inline SwitchingResult switching(const SubspaceTuple& ts, const SubspaceTuple& rs,
                                 const QVec& u) {
    require(!is_zero_vec(u), "ZeroDirection", "switching needs u != 0");
    const int n = int(u.size());
    const int l = n - 1;
    require(int(ts.size()) == l && int(rs.size()) == l, "SizeMismatch",
            "switching needs two (n-1)-tuples");
    Subspace uperp = Subspace::span(n, QMat{u}).orthocomplement();
    for (const auto& s : ts)
        require(uperp.contains(s), "SubspaceOutsideUperp", "T_i must lie in u^perp");
    for (const auto& s : rs) {
        require(uperp.contains(s), "SubspaceOutsideUperp", "R_i must lie in u^perp");
        require(s.dim() >= 1, "TrivialSubspace", "every R_i must be nontrivial");
    }
    require(semicritical(ts), "NotSemicritical", "T must be semicritical");

    SubspaceTuple sums;
    for (int i = 0; i < l; ++i) sums.push_back(ts[size_t(i)].sum(rs[size_t(i)]));

    auto mixed = [&](unsigned rmask, const SubspaceTuple& fallback) {
        SubspaceTuple t;
        for (int i = 0; i < l; ++i)
            t.push_back((rmask & (1u << i)) ? rs[size_t(i)] : fallback[size_t(i)]);
        return t;
    };

    unsigned j = 0;
    for (int i = 0; i < l; ++i) {
        unsigned cand = j | (1u << i);
        if (semicritical(mixed(cand, sums))) j = cand;
    }
    // Maximality audit (greedy order already guarantees it).
    for (int i = 0; i < l; ++i)
        if (!(j & (1u << i)))
            require(!semicritical(mixed(j | (1u << i), sums)), "InternalError",
                    "greedy J not inclusion-maximal");

    // I: first subset (size, then lex) with R_{I cap J} + S_{I \ J} not
    // critical.
    auto icand_tuple = [&](unsigned imask) {
        SubspaceTuple t;
        for (int i = 0; i < l; ++i) {
            if (!(imask & (1u << i))) continue;
            t.push_back((j & (1u << i)) ? rs[size_t(i)] : sums[size_t(i)]);
        }
        return t;
    };
    std::optional<unsigned> isel;
    for (int size = 1; size <= l && !isel; ++size) {
        std::vector<unsigned> masks;
        for (unsigned m = 1; m < (1u << l); ++m)
            if (__builtin_popcount(m) == size) masks.push_back(m);
        std::sort(masks.begin(), masks.end()); // numeric order = lex on index sets
        for (unsigned m : masks)
            if (!classify(icand_tuple(m)).critical) {
                isel = m;
                break;
            }
    }
    require(bool(isel), "InternalError", "no subcritical subset found");

    SwitchingResult out;
    for (int i = 0; i < l; ++i) {
        if (*isel & (1u << i)) out.i_set.push_back(i);
        if (j & (1u << i)) out.j_set.push_back(i);
    }
    QMat erows;
    for (const auto& s : icand_tuple(*isel))
        for (const auto& b : s.basis()) erows.push_back(b);
    out.e = Subspace::span(n, erows);

    // Re-verify the postconditions from scratch.
    require(std::includes(out.j_set.begin(), out.j_set.end(), out.i_set.begin(),
                          out.i_set.end()),
            "InternalError", "switching: I not contained in J");
    QMat ri_rows;
    for (int i : out.i_set)
        for (const auto& b : rs[size_t(i)].basis()) ri_rows.push_back(b);
    require(rank_of(ri_rows) == int(out.i_set.size()), "InternalError",
            "switching: R_I does not span |I| dimensions");
    require(out.e.dim() == int(out.i_set.size()), "InternalError",
            "switching: certificate subspace has wrong dimension");
    require(semicritical(mixed(j, ts)), "InternalError",
            "switching: R_J + T_{J^c} not semicritical");
    return out;
}

} // namespace mixedcone
