#pragma once

#include <json.hpp>

#include <string>

#include "mixedcone/polyoid.hpp"

namespace mixedcone {

using json = nlohmann::json;

// Rationals travel as "p/q" strings ("p" when q = 1); eps scalars as arrays
// of such strings, lowest degree first.

inline json to_json(const Rat& q) { return rat_str(q); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    require(j.is_string(), "ParseError", "expected a rational literal");
    return parse_rat(j.get<std::string>());
}

inline json to_json(const Eps& e) {
    json arr = json::array();
    for (int k = 0; k <= e.degree(); ++k) arr.push_back(rat_str(e.coeff(k)));
    if (arr.empty()) arr.push_back("0");
    return arr;
}

inline Eps eps_from_json(const json& j) {
    if (!j.is_array()) return Eps(rat_from_json(j));
    std::vector<Rat> cs;
    for (const auto& c : j) cs.push_back(rat_from_json(c));
    return Eps::from_coeffs(std::move(cs));
}

inline json to_json(const QVec& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(rat_str(x));
    return arr;
}

inline json to_json(const IVec& v) {
    json arr = json::array();
    for (const auto& x : v) {
        require(x >= std::numeric_limits<long long>::min() &&
                    x <= std::numeric_limits<long long>::max(),
                "Overflow", "direction component exceeds the JSON integer range");
        arr.push_back(x.convert_to<long long>());
    }
    return arr;
}

inline json to_json(const EVec& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(to_json(x));
    return arr;
}

inline QVec qvec_from_json(const json& j) {
    require(j.is_array(), "ParseError", "expected a vector");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

inline EVec evec_from_json(const json& j) {
    require(j.is_array(), "ParseError", "expected a vector");
    EVec v;
    for (const auto& x : j) v.push_back(eps_from_json(x));
    return v;
}

// Polytope documents: { "dim": n, "vertices": [[coord, ...], ...] }.
inline json to_json(const QPolytope& p) {
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back(to_json(v));
    return json{{"dim", p.ambient()}, {"vertices", verts}};
}

inline json to_json(const EPolytope& p) {
    json verts = json::array();
    for (const auto& v : p.vertices()) verts.push_back(to_json(v));
    return json{{"dim", p.ambient()}, {"vertices", verts}};
}

inline bool json_polytope_is_eps(const json& j) {
    for (const auto& v : j.at("vertices"))
        for (const auto& c : v)
            if (c.is_array()) return true;
    return false;
}

inline QPolytope qpolytope_from_json(const json& j) {
    int n = j.at("dim").get<int>();
    std::vector<QVec> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(qvec_from_json(v));
    return QPolytope::from_points(n, std::move(pts));
}

inline EPolytope epolytope_from_json(const json& j) {
    int n = j.at("dim").get<int>();
    std::vector<EVec> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(evec_from_json(v));
    return EPolytope::from_points(n, std::move(pts));
}

// Families keep their trajectory list as given (no canonicalization).
inline PolytopeFamily family_from_json(const json& j) {
    int n = j.at("dim").get<int>();
    std::vector<EVec> trajs;
    for (const auto& v : j.at("vertices")) trajs.push_back(evec_from_json(v));
    return PolytopeFamily::make(n, std::move(trajs));
}

inline json to_json(const PolytopeFamily& f) {
    json verts = json::array();
    for (const auto& t : f.trajectories) verts.push_back(to_json(t));
    return json{{"dim", f.n}, {"vertices", verts}};
}

// Measure documents: { "dim": n, "atoms": [ { "w": [int,...], "rho": "p/q" } ] }.
inline json to_json(const AtomicAreaMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms)
        atoms.push_back(json{{"w", to_json(a.w)}, {"rho", rat_str(a.rho)}});
    return json{{"dim", m.n}, {"atoms", atoms}};
}

inline AtomicAreaMeasure measure_from_json(const json& j) {
    AtomicAreaMeasure m;
    m.n = j.at("dim").get<int>();
    for (const auto& a : j.at("atoms")) {
        IVec w;
        for (const auto& x : a.at("w")) w.push_back(Int(x.get<long long>()));
        m.atoms.push_back({std::move(w), rat_from_json(a.at("rho"))});
    }
    sort_atoms(m);
    return m;
}

// Generating measures: { "atoms": [ { "weight": "p/q", "body": Polytope } ],
// "families": [ { "family": PolytopeEps, "schedule": "geometric" } ] }.
inline GeneratingMeasure generating_measure_from_json(const json& j) {
    GeneratingMeasure mu;
    int n = -1;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms")) {
            QPolytope body = qpolytope_from_json(a.at("body"));
            n = body.ambient();
            mu.atoms.push_back({rat_from_json(a.at("weight")), std::move(body)});
        }
    if (j.contains("families"))
        for (const auto& f : j.at("families")) {
            PolytopeFamily fam = family_from_json(f.at("family"));
            n = fam.n;
            std::string sched = f.value("schedule", std::string("geometric"));
            mu.families.push_back({std::move(fam), sched});
        }
    require(n > 0, "ParseError", "generating measure without atoms");
    mu.n = n;
    mu.validate();
    return mu;
}

inline json to_json(const GeneratingMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms)
        atoms.push_back(json{{"weight", rat_str(a.weight)}, {"body", to_json(a.body)}});
    json families = json::array();
    for (const auto& f : mu.families)
        families.push_back(json{{"family", to_json(f.family)}, {"schedule", f.schedule}});
    return json{{"atoms", atoms}, {"families", families}};
}

inline json to_json(const Subspace& s) {
    json basis = json::array();
    for (const auto& b : s.basis()) basis.push_back(to_json(b));
    return json{{"ambient", s.ambient()}, {"basis", basis}};
}

inline Subspace subspace_from_json(const json& j, int ambient) {
    QMat rows;
    for (const auto& v : j) rows.push_back(qvec_from_json(v));
    return Subspace::span(ambient, rows);
}

inline json to_json(const CritReport& r) {
    return json{{"semicritical", r.semicritical},
                {"critical", r.critical},
                {"supercritical", r.supercritical},
                {"witness_subset", r.witness_subset},
                {"margin", r.margin}};
}

inline json to_json(const CuspReport& r) {
    json j{{"max_cusp_sq", rat_str(r.max_cusp_sq)}};
    j["apex"] = r.apex ? to_json(*r.apex) : json(nullptr);
    return j;
}

inline json to_json(const SwitchingResult& r) {
    std::vector<int> i1, j1; // reports use 1-based indices
    for (int i : r.i_set) i1.push_back(i + 1);
    for (int i : r.j_set) j1.push_back(i + 1);
    return json{{"I", i1}, {"J", j1}, {"E", to_json(r.e)}};
}

inline json to_json(const PruneStepInfo& s) {
    std::vector<int> sel;
    for (int i : s.selected) sel.push_back(i + 1);
    return json{{"I", sel}, {"i0", s.base + 1}, {"m", s.rescale_order}};
}

inline json to_json(const PruneTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    return json{{"steps", steps},
                {"effective_steps", t.effective_steps},
                {"fixpoint", to_json(t.fixpoint)},
                {"witness", to_json(t.witness)}};
}

inline json to_json(const AfiReport& r) {
    return json{{"lhs", rat_str(r.lhs)}, {"rhs", rat_str(r.rhs)}, {"gap", rat_str(r.gap)}};
}

inline json to_json(const ReductionReport& r) {
    json j{{"ok", r.ok}, {"degenerate", r.degenerate}};
    if (r.volume_checked) {
        j["volume_lhs"] = rat_str(r.volume_lhs);
        j["volume_rhs"] = rat_str(r.volume_rhs);
    }
    if (r.measure_checked) {
        json pairs = json::array();
        for (const auto& p : r.atom_pairs)
            pairs.push_back(json{{"w", to_json(p.w)},
                                 {"lhs", rat_str(p.lhs)},
                                 {"rhs", rat_str(p.rhs)}});
        j["atoms"] = pairs;
    }
    return j;
}

inline json to_json(const LimitSupportSet& s) {
    json exact = json::array();
    for (const auto& d : s.exact_directions) exact.push_back(to_json(d));
    json branches = json::array();
    for (const auto& b : s.branches)
        branches.push_back(json{{"trajectory", to_json(b.trajectory)},
                                {"limit", to_json(b.limit)},
                                {"eventually_positive", b.eventually_positive}});
    return json{{"exact_directions", exact}, {"branches", branches}};
}

inline json to_json(const ExtremeReport& r) {
    const char* v = r.verdict == ExtremeVerdict::EXTREME      ? "EXTREME"
                    : r.verdict == ExtremeVerdict::NOT_EXTREME ? "NOT_EXTREME"
                                                               : "UNKNOWN";
    json known = json::array();
    for (const auto& s : r.known) known.push_back(to_json(s));
    return json{{"verdict", v},
                {"known_subspaces", known},
                {"unknown_entries", r.unknown_entries},
                {"trivial_entries", r.trivial_entries},
                {"reason", r.reason}};
}

inline json to_json(const SuppReport& r) {
    return json{{"verdict", r.verdict == SuppVerdict::IN ? "IN" : "NOT_IN"},
                {"via", r.via},
                {"support", to_json(r.support)}};
}

} // namespace mixedcone
