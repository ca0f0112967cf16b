// Python bindings: the main operations, taking and returning JSON documents
// (as strings) in the same formats the CLI uses.

#include <pybind11/pybind11.h>

#include "mixedcone/io.hpp"
#include "mixedcone/laws.hpp"

namespace py = pybind11;
using namespace mixedcone;

namespace {

json parse(const std::string& text) { return json::parse(text); }

QVec direction(const std::string& text) {
    QVec u;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) u.push_back(parse_rat(part));
    return u;
}

std::vector<QPolytope> tuple_of(const json& j) {
    std::vector<QPolytope> out;
    for (const auto& p : j) out.push_back(qpolytope_from_json(p));
    return out;
}

std::vector<GeneratingMeasure> measures_of(const json& j) {
    std::vector<GeneratingMeasure> out;
    for (const auto& m : j) out.push_back(generating_measure_from_json(m));
    return out;
}

} // namespace

PYBIND11_MODULE(_mixedcone, m) {
    m.doc() = "exact mixed volumes, mixed area measures and support machinery "
              "for rational polytopes";

    m.def("mixed_volume", [](const std::string& tuple_json) {
        auto tuple = tuple_of(parse(tuple_json));
        return rat_str(mixed_volume(tuple, tuple.at(0).ambient()));
    });

    m.def("volume_oracle", [](const std::string& tuple_json) {
        auto tuple = tuple_of(parse(tuple_json));
        return rat_str(volume_oracle(tuple, tuple.at(0).ambient()));
    });

    m.def("mixed_area_measure", [](const std::string& tuple_json) {
        auto tuple = tuple_of(parse(tuple_json));
        return to_json(mixed_area_measure(tuple, tuple.at(0).ambient())).dump();
    });

    m.def("afi_gap", [](const std::string& k_json, const std::string& l_json,
                        const std::string& rest_json) {
        auto k = qpolytope_from_json(parse(k_json));
        auto l = qpolytope_from_json(parse(l_json));
        auto rest = tuple_of(parse(rest_json));
        return to_json(afi_gap(k, l, rest, k.ambient())).dump();
    });

    m.def("touching_space", [](const std::string& poly_json, const std::string& u) {
        auto p = qpolytope_from_json(parse(poly_json));
        auto t = touching_space_polytope(p, direction(u));
        json gens = json::array();
        for (const auto& g : t.normal_cone.generators) gens.push_back(to_json(g));
        return json{{"ts", to_json(t.ts)},
                    {"normal_cone", json{{"generators", gens},
                                         {"lineality", to_json(t.normal_cone.lineality)}}}}
            .dump();
    });

    m.def("cusp", [](const std::string& poly_json, const std::string& u) {
        return to_json(cusp(qpolytope_from_json(parse(poly_json)), direction(u))).dump();
    });

    m.def("classify", [](const std::string& doc_json) {
        json j = parse(doc_json);
        int n = j.at("ambient").get<int>();
        SubspaceTuple tuple;
        for (const auto& s : j.at("subspaces")) tuple.push_back(subspace_from_json(s, n));
        return to_json(classify(tuple)).dump();
    });

    m.def("switching", [](const std::string& doc_json, const std::string& u) {
        json j = parse(doc_json);
        QVec uu = direction(u);
        SubspaceTuple t, r;
        for (const auto& s : j.at("T")) t.push_back(subspace_from_json(s, int(uu.size())));
        for (const auto& s : j.at("R")) r.push_back(subspace_from_json(s, int(uu.size())));
        return to_json(switching(t, r, uu)).dump();
    });

    m.def("certify_extreme", [](const std::string& measures_json, const std::string& u) {
        return to_json(certify_extreme(measures_of(parse(measures_json)), direction(u)))
            .dump();
    });

    m.def("supp_membership", [](const std::string& measures_json, const std::string& u) {
        return to_json(supp_membership(measures_of(parse(measures_json)), direction(u)))
            .dump();
    });

    m.def("prune_witness", [](const std::string& family_json, const std::string& u) {
        auto fam = family_from_json(parse(family_json));
        return to_json(prune_star_witness(fam, direction(u))).dump();
    });

    m.def("reduction_check", [](const std::string& doc_json) {
        json j = parse(doc_json);
        auto tuple = tuple_of(j.at("tuple"));
        int n = tuple.at(0).ambient();
        Subspace e = subspace_from_json(j.at("E"), n);
        return to_json(reduction_check(tuple, n, j.at("k").get<int>(), e)).dump();
    });

    m.def("run_law", [](const std::string& name, uint64_t seed) {
        LawResult r = run_named_law(name, seed);
        return json{{"law", r.law},
                    {"pass", r.pass},
                    {"cases", r.cases},
                    {"message", r.message},
                    {"seconds", r.seconds}}
            .dump();
    });

    py::register_exception<domain_error>(m, "DomainError");
}
