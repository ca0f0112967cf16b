// mixedcone: exact mixed volumes, mixed area measures, touching spaces,
// criticality, pruning and support computations for rational polytopes and
// eps-parametrized families. One job per invocation; all I/O is JSON.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mixedcone/io.hpp"
#include "mixedcone/laws.hpp"

using namespace mixedcone;

namespace {

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

QVec parse_u(const std::string& text) {
    QVec u;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) u.push_back(parse_rat(part));
    require(!u.empty(), "ParseError", "empty direction");
    return u;
}

std::vector<QPolytope> parse_tuple(const json& j, const char* key = "tuple") {
    std::vector<QPolytope> out;
    for (const auto& p : j.at(key)) out.push_back(qpolytope_from_json(p));
    require(!out.empty(), "ParseError", "empty polytope tuple");
    return out;
}

std::vector<GeneratingMeasure> parse_measures(const json& j) {
    std::vector<GeneratingMeasure> out;
    for (const auto& m : j.at("measures")) out.push_back(generating_measure_from_json(m));
    require(!out.empty(), "ParseError", "empty measure tuple");
    return out;
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::ios_base::failure("cannot open output file: " + out_path);
        out << doc.dump(2) << "\n";
    }
}

struct Options {
    std::string input, u_text, out, law;
    uint64_t seed = 0;
    int k = 0;
    std::string csq;
};

void add_common(CLI::App* cmd, Options& opt, bool needs_input, bool needs_u) {
    auto* in = cmd->add_option("--input", opt.input, "input JSON file");
    if (needs_input) in->required();
    auto* u = cmd->add_option("--u", opt.u_text, "direction, rational components 'x,y,z'");
    if (needs_u) u->required();
    cmd->add_option("--out", opt.out, "output path (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mixed volumes and mixed area measures of polytopes"};
    app.require_subcommand(1);
    Options opt;

    auto* mv = app.add_subcommand("mv", "mixed volume of an n-tuple");
    add_common(mv, opt, true, false);
    auto* sam = app.add_subcommand("sam", "mixed area measure of an (n-1)-tuple");
    add_common(sam, opt, true, false);
    auto* ext = app.add_subcommand("ext", "C-extreme certification at a direction");
    add_common(ext, opt, true, true);
    auto* supp = app.add_subcommand("supp", "support membership of a direction");
    add_common(supp, opt, true, true);
    auto* ts = app.add_subcommand("ts", "touching space and normal cone of a polytope");
    add_common(ts, opt, true, true);
    auto* cusp_cmd = app.add_subcommand("cusp", "maximal squared cusp constant");
    add_common(cusp_cmd, opt, true, true);
    cusp_cmd->add_option("--csq", opt.csq, "optional c^2 in (0,1] to test");
    auto* crit = app.add_subcommand("crit", "criticality classification of subspaces");
    add_common(crit, opt, true, false);
    auto* sw = app.add_subcommand("switch", "switching decomposition");
    add_common(sw, opt, true, true);
    auto* prune_cmd = app.add_subcommand("prune", "one pruning step of a family");
    add_common(prune_cmd, opt, true, true);
    auto* wit = app.add_subcommand("witness", "prune to the fixpoint witness");
    add_common(wit, opt, true, true);
    auto* afi = app.add_subcommand("afi", "Alexandrov-Fenchel gap");
    add_common(afi, opt, true, false);
    auto* red = app.add_subcommand("reduce", "reduction formula check");
    add_common(red, opt, true, false);
    red->add_option("--k", opt.k, "number of leading bodies inside E");
    auto* check = app.add_subcommand("check", "run a named property suite");
    check->add_option("--law", opt.law, "law name")->required();
    check->add_option("--seed", opt.seed, "generator seed (default 0)");
    check->add_option("--out", opt.out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        json doc;
        if (mv->parsed()) {
            auto tuple = parse_tuple(load_input(opt.input));
            int n = tuple[0].ambient();
            auto rep = mixed_volume_report(tuple, n);
            doc = json{{"value", rat_str(rep.value)},
                       {"tuple_fingerprint", rep.tuple_fingerprint},
                       {"measure_evaluations", rep.stats.measure_evaluations},
                       {"recursion_depth", rep.stats.max_depth}};
        } else if (sam->parsed()) {
            auto tuple = parse_tuple(load_input(opt.input));
            int n = tuple[0].ambient();
            doc = to_json(mixed_area_measure(tuple, n));
        } else if (ext->parsed()) {
            auto measures = parse_measures(load_input(opt.input));
            doc = to_json(certify_extreme(measures, parse_u(opt.u_text)));
        } else if (supp->parsed()) {
            auto measures = parse_measures(load_input(opt.input));
            doc = to_json(supp_membership(measures, parse_u(opt.u_text)));
        } else if (ts->parsed()) {
            auto p = qpolytope_from_json(load_input(opt.input).at("polytope"));
            auto t = touching_space_polytope(p, parse_u(opt.u_text));
            json gens = json::array();
            for (const auto& g : t.normal_cone.generators) gens.push_back(to_json(g));
            doc = json{{"ts", to_json(t.ts)},
                       {"normal_cone",
                        json{{"generators", gens},
                             {"lineality", to_json(t.normal_cone.lineality)}}},
                       {"face", json{{"vertex_indices", t.face.vidx}}}};
        } else if (cusp_cmd->parsed()) {
            auto p = qpolytope_from_json(load_input(opt.input).at("polytope"));
            auto r = cusp(p, parse_u(opt.u_text));
            doc = to_json(r);
            if (!opt.csq.empty()) doc["has_cusp"] = r.has_cusp(parse_rat(opt.csq));
        } else if (crit->parsed()) {
            json j = load_input(opt.input);
            SubspaceTuple tuple;
            int n = j.at("ambient").get<int>();
            for (const auto& s : j.at("subspaces")) tuple.push_back(subspace_from_json(s, n));
            doc = to_json(classify(tuple));
        } else if (sw->parsed()) {
            json j = load_input(opt.input);
            QVec u = parse_u(opt.u_text);
            int n = int(u.size());
            SubspaceTuple t, r;
            for (const auto& s : j.at("T")) t.push_back(subspace_from_json(s, n));
            for (const auto& s : j.at("R")) r.push_back(subspace_from_json(s, n));
            doc = to_json(switching(t, r, u));
        } else if (prune_cmd->parsed()) {
            auto fam = family_from_json(load_input(opt.input).at("family"));
            PruneStepInfo info;
            auto next = prune_step(fam, parse_u(opt.u_text), &info);
            doc = json{{"step", to_json(info)}, {"family", to_json(next)}};
        } else if (wit->parsed()) {
            auto fam = family_from_json(load_input(opt.input).at("family"));
            doc = to_json(prune_star_witness(fam, parse_u(opt.u_text)));
        } else if (afi->parsed()) {
            json j = load_input(opt.input);
            auto k = qpolytope_from_json(j.at("K"));
            auto l = qpolytope_from_json(j.at("L"));
            std::vector<QPolytope> rest;
            if (j.contains("C"))
                for (const auto& p : j.at("C")) rest.push_back(qpolytope_from_json(p));
            doc = to_json(afi_gap(k, l, rest, k.ambient()));
        } else if (red->parsed()) {
            json j = load_input(opt.input);
            auto tuple = parse_tuple(j);
            int n = tuple[0].ambient();
            int k = j.contains("k") ? j.at("k").get<int>() : opt.k;
            Subspace e = subspace_from_json(j.at("E"), n);
            doc = to_json(reduction_check(tuple, n, k, e));
        } else if (check->parsed()) {
            LawResult r = run_named_law(opt.law, opt.seed);
            doc = json{{"law", r.law},
                       {"pass", r.pass},
                       {"cases", r.cases},
                       {"message", r.message},
                       {"seconds", r.seconds}};
            emit(doc, opt.out);
            return r.pass ? 0 : 1;
        }
        emit(doc, opt.out);
        return 0;
    } catch (const domain_error& e) {
        std::cout << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cout << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cout << json{{"error", "IOError"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
