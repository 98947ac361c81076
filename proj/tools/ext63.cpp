#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ext63/ext63.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

ext63::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ext63::SyntaxError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ext63::parse_graph(ss.str());
}

ordered_json graph_json(const ext63::Graph& g) {
    ordered_json j;
    j["n"] = g.n();
    j["m"] = g.m();
    j["edges"] = ordered_json::array();
    for (const auto& [u, v] : g.edges())
        j["edges"].push_back({u, v});
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void emit_graph(const ext63::Graph& g, const std::string& format) {
    if (format == "edgelist")
        std::cout << ext63::serialize_graph(g);
    else
        emit(graph_json(g));
}

int orbit_budget_from_env() {
    if (const char* env = std::getenv("EXT63_BUDGET")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (...) {
            throw ext63::SyntaxError("EXT63_BUDGET must be an integer");
        }
    }
    return ext63::kDefaultOrbitBudget;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction of graph isomorphism to an extended chordal class, "
                 "with partition-based testing and a brute-force oracle"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string mode_name = "marked";
    std::string gen_kind, out_dir;
    std::vector<std::string> files;
    int n = 0, samples = 500, jobs = 1;
    uint64_t seed = 1;
    bool exhaustive = false;
    double prob = 0.25;

    auto* gen = app.add_subcommand("gen", "generate a graph (path, cycle, clique, random, "
                                          "or a forbidden pattern by name)");
    gen->add_option("kind", gen_kind)->required();
    gen->add_option("--n", n);
    gen->add_option("--seed", seed);
    gen->add_option("--p", prob, "edge probability for random");
    gen->add_option("--format", format)->check(CLI::IsMember({"json", "edgelist"}));

    auto* chordal = app.add_subcommand("chordal-check", "chordality verdict with certificate");
    chordal->add_option("file", files)->required()->expected(1);

    auto* booth = app.add_subcommand("booth", "subdivision-plus-clique reduction");
    booth->add_option("file", files)->required()->expected(1);
    booth->add_option("--format", format)->check(CLI::IsMember({"json", "edgelist"}));

    auto* eliminate = app.add_subcommand("eliminate", "reduce to the extended class; "
                                                      "prints the reduction trace");
    eliminate->add_option("file", files)->required()->expected(1);
    eliminate->add_option("--format", format)->check(CLI::IsMember({"json", "edgelist"}));

    auto* partition = app.add_subcommand("partition", "coarsest regular simplicial partition");
    partition->add_option("file", files)->required()->expected(1);

    auto* classify = app.add_subcommand("classify-cells", "star/spider structure of every "
                                                          "adjacent cell pair");
    classify->add_option("file", files)->required()->expected(1);

    auto* orbits = app.add_subcommand("orbits", "automorphism orbits (brute force)");
    orbits->add_option("file", files)->required()->expected(1);

    auto* iso = app.add_subcommand("iso", "isomorphism test through the reduction pipeline");
    iso->add_option("files", files)->required()->expected(2);
    iso->add_option("--mode", mode_name)->check(CLI::IsMember({"marked", "alignment"}));

    auto* validate = app.add_subcommand("validate", "compare both pipeline modes against the "
                                                    "brute-force oracle over a corpus");
    validate->add_option("--n", n)->required();
    validate->add_flag("--exhaustive", exhaustive);
    validate->add_option("--seed", seed);
    validate->add_option("--samples", samples);
    validate->add_option("--jobs", jobs);
    validate->add_option("--p", prob, "edge probability for random corpora");
    validate->add_option("--out", out_dir, "directory for counterexample files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        std::ostringstream msg;
        app.exit(e, msg, msg);
        std::cerr << msg.str();
        return kExitUsage;
    }

    try {
        ext63::assert_catalog_valid();

        if (gen->parsed()) {
            ext63::Graph g;
            if (auto kind = ext63::kind_from_name(gen_kind)) {
                g = ext63::catalog()[static_cast<size_t>(*kind)].pattern;
            } else if (gen_kind == "path") {
                g = ext63::make_path(n);
            } else if (gen_kind == "cycle") {
                g = ext63::make_cycle(n);
            } else if (gen_kind == "clique") {
                g = ext63::make_clique(n);
            } else if (gen_kind == "random") {
                ext63::Rng rng(seed);
                g = ext63::random_graph(n, prob, rng);
            } else {
                std::cerr << "unknown generator: " << gen_kind << "\n";
                return kExitUsage;
            }
            emit_graph(g, format);
            return kExitOk;
        }

        if (chordal->parsed()) {
            const ext63::ChordalityVerdict v = ext63::check_chordal(load_graph(files[0]));
            ordered_json j;
            j["chordal"] = v.chordal;
            if (v.chordal)
                j["peo"] = v.peo;
            else
                j["hole"] = v.hole;
            emit(j);
            return v.chordal ? kExitOk : kExitNegative;
        }

        if (booth->parsed()) {
            emit_graph(ext63::booth_reduce(load_graph(files[0])).graph, format);
            return kExitOk;
        }

        if (eliminate->parsed()) {
            auto [mg, trace] = ext63::to_extended(load_graph(files[0]));
            if (format == "edgelist")
                std::cout << ext63::serialize_graph(mg.graph);
            else
                emit(ext63::trace_to_json(trace));
            return trace.final_member ? kExitOk : kExitNegative;
        }

        if (partition->parsed() || classify->parsed()) {
            const ext63::Graph g = load_graph(files[0]);
            const ext63::ChordalityVerdict v = ext63::check_chordal(g);
            if (!v.chordal) {
                ordered_json j;
                j["chordal"] = false;
                j["hole"] = v.hole;
                emit(j);
                return kExitNegative;
            }
            const ext63::OrderedPartition p = ext63::coarsest_regular_simplicial_partition(g);
            ordered_json j;
            j["cells"] = ext63::partition_to_json(p);
            if (partition->parsed()) {
                j["signature"] = ext63::signature_to_json(ext63::partition_signature(g, p));
            } else {
                j["pairs"] = ordered_json::array();
                const auto sig = ext63::partition_signature(g, p);
                for (const auto& [i, jj, c] : sig.pair_kinds) {
                    ordered_json e;
                    e["i"] = i;
                    e["j"] = jj;
                    e["structure"] = ext63::cell_pair_to_json(c);
                    j["pairs"].push_back(std::move(e));
                }
            }
            emit(j);
            return kExitOk;
        }

        if (orbits->parsed()) {
            const ext63::OrbitPartition orb =
                ext63::automorphism_orbits(load_graph(files[0]), orbit_budget_from_env());
            ordered_json j;
            j["orbits"] = ordered_json::array();
            for (const auto& cell : orb.cells)
                j["orbits"].push_back(cell);
            emit(j);
            return kExitOk;
        }

        if (iso->parsed()) {
            const ext63::IsoMode mode =
                mode_name == "alignment" ? ext63::IsoMode::Alignment : ext63::IsoMode::Marked;
            const ext63::IsoDecision d = ext63::iso_test(load_graph(files[0]),
                                                         load_graph(files[1]), mode);
            emit(ext63::decision_to_json(d));
            switch (d.verdict) {
            case ext63::IsoDecision::Verdict::Isomorphic: return kExitOk;
            case ext63::IsoDecision::Verdict::NotIsomorphic: return kExitNegative;
            case ext63::IsoDecision::Verdict::Inconclusive: return kExitGuard;
            }
        }

        if (validate->parsed()) {
            ext63::CorpusSpec spec;
            spec.exhaustive = exhaustive;
            spec.n = n;
            spec.samples = samples;
            spec.seed = seed;
            spec.edge_probability = prob;
            spec.jobs = jobs;
            spec.orbit_budget = orbit_budget_from_env();
            spec.counterexample_dir = out_dir;
            emit(ext63::validate_corpus(spec).to_json());
            return kExitOk;
        }
    } catch (const ext63::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const ext63::RoundLimitExceeded& e) {
        std::cerr << "round limit exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const ext63::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
