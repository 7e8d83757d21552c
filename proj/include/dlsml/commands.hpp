#pragma once

// Subcommand implementations behind the dlsml command-line tool. Every
// command is a function of its RunConfig: reruns rewrite identical bytes.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dlsml/classifiers/protocol.hpp"
#include "dlsml/core/errors.hpp"
#include "dlsml/core/rng.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/pso.hpp"
#include "dlsml/resource_table.hpp"
#include "dlsml/synth.hpp"
#include "dlsml/unpredictability.hpp"

namespace dlsml::cli {

struct RunConfig {
    std::string subcommand;
    std::filesystem::path matches;
    std::filesystem::path snapshots;
    /// Empty selects the bundled default table.
    std::filesystem::path table;
    std::filesystem::path out = ".";
    std::uint64_t seed = 0;
    unsigned jobs = 1;

    // synth
    int n_matches = 100;
    std::optional<double> disagreement;

    // evaluate
    std::vector<ClassifierKind> kinds{kAllClassifierKinds.begin(), kAllClassifierKinds.end()};
    Hyperparameters hyper;

    // optimize (seed and jobs are taken from the fields above)
    PsoConfig pso;

    // index
    std::size_t min_matches = kDefaultMinMatches;
};

inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["subcommand"] = c.subcommand;
    j["matches"] = c.matches.generic_string();
    j["snapshots"] = c.snapshots.generic_string();
    j["table"] = c.table.empty() ? std::string("<default>") : c.table.generic_string();
    j["out"] = c.out.generic_string();
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    if (c.subcommand == "synth") {
        j["n"] = c.n_matches;
        j["disagreement"] = c.disagreement ? nlohmann::ordered_json(*c.disagreement) : nlohmann::ordered_json();
    } else if (c.subcommand == "evaluate") {
        auto& kinds = j["kinds"] = nlohmann::ordered_json::array();
        for (auto k : c.kinds) kinds.push_back(std::string(to_string(k)));
        j["nb_var_floor"] = c.hyper.naive_bayes.var_floor;
        j["nb_alpha"] = c.hyper.naive_bayes.alpha;
        j["nn_hidden"] = c.hyper.neural_net.hidden;
        j["nn_learning_rate"] = c.hyper.neural_net.learning_rate;
        j["nn_epochs"] = c.hyper.neural_net.epochs;
        j["bags"] = c.hyper.bags;
        j["rf_trees"] = c.hyper.forest.trees;
        j["rf_max_features"] = c.hyper.forest.tree.max_features;
        j["rf_min_leaf"] = c.hyper.forest.tree.min_leaf;
    } else if (c.subcommand == "optimize") {
        j["mode"] = c.pso.mode == PsoMode::PerCell ? "per-cell" : "per-column";
        j["swarm"] = c.pso.swarm_size;
        j["generations"] = c.pso.generations;
        j["c1"] = c.pso.c1;
        j["c2"] = c.pso.c2;
        j["inertia"] = c.pso.inertia;
        j["vmax"] = c.pso.v_max;
        j["unconstrained"] = !c.pso.monotone;
        j["cross_wicket"] = c.pso.cross_wicket;
    } else if (c.subcommand == "index") {
        j["min_matches"] = c.min_matches;
    }
    return j;
}

namespace detail {

inline std::filesystem::path write_output(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
    return path;
}

template <typename Fn>
std::filesystem::path write_with(const std::filesystem::path& path, Fn&& fn) {
    std::ostringstream s;
    fn(s);
    return write_output(path, s.str());
}

inline void prepare_out(const RunConfig& c, std::vector<std::filesystem::path>& written) {
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory '" + c.out.string() + "': " + ec.message());
    written.push_back(write_output(c.out / "run_config.json", to_json(c).dump(2) + "\n"));
}

inline ResourceTable load_table(const RunConfig& c) {
    return c.table.empty() ? ResourceTable::default_table() : read_table(c.table);
}

inline Dataset load_inputs(const RunConfig& c) {
    if (c.matches.empty() || c.snapshots.empty()) throw ArgumentError("--matches and --snapshots are required");
    return load_dataset(c.matches, c.snapshots);
}

}  // namespace detail

/// matches.csv and snapshots.csv from the synthetic generator.
inline std::vector<std::filesystem::path> cmd_synth(const RunConfig& c) {
    if (c.n_matches < 1) throw ArgumentError("--n must be at least 1");
    const auto table = detail::load_table(c);
    SynthOptions opts;
    opts.disagreement = c.disagreement;
    const auto data = synth_corpus(c.seed, c.n_matches, table, opts);
    std::vector<std::filesystem::path> written;
    detail::prepare_out(c, written);
    written.push_back(detail::write_with(c.out / "matches.csv", [&](auto& s) { write_matches(s, data.matches()); }));
    written.push_back(
        detail::write_with(c.out / "snapshots.csv", [&](auto& s) { write_snapshots(s, data.snapshots()); }));
    return written;
}

/// Checkpoint (table1) and range (table2) comparisons of D/L against each classifier.
inline std::vector<std::filesystem::path> cmd_evaluate(const RunConfig& c) {
    const auto table = detail::load_table(c);
    const auto data = detail::load_inputs(c);
    const auto seed = derive_seed(c.seed, "evaluate");
    const auto checkpoints =
        evaluate_protocol(data, table, checkpoint_selections(), c.kinds, seed, c.hyper, c.jobs);
    const auto ranges = evaluate_protocol(data, table, range_selections(), c.kinds, seed, c.hyper, c.jobs);

    // kind-major ordering: every kind's block lists selections in order
    auto by_kind = [&](const ProtocolResult& r) {
        std::vector<ProtocolRow> rows;
        for (auto k : c.kinds) {
            for (const auto& row : r.rows) {
                if (row.kind == k) rows.push_back(row);
            }
        }
        return rows;
    };
    std::vector<std::filesystem::path> written;
    detail::prepare_out(c, written);
    written.push_back(
        detail::write_with(c.out / "table1.csv", [&](auto& s) { write_protocol_rows(s, by_kind(checkpoints)); }));
    written.push_back(
        detail::write_with(c.out / "table2.csv", [&](auto& s) { write_protocol_rows(s, by_kind(ranges)); }));
    written.push_back(
        detail::write_with(c.out / "table1_best.csv", [&](auto& s) { write_protocol_rows(s, checkpoints.best); }));
    written.push_back(
        detail::write_with(c.out / "table2_best.csv", [&](auto& s) { write_protocol_rows(s, ranges.best); }));
    return written;
}

/// PSO re-fit of wickets 0..3 plus the base-vs-optimized accuracy comparison.
inline std::vector<std::filesystem::path> cmd_optimize(const RunConfig& c) {
    const auto base = detail::load_table(c);
    const auto data = detail::load_inputs(c);
    auto cfg = c.pso;
    cfg.seed = derive_seed(c.seed, "optimize");
    cfg.jobs = c.jobs;
    const auto result = optimize(data, base, cfg);
    const auto rows = compare_tables(data, base, result.optimized_table, comparison_selections());

    std::vector<std::filesystem::path> written;
    detail::prepare_out(c, written);
    written.push_back(detail::write_with(c.out / "optimized_table.csv",
                                         [&](auto& s) { write_table(s, result.optimized_table.grid()); }));
    written.push_back(detail::write_with(c.out / "table3.csv", [&](auto& s) { write_comparison(s, rows); }));
    written.push_back(detail::write_with(c.out / "pso_trace.csv", [&](auto& s) {
        s << "generation,best_fitness\n";
        for (std::size_t g = 0; g < result.fitness_trace.size(); ++g) s << g << ',' << result.fitness_trace[g] << '\n';
    }));
    written.push_back(detail::write_with(c.out / "pso_summary.json", [&](auto& s) {
        nlohmann::ordered_json j;
        j["baseline_fitness"] = result.baseline_fitness;
        j["optimized_fitness"] = result.optimized_fitness;
        j["reverted_to_base"] = result.reverted_to_base;
        j["table_validated"] = result.optimized_table.validated();
        s << j.dump(2) << '\n';
    }));
    return written;
}

inline std::filesystem::path index_file(const std::filesystem::path& out, Scenario s) {
    return out / ("index_" + std::string(to_string(s)) + ".csv");
}

/// One ranking file per scenario.
inline std::vector<std::filesystem::path> cmd_index(const RunConfig& c) {
    const auto table = detail::load_table(c);
    const auto data = detail::load_inputs(c);
    std::vector<Ranking> rankings;
    for (auto s : kAllScenarios) rankings.push_back(rank_teams(data, table, s, c.min_matches));
    std::vector<std::filesystem::path> written;
    detail::prepare_out(c, written);
    for (const auto& r : rankings) {
        written.push_back(detail::write_with(index_file(c.out, r.scenario), [&](auto& s) { write_ranking(s, r); }));
    }
    return written;
}

/// Throws ValidationError/ParseError when the table is unusable.
inline ResourceTable cmd_validate_table(const RunConfig& c) {
    if (c.table.empty()) throw ArgumentError("--table is required");
    return read_table(c.table);
}

}  // namespace dlsml::cli
