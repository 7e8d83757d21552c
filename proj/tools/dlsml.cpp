// dlsml: Duckworth-Lewis par scores, in-play winner classifiers, PSO
// re-fitting of the resource table and the unpredictability index.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dlsml/commands.hpp"

namespace {

using dlsml::cli::RunConfig;

void add_common(CLI::App& cmd, RunConfig& c, bool needs_data) {
    if (needs_data) {
        cmd.add_option("--matches", c.matches, "matches.csv")->required();
        cmd.add_option("--snapshots", c.snapshots, "snapshots.csv")->required();
    }
    cmd.add_option("--table", c.table, "resource_table.csv (default: bundled table)");
    cmd.add_option("--seed", c.seed, "root seed")->capture_default_str();
    cmd.add_option("--out", c.out, "output directory")->capture_default_str();
    cmd.add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Duckworth-Lewis par scores, winner prediction and resource-table optimization"};
    app.require_subcommand(1);
    RunConfig c;

    auto* synth = app.add_subcommand("synth", "write a deterministic synthetic corpus");
    add_common(*synth, c, false);
    synth->add_option("--n", c.n_matches, "number of matches")->capture_default_str();
    synth->add_option("--disagreement", c.disagreement,
                      "fraction of over-40 D/L predictions the final result should contradict");

    auto* evaluate = app.add_subcommand("evaluate", "compare D/L with the classifier suite");
    add_common(*evaluate, c, true);
    std::vector<std::string> kinds;
    evaluate->add_option("--kinds", kinds, "subset of NaiveBayes,NeuralNet,BaggedNaiveBayes,RandomForest")
        ->delimiter(',');
    evaluate->add_option("--nb-var-floor", c.hyper.naive_bayes.var_floor)->capture_default_str();
    evaluate->add_option("--nb-alpha", c.hyper.naive_bayes.alpha)->capture_default_str();
    evaluate->add_option("--nn-hidden", c.hyper.neural_net.hidden)->capture_default_str();
    evaluate->add_option("--nn-lr", c.hyper.neural_net.learning_rate)->capture_default_str();
    evaluate->add_option("--nn-epochs", c.hyper.neural_net.epochs)->capture_default_str();
    evaluate->add_option("--bags", c.hyper.bags)->capture_default_str();
    evaluate->add_option("--rf-trees", c.hyper.forest.trees)->capture_default_str();
    evaluate->add_option("--rf-max-features", c.hyper.forest.tree.max_features)->capture_default_str();
    evaluate->add_option("--rf-min-leaf", c.hyper.forest.tree.min_leaf)->capture_default_str();

    auto* optimize = app.add_subcommand("optimize", "re-fit wickets 0-3 of the resource table by PSO");
    add_common(*optimize, c, true);
    std::string mode = "per-cell";
    optimize->add_option("--mode", mode)->check(CLI::IsMember({"per-cell", "per-column"}))->capture_default_str();
    optimize->add_option("--generations", c.pso.generations)->capture_default_str();
    optimize->add_option("--swarm", c.pso.swarm_size)->capture_default_str();
    optimize->add_option("--c1", c.pso.c1)->capture_default_str();
    optimize->add_option("--c2", c.pso.c2)->capture_default_str();
    optimize->add_option("--inertia", c.pso.inertia)->capture_default_str();
    optimize->add_option("--vmax", c.pso.v_max)->capture_default_str();
    bool unconstrained = false;
    bool no_cross_wicket = false;
    optimize->add_flag("--unconstrained", unconstrained, "skip the decreasing-column repair");
    optimize->add_flag("--no-cross-wicket", no_cross_wicket, "do not restore ordering across wicket columns");

    auto* index = app.add_subcommand("index", "rank teams by over-40 D/L failure rates");
    add_common(*index, c, true);
    index->add_option("--min-matches", c.min_matches)->capture_default_str();

    auto* validate = app.add_subcommand("validate-table", "check a resource_table.csv");
    validate->add_option("--table", c.table)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        c.subcommand = app.get_subcommands().front()->get_name();
        if (c.subcommand == "synth") {
            dlsml::cli::cmd_synth(c);
        } else if (c.subcommand == "evaluate") {
            if (!kinds.empty()) {
                c.kinds.clear();
                for (const auto& k : kinds) {
                    auto parsed = dlsml::parse_classifier_kind(k);
                    if (!parsed) throw dlsml::ArgumentError("unknown classifier kind '" + k + "'");
                    c.kinds.push_back(*parsed);
                }
            }
            dlsml::cli::cmd_evaluate(c);
        } else if (c.subcommand == "optimize") {
            c.pso.mode = mode == "per-column" ? dlsml::PsoMode::PerColumn : dlsml::PsoMode::PerCell;
            c.pso.monotone = !unconstrained;
            c.pso.cross_wicket = !no_cross_wicket && !unconstrained;
            dlsml::cli::cmd_optimize(c);
        } else if (c.subcommand == "index") {
            dlsml::cli::cmd_index(c);
        } else {
            dlsml::cli::cmd_validate_table(c);
            std::cout << "ok: " << c.table.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
