#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Oracles here recount from raw fields and never call the code paths they check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dlsml/dlsml.hpp"

namespace dlsml::testing {

/// Published excerpt: overs_left 50..33 (row 0 = 50), wickets 0..6.
inline constexpr std::array<std::array<double, 7>, 18> kExcerpt = {{
    {100.0, 93.4, 85.1, 74.9, 62.7, 49.0, 34.9}, {99.1, 92.6, 84.5, 74.4, 62.5, 48.9, 34.9},
    {98.1, 91.7, 83.8, 74.0, 62.2, 48.8, 34.9},  {97.1, 90.9, 83.2, 73.5, 61.9, 48.6, 34.9},
    {96.1, 90.0, 82.5, 73.0, 61.6, 48.5, 34.8},  {95.0, 89.1, 81.8, 72.5, 61.3, 48.4, 34.8},
    {93.9, 88.2, 81.0, 72.0, 61.0, 48.3, 34.8},  {92.8, 87.3, 80.3, 71.4, 60.7, 48.1, 34.7},
    {91.7, 86.3, 79.5, 70.9, 60.3, 47.9, 34.7},  {90.5, 85.3, 78.7, 70.3, 59.9, 47.8, 34.6},
    {89.3, 84.2, 77.8, 69.6, 59.5, 47.6, 34.6},  {88.0, 83.1, 76.9, 69.0, 59.1, 47.4, 34.5},
    {86.7, 82.0, 76.0, 68.3, 58.7, 47.1, 34.5},  {85.4, 80.9, 75.0, 67.6, 58.2, 46.9, 34.4},
    {84.1, 79.7, 74.1, 66.8, 57.7, 46.6, 34.3},  {82.7, 78.5, 73.0, 66.0, 57.2, 46.4, 34.2},
    {81.3, 77.2, 72.0, 65.2, 56.6, 46.1, 34.1},  {79.8, 75.9, 70.9, 64.4, 56.0, 45.8, 34.0},
}};

/// Shifts wickets 0..3 by `delta_tenths`, keeping the table valid: results are
/// clipped to [column 4, 100] and (50, 0) stays at 100.
inline ResourceTable shift_top_columns(const ResourceTable& t, int delta_tenths) {
    ResourceGrid g = t.grid();
    for (int y = 0; y < kOptimizedWickets; ++y) {
        for (int x = 1; x <= kTableOvers; ++x) {
            g.at(x, y) = std::clamp(g.at(x, y) + delta_tenths, t.grid().at(x, kOptimizedWickets), kFullResourceTenths);
        }
    }
    g.at(kTableOvers, 0) = kFullResourceTenths;
    return ResourceTable::from_grid(g);
}

/// The hidden generating table used by the optimizer experiments.
inline const ResourceTable& hidden_table() {
    static const ResourceTable h = shift_top_columns(ResourceTable::default_table(), -60);
    return h;
}

/// Brute-force par: the largest k with k <= R - R * rv / 100, found by
/// counting up in exact rational arithmetic on tenths.
inline int brute_par(int runs, double percent) {
    const long long tenths = std::llround(percent * 10.0);
    const long long scaled = static_cast<long long>(runs) * (1000 - tenths);  // par * 1000 bound
    int k = 0;
    while (static_cast<long long>(k + 1) * 1000 <= scaled) ++k;
    return k;
}

/// Recounts D/L accuracy at one over directly from the dataset's raw rows.
struct Recount {
    std::size_t n = 0;
    std::size_t correct = 0;
};

inline Recount brute_force_recount(const Dataset& data, const ResourceTable& table, int over_lo, int over_hi) {
    Recount r;
    for (std::size_t m = 0; m < data.matches().size(); ++m) {
        const auto& match = data.matches()[m];
        for (const auto& s : data.snapshots_of(m)) {
            if (s.overs_bowled < over_lo || s.overs_bowled >= over_hi || s.overs_bowled >= 50) continue;
            const double rv = table.grid().at(50 - s.overs_bowled, s.team2_wickets) / 10.0;
            const int par = brute_par(match.team1_runs, rv);
            const bool says_team1 = s.team2_runs < par;
            const bool team1_won = match.actual_winner == Side::Team1;
            ++r.n;
            if (says_team1 == team1_won) ++r.correct;
        }
    }
    return r;
}

/// Appends matches realising a given over-40 confusion matrix for `team` in
/// `role`. Opponents are named `opponent`. Each match has a single snapshot at
/// over 40 with no wickets down, placed on or just below par under `table`.
inline void embed_confusion(std::vector<MatchRecord>& matches, std::vector<OverSnapshot>& snaps,
                            const std::string& team, Role role, const std::string& opponent,
                            std::size_t t1_t1, std::size_t t1_t2, std::size_t t2_t1, std::size_t t2_t2,
                            const ResourceTable& table) {
    const int runs = 250;
    const int par = par_score(runs, table, 10, 0);
    auto add = [&](Side actual, Side predicted, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            MatchRecord m;
            m.match_id = team.substr(0, 3) + "-" + opponent.substr(0, 3) + "-" + std::to_string(matches.size());
            m.date = std::chrono::year_month_day{std::chrono::year{2010}, std::chrono::month{1}, std::chrono::day{1}};
            m.team1 = role == Role::Defending ? team : opponent;
            m.team2 = role == Role::Defending ? opponent : team;
            m.toss_winner = m.team1;
            m.team1_runs = runs;
            m.team1_wickets = 7;
            m.actual_winner = actual;
            snaps.push_back({m.match_id, 40, predicted == Side::Team1 ? par - 1 : par, 0});
            matches.push_back(std::move(m));
        }
    };
    add(Side::Team1, Side::Team1, t1_t1);
    add(Side::Team1, Side::Team2, t1_t2);
    add(Side::Team2, Side::Team1, t2_t1);
    add(Side::Team2, Side::Team2, t2_t2);
}

/// Sri Lanka chasing (41, 6; 8, 36) against Kenya and India defending
/// (56, 12; 7, 39) against the Netherlands.
inline Dataset figure_corpus() {
    std::vector<MatchRecord> m;
    std::vector<OverSnapshot> s;
    const auto& t = ResourceTable::default_table();
    embed_confusion(m, s, "Sri Lanka", Role::Chasing, "Kenya", 41, 6, 8, 36, t);
    embed_confusion(m, s, "India", Role::Defending, "Netherlands", 56, 12, 7, 39, t);
    return Dataset::build(std::move(m), std::move(s));
}

/// Bayes' rule spelled out with plain densities: per-class MLE moments,
/// variance floor, Laplace-smoothed D/L likelihood, normalised product.
inline std::array<double, 2> bayes_rule_posterior(const std::vector<LabeledExample>& train, const FeatureVector& x,
                                                  double var_floor = 1e-9, double alpha = 1.0) {
    const double pi = 3.14159265358979323846;
    std::array<long double, 2> joint{};
    for (int c = 0; c < 2; ++c) {
        std::vector<FeatureVector> rows;
        for (const auto& ex : train) {
            if ((ex.label == Side::Team2) == (c == 1)) rows.push_back(ex.features());
        }
        if (rows.empty()) continue;
        const double nc = static_cast<double>(rows.size());
        long double p = nc / static_cast<double>(train.size());
        for (std::size_t j = 0; j < 5; ++j) {
            double mu = 0;
            for (const auto& r : rows) mu += r[j];
            mu /= nc;
            double var = 0;
            for (const auto& r : rows) var += (r[j] - mu) * (r[j] - mu);
            var = std::max(var / nc, var_floor);
            p *= std::exp(-(x[j] - mu) * (x[j] - mu) / (2 * var)) / std::sqrt(2 * pi * var);
        }
        double same = 0;
        for (const auto& r : rows) same += (r[5] == x[5]) ? 1 : 0;
        p *= (same + alpha) / (nc + 2 * alpha);
        joint[static_cast<std::size_t>(c)] = p;
    }
    const long double z = joint[0] + joint[1];
    return {static_cast<double>(joint[0] / z), static_cast<double>(joint[1] / z)};
}

/// Twenty hand-made examples with features on a modest scale so the plain
/// density product in bayes_rule_posterior stays well inside double range.
inline std::vector<LabeledExample> toy_examples() {
    std::vector<LabeledExample> v;
    std::mt19937 gen(5);
    std::uniform_int_distribution<int> runs(180, 320), wk(0, 9), t2(20, 200), over(10, 45), coin(0, 1);
    for (int i = 0; i < 20; ++i) {
        LabeledExample ex;
        ex.team1_runs = runs(gen);
        ex.team1_wickets = wk(gen);
        ex.team2_runs = t2(gen);
        ex.team2_wickets = wk(gen);
        ex.overs_played = over(gen);
        ex.dl_prediction = coin(gen) ? Side::Team2 : Side::Team1;
        ex.label = (i % 2 == 0) == (coin(gen) == 1) ? Side::Team2 : Side::Team1;
        v.push_back(ex);
    }
    return v;
}

/// Central differences of the per-example loss.
inline std::vector<double> numeric_gradient(Mlp net, const FeatureVector& x, double y, double h = 1e-6) {
    std::vector<double> g(net.params.size());
    for (std::size_t p = 0; p < net.params.size(); ++p) {
        const double keep = net.params[p];
        net.params[p] = keep + h;
        const double up = net.loss(x, y);
        net.params[p] = keep - h;
        const double down = net.loss(x, y);
        net.params[p] = keep;
        g[p] = (up - down) / (2 * h);
    }
    return g;
}

/// max_i |a_i - b_i| / max(|a_i| + |b_i|, 1e-8)
inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]) + std::abs(b[i]), 1e-8));
    }
    return worst;
}

/// 2,000 synthetic matches whose over-40 outcome always agrees with the
/// D/L call, so the label is a function of the six features there.
inline const Dataset& consistent_corpus() {
    static const Dataset d = [] {
        SynthOptions o;
        o.disagreement = 0.0;
        return synth_corpus(17, 2000, ResourceTable::default_table(), o);
    }();
    return d;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("dlsml_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_dataset(const Dataset& d, const std::filesystem::path& dir) {
    std::ofstream m(dir / "matches.csv", std::ios::binary);
    write_matches(m, d.matches());
    std::ofstream s(dir / "snapshots.csv", std::ios::binary);
    write_snapshots(s, d.snapshots());
}

}  // namespace dlsml::testing
