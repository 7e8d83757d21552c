#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "dlsml/core/errors.hpp"
#include "dlsml/core/rng.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"

namespace dlsml {

inline constexpr std::size_t kNumFeatures = 6;
inline constexpr std::size_t kNumNumericFeatures = 5;

using FeatureVector = std::array<double, kNumFeatures>;

/// One second-innings over as a classifier sees it.
struct LabeledExample {
    int team1_runs = 0;
    int team1_wickets = 0;
    int team2_runs = 0;
    int team2_wickets = 0;
    int overs_played = 0;
    Side dl_prediction = Side::Team1;
    Side label = Side::Team1;

    /// Numeric features first; dl_prediction last, encoded Team1 -> 0, Team2 -> 1.
    FeatureVector features() const {
        return {static_cast<double>(team1_runs),    static_cast<double>(team1_wickets),
                static_cast<double>(team2_runs),    static_cast<double>(team2_wickets),
                static_cast<double>(overs_played), dl_prediction == Side::Team2 ? 1.0 : 0.0};
    }

    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

constexpr int label_index(Side s) { return s == Side::Team1 ? 0 : 1; }
constexpr Side side_from_index(int i) { return i == 0 ? Side::Team1 : Side::Team2; }

/// One example per selected snapshot, with the D/L prediction filled in from `table`.
inline std::vector<LabeledExample> make_examples(const Dataset& data, const ResourceTable& table,
                                                 const OverSelection& sel) {
    std::vector<LabeledExample> out;
    const auto& snaps = data.snapshots();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const auto& s = snaps[i];
        if (!dl_selectable(s, sel)) continue;
        const auto& m = data.match_of(i);
        out.push_back({m.team1_runs, m.team1_wickets, s.team2_runs, s.team2_wickets, s.overs_bowled,
                       predict_at(m, s, table).predicted, m.actual_winner});
    }
    if (out.empty()) throw EmptySelectionError("over selection '" + sel.label() + "' selects no snapshots");
    return out;
}

struct TrainTestSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> test;
    std::uint64_t seed = 0;
};

/// round(0.7 * n), halves rounded up.
constexpr std::size_t train_size(std::size_t n) { return (7 * n + 5) / 10; }

/// Seeded, label-stratified 70/30 partition. |train| = round(0.7 n) exactly.
/// Each class with at least two members lands in both partitions.
inline TrainTestSplit split_70_30(std::span<const LabeledExample> examples, std::uint64_t seed) {
    const std::size_t n = examples.size();
    if (n < 10) throw ArgumentError("70/30 split needs at least 10 examples, got " + std::to_string(n));
    const std::size_t n_train = train_size(n);

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[static_cast<std::size_t>(label_index(examples[i].label))].push_back(i);

    // largest-remainder apportionment of n_train across classes
    std::array<std::size_t, 2> quota{};
    std::array<double, 2> remainder{};
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 2; ++c) {
        const double exact = static_cast<double>(n_train) * static_cast<double>(by_class[c].size()) / static_cast<double>(n);
        quota[c] = static_cast<std::size_t>(exact);
        remainder[c] = exact - static_cast<double>(quota[c]);
        assigned += quota[c];
    }
    while (assigned < n_train) {
        const std::size_t c = remainder[1] > remainder[0] ? 1 : 0;
        const std::size_t pick = quota[c] < by_class[c].size() ? c : 1 - c;
        ++quota[pick];
        remainder[pick] = -1.0;
        ++assigned;
    }
    // keep both partitions populated per class where possible
    for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t o = 1 - c;
        const std::size_t size_c = by_class[c].size();
        const std::size_t size_o = by_class[o].size();
        if (size_c >= 2 && quota[c] == size_c && quota[o] < size_o) {
            --quota[c];
            ++quota[o];
        } else if (size_c >= 2 && quota[c] == 0 && quota[o] > 0 && (quota[o] > 1 || size_o < 2)) {
            ++quota[c];
            --quota[o];
        }
    }

    Rng rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t c = 0; c < 2; ++c) {
        auto idx = by_class[c];
        rng.shuffle(idx.begin(), idx.end());
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(quota[c]));
        test_idx.insert(test_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(quota[c]), idx.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    TrainTestSplit out;
    out.seed = seed;
    out.train.reserve(train_idx.size());
    out.test.reserve(test_idx.size());
    for (auto i : train_idx) out.train.push_back(examples[i]);
    for (auto i : test_idx) out.test.push_back(examples[i]);
    return out;
}

}  // namespace dlsml
