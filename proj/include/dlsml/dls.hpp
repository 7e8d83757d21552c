#pragma once

// Par score, winner prediction and accuracy evaluation.

#include <cstdint>
#include <string>
#include <vector>

#include "dlsml/core/csv.hpp"
#include "dlsml/core/errors.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/resource_table.hpp"

namespace dlsml {

inline double resource_value(const ResourceTable& table, int overs_left, int wickets_lost) {
    return table.percent(overs_left, wickets_lost);
}

/// Runs the chasing side should have at this state: floor(R - R * rv / 100).
/// Computed in integers on tenths so the floor is exact.
inline int par_score_tenths(int team1_runs, int resource_tenths) {
    const auto remaining = static_cast<std::int64_t>(kFullResourceTenths - resource_tenths);
    return static_cast<int>(static_cast<std::int64_t>(team1_runs) * remaining / kFullResourceTenths);
}

inline int par_score(int team1_runs, const ResourceTable& table, int overs_left, int wickets_lost) {
    if (team1_runs < 0) throw ArgumentError("team1_runs must be non-negative");
    return par_score_tenths(team1_runs, table.tenths(overs_left, wickets_lost));
}

struct WinnerPrediction {
    Side predicted = Side::Team2;
    int par_score = 0;

    friend bool operator==(const WinnerPrediction&, const WinnerPrediction&) = default;
};

/// Below par, the defending side is declared the winner; at or above par the chase wins.
constexpr WinnerPrediction predict_winner(int par, int team2_runs) {
    return {team2_runs < par ? Side::Team1 : Side::Team2, par};
}

/// D/L prediction for a second-innings snapshot. overs_bowled must be < 50.
inline WinnerPrediction predict_at(const MatchRecord& match, const OverSnapshot& snap, const ResourceTable& table) {
    const int par = par_score(match.team1_runs, table, kMaxOvers - snap.overs_bowled, snap.team2_wickets);
    return predict_winner(par, snap.team2_runs);
}

// ---------------------------------------------------------------------------
// Over selections
// ---------------------------------------------------------------------------

/// Either a single checkpoint over k, or the half-open range [lo, hi) of overs_bowled.
struct OverSelection {
    enum class Kind : std::uint8_t { Checkpoint, Range };

    Kind kind = Kind::Checkpoint;
    int lo = 0;
    int hi = 0;

    static OverSelection checkpoint(int over) {
        if (over < 1 || over > kMaxOvers) throw ArgumentError("checkpoint over must be in 1..50");
        return {Kind::Checkpoint, over, over + 1};
    }

    static OverSelection range(int lo, int hi) {
        if (lo < 0 || hi > kMaxOvers || lo >= hi) {
            throw ArgumentError("over range must satisfy 0 <= lo < hi <= 50, got " + std::to_string(lo) + "-" +
                                std::to_string(hi));
        }
        return {Kind::Range, lo, hi};
    }

    /// "40" for a checkpoint, "20-50" for a range.
    static OverSelection parse(const std::string& text) {
        const auto dash = text.find('-');
        if (dash == std::string::npos) {
            auto k = csv::to_int(text);
            if (!k) throw ArgumentError("bad over selection '" + text + "'");
            return checkpoint(static_cast<int>(*k));
        }
        auto lo = csv::to_int(std::string_view(text).substr(0, dash));
        auto hi = csv::to_int(std::string_view(text).substr(dash + 1));
        if (!lo || !hi) throw ArgumentError("bad over selection '" + text + "'");
        return range(static_cast<int>(*lo), static_cast<int>(*hi));
    }

    constexpr bool contains(int overs_bowled) const { return overs_bowled >= lo && overs_bowled < hi; }

    std::string label() const {
        return kind == Kind::Checkpoint ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
    }

    friend bool operator==(const OverSelection&, const OverSelection&) = default;
};

/// True when the snapshot can be scored by D/L and falls in the selection.
/// Over 50 is excluded: no overs remain and the match is decided on runs.
inline bool dl_selectable(const OverSnapshot& s, const OverSelection& sel) {
    return s.overs_bowled < kMaxOvers && s.team2_wickets < kMaxWickets && sel.contains(s.overs_bowled);
}

inline const std::vector<OverSelection>& checkpoint_selections() {
    static const std::vector<OverSelection> v = {OverSelection::checkpoint(10), OverSelection::checkpoint(20),
                                                 OverSelection::checkpoint(30), OverSelection::checkpoint(40)};
    return v;
}

inline const std::vector<OverSelection>& range_selections() {
    static const std::vector<OverSelection> v = {
        OverSelection::range(0, 10),  OverSelection::range(10, 20), OverSelection::range(20, 30),
        OverSelection::range(30, 40), OverSelection::range(40, 50), OverSelection::range(0, 50),
        OverSelection::range(20, 50)};
    return v;
}

// ---------------------------------------------------------------------------
// Accuracy
// ---------------------------------------------------------------------------

struct AccuracyReport {
    std::size_t n_samples = 0;
    std::size_t n_correct = 0;
    OverSelection selection;

    double accuracy() const { return static_cast<double>(n_correct) / static_cast<double>(n_samples); }

    friend bool operator==(const AccuracyReport&, const AccuracyReport&) = default;
};

/// Fraction of selected snapshots whose D/L prediction names the actual winner.
inline AccuracyReport evaluate(const Dataset& data, const ResourceTable& table, const OverSelection& sel) {
    AccuracyReport r{0, 0, sel};
    const auto& snaps = data.snapshots();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        if (!dl_selectable(snaps[i], sel)) continue;
        const auto& match = data.match_of(i);
        ++r.n_samples;
        if (predict_at(match, snaps[i], table).predicted == match.actual_winner) ++r.n_correct;
    }
    if (r.n_samples == 0) throw EmptySelectionError("over selection '" + sel.label() + "' selects no snapshots");
    return r;
}

}  // namespace dlsml
