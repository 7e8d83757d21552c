#pragma once

// Per-team D/L failure rates at the 40th over.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlsml/core/errors.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/resource_table.hpp"

namespace dlsml {

inline constexpr int kIndexOver = 40;
inline constexpr std::size_t kDefaultMinMatches = 40;

enum class Role : std::uint8_t { Chasing, Defending };

enum class Scenario : std::uint8_t { WonChasing, LostChasing, WonDefending, LostDefending };

inline constexpr std::array<Scenario, 4> kAllScenarios = {Scenario::WonChasing, Scenario::LostChasing,
                                                          Scenario::WonDefending, Scenario::LostDefending};

constexpr std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::WonChasing: return "won_chasing";
        case Scenario::LostChasing: return "lost_chasing";
        case Scenario::WonDefending: return "won_defending";
        case Scenario::LostDefending: return "lost_defending";
    }
    return "?";
}

constexpr Role role_of(Scenario s) {
    return s == Scenario::WonChasing || s == Scenario::LostChasing ? Role::Chasing : Role::Defending;
}

/// counts[actual][predicted], both indexed Team1 = 0, Team2 = 1.
struct ConfusionMatrix2 {
    std::array<std::array<std::size_t, 2>, 2> counts{};

    std::size_t& at(Side actual, Side predicted) {
        return counts[static_cast<std::size_t>(actual)][static_cast<std::size_t>(predicted)];
    }
    std::size_t at(Side actual, Side predicted) const {
        return counts[static_cast<std::size_t>(actual)][static_cast<std::size_t>(predicted)];
    }
    std::size_t row_total(Side actual) const { return at(actual, Side::Team1) + at(actual, Side::Team2); }
    std::size_t total() const { return row_total(Side::Team1) + row_total(Side::Team2); }
    std::size_t mispredictions() const { return at(Side::Team1, Side::Team2) + at(Side::Team2, Side::Team1); }

    ConfusionMatrix2& operator+=(const ConfusionMatrix2& o) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t p = 0; p < 2; ++p) counts[a][p] += o.counts[a][p];
        }
        return *this;
    }

    friend bool operator==(const ConfusionMatrix2&, const ConfusionMatrix2&) = default;
};

struct ScenarioScore {
    std::string team;
    Scenario scenario = Scenario::WonChasing;
    std::size_t failing_count = 0;
    std::size_t scenario_total = 0;
    /// Qualifying matches for the team in the scenario's role.
    std::size_t n_matches = 0;
    std::size_t rank = 0;

    double percentage() const { return static_cast<double>(failing_count) / static_cast<double>(scenario_total); }
};

struct Ranking {
    Scenario scenario = Scenario::WonChasing;
    std::vector<ScenarioScore> entries;
};

/// Over-40 confusion matrix for matches where `team` bats second (Chasing)
/// or first (Defending). All zeros when the team never played in that role.
inline ConfusionMatrix2 team_confusion_at_40(const Dataset& data, const ResourceTable& table, std::string_view team,
                                             Role role) {
    const auto name = canonical_team(team);
    ConfusionMatrix2 cm;
    const auto sel = OverSelection::checkpoint(kIndexOver);
    const auto& snaps = data.snapshots();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        if (!dl_selectable(snaps[i], sel)) continue;
        const auto& m = data.match_of(i);
        if ((role == Role::Chasing ? m.team2 : m.team1) != name) continue;
        ++cm.at(m.actual_winner, predict_at(m, snaps[i], table).predicted);
    }
    return cm;
}

/// Over-40 confusion matrix across every match.
inline ConfusionMatrix2 confusion_at_40(const Dataset& data, const ResourceTable& table) {
    ConfusionMatrix2 cm;
    const auto sel = OverSelection::checkpoint(kIndexOver);
    const auto& snaps = data.snapshots();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        if (!dl_selectable(snaps[i], sel)) continue;
        const auto& m = data.match_of(i);
        ++cm.at(m.actual_winner, predict_at(m, snaps[i], table).predicted);
    }
    return cm;
}

/// The (actual, wrongly predicted) cell a scenario counts as a failure.
constexpr std::pair<Side, Side> failing_cell(Scenario s) {
    switch (s) {
        case Scenario::WonChasing: return {Side::Team2, Side::Team1};
        case Scenario::LostChasing: return {Side::Team1, Side::Team2};
        case Scenario::WonDefending: return {Side::Team1, Side::Team2};
        case Scenario::LostDefending: return {Side::Team2, Side::Team1};
    }
    return {Side::Team1, Side::Team2};
}

/// Failing count over the actual-outcome row total (never the grand total).
inline ScenarioScore failing_percentage(const ConfusionMatrix2& cm, Scenario scenario, std::string_view team = {}) {
    const auto [actual, wrong] = failing_cell(scenario);
    ScenarioScore s;
    s.team = std::string(team);
    s.scenario = scenario;
    s.failing_count = cm.at(actual, wrong);
    s.scenario_total = cm.row_total(actual);
    s.n_matches = cm.total();
    if (s.scenario_total == 0) {
        throw UndefinedScoreError("no matches for " + (team.empty() ? std::string("team") : std::string(team)) +
                                  " in scenario " + std::string(to_string(scenario)));
    }
    return s;
}

/// Teams in descending failing percentage; equal percentages fall back to
/// team name ascending. Teams with fewer than `min_matches` over-40 matches in
/// the scenario's role, or with an empty scenario row, are left out.
inline Ranking rank_teams(const Dataset& data, const ResourceTable& table, Scenario scenario,
                          std::size_t min_matches = kDefaultMinMatches) {
    const Role role = role_of(scenario);
    std::set<std::string> teams;
    for (const auto& m : data.matches()) teams.insert(role == Role::Chasing ? m.team2 : m.team1);

    Ranking r;
    r.scenario = scenario;
    for (const auto& team : teams) {
        const auto cm = team_confusion_at_40(data, table, team, role);
        if (cm.total() < min_matches) continue;
        const auto [actual, wrong] = failing_cell(scenario);
        if (cm.row_total(actual) == 0) continue;
        r.entries.push_back(failing_percentage(cm, scenario, team));
    }
    if (r.entries.empty()) {
        throw ValidationError("no team has " + std::to_string(min_matches) + " or more qualifying matches for " +
                              std::string(to_string(scenario)));
    }
    // compare a/b against c/d exactly by cross-multiplying
    std::stable_sort(r.entries.begin(), r.entries.end(), [](const ScenarioScore& a, const ScenarioScore& b) {
        const auto lhs = a.failing_count * b.scenario_total;
        const auto rhs = b.failing_count * a.scenario_total;
        if (lhs != rhs) return lhs > rhs;
        return a.team < b.team;
    });
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i].rank = i + 1;
    return r;
}

/// Percentage with two decimals, e.g. "18.18".
inline std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
    return buf;
}

/// scenario,team,failing_count,scenario_total,percentage,rank
inline void write_ranking(std::ostream& out, const Ranking& r) {
    out << "scenario,team,failing_count,scenario_total,percentage,rank\n";
    for (const auto& e : r.entries) {
        out << to_string(r.scenario) << ',' << e.team << ',' << e.failing_count << ',' << e.scenario_total << ','
            << format_percent(e.percentage()) << ',' << e.rank << '\n';
    }
}

}  // namespace dlsml
