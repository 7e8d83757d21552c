#pragma once

// Deterministic synthetic ODI corpora for desk-scale experiments.
//
// The chase is simulated over by over so that, in expectation, the runs still
// to come from a state (overs left u, wickets lost w) are
//     E * H(u, w) / 100
// where E is the chasing side's expected total and H the generating resource
// table. With that property H is the "true" resource table of the corpus, so
// corpora built from a hidden table let the optimizer be checked against a
// known answer. Per-over runs are Binomial(36, mean / 36); the wicket hazard
// rises with the required run rate.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlsml/core/errors.hpp"
#include "dlsml/core/rng.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/resource_table.hpp"

namespace dlsml {

struct SynthOptions {
    /// When set, this fraction of matches that reach over 40 is steered so
    /// that the final result contradicts the over-40 D/L prediction under
    /// the generating table; the rest are steered to agree.
    std::optional<double> disagreement;
    double strength_sd = 0.08;
};

namespace detail {

inline constexpr std::array<const char*, 10> kSynthTeams = {
    "Australia", "Bangladesh", "England", "India", "New Zealand",
    "Pakistan", "South Africa", "Sri Lanka", "West Indies", "Zimbabwe"};

inline constexpr int kMaxRunsPerOver = 36;

struct ChaseState {
    int over = 0;  // overs completed
    int runs = 0;
    int wickets = 0;
};

enum class ChaseEnd { Running, TargetPassed, AllOut, OversUp };

/// Resource remaining (tenths) with u overs left and w down; zero once the innings is over.
inline int resource_at(const ResourceGrid& g, int overs_left, int wickets) {
    if (overs_left <= 0 || wickets >= kMaxWickets) return 0;
    return g.at(overs_left, wickets);
}

/// Plays one over and records a snapshot if the over was completed.
inline ChaseEnd play_over(ChaseState& st, int target_runs, double expected_total, const ResourceGrid& g, Rng& rng,
                          const std::string& match_id, std::vector<OverSnapshot>& out) {
    const int u = kMaxOvers - st.over;
    const double rrr = static_cast<double>(target_runs + 1 - st.runs) / u;
    const double p_wicket = std::clamp(0.09 + 0.02 * std::max(0.0, rrr - 6.0), 0.0, 0.5);
    const double now = resource_at(g, u, st.wickets);
    const double keep = resource_at(g, u - 1, st.wickets);
    const double lose = resource_at(g, u - 1, st.wickets + 1);
    const double drop = now - (1.0 - p_wicket) * keep - p_wicket * lose;
    const double mean = std::clamp(expected_total * drop / 1000.0, 0.0, kMaxRunsPerOver - 1.0);

    st.runs += rng.binomial(kMaxRunsPerOver, mean / kMaxRunsPerOver);
    st.wickets += rng.bernoulli(p_wicket) ? 1 : 0;
    st.over += 1;
    // the innings closes mid-over when the target is passed or the last wicket falls
    if (st.runs > target_runs) return ChaseEnd::TargetPassed;
    if (st.wickets >= kMaxWickets) return ChaseEnd::AllOut;
    out.push_back({match_id, st.over, st.runs, st.wickets});
    return st.over == kMaxOvers ? ChaseEnd::OversUp : ChaseEnd::Running;
}

/// Outcome once the chase ends; nullopt for a tie.
inline std::optional<Side> chase_result(const ChaseState& st, int target_runs) {
    if (st.runs > target_runs) return Side::Team2;
    if (st.runs < target_runs) return Side::Team1;
    return std::nullopt;
}

struct Chase {
    std::vector<OverSnapshot> snaps;
    ChaseState state;
    std::optional<Side> result;
};

/// Continues a chase from `start` until it ends.
inline Chase run_chase(Chase start, int target_runs, double expected_total, const ResourceGrid& g, Rng& rng,
                       const std::string& id) {
    auto end = ChaseEnd::Running;
    if (start.state.over >= kMaxOvers) end = ChaseEnd::OversUp;
    while (end == ChaseEnd::Running) {
        end = play_over(start.state, target_runs, expected_total, g, rng, id, start.snaps);
    }
    start.result = chase_result(start.state, target_runs);
    return start;
}

/// Deterministic completion from over 40 that forces `want`, when feasible.
inline std::optional<Chase> forced_finish(Chase c, int target_runs, Side want, const std::string& id) {
    if (want == Side::Team2) {
        int need = target_runs + 1 - c.state.runs;
        if (need > kMaxRunsPerOver * (kMaxOvers - c.state.over)) return std::nullopt;
        while (true) {
            const int left = kMaxOvers - c.state.over;
            const int r = std::min(kMaxRunsPerOver, (need + left - 1) / left);
            c.state.runs += r;
            c.state.over += 1;
            need -= r;
            if (need <= 0) break;
            c.snaps.push_back({id, c.state.over, c.state.runs, c.state.wickets});
        }
    } else {
        if (c.state.runs >= target_runs) return std::nullopt;
        while (c.state.over < kMaxOvers) {
            c.state.over += 1;
            c.snaps.push_back({id, c.state.over, c.state.runs, c.state.wickets});
        }
    }
    c.result = want;
    return c;
}

}  // namespace detail

/// Generates `n_matches` completed ODIs. A pure function of its arguments:
/// each match draws from its own stream derived from (seed, index).
inline Dataset synth_corpus(std::uint64_t seed, int n_matches, const ResourceTable& table,
                            const SynthOptions& options = {}) {
    if (n_matches < 1) throw ArgumentError("n_matches must be at least 1, got " + std::to_string(n_matches));
    if (options.disagreement && (*options.disagreement < 0.0 || *options.disagreement > 1.0)) {
        throw ArgumentError("disagreement fraction must be in [0,1]");
    }
    constexpr int kSteeringAttempts = 200;
    const auto& grid = table.grid();
    const auto first_day = std::chrono::sys_days{std::chrono::year{2001} / 6 / 7};

    std::vector<MatchRecord> matches;
    std::vector<OverSnapshot> snapshots;
    matches.reserve(static_cast<std::size_t>(n_matches));

    for (int i = 0; i < n_matches; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        MatchRecord m;
        char id[16];
        std::snprintf(id, sizeof id, "S%06d", i + 1);
        m.match_id = id;
        m.date = std::chrono::year_month_day{first_day + std::chrono::days{i}};
        const auto t1 = rng.below(detail::kSynthTeams.size());
        auto t2 = rng.below(detail::kSynthTeams.size() - 1);
        if (t2 >= t1) ++t2;
        m.team1 = detail::kSynthTeams[t1];
        m.team2 = detail::kSynthTeams[t2];
        m.toss_winner = rng.bernoulli(0.5) ? m.team1 : m.team2;
        m.team1_runs = std::clamp(static_cast<int>(std::lround(rng.normal(250.0, 45.0))), 80, 420);
        m.team1_wickets = std::min(kMaxWickets, 2 + rng.binomial(8, 0.65));

        detail::Chase chase;
        while (true) {
            const double strength = std::clamp(rng.normal(1.0, options.strength_sd), 0.6, 1.4);
            const double expected_total = m.team1_runs * strength;
            detail::Chase to40;
            auto end = detail::ChaseEnd::Running;
            while (end == detail::ChaseEnd::Running && to40.state.over < 40) {
                end = detail::play_over(to40.state, m.team1_runs, expected_total, grid, rng, m.match_id, to40.snaps);
            }
            if (end != detail::ChaseEnd::Running || !options.disagreement) {
                chase = end == detail::ChaseEnd::Running
                            ? detail::run_chase(std::move(to40), m.team1_runs, expected_total, grid, rng, m.match_id)
                            : std::move(to40);
                if (end != detail::ChaseEnd::Running) chase.result = detail::chase_result(chase.state, m.team1_runs);
                if (chase.result) break;
                continue;  // tie: replay the chase
            }

            const auto& at40 = to40.snaps.back();
            const Side dl = predict_at(m, at40, table).predicted;
            const Side want = rng.bernoulli(*options.disagreement) ? other(dl) : dl;
            std::optional<detail::Chase> fallback;
            for (int attempt = 0; attempt < kSteeringAttempts; ++attempt) {
                auto c = detail::run_chase(to40, m.team1_runs, expected_total, grid, rng, m.match_id);
                if (!c.result) continue;
                if (*c.result == want) {
                    fallback = std::move(c);
                    break;
                }
                if (!fallback) fallback = std::move(c);
            }
            if (!fallback || *fallback->result != want) {
                if (auto forced = detail::forced_finish(to40, m.team1_runs, want, m.match_id)) fallback = std::move(forced);
            }
            if (fallback) {
                chase = std::move(*fallback);
                break;
            }
        }
        m.actual_winner = *chase.result;
        for (auto& s : chase.snaps) snapshots.push_back(std::move(s));
        matches.push_back(std::move(m));
    }
    return Dataset::build(std::move(matches), std::move(snapshots));
}

}  // namespace dlsml
