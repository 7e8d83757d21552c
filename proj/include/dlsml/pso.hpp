#pragma once

// Particle Swarm Optimization of resource-table values for wickets 0..3.
//
// Fitness is the number of second-innings snapshots whose D/L prediction
// names the actual winner. Two search layouts are offered:
//   PerCell   - an independent 1-D swarm per (overs_left, wickets) cell, with
//               the "decreasing" condition restored afterwards by a running
//               minimum down each column;
//   PerColumn - one swarm per wicket column over all of its sampled rows,
//               with the running minimum applied to every particle each step.
// Particle 0 always starts at the base table's values, so the global best
// can never be worse than the baseline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlsml/core/errors.hpp"
#include "dlsml/core/parallel.hpp"
#include "dlsml/core/rng.hpp"
#include "dlsml/dls.hpp"
#include "dlsml/match_data.hpp"
#include "dlsml/resource_table.hpp"

namespace dlsml {

/// Wickets 0..3 are re-fitted; columns 4..9 are never touched.
inline constexpr int kOptimizedWickets = 4;

enum class PsoMode : std::uint8_t { PerCell, PerColumn };

struct PsoConfig {
    int swarm_size = 10;
    double c1 = 2.0;
    double c2 = 2.5;
    int generations = 50;
    double inertia = 0.7;
    /// Velocity cap as a fraction of the [0, 100] range.
    double v_max = 0.2;
    /// Half-width of the initial spread around the base value, in percent.
    double init_radius = 15.0;
    std::uint64_t seed = 0;
    PsoMode mode = PsoMode::PerCell;
    /// Apply the running-minimum ("decreasing") repair down each column.
    bool monotone = true;
    /// Also restore value(X, Y+1) <= value(X, Y) against the untouched columns.
    bool cross_wicket = true;
    unsigned jobs = 1;

    void validate() const {
        if (swarm_size < 2) throw ArgumentError("swarm size must be at least 2");
        if (generations < 1) throw ArgumentError("generations must be at least 1");
        if (!(v_max > 0.0 && v_max <= 1.0)) throw ArgumentError("v_max must be in (0, 1]");
        if (c1 < 0.0 || c2 < 0.0) throw ArgumentError("c1 and c2 must be non-negative");
        if (init_radius < 0.0) throw ArgumentError("init_radius must be non-negative");
    }
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    long best_fitness = -1;
};

struct OptimizationResult {
    ResourceTable optimized_table;
    long baseline_fitness = 0;
    long optimized_fitness = 0;
    /// Best fitness after initialisation (index 0) and after each generation,
    /// summed over all independent swarms, before the final repair.
    std::vector<long> fitness_trace;
    /// True when the repaired table scored below the baseline and the base
    /// values were kept instead.
    bool reverted_to_base = false;
};

// ---------------------------------------------------------------------------
// Fitness
// ---------------------------------------------------------------------------

struct CellSample {
    int team1_runs = 0;
    int team2_runs = 0;
    Side actual = Side::Team1;
};

/// A table cell, addressed as in the resource table.
struct Cell {
    int overs_left = 0;
    int wickets_lost = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Snapshots grouped by the table cell that scores them.
class CellSamples {
public:
    explicit CellSamples(const Dataset& data) : by_cell_(static_cast<std::size_t>(kTableOvers * kTableWickets)) {
        const auto& snaps = data.snapshots();
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            const auto& s = snaps[i];
            if (s.overs_bowled >= kMaxOvers || s.team2_wickets >= kMaxWickets) continue;
            const auto& m = data.match_of(i);
            by_cell_[index({kMaxOvers - s.overs_bowled, s.team2_wickets})].push_back(
                {m.team1_runs, s.team2_runs, m.actual_winner});
        }
    }

    std::span<const CellSample> at(Cell c) const { return by_cell_[index(c)]; }

private:
    static std::size_t index(Cell c) {
        return static_cast<std::size_t>((c.overs_left - 1) * kTableWickets + c.wickets_lost);
    }

    std::vector<std::vector<CellSample>> by_cell_;
};

/// Correct predictions among `samples` when their cell holds `tenths`.
inline long cell_fitness(std::span<const CellSample> samples, int tenths) {
    long ok = 0;
    for (const auto& s : samples) {
        if (predict_winner(par_score_tenths(s.team1_runs, tenths), s.team2_runs).predicted == s.actual) ++ok;
    }
    return ok;
}

/// Candidate percentage -> tenths, clamped into [0, 100].
inline int candidate_tenths(double percent) {
    return std::clamp(to_tenths(std::clamp(percent, 0.0, 100.0)), 0, kFullResourceTenths);
}

/// The 200 cells (overs_left 1..50) x (wickets 0..3), column by column.
inline std::vector<Cell> optimization_scope() {
    std::vector<Cell> cells;
    for (int y = 0; y < kOptimizedWickets; ++y) {
        for (int x = kTableOvers; x >= 1; --x) cells.push_back({x, y});
    }
    return cells;
}

/// Counts snapshots scored by a cell in `scope` that are classified correctly
/// once `candidate_values[i]` replaces the base value of `scope[i]`.
/// Values outside [0, 100] are clamped before evaluation.
inline long fitness(std::span<const double> candidate_values, const Dataset& data, const ResourceTable& base,
                    std::span<const Cell> scope) {
    if (candidate_values.size() != scope.size()) throw ArgumentError("one candidate value per scope cell required");
    ResourceGrid work = base.grid();
    for (std::size_t i = 0; i < scope.size(); ++i) {
        if (!ResourceGrid::in_range(scope[i].overs_left, scope[i].wickets_lost)) {
            throw ArgumentError("scope cell out of range");
        }
        work.at(scope[i].overs_left, scope[i].wickets_lost) = candidate_tenths(candidate_values[i]);
    }
    const CellSamples samples(data);
    std::vector<bool> seen(static_cast<std::size_t>(kTableOvers * kTableWickets), false);
    long total = 0;
    for (const auto& c : scope) {
        const auto key = static_cast<std::size_t>((c.overs_left - 1) * kTableWickets + c.wickets_lost);
        if (seen[key]) continue;
        seen[key] = true;
        total += cell_fitness(samples.at(c), work.at(c.overs_left, c.wickets_lost));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Repair
// ---------------------------------------------------------------------------

/// Running minimum from the first element (overs_left = 50) downwards:
/// out[0] = in[0], out[i] = min(in[i], out[i - 1]).
inline std::vector<double> repair_monotone(std::span<const double> column) {
    std::vector<double> out(column.begin(), column.end());
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::min(out[i], out[i - 1]);
    return out;
}

namespace detail {

inline void repair_columns(ResourceGrid& g) {
    for (int y = 0; y < kOptimizedWickets; ++y) {
        for (int x = kTableOvers - 1; x >= 1; --x) g.at(x, y) = std::min(g.at(x, y), g.at(x + 1, y));
    }
}

/// Raises edited columns so no column sits below the one to its right.
/// Cell-wise maxima of non-increasing columns stay non-increasing.
inline void repair_cross_wicket(ResourceGrid& g) {
    for (int y = kOptimizedWickets - 1; y >= 0; --y) {
        for (int x = 1; x <= kTableOvers; ++x) g.at(x, y) = std::max(g.at(x, y), g.at(x, y + 1));
    }
}

struct SwarmOutcome {
    std::vector<double> best;
    std::vector<long> trace;
};

/// Generic bounded PSO over `dims` dimensions. `score` maps a position to a
/// fitness; `project` (may be a no-op) is applied after every move.
template <typename Score, typename Project>
SwarmOutcome run_swarm(std::span<const double> base, const PsoConfig& cfg, Rng& rng, Score&& score,
                       Project&& project) {
    const std::size_t dims = base.size();
    const double vcap = cfg.v_max * 100.0;
    std::vector<Particle> swarm(static_cast<std::size_t>(cfg.swarm_size));
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        auto& pt = swarm[p];
        pt.position.resize(dims);
        pt.velocity.resize(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            pt.position[d] = p == 0 ? base[d]
                                    : rng.uniform(std::max(0.0, base[d] - cfg.init_radius),
                                                  std::min(100.0, base[d] + cfg.init_radius));
            pt.velocity[d] = rng.uniform(-vcap, vcap);
        }
        if (p != 0) project(pt.position);
        pt.best_position = pt.position;
        pt.best_fitness = score(pt.position);
    }
    std::size_t g = 0;
    for (std::size_t p = 1; p < swarm.size(); ++p) {
        if (swarm[p].best_fitness > swarm[g].best_fitness) g = p;
    }
    std::vector<double> gbest = swarm[g].best_position;
    long gbest_fitness = swarm[g].best_fitness;

    SwarmOutcome out;
    out.trace.push_back(gbest_fitness);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        for (auto& pt : swarm) {
            for (std::size_t d = 0; d < dims; ++d) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double v = cfg.inertia * pt.velocity[d] + cfg.c1 * r1 * (pt.best_position[d] - pt.position[d]) +
                           cfg.c2 * r2 * (gbest[d] - pt.position[d]);
                v = std::clamp(v, -vcap, vcap);
                pt.velocity[d] = v;
                pt.position[d] = std::clamp(pt.position[d] + v, 0.0, 100.0);
            }
            project(pt.position);
            const long f = score(pt.position);
            if (f > pt.best_fitness) {
                pt.best_fitness = f;
                pt.best_position = pt.position;
            }
        }
        // synchronous gbest update
        for (const auto& pt : swarm) {
            if (pt.best_fitness > gbest_fitness) {
                gbest_fitness = pt.best_fitness;
                gbest = pt.best_position;
            }
        }
        out.trace.push_back(gbest_fitness);
    }
    out.best = std::move(gbest);
    return out;
}

inline long grid_fitness(const ResourceGrid& g, const CellSamples& samples) {
    long total = 0;
    for (int y = 0; y < kOptimizedWickets; ++y) {
        for (int x = 1; x <= kTableOvers; ++x) total += cell_fitness(samples.at({x, y}), g.at(x, y));
    }
    return total;
}

}  // namespace detail

/// Re-fits wickets 0..3 of `base` on `data`.
inline OptimizationResult optimize(const Dataset& data, const ResourceTable& base, const PsoConfig& cfg) {
    cfg.validate();
    const CellSamples samples(data);
    const auto& base_grid = base.grid();

    std::vector<Cell> sampled;
    for (const auto& c : optimization_scope()) {
        if (!samples.at(c).empty()) sampled.push_back(c);
    }
    if (sampled.empty()) {
        throw ArgumentError("no snapshots with wickets_lost 0..3 before over 50 to optimize on");
    }

    ResourceGrid grid = base_grid;
    std::vector<long> trace(static_cast<std::size_t>(cfg.generations) + 1, 0);

    if (cfg.mode == PsoMode::PerCell) {
        std::vector<detail::SwarmOutcome> outcomes(sampled.size());
        parallel_for(sampled.size(), cfg.jobs, [&](std::size_t i) {
            const Cell c = sampled[i];
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(c.overs_left * 100 + c.wickets_lost)));
            const double start[1] = {base_grid.at(c.overs_left, c.wickets_lost) / 10.0};
            const auto cell_samples = samples.at(c);
            outcomes[i] = detail::run_swarm(
                start, cfg, rng,
                [&](const std::vector<double>& pos) { return cell_fitness(cell_samples, candidate_tenths(pos[0])); },
                [](std::vector<double>&) {});
        });
        for (std::size_t i = 0; i < sampled.size(); ++i) {
            grid.at(sampled[i].overs_left, sampled[i].wickets_lost) = candidate_tenths(outcomes[i].best[0]);
            for (std::size_t gen = 0; gen < trace.size(); ++gen) trace[gen] += outcomes[i].trace[gen];
        }
    } else {
        std::vector<std::vector<Cell>> rows(kOptimizedWickets);
        for (const auto& c : sampled) rows[static_cast<std::size_t>(c.wickets_lost)].push_back(c);
        std::vector<detail::SwarmOutcome> outcomes(kOptimizedWickets);
        parallel_for(kOptimizedWickets, cfg.jobs, [&](std::size_t y) {
            const auto& cells = rows[y];
            if (cells.empty()) return;
            std::vector<double> start;
            for (const auto& c : cells) start.push_back(base_grid.at(c.overs_left, c.wickets_lost) / 10.0);
            // full column (overs_left 50..1) in percent, used to apply the repair in context
            std::vector<double> column;
            for (int x = kTableOvers; x >= 1; --x) column.push_back(base_grid.at(x, static_cast<int>(y)) / 10.0);
            auto project = [&](std::vector<double>& pos) {
                if (!cfg.monotone) return;
                auto full = column;
                for (std::size_t d = 0; d < cells.size(); ++d) {
                    full[static_cast<std::size_t>(kTableOvers - cells[d].overs_left)] = pos[d];
                }
                const auto fixed = repair_monotone(full);
                for (std::size_t d = 0; d < cells.size(); ++d) {
                    pos[d] = fixed[static_cast<std::size_t>(kTableOvers - cells[d].overs_left)];
                }
            };
            auto score = [&](const std::vector<double>& pos) {
                long f = 0;
                for (std::size_t d = 0; d < cells.size(); ++d) f += cell_fitness(samples.at(cells[d]), candidate_tenths(pos[d]));
                return f;
            };
            Rng rng(derive_seed(cfg.seed, 1000 + y));
            outcomes[y] = detail::run_swarm(start, cfg, rng, score, project);
        });
        for (std::size_t y = 0; y < outcomes.size(); ++y) {
            if (rows[y].empty()) {
                continue;
            }
            for (std::size_t d = 0; d < rows[y].size(); ++d) {
                grid.at(rows[y][d].overs_left, rows[y][d].wickets_lost) = candidate_tenths(outcomes[y].best[d]);
            }
            for (std::size_t gen = 0; gen < trace.size(); ++gen) trace[gen] += outcomes[y].trace[gen];
        }
    }

    if (cfg.monotone) {
        detail::repair_columns(grid);
        if (cfg.cross_wicket) detail::repair_cross_wicket(grid);
    }

    OptimizationResult result{base, 0, 0, std::move(trace), false};
    result.baseline_fitness = detail::grid_fitness(base_grid, samples);
    result.optimized_fitness = detail::grid_fitness(grid, samples);
    if (result.optimized_fitness < result.baseline_fitness) {
        grid = base_grid;
        result.optimized_fitness = result.baseline_fitness;
        result.reverted_to_base = true;
    }
    const bool checkable = cfg.monotone && cfg.cross_wicket && base.validated();
    result.optimized_table = checkable ? ResourceTable::from_grid(grid) : ResourceTable::unchecked(grid);
    return result;
}

// ---------------------------------------------------------------------------
// Base vs optimized comparison
// ---------------------------------------------------------------------------

struct TableComparisonRow {
    OverSelection selection;
    std::size_t n_samples = 0;
    std::size_t base_correct = 0;
    std::size_t optimized_correct = 0;

    double base_accuracy() const { return static_cast<double>(base_correct) / static_cast<double>(n_samples); }
    double optimized_accuracy() const {
        return static_cast<double>(optimized_correct) / static_cast<double>(n_samples);
    }
};

/// The eleven selections of the table comparison: four checkpoints, seven ranges.
inline std::vector<OverSelection> comparison_selections() {
    std::vector<OverSelection> out = checkpoint_selections();
    const auto& r = range_selections();
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline std::vector<TableComparisonRow> compare_tables(const Dataset& data, const ResourceTable& base,
                                                      const ResourceTable& optimized,
                                                      std::span<const OverSelection> selections) {
    std::vector<TableComparisonRow> rows;
    for (const auto& sel : selections) {
        const auto a = evaluate(data, base, sel);
        const auto b = evaluate(data, optimized, sel);
        rows.push_back({sel, a.n_samples, a.n_correct, b.n_correct});
    }
    return rows;
}

inline void write_comparison(std::ostream& out, std::span<const TableComparisonRow> rows) {
    out << "selection,n_samples,base_accuracy,optimized_accuracy\n";
    for (const auto& r : rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f", r.n_samples, r.base_accuracy(), r.optimized_accuracy());
        out << r.selection.label() << ',' << buf << '\n';
    }
}

}  // namespace dlsml
