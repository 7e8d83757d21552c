#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace dlsml;
namespace t = dlsml::testing;

namespace {

const ResourceTable& table() { return ResourceTable::default_table(); }

const Dataset& hidden_corpus() {
    static const Dataset d = synth_corpus(11, 2000, t::hidden_table());
    return d;
}

const Dataset& small_corpus() {
    static const Dataset d = synth_corpus(4, 300, table());
    return d;
}

std::vector<double> values_of(const ResourceTable& tab, std::span<const Cell> scope) {
    std::vector<double> v;
    for (const auto& c : scope) v.push_back(tab.percent(c.overs_left, c.wickets_lost));
    return v;
}

std::vector<Cell> full_scope() {
    std::vector<Cell> cells;
    for (int x = 1; x <= 50; ++x) {
        for (int y = 0; y < 10; ++y) cells.push_back({x, y});
    }
    return cells;
}

}  // namespace

TEST(Repair, RunningMinimum) {
    const std::vector<double> in{90, 95, 80};
    EXPECT_EQ(repair_monotone(in), (std::vector<double>{90, 90, 80}));
    const std::vector<double> flat(7, 42.0);
    EXPECT_EQ(repair_monotone(flat), flat);
    EXPECT_TRUE(repair_monotone(std::vector<double>{}).empty());
}

TEST(Repair, IdempotentAndNonIncreasing) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(50);
        for (auto& x : v) x = rng.uniform(0, 100);
        const auto once = repair_monotone(v);
        EXPECT_EQ(repair_monotone(once), once);
        for (std::size_t i = 0; i < v.size(); ++i) {
            EXPECT_LE(once[i], v[i]);
            if (i) {
                EXPECT_LE(once[i], once[i - 1]);
            }
        }
    }
}

TEST(Fitness, FullScopeEqualsWholeRangeAccuracy) {
    const auto scope = full_scope();
    const auto& d = small_corpus();
    const long f = fitness(values_of(table(), scope), d, table(), scope);
    EXPECT_EQ(static_cast<std::size_t>(f), evaluate(d, table(), OverSelection::range(0, 50)).n_correct);
    EXPECT_EQ(static_cast<std::size_t>(f), t::brute_force_recount(d, table(), 0, 50).correct);
}

TEST(Fitness, EmptyScopeIsZero) {
    EXPECT_EQ(fitness({}, small_corpus(), table(), {}), 0);
    const std::vector<double> one{50.0};
    EXPECT_THROW(fitness(one, small_corpus(), table(), {}), ArgumentError);
}

TEST(Fitness, GeneratingTableScoresAtLeastTheDefault) {
    const auto scope = optimization_scope();
    const auto& d = hidden_corpus();
    EXPECT_GE(fitness(values_of(t::hidden_table(), scope), d, table(), scope),
              fitness(values_of(table(), scope), d, table(), scope));
}

TEST(Fitness, OutOfRangeCandidatesAreClamped) {
    const std::vector<Cell> scope{{10, 0}};
    const auto& d = small_corpus();
    EXPECT_EQ(fitness(std::vector<double>{-5.0}, d, table(), scope),
              fitness(std::vector<double>{0.0}, d, table(), scope));
    EXPECT_EQ(fitness(std::vector<double>{140.0}, d, table(), scope),
              fitness(std::vector<double>{100.0}, d, table(), scope));
}

TEST(Swarm, PositionsStayInBoundsAndTraceNeverFalls) {
    PsoConfig cfg;
    cfg.v_max = 1.0;
    cfg.init_radius = 60;
    Rng rng(8);
    const std::vector<double> start{5.0, 50.0, 97.0};
    bool in_bounds = true;
    auto score = [&](const std::vector<double>& p) {
        for (double x : p) in_bounds = in_bounds && x >= 0.0 && x <= 100.0;
        return static_cast<long>(p[0] * 3 - p[1] + p[2]);
    };
    const auto out = detail::run_swarm(start, cfg, rng, score, [](std::vector<double>&) {});
    EXPECT_TRUE(in_bounds);
    ASSERT_EQ(out.trace.size(), 51u);
    for (std::size_t g = 1; g < out.trace.size(); ++g) EXPECT_GE(out.trace[g], out.trace[g - 1]);
    EXPECT_GE(out.trace.front(), score(start));
}

TEST(Optimize, TraceMonotoneAndNoRegression) {
    PsoConfig cfg;
    cfg.seed = 1;
    const auto r = optimize(small_corpus(), table(), cfg);
    ASSERT_EQ(r.fitness_trace.size(), 51u);
    for (std::size_t g = 1; g < r.fitness_trace.size(); ++g) EXPECT_GE(r.fitness_trace[g], r.fitness_trace[g - 1]);
    EXPECT_GE(r.optimized_fitness, r.baseline_fitness);
    EXPECT_TRUE(r.optimized_table.validated());
    EXPECT_NO_THROW(ResourceTable::from_grid(r.optimized_table.grid()));
}

TEST(Optimize, LeavesOtherColumnsAlone) {
    PsoConfig cfg;
    cfg.seed = 2;
    const auto r = optimize(small_corpus(), table(), cfg);
    for (int x = 1; x <= 50; ++x) {
        for (int y = kOptimizedWickets; y < 10; ++y) EXPECT_EQ(r.optimized_table.tenths(x, y), table().tenths(x, y));
    }
}

TEST(Optimize, Deterministic) {
    for (auto mode : {PsoMode::PerCell, PsoMode::PerColumn}) {
        PsoConfig cfg;
        cfg.seed = 3;
        cfg.mode = mode;
        const auto a = optimize(small_corpus(), table(), cfg);
        cfg.jobs = 4;
        const auto b = optimize(small_corpus(), table(), cfg);
        EXPECT_EQ(a.optimized_table, b.optimized_table);
        EXPECT_EQ(a.fitness_trace, b.fitness_trace);
    }
}

TEST(Optimize, PerColumnKeepsColumnsMonotone) {
    PsoConfig cfg;
    cfg.seed = 4;
    cfg.mode = PsoMode::PerColumn;
    const auto r = optimize(small_corpus(), table(), cfg);
    for (int y = 0; y < kOptimizedWickets; ++y) EXPECT_TRUE(column_is_monotone(r.optimized_table.grid(), y));
    EXPECT_GE(r.optimized_fitness, r.baseline_fitness);
}

TEST(Optimize, UnconstrainedNeverScoresBelowConstrained) {
    PsoConfig cfg;
    cfg.seed = 5;
    const auto constrained = optimize(small_corpus(), table(), cfg);
    cfg.monotone = false;
    const auto free = optimize(small_corpus(), table(), cfg);
    EXPECT_GE(free.optimized_fitness, constrained.optimized_fitness);
    EXPECT_FALSE(free.optimized_table.validated());
}

TEST(Optimize, AlreadyPerfectTableIsKept) {
    // every snapshot already agrees with the default table at over 40
    MatchRecord m{"P1", {}, "India", "Kenya", "India", 250, 7, Side::Team2};
    const int par = par_score(250, table(), 10, 0);
    const auto d = Dataset::build({m}, {{"P1", 40, par + 5, 0}});
    PsoConfig cfg;
    const auto r = optimize(d, table(), cfg);
    EXPECT_EQ(r.optimized_fitness, r.baseline_fitness);
    const auto rows = compare_tables(d, table(), r.optimized_table, std::span(checkpoint_selections()).subspan(3, 1));
    EXPECT_EQ(rows[0].base_correct, rows[0].optimized_correct);
}

TEST(Optimize, RejectsBadConfigAndEmptyScope) {
    PsoConfig cfg;
    cfg.swarm_size = 1;
    EXPECT_THROW(optimize(small_corpus(), table(), cfg), ArgumentError);
    MatchRecord m{"Q", {}, "India", "Kenya", "India", 250, 7, Side::Team2};
    const auto d = Dataset::build({m}, {{"Q", 30, 100, 6}});
    EXPECT_THROW(optimize(d, table(), PsoConfig{}), ArgumentError);
}

TEST(Optimize, RecoversTowardsHiddenTable) {
    PsoConfig cfg;
    cfg.seed = 6;
    const auto& d = hidden_corpus();
    const auto r = optimize(d, table(), cfg);
    const auto rows = compare_tables(d, table(), r.optimized_table, checkpoint_selections());
    for (const auto& row : rows) EXPECT_GE(row.optimized_correct, row.base_correct) << row.selection.label();
}

TEST(Comparison, ElevenSelections) {
    const auto sels = comparison_selections();
    ASSERT_EQ(sels.size(), 11u);
    EXPECT_EQ(sels.front().label(), "10");
    EXPECT_EQ(sels.back().label(), "20-50");
}
