#include <gtest/gtest.h>

#include <set>

#include "dlsml/classifiers/protocol.hpp"
#include "test_support.hpp"

using namespace dlsml;
namespace t = dlsml::testing;

namespace {

const ResourceTable& table() { return ResourceTable::default_table(); }

std::vector<LabeledExample> labelled(std::size_t n, std::size_t n_team2) {
    std::vector<LabeledExample> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i].team1_runs = static_cast<int>(200 + i);
        v[i].overs_played = static_cast<int>(1 + i % 49);
        v[i].label = i < n_team2 ? Side::Team2 : Side::Team1;
    }
    return v;
}

}  // namespace

TEST(Examples, OneRowPerSelectedSnapshotWithRecomputedDl) {
    const auto d = synth_corpus(3, 300, table());
    const auto sel = OverSelection::range(20, 30);
    const auto ex = make_examples(d, table(), sel);
    EXPECT_EQ(ex.size(), t::brute_force_recount(d, table(), 20, 30).n);
    for (const auto& e : ex) {
        EXPECT_GE(e.overs_played, 20);
        EXPECT_LT(e.overs_played, 30);
        const int par = t::brute_par(e.team1_runs, table().percent(50 - e.overs_played, e.team2_wickets));
        EXPECT_EQ(e.dl_prediction, e.team2_runs >= par ? Side::Team2 : Side::Team1);
    }
    EXPECT_THROW(make_examples(d, table(), OverSelection::checkpoint(50)), EmptySelectionError);
}

TEST(Split, SizesForTen) {
    const auto s = split_70_30(labelled(10, 5), 1);
    EXPECT_EQ(s.train.size(), 7u);
    EXPECT_EQ(s.test.size(), 3u);
    EXPECT_THROW(split_70_30(labelled(9, 4), 1), ArgumentError);
}

TEST(Split, DeterministicAndSeedSensitive) {
    const auto v = labelled(200, 80);
    const auto a = split_70_30(v, 42);
    const auto b = split_70_30(v, 42);
    EXPECT_EQ(a.train, b.train);
    EXPECT_EQ(a.test, b.test);
    EXPECT_NE(a.train, split_70_30(v, 43).train);
}

TEST(Split, SingleClassStillSplits) {
    const auto s = split_70_30(labelled(20, 20), 9);
    EXPECT_EQ(s.train.size(), 14u);
    EXPECT_EQ(s.test.size(), 6u);
}

TEST(Split, PartitionPropertiesAcrossSizes) {
    for (std::size_t n : {10u, 11u, 13u, 57u, 100u, 333u}) {
        for (std::size_t k : {std::size_t{2}, n / 3, n / 2, n - 2}) {
            const auto v = labelled(n, k);
            const auto s = split_70_30(v, n * 31 + k);
            ASSERT_EQ(s.train.size(), train_size(n));
            ASSERT_EQ(s.train.size() + s.test.size(), n);
            std::multiset<int> ids;
            for (const auto& e : s.train) ids.insert(e.team1_runs);
            for (const auto& e : s.test) ids.insert(e.team1_runs);
            ASSERT_EQ(std::set<int>(ids.begin(), ids.end()).size(), n) << "partitions overlap";
            for (Side c : {Side::Team1, Side::Team2}) {
                auto has = [&](const std::vector<LabeledExample>& part) {
                    return std::any_of(part.begin(), part.end(), [&](const auto& e) { return e.label == c; });
                };
                EXPECT_TRUE(has(s.train) && has(s.test)) << n << "/" << k;
            }
        }
    }
}

TEST(NaiveBayes, MatchesBayesRuleOracle) {
    const auto train = t::toy_examples();
    const auto model = NaiveBayesModel::fit(train);
    for (const auto& ex : train) {
        const auto got = model.posterior(ex.features());
        const auto want = t::bayes_rule_posterior(train, ex.features());
        EXPECT_NEAR(got[0], want[0], 1e-9);
        EXPECT_NEAR(got[1], want[1], 1e-9);
        EXPECT_NEAR(got[0] + got[1], 1.0, 1e-12);
    }
}

TEST(NaiveBayes, VarianceFloorAndMissingClass) {
    auto v = labelled(12, 0);
    const auto m = NaiveBayesModel::fit(v);
    EXPECT_DOUBLE_EQ(m.variance(0, 1), 1e-9);  // team1_wickets constant
    EXPECT_EQ(m.predict(v[0]), Side::Team1);
    EXPECT_EQ(m.posterior(v[0].features())[1], 0.0);
}

TEST(NeuralNet, GradientMatchesCentralDifferences) {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Mlp net(8);
        net.initialize(rng);
        FeatureVector x;
        for (std::size_t j = 0; j < 5; ++j) x[j] = rng.normal(0, 1);
        x[5] = rng.bernoulli(0.5) ? 1 : 0;
        const double y = rng.bernoulli(0.5) ? 1 : 0;
        EXPECT_LT(t::max_relative_error(net.gradient(x, y), t::numeric_gradient(net, x, y)), 1e-4);
    }
}

TEST(NeuralNet, TrainingLossStaysFiniteAndFalls) {
    const auto ex = make_examples(synth_corpus(5, 200, table()), table(), OverSelection::checkpoint(30));
    NeuralNetParams p;
    p.epochs = 50;
    const auto m = NeuralNetModel::fit(ex, p, 1);
    ASSERT_EQ(m.epoch_loss().size(), 50u);
    for (double l : m.epoch_loss()) EXPECT_TRUE(std::isfinite(l));
    EXPECT_LT(m.epoch_loss().back(), m.epoch_loss().front());
}

TEST(Forest, SingleUnbaggedTreeWithAllFeaturesIsTheTree) {
    const auto ex = make_examples(synth_corpus(5, 150, table()), table(), OverSelection::range(30, 40));
    ForestParams fp;
    fp.trees = 1;
    fp.bootstrap = false;
    fp.tree.max_features = 6;
    const auto forest = RandomForestModel::fit(ex, fp, 4);
    Rng rng(0);
    const auto tree = DecisionTree::fit(ex, fp.tree, rng);
    EXPECT_EQ(forest.trees().front(), tree);
    for (const auto& e : ex) EXPECT_EQ(forest.predict(e), tree.predict(e));
}

TEST(Tree, FitsSeparableDataExactly) {
    const auto ex = make_examples(t::consistent_corpus(), table(), OverSelection::checkpoint(40));
    Rng rng(0);
    TreeParams p;
    p.min_leaf = 1;
    const auto tree = DecisionTree::fit(ex, p, rng);
    for (const auto& e : ex) ASSERT_EQ(tree.predict(e), e.label);
}

TEST(AllKinds, SingleLabelTrainingPredictsThatLabel) {
    for (Side only : {Side::Team1, Side::Team2}) {
        auto v = labelled(30, only == Side::Team2 ? 30 : 0);
        for (auto kind : kAllClassifierKinds) {
            Hyperparameters hp;
            hp.neural_net.epochs = 30;
            hp.forest.trees = 5;
            const auto m = train(kind, v, hp, 3);
            for (const auto& e : v) EXPECT_EQ(m.predict(e), only) << to_string(kind);
        }
    }
}

TEST(Bagging, EvenSplitGoesToTeam1) {
    auto a = labelled(10, 0);
    auto b = labelled(10, 10);
    const BaggedNaiveBayesModel m({NaiveBayesModel::fit(a), NaiveBayesModel::fit(b)});
    EXPECT_EQ(m.predict(a[0]), Side::Team1);
    EXPECT_EQ(majority_vote(3, 3), Side::Team1);
    EXPECT_EQ(majority_vote(3, 4), Side::Team2);
}

TEST(KindNames, RoundTrip) {
    for (auto k : kAllClassifierKinds) EXPECT_EQ(parse_classifier_kind(to_string(k)), k);
    EXPECT_FALSE(parse_classifier_kind("svm"));
}

namespace {

Hyperparameters light() {
    Hyperparameters hp;
    hp.neural_net.epochs = 20;
    hp.bags = 5;
    hp.forest.trees = 10;
    return hp;
}

}  // namespace

TEST(Protocol, ShapeAndDeterminism) {
    const auto d = synth_corpus(8, 200, table());
    const auto sels = checkpoint_selections();
    const auto a = evaluate_protocol(d, table(), sels, kAllClassifierKinds, 77, light());
    ASSERT_EQ(a.rows.size(), sels.size() * 4);
    ASSERT_EQ(a.best.size(), sels.size());
    for (std::size_t s = 0; s < sels.size(); ++s) {
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& r = a.rows[s * 4 + k];
            EXPECT_EQ(r.selection, sels[s]);
            EXPECT_EQ(r.kind, kAllClassifierKinds[k]);
            EXPECT_EQ(r.n_samples, a.rows[s * 4].n_samples);
            EXPECT_EQ(r.dl_correct, a.rows[s * 4].dl_correct);
            EXPECT_LE(r.classifier_correct, a.best[s].classifier_correct);
        }
    }
    const auto b = evaluate_protocol(d, table(), sels, kAllClassifierKinds, 77, light(), 3);
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].classifier_correct, b.rows[i].classifier_correct);
}

TEST(Protocol, DlBaselineIsMeasuredOnTheHeldOutPart) {
    const auto d = synth_corpus(8, 300, table());
    const auto sel = OverSelection::checkpoint(30);
    const std::array sels{sel};
    const std::array kinds{ClassifierKind::NaiveBayes};
    const auto r = evaluate_protocol(d, table(), sels, kinds, 5, light());
    const auto ex = make_examples(d, table(), sel);
    const auto split = split_70_30(ex, derive_seed(5, "split:30"));
    std::size_t correct = 0;
    for (const auto& e : split.test) correct += e.dl_prediction == e.label;
    EXPECT_EQ(r.rows[0].n_samples, split.test.size());
    EXPECT_EQ(r.rows[0].dl_correct, correct);
}

TEST(Protocol, BestClassifierTracksDlOnConsistentCorpus) {
    const std::array sels{OverSelection::checkpoint(40)};
    const auto r = evaluate_protocol(t::consistent_corpus(), table(), sels, kAllClassifierKinds, 2);
    EXPECT_GE(r.best[0].classifier_accuracy(), r.best[0].dl_accuracy() - 0.02);
}
