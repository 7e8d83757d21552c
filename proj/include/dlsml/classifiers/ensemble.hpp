#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dlsml/classifiers/decision_tree.hpp"
#include "dlsml/classifiers/naive_bayes.hpp"
#include "dlsml/core/rng.hpp"

namespace dlsml {

/// Majority vote; an even split goes to Team1.
inline Side majority_vote(std::size_t team1_votes, std::size_t team2_votes) {
    return team2_votes > team1_votes ? Side::Team2 : Side::Team1;
}

/// n draws with replacement from [0, n).
inline std::vector<std::size_t> bootstrap_rows(std::size_t n, Rng& rng) {
    std::vector<std::size_t> rows(n);
    for (auto& r : rows) r = rng.below(n);
    return rows;
}

class BaggedNaiveBayesModel {
public:
    BaggedNaiveBayesModel() = default;
    explicit BaggedNaiveBayesModel(std::vector<NaiveBayesModel> members) : members_(std::move(members)) {}

    static BaggedNaiveBayesModel fit(std::span<const LabeledExample> train, int bags, const NaiveBayesParams& nb,
                                     std::uint64_t seed) {
        if (bags < 1) throw ArgumentError("bagging needs at least one bag");
        if (train.empty()) throw ArgumentError("bagging needs at least one training example");
        std::vector<NaiveBayesModel> members;
        std::vector<LabeledExample> sample(train.size());
        for (int b = 0; b < bags; ++b) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
            const auto rows = bootstrap_rows(train.size(), rng);
            for (std::size_t i = 0; i < rows.size(); ++i) sample[i] = train[rows[i]];
            members.push_back(NaiveBayesModel::fit(sample, nb));
        }
        return BaggedNaiveBayesModel(std::move(members));
    }

    Side predict(const FeatureVector& x) const {
        std::size_t v[2] = {0, 0};
        for (const auto& m : members_) ++v[label_index(m.predict(x))];
        return majority_vote(v[0], v[1]);
    }
    Side predict(const LabeledExample& ex) const { return predict(ex.features()); }

    const std::vector<NaiveBayesModel>& members() const noexcept { return members_; }

private:
    std::vector<NaiveBayesModel> members_;
};

struct ForestParams {
    int trees = 100;
    bool bootstrap = true;
    TreeParams tree{3, 2, 0};
};

class RandomForestModel {
public:
    static RandomForestModel fit(std::span<const LabeledExample> train, const ForestParams& params,
                                 std::uint64_t seed) {
        if (params.trees < 1) throw ArgumentError("random forest needs at least one tree");
        if (train.empty()) throw ArgumentError("random forest needs at least one training example");
        RandomForestModel f;
        for (int t = 0; t < params.trees; ++t) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
            std::vector<std::size_t> rows;
            if (params.bootstrap) {
                rows = bootstrap_rows(train.size(), rng);
            } else {
                rows.resize(train.size());
                for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
            }
            f.trees_.push_back(DecisionTree::fit(train, std::move(rows), params.tree, rng));
        }
        return f;
    }

    Side predict(const FeatureVector& x) const {
        std::size_t v[2] = {0, 0};
        for (const auto& t : trees_) ++v[label_index(t.predict(x))];
        return majority_vote(v[0], v[1]);
    }
    Side predict(const LabeledExample& ex) const { return predict(ex.features()); }

    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }

private:
    std::vector<DecisionTree> trees_;
};

}  // namespace dlsml
