#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "dlsml/classifiers/ensemble.hpp"
#include "dlsml/classifiers/naive_bayes.hpp"
#include "dlsml/classifiers/neural_net.hpp"

namespace dlsml {

enum class ClassifierKind : std::uint8_t { NaiveBayes, NeuralNet, BaggedNaiveBayes, RandomForest };

inline constexpr std::array<ClassifierKind, 4> kAllClassifierKinds = {
    ClassifierKind::NaiveBayes, ClassifierKind::NeuralNet, ClassifierKind::BaggedNaiveBayes,
    ClassifierKind::RandomForest};

constexpr std::string_view to_string(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::NaiveBayes: return "NaiveBayes";
        case ClassifierKind::NeuralNet: return "NeuralNet";
        case ClassifierKind::BaggedNaiveBayes: return "BaggedNaiveBayes";
        case ClassifierKind::RandomForest: return "RandomForest";
    }
    return "?";
}

inline std::optional<ClassifierKind> parse_classifier_kind(std::string_view s) {
    for (auto k : kAllClassifierKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

struct Hyperparameters {
    NaiveBayesParams naive_bayes;
    NeuralNetParams neural_net;
    int bags = 25;
    ForestParams forest;
};

/// A trained model of any kind. Immutable; predict is deterministic.
class ClassifierModel {
public:
    using State = std::variant<NaiveBayesModel, NeuralNetModel, BaggedNaiveBayesModel, RandomForestModel>;

    explicit ClassifierModel(State s) : state_(std::move(s)) {}

    ClassifierKind kind() const { return static_cast<ClassifierKind>(state_.index()); }

    Side predict(const LabeledExample& ex) const {
        return std::visit([&](const auto& m) { return m.predict(ex.features()); }, state_);
    }

    const State& state() const noexcept { return state_; }

private:
    State state_;
};

inline ClassifierModel train(ClassifierKind kind, std::span<const LabeledExample> examples,
                             const Hyperparameters& hp, std::uint64_t seed) {
    if (examples.empty()) throw ArgumentError("training set is empty");
    switch (kind) {
        case ClassifierKind::NaiveBayes:
            return ClassifierModel(NaiveBayesModel::fit(examples, hp.naive_bayes));
        case ClassifierKind::NeuralNet:
            return ClassifierModel(NeuralNetModel::fit(examples, hp.neural_net, seed));
        case ClassifierKind::BaggedNaiveBayes:
            return ClassifierModel(BaggedNaiveBayesModel::fit(examples, hp.bags, hp.naive_bayes, seed));
        case ClassifierKind::RandomForest:
            return ClassifierModel(RandomForestModel::fit(examples, hp.forest, seed));
    }
    throw ArgumentError("unknown classifier kind");
}

inline Side predict(const ClassifierModel& model, const LabeledExample& ex) { return model.predict(ex); }

}  // namespace dlsml
