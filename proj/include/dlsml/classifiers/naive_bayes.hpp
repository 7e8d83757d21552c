#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "dlsml/classifiers/examples.hpp"

namespace dlsml {

struct NaiveBayesParams {
    /// Lower bound on every class-conditional variance.
    double var_floor = 1e-9;
    /// Additive (Laplace) smoothing for the dl_prediction likelihood.
    double alpha = 1.0;
};

/// Gaussian likelihoods for the five numeric features, a smoothed
/// categorical likelihood for the D/L prediction, class-frequency priors.
/// Variances are maximum-likelihood (divide by the class count).
class NaiveBayesModel {
public:
    static NaiveBayesModel fit(std::span<const LabeledExample> train, const NaiveBayesParams& params = {}) {
        if (train.empty()) throw ArgumentError("naive Bayes needs at least one training example");
        NaiveBayesModel m;
        std::array<std::array<double, kNumNumericFeatures>, 2> sum{}, sq{};
        std::array<std::array<double, 2>, 2> dl_count{};
        for (const auto& ex : train) {
            const auto c = static_cast<std::size_t>(label_index(ex.label));
            const auto x = ex.features();
            m.count_[c] += 1;
            for (std::size_t j = 0; j < kNumNumericFeatures; ++j) sum[c][j] += x[j];
            dl_count[c][x[kNumNumericFeatures] > 0.5 ? 1 : 0] += 1;
        }
        for (const auto& ex : train) {
            const auto c = static_cast<std::size_t>(label_index(ex.label));
            const auto x = ex.features();
            for (std::size_t j = 0; j < kNumNumericFeatures; ++j) {
                const double d = x[j] - sum[c][j] / m.count_[c];
                sq[c][j] += d * d;
            }
        }
        const double n = static_cast<double>(train.size());
        for (std::size_t c = 0; c < 2; ++c) {
            if (m.count_[c] == 0) continue;
            m.log_prior_[c] = std::log(m.count_[c] / n);
            for (std::size_t j = 0; j < kNumNumericFeatures; ++j) {
                m.mean_[c][j] = sum[c][j] / m.count_[c];
                m.var_[c][j] = std::max(sq[c][j] / m.count_[c], params.var_floor);
            }
            for (std::size_t v = 0; v < 2; ++v) {
                m.log_dl_[c][v] = std::log((dl_count[c][v] + params.alpha) / (m.count_[c] + 2.0 * params.alpha));
            }
        }
        return m;
    }

    /// log P(class) + log P(x | class); -inf for a class absent from training.
    double log_joint(int cls, const FeatureVector& x) const {
        const auto c = static_cast<std::size_t>(cls);
        if (count_[c] == 0) return -std::numeric_limits<double>::infinity();
        double lp = log_prior_[c];
        for (std::size_t j = 0; j < kNumNumericFeatures; ++j) {
            const double d = x[j] - mean_[c][j];
            lp += -0.5 * std::log(2.0 * std::numbers::pi * var_[c][j]) - d * d / (2.0 * var_[c][j]);
        }
        return lp + log_dl_[c][x[kNumNumericFeatures] > 0.5 ? 1 : 0];
    }

    /// {P(Team1 | x), P(Team2 | x)}.
    std::array<double, 2> posterior(const FeatureVector& x) const {
        const double a = log_joint(0, x);
        const double b = log_joint(1, x);
        const double top = std::max(a, b);
        const double ea = std::exp(a - top);
        const double eb = std::exp(b - top);
        return {ea / (ea + eb), eb / (ea + eb)};
    }

    Side predict(const FeatureVector& x) const {
        const auto p = posterior(x);
        return p[1] > p[0] ? Side::Team2 : Side::Team1;
    }

    Side predict(const LabeledExample& ex) const { return predict(ex.features()); }

    double class_count(int cls) const { return count_[static_cast<std::size_t>(cls)]; }
    double mean(int cls, std::size_t feature) const { return mean_[static_cast<std::size_t>(cls)][feature]; }
    double variance(int cls, std::size_t feature) const { return var_[static_cast<std::size_t>(cls)][feature]; }

private:
    std::array<double, 2> count_{};
    std::array<double, 2> log_prior_{};
    std::array<std::array<double, kNumNumericFeatures>, 2> mean_{};
    std::array<std::array<double, kNumNumericFeatures>, 2> var_{};
    std::array<std::array<double, 2>, 2> log_dl_{};
};

}  // namespace dlsml
