#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "dlsml/classifiers/examples.hpp"
#include "dlsml/core/rng.hpp"

namespace dlsml {

struct NeuralNetParams {
    int hidden = 8;
    double learning_rate = 0.1;
    int epochs = 200;
};

/// Per-feature affine map to zero mean and unit variance, fitted on the
/// training set. Only the numeric features are touched.
struct Standardizer {
    std::array<double, kNumFeatures> mean{};
    std::array<double, kNumFeatures> scale{1, 1, 1, 1, 1, 1};

    static Standardizer fit(std::span<const LabeledExample> train) {
        Standardizer s;
        const double n = static_cast<double>(train.size());
        for (const auto& ex : train) {
            const auto x = ex.features();
            for (std::size_t j = 0; j < kNumNumericFeatures; ++j) s.mean[j] += x[j] / n;
        }
        std::array<double, kNumFeatures> var{};
        for (const auto& ex : train) {
            const auto x = ex.features();
            for (std::size_t j = 0; j < kNumNumericFeatures; ++j) var[j] += (x[j] - s.mean[j]) * (x[j] - s.mean[j]) / n;
        }
        for (std::size_t j = 0; j < kNumNumericFeatures; ++j) s.scale[j] = var[j] > 0 ? std::sqrt(var[j]) : 1.0;
        return s;
    }

    FeatureVector apply(const FeatureVector& x) const {
        FeatureVector z = x;
        for (std::size_t j = 0; j < kNumNumericFeatures; ++j) z[j] = (x[j] - mean[j]) / scale[j];
        return z;
    }
};

inline double sigmoid(double z) {
    return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

/// 6 -> hidden (sigmoid) -> 1 (sigmoid) network with cross-entropy loss.
/// Parameters are stored flat: W1 (hidden x 6, row-major), b1, w2, b2.
struct Mlp {
    int hidden = 0;
    std::vector<double> params;

    explicit Mlp(int hidden_units = 8) : hidden(hidden_units), params(size_for(hidden_units), 0.0) {}

    static std::size_t size_for(int h) {
        const auto hu = static_cast<std::size_t>(h);
        return hu * kNumFeatures + hu + hu + 1;
    }

    /// Output pre-activation; fills hidden activations when given.
    double logit(const FeatureVector& x, std::span<double> act = {}) const {
        const auto h = static_cast<std::size_t>(hidden);
        const double* w1 = params.data();
        const double* b1 = w1 + h * kNumFeatures;
        const double* w2 = b1 + h;
        const double b2 = w2[h];
        double out = b2;
        for (std::size_t k = 0; k < h; ++k) {
            double a = b1[k];
            for (std::size_t j = 0; j < kNumFeatures; ++j) a += w1[k * kNumFeatures + j] * x[j];
            const double s = sigmoid(a);
            if (!act.empty()) act[k] = s;
            out += w2[k] * s;
        }
        return out;
    }

    double probability(const FeatureVector& x) const { return sigmoid(logit(x)); }

    /// Binary cross-entropy for target y in {0, 1}, computed from the logit.
    double loss(const FeatureVector& x, double y) const {
        const double z = logit(x);
        return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y * z;
    }

    /// d loss / d params by backpropagation.
    std::vector<double> gradient(const FeatureVector& x, double y) const {
        const auto h = static_cast<std::size_t>(hidden);
        std::vector<double> act(h);
        const double z = logit(x, act);
        const double delta_out = sigmoid(z) - y;
        std::vector<double> g(params.size(), 0.0);
        const double* w2 = params.data() + h * kNumFeatures + h;
        double* gw1 = g.data();
        double* gb1 = gw1 + h * kNumFeatures;
        double* gw2 = gb1 + h;
        for (std::size_t k = 0; k < h; ++k) {
            gw2[k] = delta_out * act[k];
            const double delta_h = delta_out * w2[k] * act[k] * (1.0 - act[k]);
            gb1[k] = delta_h;
            for (std::size_t j = 0; j < kNumFeatures; ++j) gw1[k * kNumFeatures + j] = delta_h * x[j];
        }
        gw2[h] = delta_out;
        return g;
    }

    /// Uniform in +-1/sqrt(fan_in) for each layer.
    void initialize(Rng& rng) {
        const auto h = static_cast<std::size_t>(hidden);
        const double r1 = 1.0 / std::sqrt(static_cast<double>(kNumFeatures));
        const double r2 = 1.0 / std::sqrt(static_cast<double>(h));
        for (std::size_t i = 0; i < h * kNumFeatures + h; ++i) params[i] = rng.uniform(-r1, r1);
        for (std::size_t i = h * kNumFeatures + h; i < params.size(); ++i) params[i] = rng.uniform(-r2, r2);
    }
};

class NeuralNetModel {
public:
    /// Plain per-example SGD; the visiting order is reshuffled every epoch.
    static NeuralNetModel fit(std::span<const LabeledExample> train, const NeuralNetParams& params,
                              std::uint64_t seed) {
        if (train.empty()) throw ArgumentError("neural net needs at least one training example");
        if (params.hidden < 1 || params.epochs < 1 || !(params.learning_rate > 0)) {
            throw ArgumentError("neural net: hidden >= 1, epochs >= 1 and learning_rate > 0 required");
        }
        NeuralNetModel m;
        m.scaler_ = Standardizer::fit(train);
        m.net_ = Mlp(params.hidden);
        Rng rng(seed);
        m.net_.initialize(rng);

        std::vector<FeatureVector> xs;
        std::vector<double> ys;
        xs.reserve(train.size());
        for (const auto& ex : train) {
            xs.push_back(m.scaler_.apply(ex.features()));
            ys.push_back(label_index(ex.label));
        }
        std::vector<std::size_t> order(train.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            rng.shuffle(order.begin(), order.end());
            double total = 0.0;
            for (auto i : order) {
                total += m.net_.loss(xs[i], ys[i]);
                const auto g = m.net_.gradient(xs[i], ys[i]);
                for (std::size_t p = 0; p < g.size(); ++p) m.net_.params[p] -= params.learning_rate * g[p];
            }
            m.epoch_loss_.push_back(total / static_cast<double>(order.size()));
        }
        return m;
    }

    double probability_team2(const FeatureVector& x) const { return net_.probability(scaler_.apply(x)); }

    Side predict(const FeatureVector& x) const { return probability_team2(x) > 0.5 ? Side::Team2 : Side::Team1; }
    Side predict(const LabeledExample& ex) const { return predict(ex.features()); }

    /// Mean training loss per epoch, as accumulated during the pass.
    const std::vector<double>& epoch_loss() const noexcept { return epoch_loss_; }
    const Mlp& network() const noexcept { return net_; }

private:
    Standardizer scaler_;
    Mlp net_;
    std::vector<double> epoch_loss_;
};

}  // namespace dlsml
