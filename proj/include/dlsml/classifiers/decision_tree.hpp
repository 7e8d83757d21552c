#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "dlsml/classifiers/examples.hpp"
#include "dlsml/core/rng.hpp"

namespace dlsml {

struct TreeParams {
    /// Features considered at each split; 0 or >= 6 means all of them.
    int max_features = 0;
    int min_leaf = 2;
    /// 0 means unlimited.
    int max_depth = 0;
};

/// Binary CART tree on Gini impurity. A sample goes left when
/// x[feature] <= threshold. Leaves predict the majority label (Team1 on ties).
class DecisionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        Side label = Side::Team1;
    };

    static DecisionTree fit(std::span<const LabeledExample> train, const TreeParams& params, Rng& rng) {
        std::vector<std::size_t> rows(train.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        return fit(train, rows, params, rng);
    }

    /// `rows` indexes into `train` and may repeat (bootstrap multiplicity).
    static DecisionTree fit(std::span<const LabeledExample> train, std::vector<std::size_t> rows,
                            const TreeParams& params, Rng& rng) {
        if (rows.empty()) throw ArgumentError("decision tree needs at least one training row");
        DecisionTree t;
        Builder b{t, params, rng, {}, {}};
        b.xs.reserve(train.size());
        b.ys.reserve(train.size());
        for (const auto& ex : train) {
            b.xs.push_back(ex.features());
            b.ys.push_back(label_index(ex.label));
        }
        b.grow(rows, 0);
        return t;
    }

    Side predict(const FeatureVector& x) const {
        int i = 0;
        while (nodes_[static_cast<std::size_t>(i)].feature >= 0) {
            const auto& n = nodes_[static_cast<std::size_t>(i)];
            i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes_[static_cast<std::size_t>(i)].label;
    }

    Side predict(const LabeledExample& ex) const { return predict(ex.features()); }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    friend bool operator==(const DecisionTree& a, const DecisionTree& b) {
        return std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(), b.nodes_.end(),
                          [](const Node& x, const Node& y) {
                              return x.feature == y.feature && x.threshold == y.threshold && x.left == y.left &&
                                     x.right == y.right && x.label == y.label;
                          });
    }

private:
    struct Builder {
        DecisionTree& tree;
        const TreeParams& params;
        Rng& rng;
        std::vector<FeatureVector> xs;
        std::vector<int> ys;

        static double gini(double a, double b) {
            const double n = a + b;
            if (n == 0) return 0.0;
            const double pa = a / n, pb = b / n;
            return 1.0 - pa * pa - pb * pb;
        }

        std::vector<std::size_t> candidate_features() {
            std::vector<std::size_t> f(kNumFeatures);
            std::iota(f.begin(), f.end(), std::size_t{0});
            const auto k = static_cast<std::size_t>(params.max_features);
            if (k == 0 || k >= kNumFeatures) return f;
            // partial Fisher-Yates, then restore index order so scans are reproducible
            for (std::size_t i = 0; i < k; ++i) {
                const auto j = i + rng.below(kNumFeatures - i);
                std::swap(f[i], f[j]);
            }
            f.resize(k);
            std::sort(f.begin(), f.end());
            return f;
        }

        int make_leaf(std::array<double, 2> counts) {
            Node leaf;
            leaf.label = counts[1] > counts[0] ? Side::Team2 : Side::Team1;
            tree.nodes_.push_back(leaf);
            return static_cast<int>(tree.nodes_.size() - 1);
        }

        int grow(std::vector<std::size_t>& rows, int depth) {
            std::array<double, 2> counts{};
            for (auto r : rows) counts[static_cast<std::size_t>(ys[r])] += 1;
            const auto n = rows.size();
            const auto min_leaf = static_cast<std::size_t>(std::max(1, params.min_leaf));
            if (counts[0] == 0 || counts[1] == 0 || n < 2 * min_leaf ||
                (params.max_depth > 0 && depth >= params.max_depth)) {
                return make_leaf(counts);
            }

            const double parent = gini(counts[0], counts[1]);
            double best_gain = 1e-12;
            int best_feature = -1;
            double best_threshold = 0.0;
            std::vector<std::size_t> sorted = rows;
            for (auto f : candidate_features()) {
                std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                    return xs[a][f] < xs[b][f] || (xs[a][f] == xs[b][f] && a < b);
                });
                std::array<double, 2> left{};
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    left[static_cast<std::size_t>(ys[sorted[i]])] += 1;
                    const double lo = xs[sorted[i]][f];
                    const double hi = xs[sorted[i + 1]][f];
                    if (lo == hi) continue;
                    const std::size_t nl = i + 1;
                    if (nl < min_leaf || n - nl < min_leaf) continue;
                    const double rl0 = counts[0] - left[0], rl1 = counts[1] - left[1];
                    const double child = (static_cast<double>(nl) * gini(left[0], left[1]) +
                                          static_cast<double>(n - nl) * gini(rl0, rl1)) /
                                         static_cast<double>(n);
                    const double gain = parent - child;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = static_cast<int>(f);
                        best_threshold = lo + (hi - lo) / 2.0;
                    }
                }
            }
            if (best_feature < 0) return make_leaf(counts);

            std::vector<std::size_t> left_rows, right_rows;
            for (auto r : rows) {
                (xs[r][static_cast<std::size_t>(best_feature)] <= best_threshold ? left_rows : right_rows).push_back(r);
            }
            rows.clear();
            rows.shrink_to_fit();
            const auto self = tree.nodes_.size();
            tree.nodes_.push_back(Node{best_feature, best_threshold, -1, -1, Side::Team1});
            const int l = grow(left_rows, depth + 1);
            const int r = grow(right_rows, depth + 1);
            tree.nodes_[self].left = l;
            tree.nodes_[self].right = r;
            return static_cast<int>(self);
        }
    };

    std::vector<Node> nodes_;
};

}  // namespace dlsml
