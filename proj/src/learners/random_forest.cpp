#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "simdef/errors.hpp"
#include "simdef/learners.hpp"

namespace simdef {
namespace rf_detail {
namespace {

double gini(std::int64_t pos, std::int64_t total) {
    if (total == 0) return 0.0;
    double p = static_cast<double>(pos) / static_cast<double>(total);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

}  // namespace

SplitDecision best_split(const std::vector<std::vector<double>>& rows,
                         std::span<const char> labels, std::span<const int> node_indices,
                         std::span<const int> candidate_features) {
    const std::int64_t n = static_cast<std::int64_t>(node_indices.size());
    std::int64_t pos_total = 0;
    for (int idx : node_indices) pos_total += labels[idx] ? 1 : 0;
    double parent = gini(pos_total, n);

    SplitDecision best;
    best.weighted_impurity = parent;  // a split must strictly improve on this

    std::vector<std::pair<double, char>> column;
    column.reserve(node_indices.size());
    for (int f : candidate_features) {
        column.clear();
        for (int idx : node_indices) column.push_back({rows[idx][f], labels[idx]});
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::int64_t left_n = 0, left_pos = 0;
        for (std::int64_t i = 0; i + 1 < n; ++i) {
            ++left_n;
            left_pos += column[i].second ? 1 : 0;
            if (column[i].first == column[i + 1].first) continue;
            double weighted =
                (static_cast<double>(left_n) * gini(left_pos, left_n) +
                 static_cast<double>(n - left_n) * gini(pos_total - left_pos, n - left_n)) /
                static_cast<double>(n);
            if (weighted < best.weighted_impurity) {
                best.valid = true;
                best.feature = f;
                best.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
                best.weighted_impurity = weighted;
            }
        }
    }
    return best;
}

}  // namespace rf_detail

namespace {

// splitmix64; decorrelates per-tree seeds derived from one run seed.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Unbiased-enough bounded draw that does not depend on the standard
// library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    char leaf_vote = 0;
};

class Tree {
public:
    void fit(const FeatureTable& train, std::span<const int> sample, int mtry,
             std::mt19937_64& rng) {
        feature_pool_.resize(train.feature_count());
        for (int f = 0; f < train.feature_count(); ++f) feature_pool_[f] = f;
        std::vector<int> indices(sample.begin(), sample.end());
        grow(train, indices, mtry, rng);
    }

    char predict(const std::vector<double>& row) const {
        int node = 0;
        while (nodes_[node].feature >= 0) {
            node = row[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                                       : nodes_[node].right;
        }
        return nodes_[node].leaf_vote;
    }

private:
    int grow(const FeatureTable& train, std::vector<int>& indices, int mtry,
             std::mt19937_64& rng) {
        std::int64_t pos = 0;
        for (int idx : indices) pos += train.labels[idx] ? 1 : 0;
        const std::int64_t n = static_cast<std::int64_t>(indices.size());

        int node = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        if (pos == 0 || pos == n || n <= 1) {
            nodes_[node].leaf_vote = pos * 2 > n;  // majority; ties go non-defective
            return node;
        }

        // Draw mtry distinct candidate features.
        for (int i = 0; i < mtry; ++i) {
            std::uint64_t j = i + draw_below(rng, feature_pool_.size() - i);
            std::swap(feature_pool_[i], feature_pool_[j]);
        }
        auto decision = rf_detail::best_split(
            train.rows, train.labels, indices, std::span(feature_pool_.data(), mtry));
        if (!decision.valid) {
            nodes_[node].leaf_vote = pos * 2 > n;
            return node;
        }

        std::vector<int> left, right;
        for (int idx : indices) {
            (train.rows[idx][decision.feature] <= decision.threshold ? left : right)
                .push_back(idx);
        }
        indices.clear();
        indices.shrink_to_fit();

        nodes_[node].feature = decision.feature;
        nodes_[node].threshold = decision.threshold;
        int l = grow(train, left, mtry, rng);
        nodes_[node].left = l;
        int r = grow(train, right, mtry, rng);
        nodes_[node].right = r;
        return node;
    }

    std::vector<TreeNode> nodes_;
    std::vector<int> feature_pool_;
};

}  // namespace

ScoreVector train_predict_rf(const FeatureTable& train, const FeatureTable& test,
                             const LearnerConfig& config) {
    train.validate();
    test.validate();
    if (train.feature_count() != test.feature_count())
        throw ConfigError("train and test feature counts differ");
    if (train.row_count() == 0)
        throw ConfigError("random forest needs a nonempty training fold");
    if (config.rf_trees < 1) throw ConfigError("rf_trees must be >= 1");
    // Single-class training is allowed: every root is pure, every tree casts
    // the same vote, and all scores come out 0 or 1.

    const int d = train.feature_count();
    int mtry = config.rf_features_per_split > 0
                   ? std::min(config.rf_features_per_split, d)
                   : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

    const int n = train.row_count();
    std::vector<Tree> trees(config.rf_trees);
    for (int t = 0; t < config.rf_trees; ++t) {
        std::mt19937_64 rng(mix64(config.seed ^ mix64(static_cast<std::uint64_t>(t))));
        std::vector<int> sample(n);
        for (int i = 0; i < n; ++i) sample[i] = static_cast<int>(draw_below(rng, n));
        trees[t].fit(train, sample, mtry, rng);
    }

    ScoreVector scores;
    scores.reserve(test.row_count());
    for (const auto& row : test.rows) {
        int votes = 0;
        for (const auto& tree : trees) votes += tree.predict(row);
        scores.push_back(static_cast<double>(votes) / static_cast<double>(config.rf_trees));
    }
    return scores;
}

LearnerKind learner_from_string(const std::string& name) {
    if (name == "rf") return LearnerKind::RandomForest;
    if (name == "nb") return LearnerKind::NaiveBayes;
    if (name == "knn") return LearnerKind::KNearest;
    throw ConfigError("unknown learner '" + name + "' (expected rf, nb, or knn)");
}

std::string to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::RandomForest: return "rf";
        case LearnerKind::NaiveBayes: return "nb";
        case LearnerKind::KNearest: return "knn";
    }
    return "?";
}

ScoreVector train_predict(const FeatureTable& train, const FeatureTable& test,
                          const LearnerConfig& config,
                          std::vector<std::string>* warnings) {
    switch (config.kind) {
        case LearnerKind::RandomForest: return train_predict_rf(train, test, config);
        case LearnerKind::NaiveBayes: return train_predict_nb(train, test, config);
        case LearnerKind::KNearest: return train_predict_knn(train, test, config, warnings);
    }
    throw InvariantError("unreachable learner kind");
}

}  // namespace simdef
