#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simdef/feature_table.hpp"

namespace simdef {

enum class LearnerKind { RandomForest, NaiveBayes, KNearest };

LearnerKind learner_from_string(const std::string& name);
std::string to_string(LearnerKind kind);

struct LearnerConfig {
    LearnerKind kind = LearnerKind::RandomForest;
    std::uint64_t seed = 0;
    int rf_trees = 100;
    int rf_features_per_split = 0;  // 0 = ceil(sqrt(feature count))
    int knn_max_k = 10;             // k is picked in 1..max by leave-one-out accuracy
    double variance_floor = 1e-9;
};

// Every learner returns one defectiveness probability in [0,1] per test row.
using ScoreVector = std::vector<double>;

// Gaussian naive Bayes: per-class feature likelihoods (variance floored),
// class priors from training frequencies, posterior normalised in log space.
ScoreVector train_predict_nb(const FeatureTable& train, const FeatureTable& test,
                             const LearnerConfig& config = {});

// Inverse-distance-weighted kNN on training-fold min-max scaled features.
// k is chosen by leave-one-out accuracy on the training fold (smallest k on
// ties). Zero-distance neighbours split the vote uniformly among themselves.
ScoreVector train_predict_knn(const FeatureTable& train, const FeatureTable& test,
                              const LearnerConfig& config = {},
                              std::vector<std::string>* warnings = nullptr);

// Random forest of CART trees on bootstrap samples, Gini splits over a
// random feature subset per node, grown until pure; score is the fraction
// of trees voting defective. Deterministic given (seed, data, config).
// A single-class training fold produces constant 0 or 1 scores.
ScoreVector train_predict_rf(const FeatureTable& train, const FeatureTable& test,
                             const LearnerConfig& config = {});

ScoreVector train_predict(const FeatureTable& train, const FeatureTable& test,
                          const LearnerConfig& config,
                          std::vector<std::string>* warnings = nullptr);

namespace knn_detail {

// One already-selected neighbour: distance to the query and its label.
struct Neighbour {
    double distance = 0.0;
    bool defective = false;
};

// Inverse-distance-weighted defective share; zero-distance neighbours, when
// present, take over with uniform weights among themselves.
double weighted_vote(std::span<const Neighbour> nearest);

}  // namespace knn_detail

namespace rf_detail {

// Exposed for the split-search tests.
struct SplitDecision {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    double weighted_impurity = 0.0;  // child Gini, weighted by child sizes
};

SplitDecision best_split(const std::vector<std::vector<double>>& rows,
                         std::span<const char> labels, std::span<const int> node_indices,
                         std::span<const int> candidate_features);

}  // namespace rf_detail

}  // namespace simdef
