#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "simdef/feature_table.hpp"
#include "simdef/learners.hpp"

namespace simdef {

struct CVPlan {
    int folds = 5;
    int repeats = 5;
    std::uint64_t seed = 0;
    bool leakage_safe = false;

    void validate() const;
};

// Fold id per instance. Instances are shuffled within each class (seeded)
// and dealt round-robin, the second class continuing where the first left
// off, so fold sizes differ by at most one overall and per class.
std::vector<int> stratified_folds(const std::vector<char>& labels, int folds,
                                  std::uint64_t seed);

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
};

struct ConfusionRates {
    double tp_rate = 0.0;  // TP / (TP + FN)
    double fp_rate = 0.0;  // FP / (FP + TN)
};

ConfusionRates confusion_rates(const ConfusionCounts& counts);

// Probability that a random defective instance outscores a random
// non-defective one, ties at half weight; equals the area under the ROC
// curve. Computed from ranks in O(n log n).
double auc(std::span<const double> scores, std::span<const char> labels);

struct EvalResult {
    std::vector<double> auc_per_fold;  // repeats x folds values, fold-major per repeat

    double mean() const;
    double stddev() const;  // sample standard deviation
};

// Rebuilds the per-instance feature rows for one fold split; the mask flags
// training instances. Used by leakage-safe runs to keep test-fold labels out
// of the features.
using FeatureBuilder = std::function<FeatureTable(const std::vector<char>& train_mask)>;

// Repeated stratified cross-validation; one AUC per (repeat, fold). Repeat r
// shuffles with seed + r. The learner seed is remixed per fold so forests do
// not reuse one bootstrap pattern.
EvalResult cross_validate(const FeatureTable& table, const LearnerConfig& learner,
                          const CVPlan& plan, const FeatureBuilder* rebuild_features = nullptr,
                          std::vector<std::string>* warnings = nullptr);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    bool significant = false;
};

// Classical two-tailed paired t-test on per-fold values. Zero-variance
// differences degenerate to t=0, p=1 when the mean is zero too, and to
// t=+/-inf, p=0 otherwise.
TTestResult paired_t_test(const EvalResult& a, const EvalResult& b, double alpha = 0.05);

// Corrected resampled t-test: the variance term is scaled by
// (1/n + test/train ratio) to account for overlapping training folds.
TTestResult corrected_resampled_t_test(const EvalResult& a, const EvalResult& b, int folds,
                                       double alpha = 0.05);

// Two-tailed p for a t statistic with df degrees of freedom.
double student_t_two_tailed_p(double t, int df);

}  // namespace simdef
