#include "simdef/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "simdef/errors.hpp"

namespace simdef {
namespace {

// Regularised incomplete beta by continued fraction (Lentz), good to ~1e-14
// for the moderate df used here.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

TTestResult t_test_from_differences(std::span<const double> diffs, double alpha,
                                    double variance_scale) {
    const int n = static_cast<int>(diffs.size());
    if (n < 2) throw ConfigError("paired t-test needs at least two samples");
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= n;
    double ss = 0.0;
    for (double d : diffs) ss += (d - mean) * (d - mean);
    double variance = ss / (n - 1);

    TTestResult res;
    if (variance == 0.0) {
        if (mean == 0.0) return {0.0, 1.0, false};
        res.t = mean > 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
        res.p = 0.0;
        res.significant = res.p < alpha;
        return res;
    }
    res.t = mean / std::sqrt(variance * variance_scale);
    res.p = student_t_two_tailed_p(res.t, n - 1);
    res.significant = res.p < alpha;
    return res;
}

std::vector<double> paired_differences(const EvalResult& a, const EvalResult& b) {
    if (a.auc_per_fold.size() != b.auc_per_fold.size())
        throw ConfigError("paired t-test needs equally long result lists");
    std::vector<double> diffs(a.auc_per_fold.size());
    for (size_t i = 0; i < diffs.size(); ++i)
        diffs[i] = a.auc_per_fold[i] - b.auc_per_fold[i];
    return diffs;
}

}  // namespace

void CVPlan::validate() const {
    if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
    if (repeats < 1) throw ConfigError("cross-validation needs at least 1 repeat");
}

std::vector<int> stratified_folds(const std::vector<char>& labels, int folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw ConfigError("stratified_folds needs at least 2 folds");
    std::vector<std::uint32_t> members[2];
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        members[labels[i] ? 1 : 0].push_back(i);
    }
    for (int cls = 0; cls < 2; ++cls) {
        if (members[cls].size() < static_cast<size_t>(folds)) {
            throw ConfigError("a class has only " + std::to_string(members[cls].size()) +
                              " instances; use at most that many folds");
        }
    }

    auto rng = seeded_rng(seed);
    std::vector<int> assignment(labels.size(), -1);
    int next_fold = 0;
    for (auto& group : members) {
        // Fisher-Yates, then deal continuing at the fold after the previous
        // class stopped so overall fold sizes stay within one of each other.
        for (size_t i = group.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(draw_below(rng, i));
            std::swap(group[i - 1], group[j]);
        }
        for (std::uint32_t idx : group) {
            assignment[idx] = next_fold;
            next_fold = (next_fold + 1) % folds;
        }
    }
    return assignment;
}

ConfusionRates confusion_rates(const ConfusionCounts& counts) {
    if (counts.tp < 0 || counts.fn < 0 || counts.tn < 0 || counts.fp < 0)
        throw InvariantError("negative confusion counts");
    if (counts.tp + counts.fn == 0)
        throw ConfigError("TP rate undefined: no positive instances");
    if (counts.fp + counts.tn == 0)
        throw ConfigError("FP rate undefined: no negative instances");
    return {static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn),
            static_cast<double>(counts.fp) / static_cast<double>(counts.fp + counts.tn)};
}

double auc(std::span<const double> scores, std::span<const char> labels) {
    if (scores.size() != labels.size())
        throw InvariantError("auc: score and label lengths differ");
    std::int64_t positives = 0, negatives = 0;
    for (char l : labels) (l ? positives : negatives) += 1;
    if (positives == 0 || negatives == 0)
        throw ConfigError("AUC undefined: both classes must be present");

    // Average rank of the positives (midranks for ties) gives the
    // Mann-Whitney statistic without enumerating pairs.
    std::vector<std::uint32_t> order(scores.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return scores[a] < scores[b]; });

    double positive_rank_sum = 0.0;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k) {
            if (labels[order[k]]) positive_rank_sum += midrank;
        }
        i = j + 1;
    }
    double u = positive_rank_sum -
               static_cast<double>(positives) * (static_cast<double>(positives) + 1.0) / 2.0;
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double EvalResult::mean() const {
    if (auc_per_fold.empty()) return 0.0;
    double sum = 0.0;
    for (double v : auc_per_fold) sum += v;
    return sum / static_cast<double>(auc_per_fold.size());
}

double EvalResult::stddev() const {
    if (auc_per_fold.size() < 2) return 0.0;
    double m = mean();
    double ss = 0.0;
    for (double v : auc_per_fold) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(auc_per_fold.size() - 1));
}

EvalResult cross_validate(const FeatureTable& table, const LearnerConfig& learner,
                          const CVPlan& plan, const FeatureBuilder* rebuild_features,
                          std::vector<std::string>* warnings) {
    table.validate();
    plan.validate();
    if (!table.has_both_classes())
        throw ConfigError("cross-validation needs both classes in the data");

    const int n = table.row_count();
    EvalResult result;
    result.auc_per_fold.reserve(static_cast<size_t>(plan.folds) * plan.repeats);

    for (int repeat = 0; repeat < plan.repeats; ++repeat) {
        auto assignment =
            stratified_folds(table.labels, plan.folds, plan.seed + static_cast<std::uint64_t>(repeat));
        for (int fold = 0; fold < plan.folds; ++fold) {
            std::vector<char> train_mask(n, 0);
            for (int i = 0; i < n; ++i) train_mask[i] = assignment[i] != fold;

            const FeatureTable* source = &table;
            FeatureTable rebuilt;
            if (rebuild_features) {
                rebuilt = (*rebuild_features)(train_mask);
                if (rebuilt.row_count() != n)
                    throw InvariantError("feature builder changed the row count");
                rebuilt.labels = table.labels;  // features change per fold, labels never do
                rebuilt.validate();
                source = &rebuilt;
            }

            FeatureTable train, test;
            train.feature_names = source->feature_names;
            test.feature_names = source->feature_names;
            std::vector<char> test_labels;
            for (int i = 0; i < n; ++i) {
                if (train_mask[i]) {
                    train.rows.push_back(source->rows[i]);
                    train.labels.push_back(source->labels[i]);
                } else {
                    test.rows.push_back(source->rows[i]);
                    test.labels.push_back(source->labels[i]);
                }
            }

            LearnerConfig fold_learner = learner;
            fold_learner.seed = learner.seed ^ (0x9E3779B97F4A7C15ULL *
                                                (static_cast<std::uint64_t>(repeat) * plan.folds +
                                                 static_cast<std::uint64_t>(fold) + 1));
            ScoreVector scores;
            try {
                scores = train_predict(train, test, fold_learner, warnings);
            } catch (const std::exception& e) {
                throw ConfigError("learner " + to_string(learner.kind) + " failed on repeat " +
                                  std::to_string(repeat) + " fold " + std::to_string(fold) +
                                  ": " + e.what());
            }
            result.auc_per_fold.push_back(auc(scores, test.labels));
        }
    }
    return result;
}

TTestResult paired_t_test(const EvalResult& a, const EvalResult& b, double alpha) {
    auto diffs = paired_differences(a, b);
    return t_test_from_differences(diffs, alpha, 1.0 / static_cast<double>(diffs.size()));
}

TTestResult corrected_resampled_t_test(const EvalResult& a, const EvalResult& b, int folds,
                                       double alpha) {
    if (folds < 2) throw ConfigError("corrected t-test needs the fold count");
    auto diffs = paired_differences(a, b);
    double test_train_ratio = 1.0 / (static_cast<double>(folds) - 1.0);
    return t_test_from_differences(
        diffs, alpha, 1.0 / static_cast<double>(diffs.size()) + test_train_ratio);
}

double student_t_two_tailed_p(double t, int df) {
    if (df < 1) throw ConfigError("t distribution needs df >= 1");
    if (std::isinf(t)) return 0.0;
    double x = static_cast<double>(df) / (static_cast<double>(df) + t * t);
    return incomplete_beta(static_cast<double>(df) / 2.0, 0.5, x);
}

}  // namespace simdef
