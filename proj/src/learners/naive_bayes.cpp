#include <cmath>
#include <numbers>

#include "simdef/errors.hpp"
#include "simdef/learners.hpp"

namespace simdef {
namespace {

struct Gaussian {
    double mean = 0.0;
    double variance = 1.0;

    double log_density(double x) const {
        double d = x - mean;
        return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + d * d / variance);
    }
};

}  // namespace

ScoreVector train_predict_nb(const FeatureTable& train, const FeatureTable& test,
                             const LearnerConfig& config) {
    train.validate();
    test.validate();
    if (train.feature_count() != test.feature_count())
        throw ConfigError("train and test feature counts differ");
    if (!train.has_both_classes())
        throw ConfigError("naive Bayes training needs both classes");

    const int d = train.feature_count();
    std::vector<Gaussian> models[2];
    models[0].resize(d);
    models[1].resize(d);
    std::int64_t counts[2] = {0, 0};
    for (char l : train.labels) ++counts[l ? 1 : 0];

    for (int cls = 0; cls < 2; ++cls) {
        for (int f = 0; f < d; ++f) {
            double sum = 0.0;
            for (int r = 0; r < train.row_count(); ++r) {
                if ((train.labels[r] != 0) == (cls == 1)) sum += train.rows[r][f];
            }
            double mean = sum / static_cast<double>(counts[cls]);
            double ss = 0.0;
            for (int r = 0; r < train.row_count(); ++r) {
                if ((train.labels[r] != 0) == (cls == 1)) {
                    double dev = train.rows[r][f] - mean;
                    ss += dev * dev;
                }
            }
            // Sample variance; a single-member class falls back to the floor.
            double variance = counts[cls] > 1 ? ss / static_cast<double>(counts[cls] - 1) : 0.0;
            models[cls][f] = {mean, std::max(variance, config.variance_floor)};
        }
    }

    double log_prior[2];
    double total = static_cast<double>(train.row_count());
    log_prior[0] = std::log(static_cast<double>(counts[0]) / total);
    log_prior[1] = std::log(static_cast<double>(counts[1]) / total);

    ScoreVector scores;
    scores.reserve(test.row_count());
    for (const auto& row : test.rows) {
        double lp[2] = {log_prior[0], log_prior[1]};
        for (int cls = 0; cls < 2; ++cls) {
            for (int f = 0; f < d; ++f) lp[cls] += models[cls][f].log_density(row[f]);
        }
        double hi = std::max(lp[0], lp[1]);
        double z = std::exp(lp[0] - hi) + std::exp(lp[1] - hi);
        scores.push_back(std::exp(lp[1] - hi) / z);
    }
    return scores;
}

}  // namespace simdef
