#include <algorithm>
#include <cmath>

#include "simdef/errors.hpp"
#include "simdef/learners.hpp"

namespace simdef {

namespace knn_detail {

double weighted_vote(std::span<const Neighbour> nearest) {
    int zero_total = 0, zero_defective = 0;
    for (const auto& nb : nearest) {
        if (nb.distance == 0.0) {
            ++zero_total;
            if (nb.defective) ++zero_defective;
        }
    }
    if (zero_total > 0)
        return static_cast<double>(zero_defective) / static_cast<double>(zero_total);
    double weight_all = 0.0, weight_defective = 0.0;
    for (const auto& nb : nearest) {
        double w = 1.0 / nb.distance;
        weight_all += w;
        if (nb.defective) weight_defective += w;
    }
    return weight_all > 0 ? weight_defective / weight_all : 0.0;
}

}  // namespace knn_detail

namespace {

struct Scaling {
    std::vector<double> range;  // hi - lo per feature; 0 drops the feature
};

Scaling fit_scaling(const FeatureTable& train, std::vector<std::string>* warnings) {
    const int d = train.feature_count();
    Scaling s;
    s.range.resize(d);
    for (int f = 0; f < d; ++f) {
        double lo = train.rows[0][f], hi = train.rows[0][f];
        for (const auto& row : train.rows) {
            lo = std::min(lo, row[f]);
            hi = std::max(hi, row[f]);
        }
        s.range[f] = hi - lo;
        if (!(hi > lo) && warnings) {
            warnings->push_back("constant feature '" + train.feature_names[f] +
                                "' ignored in kNN distances");
        }
    }
    return s;
}

double scaled_distance(const Scaling& s, const std::vector<double>& a,
                       const std::vector<double>& b) {
    double sum = 0.0;
    for (size_t f = 0; f < a.size(); ++f) {
        if (s.range[f] == 0.0) continue;
        double diff = (a[f] - b[f]) / s.range[f];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

struct Candidate {
    double distance;
    int index;
    bool operator<(const Candidate& o) const {
        return distance != o.distance ? distance < o.distance : index < o.index;
    }
};

double vote_on(std::span<const Candidate> nearest, std::span<const char> labels) {
    std::vector<knn_detail::Neighbour> packed;
    packed.reserve(nearest.size());
    for (const auto& c : nearest) packed.push_back({c.distance, labels[c.index] != 0});
    return knn_detail::weighted_vote(packed);
}

// Leave-one-out accuracy over the training fold for every k at once;
// smallest k wins ties. Prediction threshold is a strict majority of the
// vote weight; an exact tie counts as non-defective.
int select_k(const FeatureTable& train, const Scaling& scaling, int max_k) {
    const int n = train.row_count();
    max_k = std::min(max_k, n - 1);
    if (max_k < 1) return 1;

    std::vector<int> correct(max_k + 1, 0);
    std::vector<Candidate> others;
    others.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        others.clear();
        for (int j = 0; j < n; ++j) {
            if (j != i)
                others.push_back({scaled_distance(scaling, train.rows[i], train.rows[j]), j});
        }
        std::sort(others.begin(), others.end());
        for (int k = 1; k <= max_k; ++k) {
            double score = vote_on(std::span(others.data(), static_cast<size_t>(k)), train.labels);
            bool predicted = score > 0.5;
            if (predicted == (train.labels[i] != 0)) ++correct[k];
        }
    }
    int best_k = 1;
    for (int k = 2; k <= max_k; ++k) {
        if (correct[k] > correct[best_k]) best_k = k;
    }
    return best_k;
}

}  // namespace

ScoreVector train_predict_knn(const FeatureTable& train, const FeatureTable& test,
                              const LearnerConfig& config,
                              std::vector<std::string>* warnings) {
    train.validate();
    test.validate();
    if (train.feature_count() != test.feature_count())
        throw ConfigError("train and test feature counts differ");
    if (train.row_count() == 0) throw ConfigError("kNN needs a nonempty training fold");
    if (config.knn_max_k < 1) throw ConfigError("knn_max_k must be >= 1");

    Scaling scaling = fit_scaling(train, warnings);
    int k = select_k(train, scaling, config.knn_max_k);

    ScoreVector scores;
    scores.reserve(test.row_count());
    std::vector<Candidate> all(train.row_count());
    for (const auto& row : test.rows) {
        for (int j = 0; j < train.row_count(); ++j) {
            all[j] = {scaled_distance(scaling, row, train.rows[j]), j};
        }
        int take = std::min<int>(k, static_cast<int>(all.size()));
        std::partial_sort(all.begin(), all.begin() + take, all.end());
        scores.push_back(vote_on(std::span(all.data(), static_cast<size_t>(take)), train.labels));
    }
    return scores;
}

}  // namespace simdef
