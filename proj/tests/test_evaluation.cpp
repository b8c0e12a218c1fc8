#include "simdef/evaluation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "simdef/errors.hpp"
#include "simdef/report.hpp"
#include "test_util.hpp"

using namespace simdef;

namespace {

FeatureTable make_table(std::vector<std::vector<double>> rows, std::vector<char> labels) {
    FeatureTable t;
    t.feature_names.resize(rows.empty() ? 0 : rows[0].size());
    for (size_t f = 0; f < t.feature_names.size(); ++f) {
        t.feature_names[f] = "x" + std::to_string(f);
    }
    t.rows = std::move(rows);
    t.labels = std::move(labels);
    return t;
}

FeatureTable separable_table(std::mt19937_64& rng, int n, double positive_share) {
    std::vector<std::vector<double>> rows;
    std::vector<char> labels;
    for (int i = 0; i < n; ++i) {
        bool positive = testutil::rand_unit(rng) < positive_share;
        double base = positive ? 1.5 : 0.2;
        rows.push_back({base + 0.25 * testutil::rand_unit(rng),
                        base + 0.25 * testutil::rand_unit(rng)});
        labels.push_back(positive);
    }
    labels[0] = 0;
    rows[0] = {0.2, 0.2};
    labels[1] = 1;
    rows[1] = {1.5, 1.5};
    return make_table(std::move(rows), std::move(labels));
}

}  // namespace

TEST_CASE("stratified folds deal both classes evenly") {
    std::vector<char> labels = {1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
    auto assignment = stratified_folds(labels, 5, 9);
    std::vector<int> defective_per_fold(5, 0), total_per_fold(5, 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        ++total_per_fold[assignment[i]];
        defective_per_fold[assignment[i]] += labels[i];
    }
    for (int f = 0; f < 5; ++f) {
        CHECK(total_per_fold[f] == 2);
        CHECK(defective_per_fold[f] == 1);
    }
}

TEST_CASE("stratified folds are deterministic per seed") {
    std::vector<char> labels(40);
    for (size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3 == 0;
    CHECK(stratified_folds(labels, 5, 7) == stratified_folds(labels, 5, 7));
    CHECK(stratified_folds(labels, 5, 7) != stratified_folds(labels, 5, 8));
}

TEST_CASE("stratified folds at the published ant class balance") {
    // 730 instances, 22.7% defective: per-class and overall fold sizes must
    // differ by at most one.
    std::vector<char> labels(730, 0);
    for (int i = 0; i < 166; ++i) labels[i] = 1;  // round(730 * 0.227)
    std::mt19937_64 seed_rng(2027);
    for (int round = 0; round < 10; ++round) {
        auto assignment = stratified_folds(labels, 5, seed_rng());
        std::vector<int> defective(5, 0), total(5, 0);
        for (size_t i = 0; i < labels.size(); ++i) {
            ++total[assignment[i]];
            defective[assignment[i]] += labels[i];
        }
        auto spread = [](const std::vector<int>& v) {
            return *std::max_element(v.begin(), v.end()) -
                   *std::min_element(v.begin(), v.end());
        };
        REQUIRE(spread(defective) <= 1);
        REQUIRE(spread(total) <= 1);
    }
}

TEST_CASE("stratified folds refuse an over-split minority") {
    std::vector<char> labels = {1, 1, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_WITH_AS(stratified_folds(labels, 5, 0), doctest::Contains("folds"),
                         ConfigError);
}

TEST_CASE("confusion rates follow the definitions") {
    CHECK(confusion_rates({3, 1, 0, 1}).tp_rate == doctest::Approx(0.75));
    CHECK(confusion_rates({1, 1, 5, 0}).fp_rate == 0.0);
    auto r = confusion_rates({1, 1, 1, 1});
    CHECK(r.tp_rate == 0.5);
    CHECK(r.fp_rate == 0.5);
    CHECK_THROWS_AS(confusion_rates({0, 0, 1, 1}), ConfigError);
}

TEST_CASE("auc on the canonical examples") {
    std::vector<char> labels = {1, 1, 0, 0};
    CHECK(auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, labels) == 1.0);
    CHECK(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, labels) == 0.5);
    std::vector<char> mixed = {1, 0, 0, 1};
    CHECK(auc(std::vector<double>{0.8, 0.6, 0.4, 0.2}, mixed) == 0.5);
    CHECK_THROWS_AS(auc(std::vector<double>{0.1, 0.2}, std::vector<char>{1, 1}), ConfigError);
}

TEST_CASE("auc equals the exhaustive pair count on tie-heavy data") {
    std::mt19937_64 rng(11011);
    for (int round = 0; round < 300; ++round) {
        int n = 2 + static_cast<int>(testutil::rand_below(rng, 99));
        std::vector<double> scores(n);
        std::vector<char> labels(n);
        for (int i = 0; i < n; ++i) {
            // Quantized scores create many ties.
            scores[i] = std::floor(testutil::rand_unit(rng) * 5.0) / 5.0;
            labels[i] = testutil::rand_below(rng, 2);
        }
        labels[0] = 0;
        labels[n - 1] = 1;
        double got = auc(scores, labels);
        double want = oracles::auc_pairs(scores, labels);
        REQUIRE(std::fabs(got - want) < 1e-12);
    }
}

TEST_CASE("auc is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(2222);
    std::vector<double> scores(60);
    std::vector<char> labels(60);
    for (size_t i = 0; i < scores.size(); ++i) {
        scores[i] = testutil::rand_unit(rng);
        labels[i] = testutil::rand_below(rng, 2);
    }
    labels[0] = 0;
    labels[1] = 1;
    auto transformed = scores;
    for (auto& s : transformed) s = std::exp(3.0 * s) - 0.5;
    CHECK(auc(scores, labels) == auc(transformed, labels));
}

TEST_CASE("auc complements under label flip for tie-free scores") {
    std::mt19937_64 rng(2223);
    std::vector<double> scores(50);
    std::vector<char> labels(50);
    std::set<double> used;
    for (size_t i = 0; i < scores.size(); ++i) {
        do {
            scores[i] = testutil::rand_unit(rng);
        } while (!used.insert(scores[i]).second);
        labels[i] = testutil::rand_below(rng, 2);
    }
    labels[0] = 0;
    labels[1] = 1;
    auto flipped = labels;
    for (auto& l : flipped) l = !l;
    CHECK(auc(scores, labels) + auc(scores, flipped) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross_validate yields folds x repeats values and partitions instances") {
    std::mt19937_64 rng(13);
    auto table = separable_table(rng, 60, 0.4);
    CVPlan plan;
    plan.seed = 5;
    LearnerConfig nb{.kind = LearnerKind::NaiveBayes};
    auto result = cross_validate(table, nb, plan);
    CHECK(result.auc_per_fold.size() == 25);

    // Partition property, checked on the fold assignment directly.
    for (int repeat = 0; repeat < plan.repeats; ++repeat) {
        auto assignment = stratified_folds(table.labels, plan.folds, plan.seed + repeat);
        for (int value : assignment) {
            CHECK(value >= 0);
            CHECK(value < plan.folds);
        }
    }
}

TEST_CASE("cross_validate on separable data scores near-perfect AUC") {
    std::mt19937_64 rng(14);
    auto table = separable_table(rng, 100, 0.3);
    CVPlan plan;
    plan.seed = 42;
    LearnerConfig nb{.kind = LearnerKind::NaiveBayes};
    auto result = cross_validate(table, nb, plan);
    CHECK(result.mean() >= 0.95);
}

TEST_CASE("cross_validate is deterministic") {
    std::mt19937_64 rng(15);
    auto table = separable_table(rng, 50, 0.4);
    CVPlan plan;
    plan.seed = 77;
    LearnerConfig rf{.kind = LearnerKind::RandomForest, .seed = 3, .rf_trees = 15};
    auto a = cross_validate(table, rf, plan);
    auto b = cross_validate(table, rf, plan);
    CHECK(a.auc_per_fold == b.auc_per_fold);
}

TEST_CASE("leakage-safe rebuilding keeps test labels out of features") {
    // The builder mimics metric recomputation: each row's feature is the
    // count of defective training neighbours. Mutating test-fold labels
    // must leave rebuilt features unchanged.
    const int n = 20;
    std::vector<char> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i % 3 == 0;

    auto build = [&](const std::vector<char>& train_mask,
                     const std::vector<char>& label_view) {
        FeatureTable t;
        t.feature_names = {"neighbour_count"};
        for (int i = 0; i < n; ++i) {
            double count = 0;
            for (int j = 0; j < n; ++j) {
                if (j != i && train_mask[j] && label_view[j]) count += 1;
            }
            t.rows.push_back({count});
        }
        t.labels = labels;
        return t;
    };

    std::vector<char> train_mask(n, 1);
    for (int i = 0; i < n; i += 4) train_mask[i] = 0;

    auto mutated = labels;
    for (int i = 0; i < n; ++i) {
        if (!train_mask[i]) mutated[i] = !mutated[i];
    }
    auto base_features = build(train_mask, labels);
    auto mutated_features = build(train_mask, mutated);
    for (int i = 0; i < n; ++i) {
        REQUIRE(base_features.rows[i][0] == mutated_features.rows[i][0]);
    }
}

TEST_CASE("paired t-test: identical samples are never significant") {
    EvalResult a;
    a.auc_per_fold = {0.7, 0.8, 0.9, 0.75, 0.85};
    auto r = paired_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p == 1.0);
    CHECK_FALSE(r.significant);
}

TEST_CASE("paired t-test: constant nonzero differences degenerate to significance") {
    EvalResult a, b;
    b.auc_per_fold = {0.5, 0.6, 0.7, 0.65, 0.55};
    for (double v : b.auc_per_fold) a.auc_per_fold.push_back(v + 0.1);
    auto r = paired_t_test(a, b);
    CHECK(std::isinf(r.t));
    CHECK(r.t > 0);
    CHECK(r.p == 0.0);
    CHECK(r.significant);
}

TEST_CASE("paired t-test matches the textbook formula and quadrature p") {
    EvalResult a, b;
    a.auc_per_fold = {0.9, 0.8, 0.85};
    b.auc_per_fold = {0.6, 0.55, 0.5};
    auto r = paired_t_test(a, b);

    // Direct formula: d = {0.3, 0.25, 0.35}, mean 0.3, sd 0.05.
    double mean = 0.3;
    double sd = 0.05;
    double expected_t = mean / (sd / std::sqrt(3.0));
    CHECK(r.t == doctest::Approx(expected_t).epsilon(1e-9));
    double expected_p = oracles::t_two_tailed_p_quadrature(expected_t, 2);
    CHECK(r.p == doctest::Approx(expected_p).epsilon(1e-6));
    CHECK(r.significant == (r.p < 0.05));
}

TEST_CASE("paired t-test is antisymmetric and rejects length mismatches") {
    std::mt19937_64 rng(31);
    EvalResult a, b;
    for (int i = 0; i < 25; ++i) {
        a.auc_per_fold.push_back(testutil::rand_unit(rng));
        b.auc_per_fold.push_back(testutil::rand_unit(rng));
    }
    auto ab = paired_t_test(a, b);
    auto ba = paired_t_test(b, a);
    CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
    CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));

    EvalResult shorter;
    shorter.auc_per_fold = {0.5};
    CHECK_THROWS_AS(paired_t_test(a, shorter), ConfigError);
}

TEST_CASE("corrected resampled t-test shrinks the statistic") {
    std::mt19937_64 rng(32);
    EvalResult a, b;
    for (int i = 0; i < 25; ++i) {
        double base = testutil::rand_unit(rng);
        a.auc_per_fold.push_back(base + 0.05 + 0.1 * testutil::rand_unit(rng));
        b.auc_per_fold.push_back(base);
    }
    auto classical = paired_t_test(a, b);
    auto corrected = corrected_resampled_t_test(a, b, 5);
    CHECK(std::fabs(corrected.t) < std::fabs(classical.t));
    CHECK(corrected.p > classical.p);
}

TEST_CASE("five-number summary matches the sort-based oracle") {
    std::vector<double> evenly;
    for (int i = 0; i < 25; ++i) evenly.push_back(0.1 + 0.8 * i / 24.0);
    auto got = five_number_summary(evenly);
    auto want = oracles::summary_by_sorting(evenly);
    CHECK(got.min == want.min);
    CHECK(got.q1 == want.q1);
    CHECK(got.median == want.median);
    CHECK(got.q3 == want.q3);
    CHECK(got.max == want.max);
    CHECK(got.median == doctest::Approx(0.5));

    std::mt19937_64 rng(77);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> values(1 + testutil::rand_below(rng, 40));
        for (auto& v : values) v = testutil::rand_unit(rng);
        auto g = five_number_summary(values);
        auto w = oracles::summary_by_sorting(values);
        REQUIRE(g.min == w.min);
        REQUIRE(g.q1 == w.q1);
        REQUIRE(g.median == w.median);
        REQUIRE(g.q3 == w.q3);
        REQUIRE(g.max == w.max);
    }
}

TEST_CASE("mean formatting rounds to two decimals") {
    CHECK(format_fixed(0.896, 2) == "0.90");
    CHECK(format_fixed(0.894, 2) == "0.89");
    CHECK(format_fixed(1.0, 2) == "1.00");
}

TEST_CASE("raw results round-trip through CSV") {
    ResultMap results;
    std::mt19937_64 rng(88);
    EvalResult r;
    for (int i = 0; i < 25; ++i) r.auc_per_fold.push_back(testutil::rand_unit(rng));
    results[{"demo", "Mm", "rf"}] = r;
    std::ostringstream out;
    write_raw_results_csv(results, 5, out);
    std::istringstream in(out.str());
    auto back = read_raw_results_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[{"demo", "Mm", "rf"}].auc_per_fold == r.auc_per_fold);
}

TEST_CASE("reports render a minimal grid with significance markers") {
    ResultMap results;
    EvalResult strong, weak;
    std::mt19937_64 rng(89);
    for (int i = 0; i < 25; ++i) {
        double base = 0.5 + 0.2 * testutil::rand_unit(rng);
        weak.auc_per_fold.push_back(base);
        strong.auc_per_fold.push_back(base + 0.25);
    }
    results[{"demo", "Mm", "rf"}] = strong;
    results[{"demo", "Msc", "rf"}] = weak;

    testutil::TempDir dir("simdef-report");
    ReportOptions options;
    write_reports(results, options, dir.path);

    auto md = testutil::read_file(dir.path / "report_rf.md");
    CHECK(md.find("| demo |") != std::string::npos);
    CHECK(md.find("**") != std::string::npos);  // a best cell is bolded
    CHECK(md.find("*") != std::string::npos);

    auto box = testutil::read_file(dir.path / "boxplot_summary.csv");
    CHECK(box.find("demo,Mm,rf") != std::string::npos);
    auto sig = testutil::read_file(dir.path / "significance.csv");
    CHECK(sig.find("demo,rf,Mm,Msc") != std::string::npos);
    CHECK(sig.find("corrected_t") == std::string::npos);
}

TEST_CASE("the corrected t-test flag adds columns to the significance file") {
    ResultMap results;
    EvalResult a, b;
    std::mt19937_64 rng(90);
    for (int i = 0; i < 25; ++i) {
        // Base stays in [0.5, 0.7] and the shift is a power of two, so the
        // pairwise differences are exactly equal and the t statistic
        // degenerates to infinity.
        double base = 0.5 + 0.2 * testutil::rand_unit(rng);
        b.auc_per_fold.push_back(base);
        a.auc_per_fold.push_back(base + 0.125);
    }
    results[{"demo", "Mm", "nb"}] = a;
    results[{"demo", "Msc", "nb"}] = b;

    testutil::TempDir dir("simdef-report");
    ReportOptions options;
    options.corrected_t_test = true;
    write_reports(results, options, dir.path);

    auto sig = testutil::read_file(dir.path / "significance.csv");
    CHECK(sig.find("corrected_t,corrected_p,corrected_significant") != std::string::npos);
    // Constant differences degenerate both tests to infinite t.
    CHECK(sig.find("inf") != std::string::npos);
}
