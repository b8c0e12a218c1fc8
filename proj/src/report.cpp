#include "simdef/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"
#include "simdef/similarity_matrix.hpp"

namespace simdef {
namespace {

double median_of(const std::vector<double>& sorted, size_t begin, size_t end) {
    size_t n = end - begin;
    size_t mid = begin + n / 2;
    if (n % 2 == 1) return sorted[mid];
    return (sorted[mid - 1] + sorted[mid]) / 2.0;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

double parse_double(const std::string& text, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(std::string("non-numeric ") + what + ": '" + text + "'");
    return v;
}

}  // namespace

Quartiles five_number_summary(std::vector<double> values) {
    if (values.empty()) throw ConfigError("five_number_summary over no values");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    Quartiles q;
    q.min = values.front();
    q.max = values.back();
    q.median = median_of(values, 0, n);
    size_t lower_end = n / 2;                       // excludes the median element
    size_t upper_begin = n % 2 == 1 ? n / 2 + 1 : n / 2;
    q.q1 = lower_end == 0 ? q.median : median_of(values, 0, lower_end);
    q.q3 = upper_begin == n ? q.median : median_of(values, upper_begin, n);
    return q;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

void write_raw_results_csv(const ResultMap& results, int folds, std::ostream& out) {
    if (folds < 1) throw InvariantError("raw results need the fold count");
    csv::write_row(out, {"dataset", "metric_set", "learner", "repeat", "fold", "auc"});
    for (const auto& [key, result] : results) {
        const auto& [dataset, metric_set, learner] = key;
        // auc_per_fold is fold-major within each repeat
        for (size_t i = 0; i < result.auc_per_fold.size(); ++i) {
            csv::write_row(out, {dataset, metric_set, learner,
                                 std::to_string(i / static_cast<size_t>(folds)),
                                 std::to_string(i % static_cast<size_t>(folds)),
                                 format_double(result.auc_per_fold[i])});
        }
    }
}

ResultMap read_raw_results_csv(std::istream& in) {
    auto rows = csv::read_rows(in);
    if (rows.empty()) throw ConfigError("raw results CSV is empty");
    std::map<std::tuple<std::string, std::string, std::string>,
             std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, double>>>
        cells;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 6)
            throw ConfigError("raw results row " + std::to_string(r + 1) + " needs 6 columns");
        auto key = std::make_tuple(row[0], row[1], row[2]);
        std::int64_t repeat = static_cast<std::int64_t>(parse_double(row[3], "repeat"));
        std::int64_t fold = static_cast<std::int64_t>(parse_double(row[4], "fold"));
        cells[key].push_back({{repeat, fold}, parse_double(row[5], "auc")});
    }
    ResultMap results;
    for (auto& [key, values] : cells) {
        std::sort(values.begin(), values.end());
        auto& out = results[key].auc_per_fold;
        out.reserve(values.size());
        for (const auto& [pos, v] : values) {
            (void)pos;
            out.push_back(v);
        }
    }
    return results;
}

void write_reports(const ResultMap& results, const ReportOptions& options,
                   const std::filesystem::path& out_dir,
                   std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };

    std::set<std::string> datasets, metric_sets, learners;
    for (const auto& [key, result] : results) {
        (void)result;
        datasets.insert(std::get<0>(key));
        metric_sets.insert(std::get<1>(key));
        learners.insert(std::get<2>(key));
    }

    // Baseline column first, remaining sets alphabetically.
    std::vector<std::string> columns;
    if (metric_sets.count(options.baseline_set)) columns.push_back(options.baseline_set);
    for (const auto& set : metric_sets) {
        if (set != options.baseline_set) columns.push_back(set);
    }

    auto find_result = [&](const std::string& ds, const std::string& set,
                           const std::string& learner) -> const EvalResult* {
        auto it = results.find(std::make_tuple(ds, set, learner));
        return it == results.end() ? nullptr : &it->second;
    };

    for (const auto& learner : learners) {
        auto md = open_out(out_dir / ("report_" + learner + ".md"));
        auto csv_out = open_out(out_dir / ("report_" + learner + ".csv"));

        md << "# Mean AUC by metric set (" << learner << ", " << options.folds
           << "-fold cross-validation)\n\n";
        md << "| Dataset |";
        for (const auto& col : columns) md << " " << col << " |";
        md << "\n|---|";
        for (size_t i = 0; i < columns.size(); ++i) md << "---|";
        md << "\n";

        std::vector<std::string> header = {"dataset", "metric_set", "mean_auc", "stddev_auc",
                                           "significant_vs_" + options.baseline_set};
        csv::write_row(csv_out, header);

        for (const auto& ds : datasets) {
            const EvalResult* baseline = find_result(ds, options.baseline_set, learner);

            // Best column gets the bold marker.
            double best_mean = -1.0;
            for (const auto& col : columns) {
                if (const EvalResult* r = find_result(ds, col, learner))
                    best_mean = std::max(best_mean, r->mean());
            }

            md << "| " << ds << " |";
            for (const auto& col : columns) {
                const EvalResult* r = find_result(ds, col, learner);
                if (!r) {
                    warn("no result for (" + ds + ", " + col + ", " + learner + ")");
                    md << " |";
                    csv::write_row(csv_out, {ds, col, "", "", ""});
                    continue;
                }
                std::string cell = format_fixed(r->mean(), 2);
                bool significant = false;
                if (baseline && col != options.baseline_set &&
                    baseline->auc_per_fold.size() == r->auc_per_fold.size()) {
                    significant = paired_t_test(*r, *baseline, options.alpha).significant;
                }
                if (r->mean() == best_mean) cell = "**" + cell + "**";
                if (significant) cell += " *";
                md << " " << cell << " |";
                csv::write_row(csv_out, {ds, col, format_fixed(r->mean(), 2),
                                         format_fixed(r->stddev(), 4),
                                         significant ? "1" : "0"});
            }
            md << "\n";
        }
        md << "\nBold marks the best column per row; '*' marks a significant paired "
              "t-test difference against "
           << options.baseline_set << " (alpha " << format_fixed(options.alpha, 2) << ").\n";
    }

    auto box = open_out(out_dir / "boxplot_summary.csv");
    csv::write_row(box, {"dataset", "metric_set", "learner", "min", "q1", "median", "q3", "max"});
    for (const auto& [key, result] : results) {
        const auto& [ds, set, learner] = key;
        Quartiles q = five_number_summary(result.auc_per_fold);
        csv::write_row(box, {ds, set, learner, format_double(q.min), format_double(q.q1),
                             format_double(q.median), format_double(q.q3), format_double(q.max)});
    }

    auto sig = open_out(out_dir / "significance.csv");
    std::vector<std::string> sig_header = {"dataset", "learner",      "metric_set", "baseline",
                                           "t",       "p",            "significant"};
    if (options.corrected_t_test) {
        sig_header.insert(sig_header.end(),
                          {"corrected_t", "corrected_p", "corrected_significant"});
    }
    csv::write_row(sig, sig_header);
    for (const auto& ds : datasets) {
        for (const auto& learner : learners) {
            const EvalResult* baseline = find_result(ds, options.baseline_set, learner);
            if (!baseline) continue;
            for (const auto& set : columns) {
                if (set == options.baseline_set) continue;
                const EvalResult* r = find_result(ds, set, learner);
                if (!r || r->auc_per_fold.size() != baseline->auc_per_fold.size()) continue;
                TTestResult t = paired_t_test(*r, *baseline, options.alpha);
                std::vector<std::string> row = {ds,
                                                learner,
                                                set,
                                                options.baseline_set,
                                                format_double(t.t),
                                                format_double(t.p),
                                                t.significant ? "1" : "0"};
                if (options.corrected_t_test) {
                    TTestResult c =
                        corrected_resampled_t_test(*r, *baseline, options.folds, options.alpha);
                    row.push_back(format_double(c.t));
                    row.push_back(format_double(c.p));
                    row.push_back(c.significant ? "1" : "0");
                }
                csv::write_row(sig, row);
            }
        }
    }
}

}  // namespace simdef
