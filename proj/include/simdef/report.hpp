#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "simdef/evaluation.hpp"

namespace simdef {

// (dataset, metric set, learner) -> per-fold AUC values.
using ResultMap = std::map<std::tuple<std::string, std::string, std::string>, EvalResult>;

struct ReportOptions {
    std::string baseline_set = "Msc";
    double alpha = 0.05;
    bool corrected_t_test = false;  // additionally report the resampled-corrected test
    int folds = 5;
};

struct Quartiles {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Median-exclusive quartiles: each half stops short of the median element.
Quartiles five_number_summary(std::vector<double> values);

std::string format_fixed(double value, int decimals);

void write_raw_results_csv(const ResultMap& results, int folds, std::ostream& out);
ResultMap read_raw_results_csv(std::istream& in);

// Per learner: report_<learner>.md (mean AUC per dataset and metric set,
// best column in bold, '*' marking significance against the baseline) and
// report_<learner>.csv with means and test details; plus a shared
// boxplot_summary.csv and significance.csv. Cells without results render
// blank with a warning.
void write_reports(const ResultMap& results, const ReportOptions& options,
                   const std::filesystem::path& out_dir,
                   std::vector<std::string>* warnings = nullptr);

}  // namespace simdef
