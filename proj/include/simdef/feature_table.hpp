#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simdef/corpus.hpp"
#include "simdef/metrics.hpp"

namespace simdef {

// Instances-by-features numeric matrix with a binary label per row. The lone
// carrier between metric files and the learners.
struct FeatureTable {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows;
    std::vector<char> labels;               // 1 = defective
    std::vector<std::string> row_names;     // optional, parallel to rows when present

    int feature_count() const { return static_cast<int>(feature_names.size()); }
    int row_count() const { return static_cast<int>(rows.size()); }

    // Rectangularity, label/row agreement; training additionally requires
    // both classes, which learners check themselves.
    void validate() const;
    bool has_both_classes() const;
};

FeatureTable table_from_metric_records(const std::vector<MetricRecord>& records);

// Baseline static-metric table in instance order; every instance must carry
// the same metric names in the same order.
FeatureTable table_from_baseline(const std::vector<LabeledInstance>& instances);

// Minimal ARFF reader: numeric attributes plus one nominal class attribute
// (values 0/1, the last attribute), '%' comments, case-insensitive keywords.
FeatureTable load_arff(std::istream& in);

// CSV with a header; the last column is the class (0/1).
FeatureTable load_feature_csv(std::istream& in);

// Generic writers for arbitrary feature tables (the STD/STN exports with
// their contractual attribute order live in metrics.hpp).
void export_feature_arff(const FeatureTable& table, const std::string& relation_name,
                         std::ostream& out);
void export_feature_csv(const FeatureTable& table, std::ostream& out);

}  // namespace simdef
