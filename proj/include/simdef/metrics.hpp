#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simdef/similarity_matrix.hpp"

namespace simdef {

// Per-file similarity totals split by the neighbours' defect label, plus the
// size-weighted variants when requested.
struct MetricRecord {
    std::string logical_name;
    double std_score = 0.0;  // summed similarity to defective files
    double stn_score = 0.0;  // summed similarity to non-defective files
    std::optional<double> stds_score;  // size-weighted variants (neighbour KB)
    std::optional<double> stns_score;
    bool defective = false;
};

// Sums each file's similarity to its defective and non-defective neighbours.
// The diagonal never contributes (the matrix cannot hold it). When
// `contributors` is given, only files flagged there are counted as
// neighbours; everything still gets a record. with_size additionally weights
// each neighbour's similarity by its size in kilobytes and requires `sizes`
// to cover every file. Output is sorted by logical_name.
std::vector<MetricRecord> compute_metrics(
    const SimilarityMatrix& matrix, const std::unordered_map<std::string, bool>& labels,
    const std::unordered_map<std::string, double>* sizes, bool with_size,
    const std::vector<char>* contributors = nullptr);

enum class TableFormat { Arff, Csv };

// ARFF: numeric attributes STD, STN[, STDS, STNS] and a nominal class {0,1};
// CSV: same columns with a header row. Attribute order is contractual.
// Numbers are printed with round-trip precision.
void export_metric_table(const std::vector<MetricRecord>& records,
                         const std::string& relation_name, TableFormat format,
                         std::ostream& out);

// Reads back a CSV produced by export_metric_table.
std::vector<MetricRecord> import_metric_csv(std::istream& in);

}  // namespace simdef
