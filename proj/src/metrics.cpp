#include "simdef/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"

namespace simdef {

std::vector<MetricRecord> compute_metrics(
    const SimilarityMatrix& matrix, const std::unordered_map<std::string, bool>& labels,
    const std::unordered_map<std::string, double>* sizes, bool with_size,
    const std::vector<char>* contributors) {
    const int n = matrix.size();
    if (contributors && static_cast<int>(contributors->size()) != n)
        throw InvariantError("contributor mask size does not match the matrix");

    std::vector<char> defective(n);
    std::vector<double> size_kb(n, 0.0);
    for (int i = 0; i < n; ++i) {
        auto it = labels.find(matrix.name(i));
        if (it == labels.end())
            throw ConfigError("no defect label for file '" + matrix.name(i) + "'");
        defective[i] = it->second;
        if (with_size) {
            if (!sizes) throw ConfigError("size-weighted metrics need file sizes");
            auto sit = sizes->find(matrix.name(i));
            if (sit == sizes->end())
                throw ConfigError("no size for file '" + matrix.name(i) + "'");
            size_kb[i] = sit->second;
        }
    }

    std::vector<MetricRecord> records(n);
    for (int i = 0; i < n; ++i) {
        records[i].logical_name = matrix.name(i);
        records[i].defective = defective[i];
        if (with_size) {
            records[i].stds_score = 0.0;
            records[i].stns_score = 0.0;
        }
    }

    // Entry iteration is in (i, j) lexicographic order, so each row receives
    // its neighbours in ascending index order, like a dense row scan would.
    auto contributes = [&](int j) { return !contributors || (*contributors)[j]; };
    for (const auto& [key, value] : matrix.entries()) {
        auto [i, j] = key;
        if (contributes(j)) {
            auto& r = records[i];
            (defective[j] ? r.std_score : r.stn_score) += value;
            if (with_size) {
                auto& slot = defective[j] ? r.stds_score : r.stns_score;
                *slot += value * size_kb[j];
            }
        }
        if (contributes(i)) {
            auto& r = records[j];
            (defective[i] ? r.std_score : r.stn_score) += value;
            if (with_size) {
                auto& slot = defective[i] ? r.stds_score : r.stns_score;
                *slot += value * size_kb[i];
            }
        }
    }

    std::sort(records.begin(), records.end(),
              [](const MetricRecord& a, const MetricRecord& b) {
                  return a.logical_name < b.logical_name;
              });
    return records;
}

void export_metric_table(const std::vector<MetricRecord>& records,
                         const std::string& relation_name, TableFormat format,
                         std::ostream& out) {
    if (records.empty()) throw ConfigError("refusing to export an empty metric table");
    bool with_size = records.front().stds_score.has_value();
    for (const auto& r : records) {
        if (r.stds_score.has_value() != with_size || r.stns_score.has_value() != with_size)
            throw InvariantError("mixed size-weighted and plain metric records");
    }

    if (format == TableFormat::Arff) {
        out << "@relation " << csv::encode_field(relation_name) << "\n\n";
        out << "@attribute STD numeric\n";
        out << "@attribute STN numeric\n";
        if (with_size) {
            out << "@attribute STDS numeric\n";
            out << "@attribute STNS numeric\n";
        }
        out << "@attribute class {0,1}\n\n@data\n";
    } else {
        std::vector<std::string> header = {"STD", "STN"};
        if (with_size) {
            header.push_back("STDS");
            header.push_back("STNS");
        }
        header.push_back("class");
        csv::write_row(out, header);
    }

    for (const auto& r : records) {
        std::vector<std::string> row = {format_double(r.std_score), format_double(r.stn_score)};
        if (with_size) {
            row.push_back(format_double(*r.stds_score));
            row.push_back(format_double(*r.stns_score));
        }
        row.push_back(r.defective ? "1" : "0");
        csv::write_row(out, row);
    }
}

std::vector<MetricRecord> import_metric_csv(std::istream& in) {
    auto rows = csv::read_rows(in);
    if (rows.empty()) throw ConfigError("metric CSV is empty");
    const auto& header = rows.front();
    bool with_size = header.size() == 5;
    if (header.size() != 3 && header.size() != 5)
        throw ConfigError("metric CSV must have STD,STN[,STDS,STNS],class columns");

    auto parse = [](const std::string& text) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ConfigError("non-numeric metric value '" + text + "'");
        return v;
    };

    std::vector<MetricRecord> records;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw ConfigError("ragged metric CSV row " + std::to_string(r + 1));
        MetricRecord rec;
        rec.std_score = parse(row[0]);
        rec.stn_score = parse(row[1]);
        if (with_size) {
            rec.stds_score = parse(row[2]);
            rec.stns_score = parse(row[3]);
        }
        rec.defective = row.back() == "1";
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace simdef
