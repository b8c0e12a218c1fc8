#include "simdef/feature_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"
#include "simdef/similarity_matrix.hpp"

namespace simdef {
namespace {

double parse_numeric(const std::string& text, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(std::string("non-numeric ") + what + " value '" + text + "'");
    return v;
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void FeatureTable::validate() const {
    if (rows.size() != labels.size())
        throw InvariantError("feature table has " + std::to_string(rows.size()) + " rows but " +
                             std::to_string(labels.size()) + " labels");
    for (const auto& row : rows) {
        if (row.size() != feature_names.size())
            throw InvariantError("ragged feature table row");
    }
    if (!row_names.empty() && row_names.size() != rows.size())
        throw InvariantError("row names do not match row count");
}

bool FeatureTable::has_both_classes() const {
    bool pos = false, neg = false;
    for (char l : labels) (l ? pos : neg) = true;
    return pos && neg;
}

FeatureTable table_from_metric_records(const std::vector<MetricRecord>& records) {
    FeatureTable t;
    bool with_size = !records.empty() && records.front().stds_score.has_value();
    t.feature_names = {"STD", "STN"};
    if (with_size) {
        t.feature_names.push_back("STDS");
        t.feature_names.push_back("STNS");
    }
    for (const auto& r : records) {
        std::vector<double> row = {r.std_score, r.stn_score};
        if (with_size) {
            row.push_back(r.stds_score.value());
            row.push_back(r.stns_score.value());
        }
        t.rows.push_back(std::move(row));
        t.labels.push_back(r.defective);
        t.row_names.push_back(r.logical_name);
    }
    t.validate();
    return t;
}

FeatureTable table_from_baseline(const std::vector<LabeledInstance>& instances) {
    FeatureTable t;
    for (const auto& inst : instances) {
        if (t.feature_names.empty()) {
            for (const auto& [name, value] : inst.baseline_metrics) {
                (void)value;
                t.feature_names.push_back(name);
            }
            if (t.feature_names.empty())
                throw ConfigError("instances carry no baseline metric columns");
        }
        if (inst.baseline_metrics.size() != t.feature_names.size())
            throw ConfigError("instance '" + inst.logical_name +
                              "' has a different baseline metric set");
        std::vector<double> row;
        row.reserve(inst.baseline_metrics.size());
        for (size_t m = 0; m < inst.baseline_metrics.size(); ++m) {
            if (inst.baseline_metrics[m].first != t.feature_names[m])
                throw ConfigError("instance '" + inst.logical_name +
                                  "' has a different baseline metric set");
            row.push_back(inst.baseline_metrics[m].second);
        }
        t.rows.push_back(std::move(row));
        t.labels.push_back(inst.defective);
        t.row_names.push_back(inst.logical_name);
    }
    t.validate();
    return t;
}

FeatureTable load_arff(std::istream& in) {
    FeatureTable t;
    std::vector<std::string> attr_names;
    bool in_data = false;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '%') continue;
        if (!in_data && line[0] == '@') {
            std::istringstream ls(line);
            std::string keyword;
            ls >> keyword;
            keyword = lowercase(keyword);
            if (keyword == "@relation") continue;
            if (keyword == "@data") {
                in_data = true;
                continue;
            }
            if (keyword == "@attribute") {
                std::string name, type;
                ls >> name >> type;
                attr_names.push_back(name);
                continue;
            }
            throw ConfigError("unsupported ARFF directive: " + line);
        }
        if (!in_data) throw ConfigError("ARFF data row before @data at line " + std::to_string(line_no));
        auto fields = csv::split_line(line);
        if (fields.size() != attr_names.size())
            throw ConfigError("ARFF row width mismatch at line " + std::to_string(line_no));
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (size_t i = 0; i + 1 < fields.size(); ++i) {
            row.push_back(parse_numeric(trim(fields[i]), "attribute"));
        }
        t.rows.push_back(std::move(row));
        t.labels.push_back(trim(fields.back()) == "1");
    }
    if (attr_names.size() < 2) throw ConfigError("ARFF needs at least one attribute and a class");
    t.feature_names.assign(attr_names.begin(), attr_names.end() - 1);
    t.validate();
    return t;
}

void export_feature_arff(const FeatureTable& table, const std::string& relation_name,
                         std::ostream& out) {
    table.validate();
    if (table.rows.empty()) throw ConfigError("refusing to export an empty feature table");
    out << "@relation " << csv::encode_field(relation_name) << "\n\n";
    for (const auto& name : table.feature_names) {
        out << "@attribute " << name << " numeric\n";
    }
    out << "@attribute class {0,1}\n\n@data\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<std::string> fields;
        fields.reserve(table.rows[r].size() + 1);
        for (double v : table.rows[r]) fields.push_back(format_double(v));
        fields.push_back(table.labels[r] ? "1" : "0");
        csv::write_row(out, fields);
    }
}

void export_feature_csv(const FeatureTable& table, std::ostream& out) {
    table.validate();
    if (table.rows.empty()) throw ConfigError("refusing to export an empty feature table");
    std::vector<std::string> header = table.feature_names;
    header.push_back("class");
    csv::write_row(out, header);
    for (size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<std::string> fields;
        for (double v : table.rows[r]) fields.push_back(format_double(v));
        fields.push_back(table.labels[r] ? "1" : "0");
        csv::write_row(out, fields);
    }
}

FeatureTable load_feature_csv(std::istream& in) {
    auto rows = csv::read_rows(in);
    if (rows.size() < 1 || rows.front().size() < 2)
        throw ConfigError("feature CSV needs a header with at least one feature and a class");
    FeatureTable t;
    t.feature_names.assign(rows.front().begin(), rows.front().end() - 1);
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw ConfigError("ragged feature CSV row " + std::to_string(r + 1));
        std::vector<double> row;
        for (size_t c = 0; c + 1 < rows[r].size(); ++c)
            row.push_back(parse_numeric(rows[r][c], "feature"));
        t.rows.push_back(std::move(row));
        t.labels.push_back(rows[r].back() == "1");
    }
    t.validate();
    return t;
}

}  // namespace simdef
