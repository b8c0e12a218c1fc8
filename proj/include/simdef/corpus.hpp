#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace simdef {

// One source file of the analysed project.
struct SourceFile {
    std::string path;          // as scanned, relative to the corpus root
    std::string logical_name;  // relative path, suffix stripped, separators -> dots
    std::uint64_t size_bytes = 0;
    std::string content;

    double size_kb() const { return static_cast<double>(size_bytes) / 1024.0; }
};

// One labeled row of a defect dataset.
struct LabeledInstance {
    std::string logical_name;  // dotted class-style name
    bool defective = false;
    double size_kb = 0.0;  // filled once the instance is resolved to a file
    // (metric name, value) pairs in dataset header order; empty when the
    // dataset carries no baseline metric columns.
    std::vector<std::pair<std::string, double>> baseline_metrics;
};

// Recursively collects regular files under `root` whose names end with one
// of `extensions`, sorted by path. Unreadable files are skipped with a
// warning; an unreadable root throws IoError.
std::vector<SourceFile> scan_corpus(const std::filesystem::path& root,
                                    const std::vector<std::string>& extensions,
                                    std::vector<std::string>* warnings = nullptr);

// Loads instances from a header-bearing CSV. `defective` is bug > 0.
// When `metric_columns` is empty, every column other than the name and bug
// columns that parses numerically in all rows is taken as a metric.
std::vector<LabeledInstance> load_labels(const std::string& csv_path,
                                         const std::string& name_column,
                                         const std::string& bug_column,
                                         const std::vector<std::string>& metric_columns = {});

// Result of matching dataset instances to corpus files. Both maps are
// injective: a file carries at most one instance and vice versa.
struct NameResolution {
    std::unordered_map<std::string, std::string> instance_to_file;  // logical names
    std::unordered_map<std::string, std::string> file_to_instance;
    std::vector<std::string> unmatched_files;      // file logical names, sorted
    std::vector<std::string> unmatched_instances;  // instance names, sorted
};

// True when `instance_name` equals a suffix of `file_name` at a dot boundary
// ("org.apache.Main" matches "src.org.apache.Main" but not "xorg.apache.Main").
bool name_matches(const std::string& instance_name, const std::string& file_name);

// Matches each instance to the unique file whose logical name ends with the
// instance name. An instance matching several files is an error. When several
// instances land on one file, the longest (most specific) name wins and the
// others are reported unmatched.
NameResolution resolve_names(const std::vector<SourceFile>& files,
                             const std::vector<LabeledInstance>& instances);

NameResolution resolve_names(const std::vector<std::string>& file_names,
                             const std::vector<LabeledInstance>& instances);

}  // namespace simdef
