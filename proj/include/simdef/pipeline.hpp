#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "simdef/corpus.hpp"
#include "simdef/detector.hpp"
#include "simdef/evaluation.hpp"
#include "simdef/learners.hpp"

namespace simdef {

// Everything one experiment run needs, assembled from a key=value config
// file plus command-line overrides. Every output is a pure function of this
// struct and the referenced input bytes.
struct RunConfig {
    std::string dataset = "dataset";
    std::string corpus_root;
    std::vector<std::string> extensions = {".java"};
    std::string label_csv;
    std::string name_column = "name";
    std::string bug_column = "bug";
    std::vector<std::string> metric_columns;  // empty: auto-detect numeric columns

    DetectorConfig detector;
    std::vector<std::string> metric_sets = {"Mm", "Msc"};
    std::map<std::string, std::string> imports;  // metric set name -> similarity CSV

    std::vector<LearnerKind> learners = {LearnerKind::RandomForest, LearnerKind::NaiveBayes,
                                         LearnerKind::KNearest};
    int cv_folds = 5;
    int cv_repeats = 5;
    bool leakage_safe = false;
    std::uint64_t seed = 0;
    std::string baseline_set = "Msc";
    bool corrected_t_test = false;

    std::string output_dir;
    int rf_trees = 100;
    int rf_features_per_split = 0;
    int knn_max_k = 10;
    double variance_floor = 1e-9;

    void validate_for_detect() const;
    void validate_for_metrics() const;
};

// One `key = value` per line, '#' comments. Unknown keys are fatal.
RunConfig load_run_config(const std::string& path);
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Canonical echo of the resolved config, stable across runs.
std::string render_run_config(const RunConfig& config);

// Pipeline stages behind the CLI subcommands. Each writes its artifacts
// under config.output_dir and logs warnings to `log`. They throw
// ConfigError / IoError / InvariantError on failure.
void cmd_detect(const RunConfig& config, std::ostream& log);
void cmd_metrics(const RunConfig& config, std::ostream& log);
void cmd_evaluate(const RunConfig& config, std::ostream& log);
void cmd_report(const RunConfig& config, std::ostream& log);

// Holds `<dir>/.simdef.lock` exclusively for the lifetime of the object.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
};

}  // namespace simdef
