#include "simdef/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"
#include "simdef/metrics.hpp"
#include "simdef/report.hpp"
#include "simdef/similarity_matrix.hpp"

namespace simdef {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (char c : value) {
        if (c == ',') {
            if (auto t = trim(current); !t.empty()) items.push_back(t);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (auto t = trim(current); !t.empty()) items.push_back(t);
    return items;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ",";
        out += item;
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("expected a boolean for " + key + ", got '" + value + "'");
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("expected an integer for " + key + ", got '" + value + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("expected a number for " + key + ", got '" + value + "'");
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

// ---------------------------------------------------------------------------
// Experiment assembly shared by the subcommands.

struct Experiment {
    std::vector<SourceFile> corpus;
    std::vector<LabeledInstance> instances;
    NameResolution resolution;
    bool has_corpus = false;
    bool has_labels = false;

    // Instances taking part in the experiments, sorted by logical name. With
    // a corpus these are the matched ones; without, all labeled instances.
    std::vector<std::string> experiment_names;
    std::vector<const LabeledInstance*> experiment_instances;
    std::unordered_map<std::string, bool> labels;
    std::unordered_map<std::string, double> sizes;  // KB, only when resolved to files
};

Experiment load_experiment(const RunConfig& config, std::ostream& log, bool need_labels) {
    Experiment exp;
    if (!config.corpus_root.empty()) {
        std::vector<std::string> warnings;
        exp.corpus = scan_corpus(config.corpus_root, config.extensions, &warnings);
        for (const auto& w : warnings) log << "warning: " << w << "\n";
        exp.has_corpus = true;
    }
    if (!config.label_csv.empty()) {
        exp.instances = load_labels(config.label_csv, config.name_column, config.bug_column,
                                    config.metric_columns);
        exp.has_labels = true;
    }
    if (need_labels && !exp.has_labels) {
        throw ConfigError("this command needs labels; set labels.csv");
    }
    if (!exp.has_labels) return exp;

    std::unordered_map<std::string, const LabeledInstance*> by_name;
    for (const auto& inst : exp.instances) {
        if (!by_name.emplace(inst.logical_name, &inst).second)
            throw ConfigError("duplicate instance name in labels: " + inst.logical_name);
    }

    if (exp.has_corpus) {
        exp.resolution = resolve_names(exp.corpus, exp.instances);
        std::unordered_map<std::string, const SourceFile*> file_by_name;
        for (const auto& f : exp.corpus) file_by_name[f.logical_name] = &f;
        for (const auto& [inst_name, file_name] : exp.resolution.instance_to_file) {
            exp.experiment_names.push_back(inst_name);
            exp.sizes[inst_name] = file_by_name.at(file_name)->size_kb();
        }
    } else {
        for (const auto& inst : exp.instances) exp.experiment_names.push_back(inst.logical_name);
    }
    std::sort(exp.experiment_names.begin(), exp.experiment_names.end());
    for (const auto& name : exp.experiment_names) {
        const auto* inst = by_name.at(name);
        exp.experiment_instances.push_back(inst);
        exp.labels[name] = inst->defective;
    }
    if (exp.experiment_names.empty())
        throw ConfigError("no labeled instances matched the corpus");
    return exp;
}

void write_unmatched_reports(const Experiment& exp, const RunConfig& config, std::ostream& log) {
    if (!exp.has_corpus || !exp.has_labels) return;
    auto dir = std::filesystem::path(config.output_dir);
    {
        auto out = open_out(dir / "unmatched_files.txt");
        for (const auto& name : exp.resolution.unmatched_files) out << name << "\n";
    }
    {
        auto out = open_out(dir / "unmatched_instances.txt");
        for (const auto& name : exp.resolution.unmatched_instances) out << name << "\n";
    }
    if (!exp.resolution.unmatched_instances.empty()) {
        log << "warning: " << exp.resolution.unmatched_instances.size()
            << " instances had no matching file and are excluded (see unmatched_instances.txt)\n";
    }
}

// ---------------------------------------------------------------------------
// Similarity matrices per metric set.

// Maps a raw name from an external similarity CSV onto an experiment
// instance: exact, then path-normalized, then unique dotted-suffix match.
std::optional<std::string> resolve_external_name(const std::string& raw, const Experiment& exp,
                                                 const std::vector<std::string>& extensions) {
    if (exp.labels.count(raw)) return raw;
    std::string norm = raw;
    for (const auto& ext : extensions) {
        if (norm.size() > ext.size() &&
            norm.compare(norm.size() - ext.size(), ext.size(), ext) == 0) {
            norm.erase(norm.size() - ext.size());
            break;
        }
    }
    std::replace(norm.begin(), norm.end(), '/', '.');
    std::replace(norm.begin(), norm.end(), '\\', '.');
    if (exp.labels.count(norm)) return norm;

    std::optional<std::string> unique;
    for (const auto& name : exp.experiment_names) {
        if (name_matches(name, norm)) {
            if (unique) return std::nullopt;  // ambiguous
            unique = name;
        }
    }
    return unique;
}

SimilarityMatrix import_external_matrix(const std::string& path, const Experiment& exp,
                                        const RunConfig& config, std::ostream& log) {
    std::unordered_map<std::string, std::string> name_map;
    for (const auto& row : csv::read_file(path)) {
        for (size_t c = 0; c < 2 && c < row.size(); ++c) {
            if (name_map.count(row[c])) continue;
            if (auto resolved = resolve_external_name(row[c], exp, config.extensions)) {
                name_map.emplace(row[c], *resolved);
            }
        }
    }
    std::vector<std::string> warnings;
    auto matrix = import_similarity_csv(path, exp.experiment_names, name_map, &warnings);
    for (const auto& w : warnings) log << "warning: " << path << ": " << w << "\n";
    return matrix;
}

// Full-corpus matrix for a detector mode, cached as CSV in the output dir.
SimilarityMatrix corpus_matrix(DetectorMode mode, const RunConfig& config,
                               const Experiment& exp, std::ostream& log) {
    if (!exp.has_corpus)
        throw ConfigError(to_string(mode) + " detection needs corpus.root");
    DetectorConfig detector = config.detector;
    detector.mode = mode;

    auto cache = std::filesystem::path(config.output_dir) /
                 ("similarity_" + to_string(mode) + ".csv");
    std::vector<std::string> file_names;
    for (const auto& f : exp.corpus) file_names.push_back(f.logical_name);

    if (std::filesystem::exists(cache)) {
        log << "using cached " << cache.filename().string() << "\n";
        std::vector<std::string> warnings;
        auto matrix = import_similarity_csv(cache.string(), file_names, {}, &warnings);
        for (const auto& w : warnings) log << "warning: " << w << "\n";
        return matrix;
    }
    std::vector<std::string> warnings;
    auto matrix = build_matrix(exp.corpus, detector, &warnings);
    for (const auto& w : warnings) log << "warning: " << w << "\n";
    auto out = open_out(cache);
    export_similarity_csv(matrix, out);
    return matrix;
}

// Experiment-instance view of a corpus matrix: rows and columns for matched
// files only, renamed to their instance names.
SimilarityMatrix restrict_to_instances(const SimilarityMatrix& full, const Experiment& exp) {
    std::vector<std::string> matched_files;
    matched_files.reserve(exp.experiment_names.size());
    for (const auto& inst : exp.experiment_names) {
        matched_files.push_back(exp.resolution.instance_to_file.at(inst));
    }
    return full.restricted_to(matched_files).renamed(exp.experiment_names);
}

struct MetricSetData {
    FeatureTable table;
    std::vector<MetricRecord> records;  // empty for Msc
    // Present for similarity-derived sets; used to rebuild features per fold
    // in leakage-safe evaluation. Indexed like the table rows.
    std::optional<SimilarityMatrix> matrix;
    bool with_size = false;
};

MetricSetData build_one_set(const std::string& set, const RunConfig& config,
                            const Experiment& exp, std::ostream& log) {
    MetricSetData data;
    if (set == "Msc") {
        std::vector<LabeledInstance> ordered;
        ordered.reserve(exp.experiment_instances.size());
        for (const auto* inst : exp.experiment_instances) ordered.push_back(*inst);
        data.table = table_from_baseline(ordered);
        return data;
    }

    SimilarityMatrix matrix;
    if (set == "Mm" || set == "Mms") {
        matrix = restrict_to_instances(corpus_matrix(DetectorMode::Fingerprint, config, exp, log),
                                       exp);
        data.with_size = set == "Mms";
    } else if (set == "Mc") {
        matrix = restrict_to_instances(corpus_matrix(DetectorMode::Clone, config, exp, log), exp);
    } else {
        auto it = config.imports.find(set);
        if (it == config.imports.end()) {
            throw ConfigError("metric set '" + set +
                              "' is not built in; give its similarity CSV via import." + set);
        }
        matrix = import_external_matrix(it->second, exp, config, log);
    }

    data.records = compute_metrics(matrix, exp.labels, data.with_size ? &exp.sizes : nullptr,
                                   data.with_size);
    data.table = table_from_metric_records(data.records);
    data.matrix = std::move(matrix);
    return data;
}

std::map<std::string, MetricSetData> build_metric_sets(const RunConfig& config,
                                                       const Experiment& exp, std::ostream& log,
                                                       bool write_files) {
    std::map<std::string, MetricSetData> sets;
    auto dir = std::filesystem::path(config.output_dir);
    for (const auto& set : config.metric_sets) {
        if (sets.count(set)) continue;
        auto data = build_one_set(set, config, exp, log);
        if (data.table.row_names != exp.experiment_names)
            throw InvariantError("metric set '" + set + "' rows diverge from the instance set");

        if (write_files) {
            std::string relation = config.dataset + "_" + set;
            if (set == "Msc") {
                auto arff = open_out(dir / ("metrics_" + set + ".arff"));
                export_feature_arff(data.table, relation, arff);
                auto csv_out = open_out(dir / ("metrics_" + set + ".csv"));
                export_feature_csv(data.table, csv_out);
            } else {
                auto arff = open_out(dir / ("metrics_" + set + ".arff"));
                export_metric_table(data.records, relation, TableFormat::Arff, arff);
                auto csv_out = open_out(dir / ("metrics_" + set + ".csv"));
                export_metric_table(data.records, relation, TableFormat::Csv, csv_out);
            }
        }
        sets.emplace(set, std::move(data));
    }
    return sets;
}

void write_config_echo(const RunConfig& config) {
    auto out = open_out(std::filesystem::path(config.output_dir) / "run_config.txt");
    out << render_run_config(config);
}

// Upserts the (dataset, detector) row so repeated detect runs accumulate
// the Table IV/V-shaped grid instead of clobbering each other.
void write_stats_csv(const RunConfig& config, const std::string& detector_name,
                     const MatrixStats& ms, const ClassPairStats* cps) {
    auto path = std::filesystem::path(config.output_dir) / "matrix_stats.csv";
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> rows;
    if (std::filesystem::exists(path)) {
        auto existing = csv::read_file(path.string());
        for (size_t r = 1; r < existing.size(); ++r) {
            if (existing[r].size() >= 2) rows[{existing[r][0], existing[r][1]}] = existing[r];
        }
    }

    std::vector<std::string> row = {config.dataset,          detector_name,
                                    std::to_string(ms.rc),   std::to_string(ms.nne),
                                    format_fixed(ms.density_pct, 2)};
    if (cps) {
        row.push_back(std::to_string(cps->both_defective));
        row.push_back(std::to_string(cps->both_non_defective));
        row.push_back(format_fixed(cps->combined_pct, 2));
    } else {
        row.insert(row.end(), {"", "", ""});
    }
    rows[{config.dataset, detector_name}] = std::move(row);

    auto out = open_out(path);
    csv::write_row(out, {"dataset", "detector", "RC", "NNE", "rho", "E_D", "E_N", "S"});
    for (const auto& [key, fields] : rows) {
        (void)key;
        csv::write_row(out, fields);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Config file handling.

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "dataset") config.dataset = value;
    else if (key == "corpus.root") config.corpus_root = value;
    else if (key == "corpus.extensions") config.extensions = split_list(value);
    else if (key == "labels.csv") config.label_csv = value;
    else if (key == "labels.name_column") config.name_column = value;
    else if (key == "labels.bug_column") config.bug_column = value;
    else if (key == "labels.metric_columns") config.metric_columns = split_list(value);
    else if (key == "detector.mode") config.detector.mode = detector_mode_from_string(value);
    else if (key == "detector.k") config.detector.k = static_cast<int>(parse_int(key, value));
    else if (key == "detector.w") config.detector.w = static_cast<int>(parse_int(key, value));
    else if (key == "detector.max_sharing") config.detector.max_sharing = parse_int(key, value);
    else if (key == "detector.min_tokens")
        config.detector.min_tokens = static_cast<int>(parse_int(key, value));
    else if (key == "detector.import_csv") config.detector.import_csv = value;
    else if (key == "metric_sets") config.metric_sets = split_list(value);
    else if (key == "learners") {
        config.learners.clear();
        for (const auto& name : split_list(value)) config.learners.push_back(learner_from_string(name));
    } else if (key == "cv.folds") config.cv_folds = static_cast<int>(parse_int(key, value));
    else if (key == "cv.repeats") config.cv_repeats = static_cast<int>(parse_int(key, value));
    else if (key == "cv.leakage_safe") config.leakage_safe = parse_bool(key, value);
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "baseline_set") config.baseline_set = value;
    else if (key == "t_test.corrected") config.corrected_t_test = parse_bool(key, value);
    else if (key == "output_dir") config.output_dir = value;
    else if (key == "rf.trees") config.rf_trees = static_cast<int>(parse_int(key, value));
    else if (key == "rf.features_per_split")
        config.rf_features_per_split = static_cast<int>(parse_int(key, value));
    else if (key == "knn.max_k") config.knn_max_k = static_cast<int>(parse_int(key, value));
    else if (key == "nb.variance_floor") config.variance_floor = parse_real(key, value);
    else if (key.rfind("import.", 0) == 0) {
        std::string set = key.substr(7);
        if (set.empty()) throw ConfigError("import.<set> needs a metric set name");
        config.imports[set] = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    RunConfig config;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
        apply_override(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
    return config;
}

std::string render_run_config(const RunConfig& config) {
    std::ostringstream out;
    auto line = [&](const std::string& key, const std::string& value) {
        out << key << " = " << value << "\n";
    };
    line("dataset", config.dataset);
    line("corpus.root", config.corpus_root);
    line("corpus.extensions", join_list(config.extensions));
    line("labels.csv", config.label_csv);
    line("labels.name_column", config.name_column);
    line("labels.bug_column", config.bug_column);
    line("labels.metric_columns", join_list(config.metric_columns));
    line("detector.mode", to_string(config.detector.mode));
    line("detector.k", std::to_string(config.detector.k));
    line("detector.w", std::to_string(config.detector.w));
    line("detector.max_sharing", std::to_string(config.detector.max_sharing));
    line("detector.min_tokens", std::to_string(config.detector.min_tokens));
    line("detector.import_csv", config.detector.import_csv);
    line("metric_sets", join_list(config.metric_sets));
    for (const auto& [set, path] : config.imports) line("import." + set, path);
    {
        std::vector<std::string> names;
        for (auto kind : config.learners) names.push_back(to_string(kind));
        line("learners", join_list(names));
    }
    line("cv.folds", std::to_string(config.cv_folds));
    line("cv.repeats", std::to_string(config.cv_repeats));
    line("cv.leakage_safe", config.leakage_safe ? "true" : "false");
    line("seed", std::to_string(config.seed));
    line("baseline_set", config.baseline_set);
    line("t_test.corrected", config.corrected_t_test ? "true" : "false");
    line("output_dir", config.output_dir);
    line("rf.trees", std::to_string(config.rf_trees));
    line("rf.features_per_split", std::to_string(config.rf_features_per_split));
    line("knn.max_k", std::to_string(config.knn_max_k));
    line("nb.variance_floor", format_double(config.variance_floor));
    return out.str();
}

void RunConfig::validate_for_detect() const {
    detector.validate();
    if (output_dir.empty()) throw ConfigError("output_dir must be set");
    if (detector.mode != DetectorMode::Import && corpus_root.empty())
        throw ConfigError("detection needs corpus.root");
    if (detector.mode == DetectorMode::Import && label_csv.empty())
        throw ConfigError("import mode needs labels.csv to name the instances");
    if (cv_folds < 2) throw ConfigError("cv.folds must be >= 2");
    if (cv_repeats < 1) throw ConfigError("cv.repeats must be >= 1");

    auto must_exist = [](const std::string& key, const std::string& path, bool directory) {
        if (path.empty()) return;
        std::error_code ec;
        bool ok = directory ? std::filesystem::is_directory(path, ec)
                            : std::filesystem::is_regular_file(path, ec);
        if (!ok || ec)
            throw ConfigError(key + " does not point at an existing " +
                              (directory ? "directory" : "file") + ": " + path);
    };
    must_exist("corpus.root", corpus_root, true);
    must_exist("labels.csv", label_csv, false);
    must_exist("detector.import_csv", detector.import_csv, false);
    for (const auto& [set, path] : imports) must_exist("import." + set, path, false);
}

void RunConfig::validate_for_metrics() const {
    validate_for_detect();
    if (label_csv.empty()) throw ConfigError("metric extraction needs labels.csv");
    if (metric_sets.empty()) throw ConfigError("metric_sets must not be empty");
}

// ---------------------------------------------------------------------------
// Subcommands.

OutputLock::OutputLock(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    path_ = dir / ".simdef.lock";
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw IoError("output directory is locked by another run (remove " + path_.string() +
                      " if that run is gone)");
    }
    ::close(fd);
}

OutputLock::~OutputLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

void cmd_detect(const RunConfig& config, std::ostream& log) {
    config.validate_for_detect();
    OutputLock lock(config.output_dir);
    write_config_echo(config);

    Experiment exp = load_experiment(config, log, /*need_labels=*/false);
    write_unmatched_reports(exp, config, log);

    SimilarityMatrix instance_matrix;  // labeled view used for the stats
    std::string detector_name = to_string(config.detector.mode);
    if (config.detector.mode == DetectorMode::Import) {
        instance_matrix = import_external_matrix(config.detector.import_csv, exp, config, log);
        auto out = open_out(std::filesystem::path(config.output_dir) / "similarity_import.csv");
        export_similarity_csv(instance_matrix, out);
    } else {
        auto full = corpus_matrix(config.detector.mode, config, exp, log);
        if (exp.has_labels) {
            instance_matrix = restrict_to_instances(full, exp);
        } else {
            auto ms = stats(full);
            write_stats_csv(config, detector_name, ms, nullptr);
            log << "detected " << full.entries().size() << " similar pairs over "
                << full.size() << " files\n";
            return;
        }
    }

    auto ms = stats(instance_matrix);
    auto cps = class_pair_stats(instance_matrix, exp.labels);
    write_stats_csv(config, detector_name, ms, &cps);
    log << "detected " << instance_matrix.entries().size() << " similar pairs over "
        << instance_matrix.size() << " labeled instances\n";
}

void cmd_metrics(const RunConfig& config, std::ostream& log) {
    config.validate_for_metrics();
    OutputLock lock(config.output_dir);
    write_config_echo(config);

    Experiment exp = load_experiment(config, log, /*need_labels=*/true);
    write_unmatched_reports(exp, config, log);
    auto sets = build_metric_sets(config, exp, log, /*write_files=*/true);
    for (const auto& [name, data] : sets) {
        log << "metric set " << name << ": " << data.table.row_count() << " instances, "
            << data.table.feature_count() << " features\n";
    }
}

void cmd_evaluate(const RunConfig& config, std::ostream& log) {
    config.validate_for_metrics();
    if (config.learners.empty()) throw ConfigError("learners must not be empty");
    OutputLock lock(config.output_dir);
    write_config_echo(config);

    Experiment exp = load_experiment(config, log, /*need_labels=*/true);
    write_unmatched_reports(exp, config, log);
    auto sets = build_metric_sets(config, exp, log, /*write_files=*/true);

    CVPlan plan;
    plan.folds = config.cv_folds;
    plan.repeats = config.cv_repeats;
    plan.seed = config.seed;
    plan.leakage_safe = config.leakage_safe;

    std::vector<std::string> warnings;
    ResultMap results;
    for (const auto& set : config.metric_sets) {
        const auto& data = sets.at(set);
        FeatureBuilder rebuild;
        if (plan.leakage_safe && data.matrix) {
            const SimilarityMatrix& matrix = *data.matrix;
            bool with_size = data.with_size;
            rebuild = [&matrix, &exp, with_size](const std::vector<char>& train_mask) {
                auto records = compute_metrics(matrix, exp.labels,
                                               with_size ? &exp.sizes : nullptr, with_size,
                                               &train_mask);
                return table_from_metric_records(records);
            };
        }
        for (auto kind : config.learners) {
            LearnerConfig learner;
            learner.kind = kind;
            learner.seed = config.seed;
            learner.rf_trees = config.rf_trees;
            learner.rf_features_per_split = config.rf_features_per_split;
            learner.knn_max_k = config.knn_max_k;
            learner.variance_floor = config.variance_floor;

            auto result = cross_validate(data.table, learner, plan,
                                         rebuild ? &rebuild : nullptr, &warnings);
            results[{config.dataset, set, to_string(kind)}] = std::move(result);
            log << config.dataset << " / " << set << " / " << to_string(kind)
                << ": mean AUC " << format_fixed(results[{config.dataset, set, to_string(kind)}].mean(), 4)
                << "\n";
        }
    }

    {
        auto out = open_out(std::filesystem::path(config.output_dir) / "raw_results.csv");
        write_raw_results_csv(results, plan.folds, out);
    }
    ReportOptions options;
    options.baseline_set = config.baseline_set;
    options.corrected_t_test = config.corrected_t_test;
    options.folds = plan.folds;
    write_reports(results, options, config.output_dir, &warnings);

    std::sort(warnings.begin(), warnings.end());
    warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
    for (const auto& w : warnings) log << "warning: " << w << "\n";
}

void cmd_report(const RunConfig& config, std::ostream& log) {
    if (config.output_dir.empty()) throw ConfigError("output_dir must be set");
    OutputLock lock(config.output_dir);

    auto raw_path = std::filesystem::path(config.output_dir) / "raw_results.csv";
    std::ifstream in(raw_path, std::ios::binary);
    if (!in) throw IoError("no raw_results.csv in " + config.output_dir + "; run evaluate first");
    auto results = read_raw_results_csv(in);

    ReportOptions options;
    options.baseline_set = config.baseline_set;
    options.corrected_t_test = config.corrected_t_test;
    options.folds = config.cv_folds;
    std::vector<std::string> warnings;
    write_reports(results, options, config.output_dir, &warnings);
    for (const auto& w : warnings) log << "warning: " << w << "\n";
    log << "rebuilt reports for " << results.size() << " result cells\n";
}

}  // namespace simdef
