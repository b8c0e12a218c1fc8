// simdef: token-fingerprint code similarity and similarity-metric defect
// prediction experiments over Promise-style datasets.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "simdef/errors.hpp"
#include "simdef/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct CliOptions {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;  // applied in flag order
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("-c,--config", opts.config_file, "key = value run configuration file")
        ->check(CLI::ExistingFile);

    auto bind = [&opts, cmd](const std::string& flag, const std::string& key,
                             const std::string& help) {
        cmd->add_option_function<std::string>(
               flag,
               [&opts, key](const std::string& value) { opts.overrides.emplace_back(key, value); },
               help)
            ->type_name("TEXT");
    };
    bind("--dataset", "dataset", "dataset name used in reports");
    bind("--corpus-root", "corpus.root", "directory of source files to analyse");
    bind("--extensions", "corpus.extensions", "comma list of file suffixes (default .java)");
    bind("--labels", "labels.csv", "Promise-style CSV with names and bug counts");
    bind("--name-column", "labels.name_column", "label CSV name column (default name)");
    bind("--bug-column", "labels.bug_column", "label CSV bug column (default bug)");
    bind("--metric-columns", "labels.metric_columns",
         "comma list of baseline metric columns (default: all numeric)");
    bind("--mode", "detector.mode", "fingerprint | clone | import");
    bind("--kgram", "detector.k", "k-gram length in tokens (default 5)");
    bind("--window", "detector.w", "winnowing window in hashes (default 4)");
    bind("--max-sharing", "detector.max_sharing",
         "ignore fingerprints shared by more than this many files (0 = corpus size)");
    bind("--min-tokens", "detector.min_tokens", "clone mode report threshold (default 50)");
    bind("--import-csv", "detector.import_csv", "similarity CSV for import mode");
    bind("--metric-sets", "metric_sets", "comma list from Mm, Mc, Mms, Msc, imported names");
    bind("--learners", "learners", "comma list from rf, nb, knn");
    bind("--folds", "cv.folds", "cross-validation folds (default 5)");
    bind("--repeats", "cv.repeats", "cross-validation repeats (default 5)");
    bind("--leakage-safe", "cv.leakage_safe",
         "recompute similarity metrics per fold from training labels only");
    bind("--seed", "seed", "seed for folds and learners (default 0)");
    bind("--baseline", "baseline_set", "metric set the t-tests compare against (default Msc)");
    bind("--corrected-t", "t_test.corrected", "also report the corrected resampled t-test");
    bind("--output-dir", "output_dir", "artifact directory (or env SIMDEF_OUTPUT_DIR)");
    bind("--rf-trees", "rf.trees", "random forest size (default 100)");
    bind("--knn-max-k", "knn.max_k", "largest k tried by kNN (default 10)");

    cmd->add_option_function<std::vector<std::string>>(
           "--set",
           [&opts](const std::vector<std::string>& pairs) {
               for (const auto& pair : pairs) {
                   auto eq = pair.find('=');
                   if (eq == std::string::npos) {
                       throw CLI::ValidationError("--set expects key=value, got '" + pair + "'");
                   }
                   opts.overrides.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
               }
           },
           "any config key as key=value (e.g. --set import.Mf=ccfinder.csv)")
        ->type_name("KEY=VALUE");
}

simdef::RunConfig resolve_config(const CliOptions& opts) {
    simdef::RunConfig config;
    if (!opts.config_file.empty()) config = simdef::load_run_config(opts.config_file);
    for (const auto& [key, value] : opts.overrides) simdef::apply_override(config, key, value);
    if (config.output_dir.empty()) {
        if (const char* env = std::getenv("SIMDEF_OUTPUT_DIR")) config.output_dir = env;
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"source-file similarity detection and defect-prediction evaluation"};
    app.require_subcommand(1);

    CliOptions opts;
    void (*stages[])(const simdef::RunConfig&, std::ostream&) = {
        simdef::cmd_detect, simdef::cmd_metrics, simdef::cmd_evaluate, simdef::cmd_report};
    int selected = -1;

    const char* names[] = {"detect", "metrics", "evaluate", "report"};
    const char* help[] = {
        "build or import the pairwise similarity matrix and its statistics",
        "compute metric tables (STD/STN and friends) per metric set",
        "run repeated stratified cross-validation and write reports",
        "rebuild report files from an existing raw_results.csv",
    };
    for (int i = 0; i < 4; ++i) {
        auto* cmd = app.add_subcommand(names[i], help[i]);
        add_common_flags(cmd, opts);
        cmd->callback([&selected, i] { selected = i; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        auto config = resolve_config(opts);
        stages[selected](config, std::cout);
        return kExitOk;
    } catch (const simdef::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const simdef::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
