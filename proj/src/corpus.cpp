#include "simdef/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"

namespace simdef {
namespace {

bool ends_with_any(const std::string& name, const std::vector<std::string>& extensions) {
    for (const auto& ext : extensions) {
        if (name.size() >= ext.size() &&
            name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
            return true;
        }
    }
    return false;
}

std::string to_logical_name(std::string rel_path, const std::vector<std::string>& extensions) {
    for (const auto& ext : extensions) {
        if (rel_path.size() >= ext.size() &&
            rel_path.compare(rel_path.size() - ext.size(), ext.size(), ext) == 0) {
            rel_path.erase(rel_path.size() - ext.size());
            break;
        }
    }
    std::replace(rel_path.begin(), rel_path.end(), '/', '.');
    std::replace(rel_path.begin(), rel_path.end(), '\\', '.');
    return rel_path;
}

std::optional<double> parse_number(const std::string& text) {
    std::string s = text;
    // Trim ASCII whitespace; Promise files occasionally pad fields.
    auto is_space = [](unsigned char c) { return c == ' ' || c == '\t'; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

std::vector<SourceFile> scan_corpus(const std::filesystem::path& root,
                                    const std::vector<std::string>& extensions,
                                    std::vector<std::string>* warnings) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec) || ec) {
        throw IoError("corpus root is not a readable directory: " + root.string());
    }

    std::vector<std::filesystem::path> paths;
    auto it = std::filesystem::recursive_directory_iterator(
        root, std::filesystem::directory_options::skip_permission_denied, ec);
    if (ec) throw IoError("cannot iterate corpus root: " + root.string());
    for (const auto& entry : it) {
        if (!entry.is_regular_file(ec) || ec) continue;
        if (ends_with_any(entry.path().filename().string(), extensions)) {
            paths.push_back(entry.path());
        }
    }

    std::vector<SourceFile> files;
    files.reserve(paths.size());
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            if (warnings) warnings->push_back("skipping unreadable file: " + p.string());
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        if (in.bad()) {
            if (warnings) warnings->push_back("skipping unreadable file: " + p.string());
            continue;
        }
        SourceFile f;
        f.content = buf.str();
        f.size_bytes = f.content.size();
        f.path = std::filesystem::relative(p, root).generic_string();
        f.logical_name = to_logical_name(f.path, extensions);
        files.push_back(std::move(f));
    }
    std::sort(files.begin(), files.end(),
              [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
    return files;
}

std::vector<LabeledInstance> load_labels(const std::string& csv_path,
                                         const std::string& name_column,
                                         const std::string& bug_column,
                                         const std::vector<std::string>& metric_columns) {
    auto rows = csv::read_file(csv_path);
    if (rows.empty()) throw ConfigError("label CSV is empty: " + csv_path);

    const auto& header = rows.front();
    // Promise files repeat the "name" header (project name, then class
    // name); the last occurrence is the per-instance one.
    auto column_of = [&](const std::string& name) -> int {
        int found = -1;
        for (size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) found = static_cast<int>(i);
        }
        return found;
    };

    int name_idx = column_of(name_column);
    if (name_idx < 0) throw ConfigError("label CSV has no column '" + name_column + "'");
    int bug_idx = column_of(bug_column);
    if (bug_idx < 0) throw ConfigError("label CSV has no column '" + bug_column + "'");

    std::vector<int> metric_idx;
    std::vector<std::string> metric_names;
    if (!metric_columns.empty()) {
        for (const auto& col : metric_columns) {
            int idx = column_of(col);
            if (idx < 0) throw ConfigError("label CSV has no column '" + col + "'");
            metric_idx.push_back(idx);
            metric_names.push_back(col);
        }
    } else {
        // Auto-detect: any other column that is numeric in every data row.
        // Name-column repeats and the version column are identification, not
        // metrics, so they are skipped.
        for (size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name_column || header[c] == bug_column) continue;
            if (header[c] == "version") continue;
            bool numeric = rows.size() > 1;
            for (size_t r = 1; r < rows.size() && numeric; ++r) {
                if (c >= rows[r].size() || !parse_number(rows[r][c])) numeric = false;
            }
            if (numeric) {
                metric_idx.push_back(static_cast<int>(c));
                metric_names.push_back(header[c]);
            }
        }
    }

    std::vector<LabeledInstance> instances;
    instances.reserve(rows.size() - 1);
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto field = [&](int idx) -> const std::string& {
            static const std::string kEmpty;
            return idx < static_cast<int>(row.size()) ? row[idx] : kEmpty;
        };
        LabeledInstance inst;
        inst.logical_name = field(name_idx);
        auto bug = parse_number(field(bug_idx));
        if (!bug) {
            throw ConfigError("non-numeric bug value '" + field(bug_idx) + "' in row " +
                              std::to_string(r + 1) + " of " + csv_path);
        }
        inst.defective = *bug > 0;
        for (size_t m = 0; m < metric_idx.size(); ++m) {
            auto value = parse_number(field(metric_idx[m]));
            if (!value) {
                throw ConfigError("non-numeric value for metric '" + metric_names[m] +
                                  "' in row " + std::to_string(r + 1) + " of " + csv_path);
            }
            inst.baseline_metrics.emplace_back(metric_names[m], *value);
        }
        instances.push_back(std::move(inst));
    }
    return instances;
}

bool name_matches(const std::string& instance_name, const std::string& file_name) {
    if (instance_name.empty() || instance_name.size() > file_name.size()) return false;
    size_t off = file_name.size() - instance_name.size();
    if (file_name.compare(off, instance_name.size(), instance_name) != 0) return false;
    return off == 0 || file_name[off - 1] == '.';
}

NameResolution resolve_names(const std::vector<std::string>& file_names,
                             const std::vector<LabeledInstance>& instances) {
    NameResolution res;
    // file logical name -> matched instance name, longest instance wins.
    std::map<std::string, std::string> claims;
    std::vector<std::string> ambiguous_free;

    for (const auto& inst : instances) {
        std::vector<const std::string*> candidates;
        for (const auto& fname : file_names) {
            if (name_matches(inst.logical_name, fname)) candidates.push_back(&fname);
        }
        if (candidates.empty()) {
            res.unmatched_instances.push_back(inst.logical_name);
            continue;
        }
        if (candidates.size() > 1) {
            std::string msg = "instance '" + inst.logical_name + "' matches multiple files:";
            for (const auto* c : candidates) msg += " " + *c;
            throw ConfigError(msg);
        }
        const std::string& file = *candidates.front();
        auto [it, inserted] = claims.emplace(file, inst.logical_name);
        if (!inserted) {
            // Distinct dotted suffixes of one name differ in length, so the
            // comparison below never ties.
            if (inst.logical_name.size() > it->second.size()) {
                res.unmatched_instances.push_back(it->second);
                it->second = inst.logical_name;
            } else {
                res.unmatched_instances.push_back(inst.logical_name);
            }
        }
    }

    for (const auto& [file, inst] : claims) {
        res.file_to_instance.emplace(file, inst);
        res.instance_to_file.emplace(inst, file);
    }
    for (const auto& fname : file_names) {
        if (!res.file_to_instance.count(fname)) res.unmatched_files.push_back(fname);
    }
    std::sort(res.unmatched_files.begin(), res.unmatched_files.end());
    std::sort(res.unmatched_instances.begin(), res.unmatched_instances.end());
    return res;
}

NameResolution resolve_names(const std::vector<SourceFile>& files,
                             const std::vector<LabeledInstance>& instances) {
    std::vector<std::string> names;
    names.reserve(files.size());
    for (const auto& f : files) names.push_back(f.logical_name);
    return resolve_names(names, instances);
}

}  // namespace simdef
