#include "simdef/similarity_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "simdef/csv.hpp"
#include "simdef/errors.hpp"

namespace simdef {

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (size_t i = 0; i < names_.size(); ++i) {
        auto [it, inserted] = index_.emplace(names_[i], static_cast<int>(i));
        if (!inserted) throw InvariantError("duplicate file name in matrix index: " + names_[i]);
    }
}

int SimilarityMatrix::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void SimilarityMatrix::set_max(int i, int j, double value) {
    if (i < 0 || j < 0 || i >= size() || j >= size())
        throw InvariantError("matrix index out of range");
    if (i == j) throw InvariantError("diagonal similarity entries are not stored");
    if (!(value > 0)) throw InvariantError("similarity entries must be positive");
    if (i > j) std::swap(i, j);
    auto [it, inserted] = entries_.try_emplace({i, j}, value);
    if (!inserted && value > it->second) it->second = value;
}

double SimilarityMatrix::lookup(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0.0 : it->second;
}

SimilarityMatrix SimilarityMatrix::restricted_to(const std::vector<std::string>& names) const {
    SimilarityMatrix out(names);
    std::vector<int> old_to_new(names_.size(), -1);
    for (size_t i = 0; i < names_.size(); ++i) {
        int idx = out.index_of(names_[i]);
        old_to_new[i] = idx;
    }
    for (const auto& [key, value] : entries_) {
        int ni = old_to_new[key.first];
        int nj = old_to_new[key.second];
        if (ni >= 0 && nj >= 0) out.set_max(ni, nj, value);
    }
    return out;
}

SimilarityMatrix SimilarityMatrix::renamed(const std::vector<std::string>& new_names) const {
    if (new_names.size() != names_.size())
        throw InvariantError("renamed() needs one name per file");
    SimilarityMatrix out(new_names);
    for (const auto& [key, value] : entries_) out.set_max(key.first, key.second, value);
    return out;
}

MatrixStats MatrixStats::from_counts(std::int64_t rc, std::int64_t nne) {
    MatrixStats s;
    s.rc = rc;
    s.nne = nne;
    s.density_pct =
        rc > 0 ? 100.0 * static_cast<double>(nne) / (static_cast<double>(rc) * rc) : 0.0;
    return s;
}

MatrixStats stats(const SimilarityMatrix& matrix) {
    return MatrixStats::from_counts(matrix.size(),
                                    2 * static_cast<std::int64_t>(matrix.entries().size()));
}

ClassPairStats ClassPairStats::from_counts(std::int64_t e_d, std::int64_t e_n,
                                           std::int64_t nne) {
    ClassPairStats s;
    s.both_defective = e_d;
    s.both_non_defective = e_n;
    s.combined_pct =
        nne > 0 ? 100.0 * static_cast<double>(e_d + e_n) / static_cast<double>(nne) : 0.0;
    return s;
}

ClassPairStats class_pair_stats(const SimilarityMatrix& matrix,
                                const std::unordered_map<std::string, bool>& labels) {
    std::vector<char> defective(matrix.size());
    for (int i = 0; i < matrix.size(); ++i) {
        auto it = labels.find(matrix.name(i));
        if (it == labels.end())
            throw ConfigError("no defect label for file '" + matrix.name(i) + "'");
        defective[i] = it->second;
    }
    std::int64_t e_d = 0, e_n = 0;
    for (const auto& [key, value] : matrix.entries()) {
        (void)value;
        bool d1 = defective[key.first];
        bool d2 = defective[key.second];
        if (d1 && d2) e_d += 2;  // logical entries count both orientations
        else if (!d1 && !d2) e_n += 2;
    }
    return ClassPairStats::from_counts(e_d, e_n,
                                       2 * static_cast<std::int64_t>(matrix.entries().size()));
}

SimilarityMatrix import_similarity_csv(
    const std::string& path, const std::vector<std::string>& index_names,
    const std::unordered_map<std::string, std::string>& name_map,
    std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };
    SimilarityMatrix matrix(index_names);

    auto rows = csv::read_file(path);
    auto resolve = [&](const std::string& raw) -> int {
        auto it = name_map.find(raw);
        if (it != name_map.end()) return matrix.index_of(it->second);
        return matrix.index_of(raw);
    };
    auto parse_value = [](const std::string& text, double& out) {
        const char* begin = text.data();
        const char* end = begin + text.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        return ec == std::errc() && ptr == end;
    };

    for (size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < 3) {
            warn("similarity row " + std::to_string(r + 1) + " has fewer than 3 columns, skipped");
            continue;
        }
        double value = 0.0;
        if (!parse_value(row[2], value)) {
            if (r == 0) continue;  // optional header
            throw ConfigError("non-numeric similarity '" + row[2] + "' in row " +
                              std::to_string(r + 1) + " of " + path);
        }
        if (value < 0) {
            throw ConfigError("negative similarity in row " + std::to_string(r + 1) + " of " +
                              path);
        }
        int i = resolve(row[0]);
        int j = resolve(row[1]);
        if (i < 0 || j < 0) {
            warn("unresolved file name in similarity row " + std::to_string(r + 1) + ": " +
                 (i < 0 ? row[0] : row[1]));
            continue;
        }
        if (i == j) {
            warn("dropping self-similarity row " + std::to_string(r + 1) + " for '" + row[0] +
                 "'");
            continue;
        }
        if (value > 0) matrix.set_max(i, j, value);
    }
    return matrix;
}

void export_similarity_csv(const SimilarityMatrix& matrix, std::ostream& out) {
    csv::write_row(out, {"file1", "file2", "similarity"});
    // Entry keys are already sorted numerically; re-sort by names so the
    // export is stable under index relabeling.
    std::vector<std::pair<std::pair<std::string, std::string>, double>> rows;
    rows.reserve(matrix.entries().size());
    for (const auto& [key, value] : matrix.entries()) {
        std::string a = matrix.name(key.first);
        std::string b = matrix.name(key.second);
        if (b < a) std::swap(a, b);
        rows.push_back({{std::move(a), std::move(b)}, value});
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [names, value] : rows) {
        csv::write_row(out, {names.first, names.second, format_double(value)});
    }
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw InvariantError("double formatting failed");
    return std::string(buf, ptr);
}

}  // namespace simdef
