#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace simdef {

// Sparse symmetric pairwise-similarity scores over an indexed file set.
// Entries are stored once with i < j and a strictly positive value; the
// diagonal is never stored. Absent pairs read as 0.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    explicit SimilarityMatrix(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    int index_of(const std::string& name) const;

    // Keeps the maximum across repeated or mirrored assignments; values <= 0
    // and diagonal pairs are rejected.
    void set_max(int i, int j, double value);

    double lookup(int i, int j) const;

    // Stored upper-triangle entries, keyed (i, j) with i < j, in
    // lexicographic key order.
    const std::map<std::pair<int, int>, double>& entries() const { return entries_; }

    // Submatrix over `names` (which become indices 0..n-1 in the given
    // order); entries touching other files are dropped.
    SimilarityMatrix restricted_to(const std::vector<std::string>& names) const;

    // Same entries under new names; `new_names[i]` replaces `name(i)`.
    SimilarityMatrix renamed(const std::vector<std::string>& new_names) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::map<std::pair<int, int>, double> entries_;
};

struct MatrixStats {
    std::int64_t rc = 0;   // matrix dimension
    std::int64_t nne = 0;  // nonzero logical entries, both orientations
    double density_pct = 0.0;

    static MatrixStats from_counts(std::int64_t rc, std::int64_t nne);
};

MatrixStats stats(const SimilarityMatrix& matrix);

struct ClassPairStats {
    std::int64_t both_defective = 0;      // logical entries joining two defective files
    std::int64_t both_non_defective = 0;  // ... two non-defective files
    double combined_pct = 0.0;            // their share of all logical entries

    static ClassPairStats from_counts(std::int64_t e_d, std::int64_t e_n, std::int64_t nne);
};

ClassPairStats class_pair_stats(const SimilarityMatrix& matrix,
                                const std::unordered_map<std::string, bool>& labels);

// Three-column file1,file2,similarity rows. Unresolvable names skip the row
// with a warning; diagonal rows are dropped with a warning; mirrored or
// duplicate pairs collapse to their maximum. A leading header row is
// tolerated. Negative or non-numeric similarity values are fatal.
SimilarityMatrix import_similarity_csv(
    const std::string& path, const std::vector<std::string>& index_names,
    const std::unordered_map<std::string, std::string>& name_map,
    std::vector<std::string>* warnings = nullptr);

// One row per stored entry, sorted by (file1, file2) names, with header.
// Values are printed with round-trip precision.
void export_similarity_csv(const SimilarityMatrix& matrix, std::ostream& out);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace simdef
