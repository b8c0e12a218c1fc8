#include "simdef/detector.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "simdef/clone.hpp"
#include "simdef/errors.hpp"
#include "simdef/fingerprint.hpp"
#include "simdef/parallel.hpp"
#include "simdef/tokenizer.hpp"

namespace simdef {
namespace {

std::uint64_t pair_key(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

std::vector<TokenStream> tokenize_all(const std::vector<SourceFile>& corpus) {
    std::vector<TokenStream> streams(corpus.size());
    parallel_for(corpus.size(), [&](size_t i) { streams[i] = tokenize(corpus[i]); });
    return streams;
}

SimilarityMatrix fingerprint_matrix(const std::vector<SourceFile>& corpus,
                                    const std::vector<TokenStream>& streams,
                                    const DetectorConfig& config) {
    const int n = static_cast<int>(corpus.size());
    std::vector<FingerprintSet> prints(n);
    parallel_for(corpus.size(), [&](size_t i) {
        prints[i] = winnow(kgram_hashes(streams[i], config.k), config.w);
    });

    // Document frequency per hash; hashes shared by more than max_sharing
    // files are ignored everywhere, including the per-file set sizes.
    std::int64_t max_sharing = config.max_sharing > 0 ? config.max_sharing : n;
    std::unordered_map<std::uint64_t, std::vector<int>> postings;
    for (int f = 0; f < n; ++f) {
        for (const auto& p : prints[f].prints) postings[p.hash].push_back(f);
    }

    std::vector<std::int64_t> kept_size(n, 0);
    std::unordered_map<std::uint64_t, std::uint32_t> shared;
    for (const auto& [hash, files] : postings) {
        if (static_cast<std::int64_t>(files.size()) > max_sharing) continue;
        for (int f : files) ++kept_size[f];
        for (size_t a = 0; a < files.size(); ++a) {
            for (size_t b = a + 1; b < files.size(); ++b) {
                ++shared[pair_key(files[a], files[b])];
            }
        }
    }

    std::vector<std::string> names;
    names.reserve(corpus.size());
    for (const auto& f : corpus) names.push_back(f.logical_name);
    SimilarityMatrix matrix(std::move(names));
    for (const auto& [key, count] : shared) {
        int i = static_cast<int>(key >> 32);
        int j = static_cast<int>(key & 0xFFFFFFFFu);
        std::int64_t denom = std::min(kept_size[i], kept_size[j]);
        if (denom <= 0) continue;
        double score = 100.0 * static_cast<double>(count) / static_cast<double>(denom);
        if (score > 0) matrix.set_max(i, j, score);
    }
    return matrix;
}

SimilarityMatrix clone_matrix(const std::vector<SourceFile>& corpus,
                              const std::vector<TokenStream>& streams,
                              const DetectorConfig& config) {
    const int n = static_cast<int>(corpus.size());

    // A shared substring of min_tokens tokens implies a shared min_tokens-gram
    // hash, so pairs with disjoint gram sets cannot match and are skipped.
    std::vector<std::vector<std::uint64_t>> grams(n);
    parallel_for(corpus.size(), [&](size_t i) {
        auto hashes = kgram_hashes(streams[i], config.min_tokens);
        std::sort(hashes.begin(), hashes.end());
        hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
        grams[i] = std::move(hashes);
    });

    std::unordered_map<std::uint64_t, std::vector<int>> postings;
    for (int f = 0; f < n; ++f) {
        for (std::uint64_t h : grams[f]) postings[h].push_back(f);
    }
    std::unordered_map<std::uint64_t, char> candidate_set;
    for (const auto& [hash, files] : postings) {
        for (size_t a = 0; a < files.size(); ++a) {
            for (size_t b = a + 1; b < files.size(); ++b) {
                candidate_set.emplace(pair_key(files[a], files[b]), 1);
            }
        }
    }
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(candidate_set.size());
    for (const auto& [key, marker] : candidate_set) {
        (void)marker;
        candidates.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu)});
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::uint64_t> totals(candidates.size(), 0);
    parallel_for(candidates.size(), [&](size_t c) {
        auto [i, j] = candidates[c];
        totals[c] = detect_clones(streams[i], streams[j], config.min_tokens);
    });

    std::vector<std::string> names;
    names.reserve(corpus.size());
    for (const auto& f : corpus) names.push_back(f.logical_name);
    SimilarityMatrix matrix(std::move(names));
    for (size_t c = 0; c < candidates.size(); ++c) {
        if (totals[c] >= 1) {
            matrix.set_max(candidates[c].first, candidates[c].second,
                           static_cast<double>(totals[c]));
        }
    }
    return matrix;
}

}  // namespace

void DetectorConfig::validate() const {
    if (k < 1) throw ConfigError("detector.k must be >= 1");
    if (w < 1) throw ConfigError("detector.w must be >= 1");
    if (min_tokens < 1) throw ConfigError("detector.min_tokens must be >= 1");
    if (max_sharing < 0) throw ConfigError("detector.max_sharing must be >= 1 (or 0 for off)");
    if (mode == DetectorMode::Import && import_csv.empty())
        throw ConfigError("import mode needs detector.import_csv");
}

DetectorMode detector_mode_from_string(const std::string& name) {
    if (name == "fingerprint") return DetectorMode::Fingerprint;
    if (name == "clone") return DetectorMode::Clone;
    if (name == "import") return DetectorMode::Import;
    throw ConfigError("unknown detector mode '" + name + "'");
}

std::string to_string(DetectorMode mode) {
    switch (mode) {
        case DetectorMode::Fingerprint: return "fingerprint";
        case DetectorMode::Clone: return "clone";
        case DetectorMode::Import: return "import";
    }
    return "?";
}

SimilarityMatrix build_matrix(const std::vector<SourceFile>& corpus, const DetectorConfig& config,
                              std::vector<std::string>* warnings) {
    (void)warnings;
    config.validate();
    if (corpus.empty()) throw ConfigError("cannot build a similarity matrix over an empty corpus");
    auto streams = tokenize_all(corpus);
    switch (config.mode) {
        case DetectorMode::Fingerprint: return fingerprint_matrix(corpus, streams, config);
        case DetectorMode::Clone: return clone_matrix(corpus, streams, config);
        case DetectorMode::Import:
            throw ConfigError("import mode reads a CSV; build_matrix only detects");
    }
    throw InvariantError("unreachable detector mode");
}

}  // namespace simdef
