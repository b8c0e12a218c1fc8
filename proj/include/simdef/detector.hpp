#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simdef/corpus.hpp"
#include "simdef/similarity_matrix.hpp"

namespace simdef {

enum class DetectorMode { Fingerprint, Clone, Import };

struct DetectorConfig {
    DetectorMode mode = DetectorMode::Fingerprint;
    int k = 5;                      // k-gram length in tokens
    int w = 4;                      // winnowing window in hashes
    std::int64_t max_sharing = 0;   // drop hashes seen in more than this many files; 0 = corpus size (off)
    int min_tokens = 50;            // clone mode reporting threshold
    std::string import_csv;         // Import mode source

    void validate() const;
};

DetectorMode detector_mode_from_string(const std::string& name);
std::string to_string(DetectorMode mode);

// All-pairs similarity over the corpus, indexed by logical file name.
// Fingerprint mode winnows k-gram hashes and scores shared fingerprints;
// clone mode counts shared token substrings of at least min_tokens tokens.
SimilarityMatrix build_matrix(const std::vector<SourceFile>& corpus, const DetectorConfig& config,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace simdef
