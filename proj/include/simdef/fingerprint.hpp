#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "simdef/tokenizer.hpp"

namespace simdef {

// One hash per contiguous window of k token codes, computed with a rolling
// polynomial hash mod 2^64. Result length is max(0, codes - k + 1).
std::vector<std::uint64_t> kgram_hashes(const TokenStream& stream, int k);

struct Fingerprint {
    std::uint64_t hash = 0;
    std::uint32_t position = 0;  // k-gram index of the selection
};

// For every window of w consecutive hashes, selects the minimum (rightmost on
// ties) and deduplicates repeated selections of the same position. Inputs
// shorter than w yield nothing. O(n) via a monotonic deque.
std::vector<Fingerprint> winnow_select(std::span<const std::uint64_t> hashes, int w);

// Winnowed fingerprints with distinct hashes; each hash keeps the position of
// its first selection. Entries are sorted by hash for fast set intersection.
struct FingerprintSet {
    std::vector<Fingerprint> prints;

    std::size_t size() const { return prints.size(); }
    bool empty() const { return prints.empty(); }

    static FingerprintSet from_selections(std::span<const Fingerprint> selections);
};

FingerprintSet winnow(std::span<const std::uint64_t> hashes, int w);

// 100 * |A inter B| / min(|A|, |B|) over the hash sets minus `filter`;
// 0 when either filtered set is empty. Symmetric, in [0, 100].
double pair_similarity(const FingerprintSet& a, const FingerprintSet& b,
                       const std::unordered_set<std::uint64_t>& filter = {});

}  // namespace simdef
