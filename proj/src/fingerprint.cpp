#include "simdef/fingerprint.hpp"

#include <algorithm>
#include <deque>

#include "simdef/errors.hpp"

namespace simdef {
namespace {

// Odd multiplier; arithmetic wraps mod 2^64.
constexpr std::uint64_t kHashBase = 1099511628211ULL;

std::uint64_t lifted(std::uint16_t code) {
    // +1 keeps leading zero-valued codes from vanishing in the polynomial.
    return static_cast<std::uint64_t>(code) + 1;
}

}  // namespace

std::vector<std::uint64_t> kgram_hashes(const TokenStream& stream, int k) {
    if (k < 1) throw InvariantError("k-gram length must be >= 1");
    const auto& codes = stream.codes;
    std::vector<std::uint64_t> hashes;
    if (codes.size() < static_cast<size_t>(k)) return hashes;
    hashes.reserve(codes.size() - k + 1);

    std::uint64_t top_power = 1;  // kHashBase^(k-1)
    for (int i = 1; i < k; ++i) top_power *= kHashBase;

    std::uint64_t h = 0;
    for (int i = 0; i < k; ++i) h = h * kHashBase + lifted(codes[i]);
    hashes.push_back(h);
    for (size_t i = k; i < codes.size(); ++i) {
        h = (h - lifted(codes[i - k]) * top_power) * kHashBase + lifted(codes[i]);
        hashes.push_back(h);
    }
    return hashes;
}

std::vector<Fingerprint> winnow_select(std::span<const std::uint64_t> hashes, int w) {
    if (w < 1) throw InvariantError("winnowing window must be >= 1");
    std::vector<Fingerprint> selected;
    if (hashes.size() < static_cast<size_t>(w)) return selected;

    // Indices with non-increasing-from-front hash values; popping equal values
    // when pushing makes the surviving front the rightmost minimum.
    std::deque<std::uint32_t> window;
    auto push = [&](std::uint32_t idx) {
        while (!window.empty() && hashes[window.back()] >= hashes[idx]) window.pop_back();
        window.push_back(idx);
    };

    for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(w); ++i) push(i);
    std::uint32_t last_pos = UINT32_MAX;
    for (std::uint32_t right = w - 1; right < hashes.size(); ++right) {
        push(right);
        std::uint32_t left = right + 1 - w;
        while (window.front() < left) window.pop_front();
        std::uint32_t pos = window.front();
        if (pos != last_pos) {
            selected.push_back({hashes[pos], pos});
            last_pos = pos;
        }
    }
    return selected;
}

FingerprintSet FingerprintSet::from_selections(std::span<const Fingerprint> selections) {
    // Selections arrive in position order; keep the first position per hash.
    std::vector<Fingerprint> prints(selections.begin(), selections.end());
    std::stable_sort(prints.begin(), prints.end(),
                     [](const Fingerprint& a, const Fingerprint& b) { return a.hash < b.hash; });
    auto last = std::unique(prints.begin(), prints.end(),
                            [](const Fingerprint& a, const Fingerprint& b) {
                                return a.hash == b.hash;
                            });
    prints.erase(last, prints.end());
    return FingerprintSet{std::move(prints)};
}

FingerprintSet winnow(std::span<const std::uint64_t> hashes, int w) {
    auto selections = winnow_select(hashes, w);
    return FingerprintSet::from_selections(selections);
}

double pair_similarity(const FingerprintSet& a, const FingerprintSet& b,
                       const std::unordered_set<std::uint64_t>& filter) {
    auto kept = [&](const Fingerprint& f) { return filter.find(f.hash) == filter.end(); };

    size_t size_a = 0, size_b = 0, shared = 0;
    auto ia = a.prints.begin();
    auto ib = b.prints.begin();
    while (ia != a.prints.end() && ib != b.prints.end()) {
        if (ia->hash == ib->hash) {
            if (kept(*ia)) {
                ++size_a;
                ++size_b;
                ++shared;
            }
            ++ia;
            ++ib;
        } else if (ia->hash < ib->hash) {
            if (kept(*ia)) ++size_a;
            ++ia;
        } else {
            if (kept(*ib)) ++size_b;
            ++ib;
        }
    }
    for (; ia != a.prints.end(); ++ia)
        if (kept(*ia)) ++size_a;
    for (; ib != b.prints.end(); ++ib)
        if (kept(*ib)) ++size_b;

    if (size_a == 0 || size_b == 0) return 0.0;
    return 100.0 * static_cast<double>(shared) / static_cast<double>(std::min(size_a, size_b));
}

}  // namespace simdef
