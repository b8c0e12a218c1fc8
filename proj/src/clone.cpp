#include "simdef/clone.hpp"

#include <algorithm>
#include <vector>

#include "simdef/errors.hpp"

namespace simdef {
namespace {

struct Match {
    std::uint32_t pos_a = 0;
    std::uint32_t pos_b = 0;
    std::uint32_t length = 0;
};

// Longest common substring over positions not yet consumed, by the classic
// common-suffix DP with a rolling row. O(|a| * |b|) time, O(|b|) space.
Match longest_unconsumed_match(const std::vector<std::uint16_t>& a,
                               const std::vector<std::uint16_t>& b,
                               const std::vector<char>& used_a,
                               const std::vector<char>& used_b) {
    Match best;
    std::vector<std::uint32_t> row(b.size() + 1, 0);
    for (std::uint32_t i = 1; i <= a.size(); ++i) {
        std::uint32_t diag = 0;  // row[j-1] from the previous i
        for (std::uint32_t j = 1; j <= b.size(); ++j) {
            std::uint32_t up_left = diag;
            diag = row[j];
            if (a[i - 1] == b[j - 1] && !used_a[i - 1] && !used_b[j - 1]) {
                row[j] = up_left + 1;
                if (row[j] > best.length) {
                    best.length = row[j];
                    best.pos_a = i - row[j];
                    best.pos_b = j - row[j];
                }
            } else {
                row[j] = 0;
            }
        }
    }
    return best;
}

}  // namespace

std::uint64_t detect_clones(const TokenStream& a, const TokenStream& b, int min_tokens) {
    if (min_tokens < 1) throw InvariantError("min_tokens must be >= 1");
    if (a.codes.size() < static_cast<size_t>(min_tokens) ||
        b.codes.size() < static_cast<size_t>(min_tokens)) {
        return 0;
    }

    std::vector<char> used_a(a.codes.size(), 0);
    std::vector<char> used_b(b.codes.size(), 0);
    std::uint64_t total = 0;
    for (;;) {
        Match m = longest_unconsumed_match(a.codes, b.codes, used_a, used_b);
        if (m.length < static_cast<std::uint32_t>(min_tokens)) break;
        total += m.length;
        std::fill(used_a.begin() + m.pos_a, used_a.begin() + m.pos_a + m.length, 1);
        std::fill(used_b.begin() + m.pos_b, used_b.begin() + m.pos_b + m.length, 1);
    }
    return total;
}

}  // namespace simdef
