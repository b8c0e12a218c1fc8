#pragma once

#include <cstdint>

#include "simdef/tokenizer.hpp"

namespace simdef {

// Total token count of duplicated regions between two streams. Repeatedly
// takes the longest common token substring over still-unconsumed positions,
// counts it if it spans at least min_tokens, and consumes it on both sides,
// until no qualifying match remains. Ties go to the earliest position in a,
// then in b; tie choices can differ under argument swap, so matrix builders
// evaluate each unordered pair once.
std::uint64_t detect_clones(const TokenStream& a, const TokenStream& b, int min_tokens);

}  // namespace simdef
