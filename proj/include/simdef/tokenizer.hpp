#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "simdef/corpus.hpp"

namespace simdef {

// Token classes are small stable integers. Identifiers collapse to one code
// and numeric literals to another, so consistently renamed code tokenizes to
// the same sequence. Keywords, operators, and punctuation keep one code each.
namespace tok {
inline constexpr std::uint16_t kIdent = 1;
inline constexpr std::uint16_t kNumber = 2;
inline constexpr std::uint16_t kString = 3;
inline constexpr std::uint16_t kChar = 4;
inline constexpr std::uint16_t kKeywordBase = 16;   // + index into the keyword table
inline constexpr std::uint16_t kOperatorBase = 128; // + index into the operator table
inline constexpr std::uint16_t kByteBase = 256;     // + raw byte, for anything else
}  // namespace tok

struct TokenSpan {
    std::uint32_t offset = 0;  // byte offset into the file content
    std::uint32_t length = 0;
};

struct TokenStream {
    std::vector<std::uint16_t> codes;
    std::vector<TokenSpan> spans;

    std::size_t size() const { return codes.size(); }
    bool empty() const { return codes.empty(); }
};

enum class Language { Java, Generic };

// .java files get the Java keyword table; everything else lexes identically
// but folds all words into the identifier class.
Language language_for_path(std::string_view path);

TokenStream tokenize_text(std::string_view text, Language lang);

TokenStream tokenize(const SourceFile& file);

}  // namespace simdef
