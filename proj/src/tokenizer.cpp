#include "simdef/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>

namespace simdef {
namespace {

// Order is load-bearing: a keyword's code is kKeywordBase + its index here.
constexpr std::array kJavaKeywords = {
    "abstract",   "assert",    "boolean",  "break",     "byte",      "case",
    "catch",      "char",      "class",    "const",     "continue",  "default",
    "do",         "double",    "else",     "enum",      "extends",   "final",
    "finally",    "float",     "for",      "goto",      "if",        "implements",
    "import",     "instanceof", "int",     "interface", "long",      "native",
    "new",        "package",   "private",  "protected", "public",    "return",
    "short",      "static",    "strictfp", "super",     "switch",    "synchronized",
    "this",       "throw",     "throws",   "transient", "try",       "void",
    "volatile",   "while",     "true",     "false",     "null",      "var",
    "record",     "sealed",    "permits",  "yield",
};

// Longest first within a leading character, so maximal munch works by scan order.
constexpr std::array kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=", ">=", "&&",
    "||",   "++",  "--",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    ">>",   "+",   "-",   "*",   "/",   "%",  "=",  "<",  ">",  "!",  "&",  "|",
    "^",    "~",   "?",   ":",   ";",   ",",  ".",  "(",  ")",  "{",  "}",  "[",
    "]",    "@",
};

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

const std::unordered_map<std::string_view, std::uint16_t>& java_keyword_codes() {
    static const auto* map = [] {
        auto* m = new std::unordered_map<std::string_view, std::uint16_t>();
        for (size_t i = 0; i < kJavaKeywords.size(); ++i) {
            m->emplace(kJavaKeywords[i], static_cast<std::uint16_t>(tok::kKeywordBase + i));
        }
        return m;
    }();
    return *map;
}

class Lexer {
public:
    Lexer(std::string_view text, Language lang) : text_(text), lang_(lang) {}

    TokenStream run() {
        TokenStream out;
        while (pos_ < text_.size()) {
            unsigned char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                ++pos_;
                continue;
            }
            if (c == '/' && pos_ + 1 < text_.size()) {
                if (text_[pos_ + 1] == '/') {
                    skip_line_comment();
                    continue;
                }
                if (text_[pos_ + 1] == '*') {
                    skip_block_comment();
                    continue;
                }
            }
            size_t start = pos_;
            if (is_ident_start(c)) {
                lex_word(out, start);
            } else if (is_digit(c)) {
                lex_number(out, start);
            } else if (c == '"') {
                lex_string(out, start, '"', tok::kString);
            } else if (c == '\'') {
                lex_string(out, start, '\'', tok::kChar);
            } else {
                lex_operator(out, start);
            }
        }
        return out;
    }

private:
    void emit(TokenStream& out, std::uint16_t code, size_t start) {
        out.codes.push_back(code);
        out.spans.push_back({static_cast<std::uint32_t>(start),
                             static_cast<std::uint32_t>(pos_ - start)});
    }

    void skip_line_comment() {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    }

    void skip_block_comment() {
        pos_ += 2;
        while (pos_ + 1 < text_.size()) {
            if (text_[pos_] == '*' && text_[pos_ + 1] == '/') {
                pos_ += 2;
                return;
            }
            ++pos_;
        }
        pos_ = text_.size();  // unterminated: swallow the rest
    }

    void lex_word(TokenStream& out, size_t start) {
        while (pos_ < text_.size() && is_ident_part(text_[pos_])) ++pos_;
        std::uint16_t code = tok::kIdent;
        if (lang_ == Language::Java) {
            auto word = text_.substr(start, pos_ - start);
            auto it = java_keyword_codes().find(word);
            if (it != java_keyword_codes().end()) code = it->second;
        }
        emit(out, code, start);
    }

    void lex_number(TokenStream& out, size_t start) {
        // Accepts the whole Java literal zoo (hex, underscores, suffixes,
        // exponents with sign) without validating it.
        while (pos_ < text_.size()) {
            unsigned char c = text_[pos_];
            if (is_ident_part(c) || c == '.') {
                ++pos_;
            } else if ((c == '+' || c == '-') && pos_ > start) {
                unsigned char prev = text_[pos_ - 1];
                if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') ++pos_;
                else break;
            } else {
                break;
            }
        }
        emit(out, tok::kNumber, start);
    }

    void lex_string(TokenStream& out, size_t start, char quote, std::uint16_t code) {
        ++pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\\' && pos_ + 1 < text_.size()) {
                pos_ += 2;
                continue;
            }
            ++pos_;
            if (c == quote || c == '\n') break;  // literal contents are dropped
        }
        emit(out, code, start);
    }

    void lex_operator(TokenStream& out, size_t start) {
        std::string_view rest = text_.substr(pos_);
        for (size_t i = 0; i < kOperators.size(); ++i) {
            std::string_view op = kOperators[i];
            if (rest.substr(0, op.size()) == op) {
                pos_ += op.size();
                emit(out, static_cast<std::uint16_t>(tok::kOperatorBase + i), start);
                return;
            }
        }
        // Unknown byte (e.g. '#', '`'): stable per-byte code.
        unsigned char c = text_[pos_++];
        emit(out, static_cast<std::uint16_t>(tok::kByteBase + c), start);
    }

    std::string_view text_;
    Language lang_;
    size_t pos_ = 0;
};

}  // namespace

Language language_for_path(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot == std::string_view::npos) return Language::Generic;
    std::string ext(path.substr(dot));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".java" ? Language::Java : Language::Generic;
}

TokenStream tokenize_text(std::string_view text, Language lang) {
    return Lexer(text, lang).run();
}

TokenStream tokenize(const SourceFile& file) {
    return tokenize_text(file.content, language_for_path(file.path));
}

}  // namespace simdef
