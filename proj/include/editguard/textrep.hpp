#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "editguard/editdiff.hpp"

// Tokenization and the derived edit-text representations every feature is
// computed from.

namespace editguard::textrep {

enum class TokenKind : uint8_t { word, number, punctuation, wiki_syntax };

struct Token {
    std::string text;  // UTF-8, never empty, never contains whitespace
    TokenKind kind;

    bool operator==(const Token&) const = default;
};

// Splits text into words, numbers, punctuation marks and wiki-syntax
// elements. Listed delimiter symbols are always tokens of their own; the
// doubled wiki forms [[ ]] {{ }} match before their single-character
// variants. Whitespace only separates.
std::vector<Token> tokenize(std::string_view text);

// Simple (non-locale) Unicode lowercase of the token text; kind preserved.
Token lowercase_fold(const Token& token);

std::vector<Token> lowercase_fold(const std::vector<Token>& tokens);

// Token texts joined by single spaces.
std::string join_tokens(const std::vector<Token>& tokens);

struct EditRepresentations {
    std::string old_text;
    std::string new_text;
    std::vector<Token> inserted_words_cs;  // tokens of inserted spans, document order
    std::vector<Token> inserted_words_ci;  // same, lowercased
    std::string concat_inserted_cs;
    std::string concat_inserted_ci;
    std::string inserted_text;  // inserted spans as reported by the diff
};

// Derives all representations for one edit. `diff` must come from
// editdiff::compute_diff over the same pair of texts.
EditRepresentations build_representations(std::string_view old_text, std::string_view new_text,
                                          const editdiff::DiffResult& diff);

}  // namespace editguard::textrep
