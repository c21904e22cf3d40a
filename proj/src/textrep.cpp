#include "editguard/textrep.hpp"

#include "editguard/unicode.hpp"

namespace editguard::textrep {

namespace {

// Symbols that always stand alone. The bracket/brace/angle family and the
// table/list/heading markers are wiki syntax; the rest is punctuation.
bool is_delimiter(char32_t c, TokenKind& kind) {
    switch (c) {
        case U'.': case U',': case U':': case U';': case U'"': case U'\'':
        case U'?': case U'!': case U'(': case U')':
            kind = TokenKind::punctuation;
            return true;
        case U'<': case U'>': case U'|': case U'=': case U'*':
        case U'[': case U']': case U'{': case U'}':
            kind = TokenKind::wiki_syntax;
            return true;
        default:
            return false;
    }
}

bool is_doubled_wiki(char32_t c) {
    return c == U'[' || c == U']' || c == U'{' || c == U'}';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    const std::u32string cps = uni::decode_utf8(text);
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = cps.size();
    while (i < n) {
        if (uni::is_whitespace(cps[i])) {
            ++i;
            continue;
        }
        TokenKind kind;
        if (is_doubled_wiki(cps[i]) && i + 1 < n && cps[i + 1] == cps[i]) {
            tokens.push_back({uni::encode_utf8(std::u32string_view(cps).substr(i, 2)),
                              TokenKind::wiki_syntax});
            i += 2;
            continue;
        }
        if (is_delimiter(cps[i], kind)) {
            tokens.push_back({uni::encode_utf8(std::u32string_view(cps).substr(i, 1)), kind});
            ++i;
            continue;
        }
        const std::size_t start = i;
        bool all_digits = true;
        while (i < n && !uni::is_whitespace(cps[i]) && !is_delimiter(cps[i], kind)) {
            if (!uni::is_digit(cps[i])) all_digits = false;
            ++i;
        }
        tokens.push_back({uni::encode_utf8(std::u32string_view(cps).substr(start, i - start)),
                          all_digits ? TokenKind::number : TokenKind::word});
    }
    return tokens;
}

Token lowercase_fold(const Token& token) {
    return {uni::lowercase(token.text), token.kind};
}

std::vector<Token> lowercase_fold(const std::vector<Token>& tokens) {
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(lowercase_fold(t));
    return out;
}

std::string join_tokens(const std::vector<Token>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != 0) out.push_back(' ');
        out += tokens[i].text;
    }
    return out;
}

EditRepresentations build_representations(std::string_view old_text, std::string_view new_text,
                                          const editdiff::DiffResult& diff) {
    EditRepresentations rep;
    rep.old_text.assign(old_text);
    rep.new_text.assign(new_text);

    // Spans joined with a newline: tokenization cannot bleed across span
    // boundaries, so character runs never span two separate insertions.
    for (const auto& span : editdiff::inserted_spans(diff)) {
        if (!rep.inserted_text.empty()) rep.inserted_text.push_back('\n');
        rep.inserted_text += span;
        auto tokens = tokenize(span);
        rep.inserted_words_cs.insert(rep.inserted_words_cs.end(),
                                     std::make_move_iterator(tokens.begin()),
                                     std::make_move_iterator(tokens.end()));
    }
    rep.inserted_words_ci = lowercase_fold(rep.inserted_words_cs);
    rep.concat_inserted_cs = join_tokens(rep.inserted_words_cs);
    rep.concat_inserted_ci = join_tokens(rep.inserted_words_ci);
    return rep;
}

}  // namespace editguard::textrep
