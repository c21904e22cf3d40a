#include "editguard/lexicon.hpp"

#include <fstream>
#include <stdexcept>

#include "editguard/unicode.hpp"

namespace editguard::lexicon {

namespace {

std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

bool phrase_matches_at(const std::vector<std::string>& phrase,
                       const std::vector<textrep::Token>& tokens, size_t at) {
    if (at + phrase.size() > tokens.size()) return false;
    for (size_t i = 0; i < phrase.size(); ++i)
        if (tokens[at + i].text != phrase[i]) return false;
    return true;
}

}  // namespace

int64_t Lexicon::count_matches(const std::vector<textrep::Token>& tokens_ci) const {
    int64_t count = 0;
    for (size_t i = 0; i < tokens_ci.size(); ++i) {
        if (words.count(tokens_ci[i].text)) {
            ++count;
            continue;
        }
        for (const auto& phrase : phrases) {
            if (phrase_matches_at(phrase, tokens_ci, i)) {
                ++count;
                break;
            }
        }
    }
    return count;
}

Lexicon load_lexicon(const std::filesystem::path& file, std::string name) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + file.string());
    Lexicon lex;
    lex.name = std::move(name);
    std::set<std::vector<std::string>> phrase_set;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string_view term = trim(line);
        if (term.empty() || term[0] == '#') continue;
        for (char ch : term) {
            if (static_cast<unsigned char>(ch) < 0x20) {
                throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                         ": control character in term");
            }
        }
        const std::vector<textrep::Token> tokens = textrep::tokenize(uni::lowercase(term));
        if (tokens.empty()) {
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": term has no tokens");
        }
        if (tokens.size() == 1) {
            lex.words.insert(tokens[0].text);
        } else {
            std::vector<std::string> phrase;
            phrase.reserve(tokens.size());
            for (const auto& t : tokens) phrase.push_back(t.text);
            phrase_set.insert(std::move(phrase));
        }
    }
    lex.phrases.assign(phrase_set.begin(), phrase_set.end());
    return lex;
}

const Lexicon& LexiconSet::get(std::string_view name) const {
    for (const auto& lex : categories)
        if (lex.name == name) return lex;
    throw std::out_of_range("no such lexicon category: " + std::string(name));
}

LexiconSet load_lexicons(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
    struct FileSpec {
        const char* file;
        const char* category;
    };
    static constexpr FileSpec kFiles[] = {
        {"vulgarisms.txt", "vulgarism"}, {"pronouns.txt", "pronoun"}, {"biased.txt", "biased"},
        {"sex.txt", "sex"},              {"bad.txt", "bad"},          {"good.txt", "good"},
    };

    std::vector<Lexicon> loaded;
    for (const auto& fs : kFiles) {
        Lexicon lex = load_lexicon(dir / fs.file, fs.category);
        if (lex.empty() && warnings)
            warnings->push_back("lexicon category '" + lex.name + "' is empty");
        loaded.push_back(std::move(lex));
    }

    Lexicon all;
    all.name = "all";
    std::set<std::vector<std::string>> phrase_set;
    for (const auto& lex : loaded) {
        if (lex.name == "good") continue;
        all.words.insert(lex.words.begin(), lex.words.end());
        phrase_set.insert(lex.phrases.begin(), lex.phrases.end());
    }
    all.phrases.assign(phrase_set.begin(), phrase_set.end());

    if (warnings) {
        const Lexicon* good = nullptr;
        for (const auto& lex : loaded)
            if (lex.name == "good") good = &lex;
        for (const auto& w : good->words)
            if (all.words.count(w))
                warnings->push_back("good-category word '" + w + "' overlaps another category");
    }

    LexiconSet set;
    set.categories.reserve(kCategories.size());
    set.categories.push_back(std::move(all));
    for (std::string_view name : kCategories) {
        if (name == "all") continue;
        for (auto& lex : loaded) {
            if (lex.name == name) {
                set.categories.push_back(std::move(lex));
                break;
            }
        }
    }
    return set;
}

double category_frequency(const Lexicon& lex,
                          const std::vector<textrep::Token>& inserted_words_ci) {
    if (inserted_words_ci.empty()) return 0.0;
    return static_cast<double>(lex.count_matches(inserted_words_ci)) /
           static_cast<double>(inserted_words_ci.size());
}

double category_impact(const Lexicon& lex, const std::vector<textrep::Token>& old_tokens_ci,
                       const std::vector<textrep::Token>& new_tokens_ci) {
    return (1.0 + static_cast<double>(lex.count_matches(new_tokens_ci))) /
           (1.0 + static_cast<double>(lex.count_matches(old_tokens_ci)));
}

}  // namespace editguard::lexicon
