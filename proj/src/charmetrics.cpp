#include "editguard/charmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <optional>

#include "editguard/lzw.hpp"
#include "editguard/numfmt.hpp"
#include "editguard/unicode.hpp"

namespace editguard::charmetrics {

CharCounts count_chars(std::string_view text) {
    CharCounts c;
    for (char32_t cp : uni::decode_utf8(text)) {
        ++c.total;
        if (uni::is_upper(cp)) ++c.upper;
        if (uni::is_lower(cp)) ++c.lower;
        if (uni::is_digit(cp)) ++c.digit;
        if (!uni::is_alnum(cp)) ++c.nonalnum;
        ++c.histogram[cp];
    }
    c.distinct = static_cast<int64_t>(c.histogram.size());
    return c;
}

double upper_to_lower_ratio(const CharCounts& c) {
    return (1.0 + static_cast<double>(c.upper)) / (1.0 + static_cast<double>(c.lower));
}

double upper_to_all_ratio(const CharCounts& c) {
    return (1.0 + static_cast<double>(c.upper)) /
           (1.0 + static_cast<double>(c.lower) + static_cast<double>(c.upper));
}

double digit_ratio(const CharCounts& c) {
    return (1.0 + static_cast<double>(c.digit)) / (1.0 + static_cast<double>(c.total));
}

double nonalnum_ratio(const CharCounts& c) {
    return (1.0 + static_cast<double>(c.nonalnum)) / (1.0 + static_cast<double>(c.total));
}

double character_diversity(std::string_view text) {
    const std::u32string cps = uni::decode_utf8(text);
    if (cps.empty()) return 0.0;
    const std::set<char32_t> distinct(cps.begin(), cps.end());
    return std::pow(static_cast<double>(cps.size()), 1.0 / static_cast<double>(distinct.size()));
}

CharDistribution char_distribution(std::string_view text) {
    CharDistribution d;
    const std::u32string cps = uni::decode_utf8(text);
    if (cps.empty()) return d;
    for (char32_t cp : cps) d.probs[cp] += 1.0;
    for (auto& [cp, p] : d.probs) p /= static_cast<double>(cps.size());
    return d;
}

const CharDistribution& english_letter_distribution() {
    // Relative frequencies of a..z in English running text (percent).
    static const CharDistribution dist = [] {
        constexpr double kPercent[26] = {
            8.167, 1.492, 2.782, 4.253, 12.702, 2.228, 2.015, 6.094, 6.966,
            0.153, 0.772, 4.025, 2.406,  6.749,  7.507, 1.929, 0.095, 5.987,
            6.327, 9.056, 2.758, 0.978,  2.360,  0.150, 1.974, 0.074};
        double sum = 0.0;
        for (double v : kPercent) sum += v;
        CharDistribution d;
        for (int i = 0; i < 26; ++i)
            d.probs[static_cast<char32_t>(U'a' + i)] = kPercent[i] / sum;
        return d;
    }();
    return dist;
}

CharDistribution load_char_distribution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open distribution table: " + path.string());
    CharDistribution d;
    std::string line;
    int lineno = 0;
    double sum = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected `character TAB probability`");
        }
        const std::u32string key = uni::decode_utf8(std::string_view(line).substr(0, tab));
        const std::optional<double> prob = parse_double(std::string_view(line).substr(tab + 1));
        if (key.size() != 1 || !prob || *prob < 0.0) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed distribution entry");
        }
        d.probs[key[0]] += *prob;
        sum += *prob;
    }
    if (sum <= 0.0) throw std::runtime_error(path.string() + ": distribution has no mass");
    for (auto& [cp, p] : d.probs) p /= sum;
    return d;
}

CharDistribution make_expectation(std::string_view new_revision, std::string_view inserted,
                                  const CharDistribution& fallback, double epsilon,
                                  int64_t min_revision_chars) {
    const CharDistribution base =
        static_cast<int64_t>(uni::count_codepoints(new_revision)) >= min_revision_chars
            ? char_distribution(new_revision)
            : fallback;
    CharDistribution q = base;
    for (char32_t cp : uni::decode_utf8(inserted)) q.probs.emplace(cp, 0.0);
    const double denom = 1.0 + epsilon * static_cast<double>(q.probs.size());
    for (auto& [cp, p] : q.probs) p = (p + epsilon) / denom;
    return q;
}

double kl_char_divergence(const CharDistribution& p, const CharDistribution& q) {
    double kl = 0.0;
    for (const auto& [cp, pc] : p.probs) {
        if (pc <= 0.0) continue;
        const auto it = q.probs.find(cp);
        const double qc = it != q.probs.end() && it->second > 0.0 ? it->second : 1e-12;
        kl += pc * std::log2(pc / qc);
    }
    return kl;
}

double kl_char_divergence(std::string_view inserted, const CharDistribution& expectation) {
    if (uni::count_codepoints(inserted) < 2) return 0.0;
    return kl_char_divergence(char_distribution(inserted), expectation);
}

double compressibility(std::string_view inserted) {
    if (uni::count_codepoints(inserted) < 2) return 1.0;
    const std::vector<uint8_t> packed = lzw::compress(inserted);
    return static_cast<double>(packed.size()) / static_cast<double>(inserted.size());
}

int64_t size_increment(std::string_view old_text, std::string_view new_text) {
    return static_cast<int64_t>(uni::count_codepoints(new_text)) -
           static_cast<int64_t>(uni::count_codepoints(old_text));
}

double size_ratio(std::string_view old_text, std::string_view new_text) {
    return (1.0 + static_cast<double>(uni::count_codepoints(new_text))) /
           (1.0 + static_cast<double>(uni::count_codepoints(old_text)));
}

int64_t longest_word(const std::vector<textrep::Token>& words) {
    int64_t best = 0;
    for (const auto& t : words)
        best = std::max(best, static_cast<int64_t>(uni::count_codepoints(t.text)));
    return best;
}

int64_t longest_char_sequence(std::string_view text) {
    const std::u32string cps = uni::decode_utf8(text);
    int64_t best = 0, run = 0;
    char32_t prev = 0;
    for (size_t i = 0; i < cps.size(); ++i) {
        run = (i > 0 && cps[i] == prev) ? run + 1 : 1;
        prev = cps[i];
        best = std::max(best, run);
    }
    return best;
}

double average_term_frequency(const std::vector<textrep::Token>& inserted_words_ci,
                              const std::vector<textrep::Token>& new_revision_tokens_ci) {
    if (inserted_words_ci.empty() || new_revision_tokens_ci.empty()) return 0.0;
    std::unordered_map<std::string_view, int64_t> counts;
    counts.reserve(new_revision_tokens_ci.size());
    for (const auto& t : new_revision_tokens_ci) ++counts[t.text];
    // Distinct inserted words, each weighted once.
    std::set<std::string_view> distinct;
    for (const auto& t : inserted_words_ci) distinct.insert(t.text);
    double sum = 0.0;
    for (std::string_view w : distinct) {
        const auto it = counts.find(w);
        if (it != counts.end()) sum += static_cast<double>(it->second);
    }
    const double denom = static_cast<double>(new_revision_tokens_ci.size());
    return sum / denom / static_cast<double>(distinct.size());
}

}  // namespace editguard::charmetrics
