// Acceptance gate. Prints exactly one [PASS]/[FAIL]/[SKIP] line per
// criterion and exits non-zero when anything failed. Criteria 6-9 need the
// full PAN-WVC-10 corpus, which is not redistributable with the repository:
// point EDITGUARD_PAN_WVC10 at the training corpus root (and
// EDITGUARD_PAN_WVC10_TEST at a gold-annotated test corpus) to enable them;
// they are reported as skipped otherwise. EDITGUARD_ACCEPT_SMOKE=1 swaps
// criterion 8's full classifier grid for the fast forest-100 variant.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "editguard/charmetrics.hpp"
#include "editguard/cli.hpp"
#include "editguard/corpus.hpp"
#include "editguard/editdiff.hpp"
#include "editguard/evalharness.hpp"
#include "editguard/featureset.hpp"
#include "editguard/learn.hpp"
#include "editguard/lexicon.hpp"
#include "editguard/lzw.hpp"
#include "editguard/rng.hpp"
#include "editguard/textrep.hpp"
#include "editguard/unicode.hpp"

using namespace editguard;

namespace {

// ---------------------------------------------------------------------------
// The tolerances this gate enforces.

constexpr double kRealRelTol = 1e-12;  // criterion 1: real-valued formulas
constexpr double kAucOracleTol = 1e-9;  // criterion 5
constexpr double kRepetitiveCompressibilityMax = 0.2;  // criterion 2: 200 x "a"
constexpr double kNoiseCompressibilityMin = 0.9;       // criterion 2: random bytes
constexpr int64_t kCorpusEdits = 15000;       // criterion 6
constexpr int64_t kCorpusVandalism = 924;
constexpr double kAnonRegular = 0.29, kAnonVandalism = 0.87, kAnonTol = 0.02;
struct Table1Expectation {                    // criterion 7
    const char* feature;
    double auc;
    double tol;
};
const Table1Expectation kTable1Rows[] = {
    {"anonymous", 0.78, 0.02},
    {"digit_ratio", 0.75, 0.03},
    {"char_diversity", 0.741, 0.03},
    // Wide bands: the original word lists are unpublished, ours are rebuilt.
    {"all_frequency", 0.661, 0.08},
    {"vulgarism_frequency", 0.597, 0.08},
    {"sex_frequency", 0.517, 0.08},
};
constexpr double kC45Floor = 0.90;            // criterion 8 (one-sided floors)
constexpr double kForest1000Floor = 0.93;
constexpr double kForestSmokeFloor = 0.93;
constexpr double kBoost100Floor = 0.93;
constexpr double kTestAucFloor = 0.89;        // criterion 9
constexpr double kBudget1 = 30.0;             // seconds
constexpr double kBudget2 = 60.0;
constexpr double kBudget7 = 1200.0;
constexpr double kBudget8Full = 7200.0;
constexpr double kBudget8Smoke = 900.0;

const std::filesystem::path kRepo = EDITGUARD_REPO_DIR;

// ---------------------------------------------------------------------------
// Reporting: one line per criterion.

int g_failures = 0;

void emit(const char* tag, int id, const std::string& text) {
    std::printf("[%s] %2d. %s\n", tag, id, text.c_str());
    std::fflush(stdout);
}

void run_criterion(int id, const std::string& title, double budget_seconds,
                   const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (detail.empty() && budget_seconds > 0.0 && secs > budget_seconds)
        detail = "exceeded runtime budget of " + std::to_string(budget_seconds) + " s";
    char timing[32];
    std::snprintf(timing, sizeof timing, " (%.1f s)", secs);
    if (detail.empty()) {
        emit("PASS", id, title + timing);
    } else {
        ++g_failures;
        emit("FAIL", id, title + " — " + detail + timing);
    }
}

void skip_criterion(int id, const std::string& title, const std::string& why) {
    emit("SKIP", id, title + " — " + why);
}

// Collects expectation failures; the line reports the first one plus a count.
struct Gate {
    int fails = 0;
    std::string first;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++fails;
        if (first.empty()) first = what;
    }
    std::string result() const {
        if (fails == 0) return "";
        if (fails == 1) return first;
        return first + " (+" + std::to_string(fails - 1) + " more)";
    }
};

bool close_rel(double a, double b, double tol) {
    if (a == b) return true;
    return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1.0});
}

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

// ---------------------------------------------------------------------------
// Criterion 1 — formula oracles.

const std::u32string kTextAlphabet =
    U"abcde ABC XYZ z0189.,!?()<>[]{}|=*\"' \t\néÑΩ中ß";

std::string random_text(Rng& rng, size_t max_len) {
    const size_t n = rng.next_below(max_len + 1);
    std::u32string s;
    s.reserve(n);
    for (size_t i = 0; i < n; ++i) s += kTextAlphabet[rng.next_below(kTextAlphabet.size())];
    return uni::encode_utf8(s);
}

const std::vector<std::string> kTokenVocab = {"the",  "you",  "hate",      "nice", "page",
                                              "wiki", "a",    "bb",        "ccc",  "!",
                                              "love", "?",    "reference", "stupid"};

std::vector<textrep::Token> random_tokens(Rng& rng, size_t max_n) {
    const size_t n = rng.next_below(max_n + 1);
    std::vector<textrep::Token> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
        out.push_back({kTokenVocab[rng.next_below(kTokenVocab.size())], textrep::TokenKind::word});
    return out;
}

std::map<char32_t, double> oracle_empirical(const std::u32string& cps) {
    std::map<char32_t, int64_t> counts;
    for (char32_t c : cps) ++counts[c];
    std::map<char32_t, double> p;
    for (const auto& [c, k] : counts)
        p[c] = static_cast<double>(k) / static_cast<double>(cps.size());
    return p;
}

double oracle_kl(const std::string& inserted, const std::string& revision, int64_t threshold) {
    const std::u32string ins = uni::decode_utf8(inserted);
    if (ins.size() < 2) return 0.0;
    const std::u32string rev = uni::decode_utf8(revision);
    std::map<char32_t, double> q;
    if (static_cast<int64_t>(rev.size()) >= threshold) {
        q = oracle_empirical(rev);
    } else {
        for (const auto& [c, p] : charmetrics::english_letter_distribution().probs) q[c] = p;
    }
    for (char32_t c : ins) q.emplace(c, 0.0);
    const double eps = 1e-6;
    const double denom = 1.0 + eps * static_cast<double>(q.size());
    for (auto& [c, p] : q) p = (p + eps) / denom;
    double kl = 0.0;
    for (const auto& [c, p] : oracle_empirical(ins)) {
        const auto it = q.find(c);
        const double qc = it != q.end() && it->second > 0.0 ? it->second : 1e-12;
        kl += p * std::log2(p / qc);
    }
    return kl;
}

double oracle_atf(const std::vector<textrep::Token>& inserted,
                  const std::vector<textrep::Token>& revision) {
    if (inserted.empty() || revision.empty()) return 0.0;
    std::set<std::string> distinct;
    for (const auto& t : inserted) distinct.insert(t.text);
    double sum = 0.0;
    for (const std::string& w : distinct) {
        int64_t count = 0;
        for (const auto& t : revision)
            if (t.text == w) ++count;
        sum += static_cast<double>(count) / static_cast<double>(revision.size());
    }
    return sum / static_cast<double>(distinct.size());
}

int64_t oracle_matches(const lexicon::Lexicon& lex, const std::vector<textrep::Token>& tokens) {
    int64_t n = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
        bool hit = lex.words.count(tokens[i].text) > 0;
        for (const auto& phrase : lex.phrases) {
            if (hit) break;
            if (phrase.empty() || i + phrase.size() > tokens.size()) continue;
            bool all = true;
            for (size_t j = 0; j < phrase.size() && all; ++j)
                if (tokens[i + j].text != phrase[j]) all = false;
            hit = all;
        }
        if (hit) ++n;
    }
    return n;
}

std::string criterion1() {
    Gate g;
    Rng rng(101);
    for (int round = 0; round < 1000 && g.fails < 50; ++round) {
        const std::string text = random_text(rng, 60);
        const std::u32string cps = uni::decode_utf8(text);

        int64_t upper = 0, lower = 0, digit = 0, nonalnum = 0;
        std::set<char32_t> distinct;
        for (char32_t c : cps) {
            if (uni::is_upper(c)) ++upper;
            if (uni::is_lower(c)) ++lower;
            if (uni::is_digit(c)) ++digit;
            if (!uni::is_alnum(c)) ++nonalnum;
            distinct.insert(c);
        }
        const auto counts = charmetrics::count_chars(text);
        g.expect(counts.upper == upper && counts.lower == lower && counts.digit == digit &&
                     counts.nonalnum == nonalnum &&
                     counts.total == static_cast<int64_t>(cps.size()) &&
                     counts.distinct == static_cast<int64_t>(distinct.size()),
                 "count_chars disagrees with the codepoint-loop oracle");
        const double u = static_cast<double>(upper), l = static_cast<double>(lower);
        const double d = static_cast<double>(digit), na = static_cast<double>(nonalnum);
        const double tot = static_cast<double>(cps.size());
        g.expect(close_rel(charmetrics::upper_to_lower_ratio(counts), (1.0 + u) / (1.0 + l),
                           kRealRelTol),
                 "upper_to_lower_ratio formula");
        g.expect(close_rel(charmetrics::upper_to_all_ratio(counts), (1.0 + u) / (1.0 + l + u),
                           kRealRelTol),
                 "upper_to_all_ratio formula");
        g.expect(close_rel(charmetrics::digit_ratio(counts), (1.0 + d) / (1.0 + tot), kRealRelTol),
                 "digit_ratio formula");
        g.expect(close_rel(charmetrics::nonalnum_ratio(counts), (1.0 + na) / (1.0 + tot),
                           kRealRelTol),
                 "nonalnum_ratio formula");

        const double diversity =
            cps.empty() ? 0.0
                        : std::pow(static_cast<double>(cps.size()),
                                   1.0 / static_cast<double>(distinct.size()));
        g.expect(close_rel(charmetrics::character_diversity(text), diversity, kRealRelTol),
                 "character_diversity formula");

        int64_t best_run = 0, run = 0;
        for (size_t i = 0; i < cps.size(); ++i) {
            run = i > 0 && cps[i] == cps[i - 1] ? run + 1 : 1;
            best_run = std::max(best_run, run);
        }
        g.expect(charmetrics::longest_char_sequence(text) == best_run, "longest_char_sequence");

        const std::string other = random_text(rng, 60);
        const std::u32string other_cps = uni::decode_utf8(other);
        g.expect(charmetrics::size_increment(other, text) ==
                     static_cast<int64_t>(cps.size()) - static_cast<int64_t>(other_cps.size()),
                 "size_increment");
        g.expect(close_rel(charmetrics::size_ratio(other, text),
                           (1.0 + tot) / (1.0 + static_cast<double>(other_cps.size())),
                           kRealRelTol),
                 "size_ratio formula");

        const double comp = charmetrics::compressibility(text);
        if (cps.size() < 2)
            g.expect(comp == 1.0, "compressibility of short text");
        else
            g.expect(comp == static_cast<double>(lzw::compress(text).size()) /
                                 static_cast<double>(text.size()),
                     "compressibility ratio");

        const std::string revision = random_text(rng, 140);
        const int64_t threshold = 1 + static_cast<int64_t>(rng.next_below(120));
        const auto expectation = charmetrics::make_expectation(
            revision, text, charmetrics::english_letter_distribution(), 1e-6, threshold);
        g.expect(close_rel(charmetrics::kl_char_divergence(text, expectation),
                           oracle_kl(text, revision, threshold), kRealRelTol),
                 "kl_char_divergence");

        const auto inserted_tokens = random_tokens(rng, 8);
        const auto revision_tokens = random_tokens(rng, 30);
        g.expect(close_rel(charmetrics::average_term_frequency(inserted_tokens, revision_tokens),
                           oracle_atf(inserted_tokens, revision_tokens), kRealRelTol),
                 "average_term_frequency");
        int64_t longest = 0;
        for (const auto& t : inserted_tokens)
            longest = std::max(longest, static_cast<int64_t>(uni::count_codepoints(t.text)));
        g.expect(charmetrics::longest_word(inserted_tokens) == longest, "longest_word");

        lexicon::Lexicon lex;
        lex.name = "probe";
        const size_t n_words = 1 + rng.next_below(6);
        for (size_t i = 0; i < n_words; ++i)
            lex.words.insert(kTokenVocab[rng.next_below(kTokenVocab.size())]);
        if (rng.next_below(2) == 0)
            lex.phrases.push_back({kTokenVocab[rng.next_below(kTokenVocab.size())],
                                   kTokenVocab[rng.next_below(kTokenVocab.size())]});
        const int64_t hits_ins = oracle_matches(lex, inserted_tokens);
        const int64_t hits_rev = oracle_matches(lex, revision_tokens);
        g.expect(lex.count_matches(inserted_tokens) == hits_ins, "count_matches");
        const double freq = inserted_tokens.empty()
                                ? 0.0
                                : static_cast<double>(hits_ins) /
                                      static_cast<double>(inserted_tokens.size());
        g.expect(close_rel(lexicon::category_frequency(lex, inserted_tokens), freq, kRealRelTol),
                 "category_frequency formula");
        g.expect(close_rel(lexicon::category_impact(lex, inserted_tokens, revision_tokens),
                           (1.0 + static_cast<double>(hits_rev)) /
                               (1.0 + static_cast<double>(hits_ins)),
                           kRealRelTol),
                 "category_impact formula");
    }
    return g.result();
}

// ---------------------------------------------------------------------------
// Criterion 2 — LZW round trips and compressibility bounds.

std::string criterion2() {
    Gate g;
    Rng rng(202);

    std::string all_bytes;
    for (int i = 0; i < 256; ++i) all_bytes += static_cast<char>(i);
    std::string many = all_bytes + all_bytes + all_bytes;
    std::reverse(many.begin(), many.end());
    for (const std::string& s : {std::string(), all_bytes, many})
        g.expect(lzw::decompress(lzw::compress(s)) == s, "round trip on byte-range fixture");

    for (int round = 0; round < 10000 && g.fails < 10; ++round) {
        const size_t n = rng.next_below(300);
        const uint64_t alphabet = uint64_t{1} << rng.next_below(9);  // 1..256 symbols
        std::string s(n, '\0');
        for (size_t i = 0; i < n; ++i)
            s[i] = static_cast<char>(static_cast<uint8_t>(rng.next_below(alphabet)));
        g.expect(lzw::decompress(lzw::compress(s)) == s, "round trip on random string");
    }

    g.expect(charmetrics::compressibility(std::string(200, 'a')) < kRepetitiveCompressibilityMax,
             "repetitive text should compress well");
    std::string noise(4096, '\0');
    for (auto& c : noise) c = static_cast<char>(static_cast<uint8_t>(rng.next_below(256)));
    g.expect(charmetrics::compressibility(noise) >= kNoiseCompressibilityMin,
             "high-entropy text should not compress");
    return g.result();
}

// ---------------------------------------------------------------------------
// Criterion 3 — diff reconstruction and the DP edit-distance oracle.

size_t lcs_length(const std::u32string& a, const std::u32string& b) {
    std::vector<size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j)
            curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

std::string criterion3() {
    Gate g;
    Rng rng(303);

    for (int round = 0; round < 10000 && g.fails < 10; ++round) {
        std::string a = random_text(rng, 80);
        std::string b;
        switch (rng.next_below(3)) {
            case 0:
                b = random_text(rng, 80);
                break;
            case 1: {  // splice an insertion into a copy
                b = a;
                const size_t at = rng.next_below(b.size() + 1);
                b.insert(at, random_text(rng, 20));
                break;
            }
            default: {  // drop a slice
                b = a;
                const size_t cut = rng.next_below(b.size() + 1);
                b.erase(rng.next_below(b.size() + 1 - cut), cut);
                break;
            }
        }
        // Splices above may cut multi-byte sequences; keep inputs valid UTF-8.
        a = uni::encode_utf8(uni::decode_utf8(a));
        b = uni::encode_utf8(uni::decode_utf8(b));
        const editdiff::DiffResult diff = editdiff::compute_diff(a, b, round % 2 == 0 ? 0 : 6);
        g.expect(editdiff::reconstruct_old(diff) == a && editdiff::reconstruct_new(diff) == b,
                 "reconstruction is not bit-exact");
    }

    const std::u32string small = U"abéc";
    for (int round = 0; round < 3000 && g.fails < 10; ++round) {
        std::u32string a32, b32;
        for (size_t i = rng.next_below(13); i > 0; --i) a32 += small[rng.next_below(small.size())];
        for (size_t i = rng.next_below(13); i > 0; --i) b32 += small[rng.next_below(small.size())];
        const std::string a = uni::encode_utf8(a32), b = uni::encode_utf8(b32);
        const int64_t oracle = static_cast<int64_t>(a32.size() + b32.size()) -
                               2 * static_cast<int64_t>(lcs_length(a32, b32));
        const editdiff::DiffResult diff = editdiff::compute_diff(a, b, 0);
        g.expect(static_cast<int64_t>(editdiff::edit_distance(diff)) == oracle,
                 "edit distance differs from the LCS oracle");
    }
    return g.result();
}

// ---------------------------------------------------------------------------
// Criterion 4 — learner oracle equivalence.

// Restated from the induction contract: candidate thresholds are midpoints
// between consecutive distinct values (nudged down when rounding reaches the
// upper value), weighted entropy gain with the same canonical expression,
// min_leaf on both children, gain ratio divides by the children split info,
// ties break on the lowest feature then the lowest threshold. FP tie
// behaviour is part of the contract, so the expression shapes match the
// production code on purpose.
double oracle_entropy2(double w_regular, double w_vandal) {
    const double total = w_regular + w_vandal;
    if (!(total > 0.0)) return 0.0;
    double h = 0.0;
    if (w_regular > 0.0) {
        const double p = w_regular / total;
        h -= p * std::log2(p);
    }
    if (w_vandal > 0.0) {
        const double p = w_vandal / total;
        h -= p * std::log2(p);
    }
    return h;
}

struct OracleSplit {
    bool found = false;
    size_t feature = 0;
    double threshold = 0.0;
    double value = 0.0;
};

OracleSplit oracle_root_split(const learn::WeightedDataset& data, double min_leaf,
                              learn::SplitCriterion criterion) {
    OracleSplit best;
    double total_regular = 0.0, total_vandal = 0.0;
    for (size_t i = 0; i < data.vectors.size(); ++i) {
        if (*data.vectors[i].label == featureset::Label::vandalism)
            total_vandal += data.weights[i];
        else
            total_regular += data.weights[i];
    }
    const double total = total_regular + total_vandal;
    const double parent = oracle_entropy2(total_regular, total_vandal);

    for (size_t f = 0; f < featureset::kFeatureCount; ++f) {
        std::vector<double> values;
        for (const auto& v : data.vectors) values.push_back(v.values[f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (size_t k = 0; k + 1 < values.size(); ++k) {
            const double lo = values[k], hi = values[k + 1];
            const double mid = lo + (hi - lo) / 2.0;
            const double threshold = mid < hi ? mid : lo;
            double left_regular = 0.0, left_vandal = 0.0;
            for (size_t i = 0; i < data.vectors.size(); ++i) {
                if (data.vectors[i].values[f] > threshold) continue;
                if (*data.vectors[i].label == featureset::Label::vandalism)
                    left_vandal += data.weights[i];
                else
                    left_regular += data.weights[i];
            }
            const double left_total = left_regular + left_vandal;
            const double right_total = total - left_total;
            if (left_total < min_leaf || right_total < min_leaf) continue;
            const double gain =
                parent - (left_total / total) * oracle_entropy2(left_regular, left_vandal) -
                (right_total / total) *
                    oracle_entropy2(total_regular - left_regular, total_vandal - left_vandal);
            if (gain <= 1e-12) continue;
            double value = gain;
            if (criterion == learn::SplitCriterion::gain_ratio) {
                const double pl = left_total / total;
                const double pr = right_total / total;
                const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
                if (!(split_info > 0.0)) continue;
                value = gain / split_info;
            }
            if (!best.found || value > best.value) {
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
                best.value = value;
            }
        }
    }
    return best;
}

featureset::FeatureVector signal_vector(Rng& rng, bool vandal) {
    featureset::FeatureVector v;
    for (size_t f = 0; f < featureset::kFeatureCount; ++f) v.values[f] = rng.next_gaussian();
    v.values[3] += vandal ? 1.2 : -1.2;
    v.values[9] += vandal ? 0.7 : -0.7;
    v.label = vandal ? featureset::Label::vandalism : featureset::Label::regular;
    return v;
}

std::string criterion4() {
    Gate g;
    Rng rng(404);

    for (int round = 0; round < 500 && g.fails < 10; ++round) {
        const size_t n = 2 + rng.next_below(7);   // ≤ 8 instances
        const size_t m = 1 + rng.next_below(2);   // ≤ 2 active features
        std::vector<featureset::FeatureVector> vectors(n);
        for (auto& v : vectors) {
            for (size_t f = 0; f < m; ++f)
                v.values[f] = static_cast<double>(rng.next_below(6)) / 2.0;
            v.label = rng.next_below(2) == 0 ? featureset::Label::regular
                                             : featureset::Label::vandalism;
        }
        learn::WeightedDataset data = learn::make_dataset(vectors);
        if (round % 3 == 0) data = learn::apply_cost_weights(data, 2.0);
        const auto criterion = round % 2 == 0 ? learn::SplitCriterion::gain_ratio
                                              : learn::SplitCriterion::info_gain;

        learn::TreeParams params;
        params.min_leaf = 1.0;
        params.criterion = criterion;
        const learn::DecisionTree tree = learn::train_tree(data, params);
        const learn::TreeNode& root = tree.nodes[0];
        const OracleSplit oracle = oracle_root_split(data, params.min_leaf, criterion);
        if (!oracle.found) {
            g.expect(root.feature == -1, "tree split where the oracle found none");
        } else {
            g.expect(root.feature == static_cast<int32_t>(oracle.feature) &&
                         root.threshold == oracle.threshold,
                     "root split differs from the exhaustive oracle");
        }
    }

    // Degenerate forest: one tree, every feature, no bootstrap.
    std::vector<featureset::FeatureVector> train;
    for (int i = 0; i < 80; ++i) train.push_back(signal_vector(rng, i % 3 == 0));
    const learn::WeightedDataset data = learn::make_dataset(train);
    learn::ForestParams fp;
    fp.n_trees = 1;
    fp.k_features = static_cast<int>(featureset::kFeatureCount);
    fp.bootstrap = false;
    fp.min_leaf = 6.0;
    fp.laplace = true;
    fp.seed = 11;
    const learn::RandomForest forest = learn::train_forest(data, fp);
    learn::TreeParams tp;
    tp.min_leaf = 6.0;
    tp.laplace = true;
    const learn::DecisionTree tree = learn::train_tree(data, tp);
    g.expect(forest.oob_error == 0.0, "no-bootstrap forest should have zero OOB error");
    bool same = true;
    for (const auto& v : train)
        if (forest.predict(v) != tree.predict(v)) same = false;
    for (int i = 0; i < 100; ++i) {
        const auto probe = signal_vector(rng, i % 2 == 0);
        if (forest.predict(probe) != tree.predict(probe)) same = false;
    }
    g.expect(same, "degenerate forest predictions differ from the plain tree");
    return g.result();
}

// ---------------------------------------------------------------------------
// Criterion 5 — AUC against the pairwise oracle.

double oracle_pairwise_auc(const std::vector<evalharness::ScoredLabel>& scored) {
    int64_t pairs = 0;
    double wins = 0.0;
    for (const auto& pos : scored) {
        if (pos.label != featureset::Label::vandalism) continue;
        for (const auto& neg : scored) {
            if (neg.label != featureset::Label::regular) continue;
            ++pairs;
            if (pos.score > neg.score) wins += 1.0;
            else if (pos.score == neg.score) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

std::string criterion5() {
    Gate g;
    Rng rng(505);
    for (int round = 0; round < 1000 && g.fails < 10; ++round) {
        const size_t n = 2 + rng.next_below(49);  // ≤ 50
        std::vector<evalharness::ScoredLabel> scored(n);
        for (size_t i = 0; i < n; ++i) {
            // Coarse grid in half the rounds so ties actually happen.
            scored[i].score = round % 2 == 0
                                  ? static_cast<double>(rng.next_below(12)) / 4.0
                                  : rng.next_double();
            scored[i].label = rng.next_below(2) == 0 ? featureset::Label::regular
                                                     : featureset::Label::vandalism;
        }
        scored[0].label = featureset::Label::regular;  // both classes present
        scored[n - 1].label = featureset::Label::vandalism;

        const double auc = evalharness::auc(scored);
        g.expect(std::fabs(auc - oracle_pairwise_auc(scored)) <= kAucOracleTol,
                 "auc differs from the pairwise oracle");

        std::vector<evalharness::ScoredLabel> swapped = scored;
        for (auto& s : swapped)
            s.label = s.label == featureset::Label::vandalism ? featureset::Label::regular
                                                              : featureset::Label::vandalism;
        g.expect(evalharness::auc(swapped) + auc == 1.0, "label-swap antisymmetry is not exact");
    }
    return g.result();
}

// ---------------------------------------------------------------------------
// Criteria 6-9 — PAN-WVC-10 corpus checks (gated on environment variables).

const corpus::CorpusIndex& pan_corpus(const std::string& root) {
    static std::optional<corpus::CorpusIndex> cache;
    if (!cache) cache = corpus::load_corpus(root);
    return *cache;
}

std::filesystem::path lexicon_dir() {
    if (auto env = env_value("EDITGUARD_LEXICON_DIR")) return *env;
    return kRepo / "data" / "lexicons";
}

std::vector<featureset::FeatureVector> extract_labeled(const corpus::CorpusIndex& index) {
    const lexicon::LexiconSet lexicons = lexicon::load_lexicons(lexicon_dir());
    featureset::BatchResult batch =
        featureset::extract_batch(index.edits, lexicons, featureset::ExtractionConfig{}, 0);
    if (!batch.errors.empty())
        throw std::runtime_error("feature extraction reported " +
                                 std::to_string(batch.errors.size()) + " failures");
    corpus::attach_labels(index, batch.vectors);
    return std::move(batch.vectors);
}

const std::vector<featureset::FeatureVector>& pan_features(const std::string& root) {
    static std::optional<std::vector<featureset::FeatureVector>> cache;
    if (!cache) cache = extract_labeled(pan_corpus(root));
    return *cache;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string criterion6(const std::string& root) {
    Gate g;
    const corpus::CorpusIndex& index = pan_corpus(root);
    const corpus::ClassStatistics st = corpus::class_statistics(index);
    g.expect(static_cast<int64_t>(index.edits.size()) == kCorpusEdits,
             "edit count " + std::to_string(index.edits.size()) + ", want " +
                 std::to_string(kCorpusEdits));
    g.expect(st.vandalism == kCorpusVandalism,
             "vandalism count " + std::to_string(st.vandalism) + ", want " +
                 std::to_string(kCorpusVandalism));
    g.expect(st.anonymous_rate_regular &&
                 std::fabs(*st.anonymous_rate_regular - kAnonRegular) <= kAnonTol,
             "regular anonymity rate " +
                 (st.anonymous_rate_regular ? fmt(*st.anonymous_rate_regular) : "n/a") +
                 ", want " + fmt(kAnonRegular) + " ± " + fmt(kAnonTol));
    g.expect(st.anonymous_rate_vandalism &&
                 std::fabs(*st.anonymous_rate_vandalism - kAnonVandalism) <= kAnonTol,
             "vandalism anonymity rate " +
                 (st.anonymous_rate_vandalism ? fmt(*st.anonymous_rate_vandalism) : "n/a") +
                 ", want " + fmt(kAnonVandalism) + " ± " + fmt(kAnonTol));
    return g.result();
}

std::string criterion7(const std::string& root) {
    Gate g;
    const auto& vectors = pan_features(root);
    const std::vector<evalharness::NamedReport> rows = evalharness::table1_report(vectors);
    for (const Table1Expectation& want : kTable1Rows) {
        const auto it = std::find_if(rows.begin(), rows.end(),
                                     [&](const auto& r) { return r.name == want.feature; });
        if (it == rows.end()) {
            g.expect(false, std::string("missing row ") + want.feature);
            continue;
        }
        g.expect(std::fabs(it->report.auc - want.auc) <= want.tol,
                 std::string(want.feature) + " AUC " + fmt(it->report.auc) + ", want " +
                     fmt(want.auc) + " ± " + fmt(want.tol));
    }
    return g.result();
}

std::string criterion8(const std::string& root, bool smoke) {
    Gate g;
    const auto& vectors = pan_features(root);
    if (smoke) {
        evalharness::Table2Options opt;
        opt.forest_sizes = {100};
        opt.boost_iterations = {};
        const auto rows = evalharness::table2_report(vectors, opt);
        const auto& forest = rows.back();
        g.expect(forest.report.auc >= kForestSmokeFloor,
                 "smoke " + forest.name + " AUC " + fmt(forest.report.auc) + " below floor " +
                     fmt(kForestSmokeFloor));
        return g.result();
    }
    evalharness::Table2Options opt;
    opt.forest_sizes = {1000};
    opt.boost_iterations = {100};
    const auto rows = evalharness::table2_report(vectors, opt);
    const double floors[] = {kC45Floor, kForest1000Floor, kBoost100Floor};
    if (rows.size() != 3) return "expected 3 grid rows, got " + std::to_string(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        g.expect(rows[i].report.auc >= floors[i],
                 rows[i].name + " AUC " + fmt(rows[i].report.auc) + " below floor " +
                     fmt(floors[i]));
    return g.result();
}

std::string criterion9(const std::string& train_root, const std::string& test_root) {
    Gate g;
    const corpus::CorpusIndex test_index = corpus::load_corpus(test_root);
    std::vector<featureset::FeatureVector> test_vectors = extract_labeled(test_index);
    for (const auto& v : test_vectors)
        if (!v.label) throw std::runtime_error("test corpus is missing gold annotations");

    const learn::WeightedDataset data = learn::make_dataset(pan_features(train_root));
    learn::ForestParams params;
    params.n_trees = 1000;
    params.seed = 0;
    const learn::RandomForest forest = learn::train_forest(data, params);

    std::vector<evalharness::ScoredLabel> scored(test_vectors.size());
    for (size_t i = 0; i < test_vectors.size(); ++i)
        scored[i] = {forest.predict(test_vectors[i]), *test_vectors[i].label};
    const double auc = evalharness::auc(scored);
    g.expect(auc >= kTestAucFloor,
             "test AUC " + fmt(auc) + " below floor " + fmt(kTestAucFloor));
    return g.result();
}

// ---------------------------------------------------------------------------
// Criterion 10 — byte-identical artifacts through the CLI surface.

int quiet_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full = args;
    full.insert(full.begin(), "editguard");
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream sink_out, sink_err;
    std::streambuf* old_out = std::cout.rdbuf(sink_out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(sink_err.rdbuf());
    const int code = cli::run(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return code;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string criterion10() {
    Gate g;
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() /
        ("editguard_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    const std::string corpus_dir = (kRepo / "tests" / "data" / "minicorpus").string();
    const std::string lexicons = lexicon_dir().string();

    using Run = std::pair<std::filesystem::path, std::string>;
    const auto a = tmp / "a.csv", b = tmp / "b.csv", c = tmp / "c.csv";
    const std::vector<Run> extract_runs = {{a, "1"}, {b, "4"}, {c, "1"}};
    for (const auto& [out, jobs] : extract_runs)
        g.expect(quiet_cli({"extract", "--corpus", corpus_dir, "--lexicon-dir", lexicons, "-o",
                            out.string(), "--jobs", jobs}) == 0,
                 "extract failed");
    g.expect(slurp(a) == slurp(b) && slurp(a) == slurp(c),
             "extract output depends on --jobs or the run");

    const auto m1 = tmp / "m1.bin", m2 = tmp / "m2.bin";
    const std::vector<Run> train_runs = {{m1, "1"}, {m2, "4"}};
    for (const auto& [out, jobs] : train_runs)
        g.expect(quiet_cli({"train", "--features", a.string(), "-o", out.string(), "--algo",
                            "forest", "--trees", "60", "--seed", "5", "--jobs", jobs}) == 0,
                 "train failed");
    g.expect(slurp(m1) == slurp(m2), "model bytes depend on --jobs");

    const auto r1 = tmp / "r1.json", r2 = tmp / "r2.json";
    const std::vector<Run> cv_runs = {{r1, "1"}, {r2, "4"}};
    for (const auto& [out, jobs] : cv_runs)
        g.expect(quiet_cli({"cv", "--features", a.string(), "--table", "2", "--k", "4",
                            "--forest-sizes", "8", "--boost-iters", "4", "--seed", "3",
                            "--format", "json", "--jobs", jobs, "-o", out.string()}) == 0,
                 "cv failed");
    g.expect(slurp(r1) == slurp(r2), "cv report depends on --jobs");

    const auto s1 = tmp / "s1.csv", s2 = tmp / "s2.csv";
    for (const auto& out : {s1, s2})
        g.expect(quiet_cli({"predict", "--model", m1.string(), "--features", a.string(), "-o",
                            out.string()}) == 0,
                 "predict failed");
    g.expect(slurp(s1) == slurp(s2), "predictions differ between runs");

    std::filesystem::remove_all(tmp);
    return g.result();
}

}  // namespace

int main() {
    run_criterion(1, "charmetrics/lexicon formulas match brute-force oracles (1000 random inputs)",
                  kBudget1, criterion1);
    run_criterion(2, "LZW round-trip identity and compressibility bounds (10000 strings)",
                  kBudget2, criterion2);
    run_criterion(3, "diff reconstruction bit-exact (10000 pairs); DP edit-distance oracle",
                  0.0, criterion3);
    run_criterion(4, "tree root split matches exhaustive oracle (500 datasets); degenerate "
                     "forest equals the plain tree",
                  0.0, criterion4);
    run_criterion(5, "AUC matches the pairwise oracle (1000 sets); label-swap antisymmetry exact",
                  0.0, criterion5);

    const auto pan = env_value("EDITGUARD_PAN_WVC10");
    const std::string unlock =
        "set EDITGUARD_PAN_WVC10 to the PAN-WVC-10 training corpus root to enable";
    if (pan) {
        run_criterion(6, "corpus statistics: 15000 edits, 924 vandalism, anonymity rates", 0.0,
                      [&] { return criterion6(*pan); });
        run_criterion(7, "per-feature AUC grid within tolerance of the reference values",
                      kBudget7, [&] { return criterion7(*pan); });
        const bool smoke = env_value("EDITGUARD_ACCEPT_SMOKE").has_value();
        run_criterion(8,
                      smoke ? "classifier AUC floor (forest-100 smoke variant)"
                            : "classifier AUC floors: C4.5, forest-1000, logitboost-100",
                      smoke ? kBudget8Smoke : kBudget8Full,
                      [&] { return criterion8(*pan, smoke); });
        if (const auto test = env_value("EDITGUARD_PAN_WVC10_TEST")) {
            run_criterion(9, "held-out test AUC floor for the forest-1000 pipeline", 0.0,
                          [&] { return criterion9(*pan, *test); });
        } else {
            skip_criterion(9, "held-out test AUC floor for the forest-1000 pipeline",
                           "set EDITGUARD_PAN_WVC10_TEST to a gold-annotated test corpus root "
                           "to enable");
        }
    } else {
        skip_criterion(6, "corpus statistics: 15000 edits, 924 vandalism, anonymity rates",
                       unlock);
        skip_criterion(7, "per-feature AUC grid within tolerance of the reference values",
                       unlock);
        skip_criterion(8, "classifier AUC floors: C4.5, forest-1000, logitboost-100", unlock);
        skip_criterion(9, "held-out test AUC floor for the forest-1000 pipeline", unlock);
    }

    run_criterion(10, "byte-identical artifacts across reruns and --jobs settings", 0.0,
                  criterion10);

    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
