#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editguard/charmetrics.hpp"
#include "editguard/editdiff.hpp"
#include "editguard/lexicon.hpp"

// Assembly of the 28-entry feature vector for one edit: two metadata
// features, twelve text-shape features and the seven lexicon categories'
// frequency/impact pairs, in a fixed canonical order.

namespace editguard::featureset {

inline constexpr std::array<std::string_view, 28> kFeatureNames = {
    "anonymous",       "comment_length",    "upper_to_lower",    "upper_to_all",
    "digit_ratio",     "nonalnum_ratio",    "char_diversity",    "char_distribution",
    "compressibility", "size_increment",    "size_ratio",        "avg_term_freq",
    "longest_word",    "longest_char_seq",  "all_frequency",     "all_impact",
    "vulgarism_frequency", "vulgarism_impact", "bad_frequency",  "bad_impact",
    "biased_frequency",    "biased_impact",    "sex_frequency",  "sex_impact",
    "pronoun_frequency",   "pronoun_impact",   "good_frequency", "good_impact",
};
inline constexpr size_t kFeatureCount = kFeatureNames.size();

// Index of a canonical feature name; fails fast on typos.
size_t feature_index(std::string_view name);

enum class Label : uint8_t { regular, vandalism };

std::string_view label_name(Label label);
std::optional<Label> parse_label(std::string_view name);

struct Edit {
    std::string edit_id;
    std::string editor;
    bool is_anonymous = false;
    std::string comment;
    std::string old_text;
    std::string new_text;
    std::string article_title;
    int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
    // Revision ids as named by the corpus layout; empty when synthetic.
    std::string old_revision_id;
    std::string new_revision_id;
};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    std::optional<Label> label;
    // Set when the diff ran on truncated inputs (see
    // ExtractionConfig::max_diff_bytes); the values are still well-defined.
    bool truncated_diff = false;

    double at(std::string_view name) const { return values[feature_index(name)]; }
};

struct ExtractionConfig {
    editdiff::DiffOptions diff;
    // Texts longer than this are diffed on their first max_diff_bytes bytes
    // (cut on a character boundary) and the vector is flagged truncated.
    int64_t max_diff_bytes = 1 << 20;
    double kl_epsilon = 1e-6;
    int64_t kl_min_revision_chars = 100;
    // Expectation fallback for short revisions; defaults to the bundled
    // English letter table.
    charmetrics::CharDistribution fallback_distribution;

    ExtractionConfig();
};

// Pure function of its arguments: repeated calls are bit-identical.
FeatureVector extract(const Edit& edit, const lexicon::LexiconSet& lexicons,
                      const ExtractionConfig& config);

struct BatchResult {
    std::vector<FeatureVector> vectors;  // parallel to the input edits
    std::vector<std::string> errors;     // per-edit failures, batch never aborts
};

// Order-preserving map of extract(); `jobs` ≤ 0 means all hardware threads.
// The result is identical for every jobs value.
BatchResult extract_batch(const std::vector<Edit>& edits, const lexicon::LexiconSet& lexicons,
                          const ExtractionConfig& config, int jobs);

// Serial reference implementation (kept for A/B testing the parallel path).
BatchResult extract_batch_serial(const std::vector<Edit>& edits,
                                 const lexicon::LexiconSet& lexicons,
                                 const ExtractionConfig& config);

// CSV: canonical header row, one value column per feature plus a final
// `label` column (empty when unlabeled).
void write_csv(std::ostream& out, const std::vector<FeatureVector>& vectors);

struct FeatureTable {
    std::vector<FeatureVector> vectors;
    bool has_labels = false;
};

// Parses what write_csv produced; header names must match the canonical
// order. Throws std::runtime_error with line context on malformed input.
FeatureTable read_csv(std::string_view content);

// Attribute-typed text format: numeric attributes, nominal class
// {regular, vandalism}; unlabeled rows hold `?` in the class column.
void write_arff(std::ostream& out, const std::vector<FeatureVector>& vectors,
                std::string_view relation);

}  // namespace editguard::featureset
