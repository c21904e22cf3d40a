#include "editguard/featureset.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "editguard/csv.hpp"
#include "editguard/numfmt.hpp"
#include "editguard/parallel.hpp"
#include "editguard/textrep.hpp"
#include "editguard/unicode.hpp"

namespace editguard::featureset {

size_t feature_index(std::string_view name) {
    for (size_t i = 0; i < kFeatureNames.size(); ++i)
        if (kFeatureNames[i] == name) return i;
    throw std::out_of_range("unknown feature: " + std::string(name));
}

std::string_view label_name(Label label) {
    return label == Label::vandalism ? "vandalism" : "regular";
}

std::optional<Label> parse_label(std::string_view name) {
    if (name == "regular") return Label::regular;
    if (name == "vandalism") return Label::vandalism;
    return std::nullopt;
}

ExtractionConfig::ExtractionConfig()
    : fallback_distribution(charmetrics::english_letter_distribution()) {}

namespace {

// Longest prefix of at most max_bytes that ends on a character boundary.
std::string_view prefix_on_char_boundary(std::string_view text, int64_t max_bytes) {
    if (static_cast<int64_t>(text.size()) <= max_bytes) return text;
    size_t cut = static_cast<size_t>(max_bytes);
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xc0) == 0x80) --cut;
    return text.substr(0, cut);
}

}  // namespace

FeatureVector extract(const Edit& edit, const lexicon::LexiconSet& lexicons,
                      const ExtractionConfig& config) {
    FeatureVector fv;

    const std::string_view old_cut = prefix_on_char_boundary(edit.old_text, config.max_diff_bytes);
    const std::string_view new_cut = prefix_on_char_boundary(edit.new_text, config.max_diff_bytes);
    fv.truncated_diff =
        old_cut.size() != edit.old_text.size() || new_cut.size() != edit.new_text.size();

    const editdiff::DiffResult diff = editdiff::compute_diff(old_cut, new_cut, config.diff);
    const textrep::EditRepresentations reps =
        textrep::build_representations(old_cut, new_cut, diff);

    const charmetrics::CharCounts counts = charmetrics::count_chars(reps.concat_inserted_cs);
    const std::vector<textrep::Token> old_tokens_ci =
        textrep::lowercase_fold(textrep::tokenize(edit.old_text));
    const std::vector<textrep::Token> new_tokens_ci =
        textrep::lowercase_fold(textrep::tokenize(edit.new_text));
    const charmetrics::CharDistribution expectation =
        charmetrics::make_expectation(edit.new_text, reps.inserted_text,
                                      config.fallback_distribution, config.kl_epsilon,
                                      config.kl_min_revision_chars);

    auto& v = fv.values;
    v[0] = edit.is_anonymous ? 1.0 : 0.0;
    v[1] = static_cast<double>(uni::count_codepoints(edit.comment));
    v[2] = charmetrics::upper_to_lower_ratio(counts);
    v[3] = charmetrics::upper_to_all_ratio(counts);
    v[4] = charmetrics::digit_ratio(counts);
    v[5] = charmetrics::nonalnum_ratio(counts);
    v[6] = charmetrics::character_diversity(reps.inserted_text);
    v[7] = charmetrics::kl_char_divergence(reps.inserted_text, expectation);
    v[8] = charmetrics::compressibility(reps.inserted_text);
    v[9] = static_cast<double>(charmetrics::size_increment(edit.old_text, edit.new_text));
    v[10] = charmetrics::size_ratio(edit.old_text, edit.new_text);
    v[11] = charmetrics::average_term_frequency(reps.inserted_words_ci, new_tokens_ci);
    v[12] = static_cast<double>(charmetrics::longest_word(reps.inserted_words_cs));
    v[13] = static_cast<double>(charmetrics::longest_char_sequence(reps.inserted_text));

    size_t slot = 14;
    for (std::string_view category : lexicon::kCategories) {
        const lexicon::Lexicon& lex = lexicons.get(category);
        v[slot++] = lexicon::category_frequency(lex, reps.inserted_words_ci);
        v[slot++] = lexicon::category_impact(lex, old_tokens_ci, new_tokens_ci);
    }

    for (double x : v) {
        if (!std::isfinite(x))
            throw std::logic_error("non-finite feature value for edit " + edit.edit_id);
    }
    return fv;
}

namespace {

BatchResult run_batch(const std::vector<Edit>& edits, const lexicon::LexiconSet& lexicons,
                      const ExtractionConfig& config, int jobs, bool serial) {
    BatchResult result;
    result.vectors.assign(edits.size(), FeatureVector{});
    std::vector<std::string> errors(edits.size());
    auto body = [&](size_t i) {
        try {
            result.vectors[i] = extract(edits[i], lexicons, config);
        } catch (const std::exception& e) {
            errors[i] = "edit " + edits[i].edit_id + ": " + e.what();
        }
    };
    if (serial) {
        serial_for(edits.size(), body);
    } else {
        parallel_for(edits.size(), jobs, body);
    }
    for (auto& e : errors)
        if (!e.empty()) result.errors.push_back(std::move(e));
    return result;
}

}  // namespace

BatchResult extract_batch(const std::vector<Edit>& edits, const lexicon::LexiconSet& lexicons,
                          const ExtractionConfig& config, int jobs) {
    return run_batch(edits, lexicons, config, jobs, false);
}

BatchResult extract_batch_serial(const std::vector<Edit>& edits,
                                 const lexicon::LexiconSet& lexicons,
                                 const ExtractionConfig& config) {
    return run_batch(edits, lexicons, config, 1, true);
}

void write_csv(std::ostream& out, const std::vector<FeatureVector>& vectors) {
    std::string header;
    for (std::string_view name : kFeatureNames) {
        header += name;
        header += ',';
    }
    header += "label\n";
    out << header;
    for (const auto& fv : vectors) {
        std::string row;
        for (double v : fv.values) {
            row += format_double(v);
            row += ',';
        }
        if (fv.label) row += label_name(*fv.label);
        row += '\n';
        out << row;
    }
}

FeatureTable read_csv(std::string_view content) {
    const std::vector<csv::Row> rows = csv::parse(content);
    if (rows.empty()) throw std::runtime_error("features csv: empty input");

    const auto& header = rows[0].fields;
    const bool labeled = header.size() == kFeatureCount + 1 && header.back() == "label";
    if (!labeled && header.size() != kFeatureCount)
        throw std::runtime_error("features csv: expected " + std::to_string(kFeatureCount) +
                                 " feature columns plus optional label");
    for (size_t i = 0; i < kFeatureCount; ++i) {
        if (header[i] != kFeatureNames[i])
            throw std::runtime_error("features csv: column " + std::to_string(i + 1) +
                                     " is '" + header[i] + "', expected '" +
                                     std::string(kFeatureNames[i]) + "'");
    }

    FeatureTable table;
    table.has_labels = labeled;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& fields = rows[r].fields;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != header.size())
            throw std::runtime_error("features csv line " + std::to_string(rows[r].line) +
                                     ": expected " + std::to_string(header.size()) +
                                     " fields, got " + std::to_string(fields.size()));
        FeatureVector fv;
        for (size_t i = 0; i < kFeatureCount; ++i) {
            const std::optional<double> v = parse_double(fields[i]);
            if (!v)
                throw std::runtime_error("features csv line " + std::to_string(rows[r].line) +
                                         ": bad number '" + fields[i] + "'");
            fv.values[i] = *v;
        }
        if (labeled && !fields.back().empty()) {
            fv.label = parse_label(fields.back());
            if (!fv.label)
                throw std::runtime_error("features csv line " + std::to_string(rows[r].line) +
                                         ": unknown label '" + fields.back() + "'");
        }
        table.vectors.push_back(fv);
    }
    return table;
}

void write_arff(std::ostream& out, const std::vector<FeatureVector>& vectors,
                std::string_view relation) {
    out << "@relation " << relation << "\n\n";
    for (std::string_view name : kFeatureNames)
        out << "@attribute " << name << " numeric\n";
    out << "@attribute class {regular,vandalism}\n\n@data\n";
    for (const auto& fv : vectors) {
        std::string row;
        for (double v : fv.values) {
            row += format_double(v);
            row += ',';
        }
        row += fv.label ? std::string(label_name(*fv.label)) : std::string("?");
        row += '\n';
        out << row;
    }
}

}  // namespace editguard::featureset
