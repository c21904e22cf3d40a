#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editguard/featureset.hpp"

// PAN-WVC-10 style corpus layout: an edit-metadata CSV, a gold-annotations
// CSV and one UTF-8 text file per revision id somewhere below the root.

namespace editguard::corpus {

struct CorpusIndex {
    std::vector<featureset::Edit> edits;                 // sorted by edit_id
    std::map<std::string, size_t> by_id;                 // edit_id → index into edits
    std::map<std::string, featureset::Label> labels;     // edit_id → gold class
    std::vector<std::string> reports;                    // non-fatal loading notes
};

// Requires <root>/edits.csv (columns by name: editid, editor, oldrevisionid,
// newrevisionid, edittime, editcomment, articletitle; extra columns ignored)
// and reads <root>/gold-annotations.csv (editid, class) when present.
// Revision texts are resolved by a recursive scan for <revisionid>.txt.
// Missing revision files load as empty text and are reported; malformed CSV
// is fatal with a line number.
CorpusIndex load_corpus(const std::filesystem::path& root);

// Writes the layout load_corpus reads: edits.csv, gold-annotations.csv and
// article-revisions/partNNN/<revisionid>.txt. Reloading yields an identical
// index.
void export_corpus(const CorpusIndex& index, const std::filesystem::path& root);

struct ClassStatistics {
    int64_t regular = 0;
    int64_t vandalism = 0;
    int64_t unlabeled = 0;
    // Absent when the class has no edits.
    std::optional<double> anonymous_rate_regular;
    std::optional<double> anonymous_rate_vandalism;
};

ClassStatistics class_statistics(const CorpusIndex& index);

// Copies gold labels onto extracted vectors (parallel arrays with edits).
void attach_labels(const CorpusIndex& index, std::vector<featureset::FeatureVector>& vectors);

// An editor name that is an IPv4/IPv6 literal marks an anonymous edit.
bool is_ip_literal(std::string_view editor);

// Strict subset of ISO 8601: YYYY-MM-DDThh:mm:ssZ (or ±hh:mm offset).
std::optional<int64_t> parse_timestamp(std::string_view iso8601);
std::string format_timestamp(int64_t epoch_seconds);  // canonical Z form

}  // namespace editguard::corpus
