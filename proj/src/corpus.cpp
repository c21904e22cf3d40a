#include "editguard/corpus.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "editguard/csv.hpp"
#include "editguard/unicode.hpp"

namespace editguard::corpus {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Numeric ids sort numerically, everything else lexicographically after.
bool id_less(const std::string& a, const std::string& b) {
    const bool na = all_digits(a), nb = all_digits(b);
    if (na != nb) return na;
    if (na && a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Howard Hinnant's civil-calendar conversions.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y = yy + (m <= 2);
}

bool parse_fixed_uint(std::string_view s, size_t at, size_t len, unsigned& out) {
    if (at + len > s.size()) return false;
    unsigned v = 0;
    for (size_t i = at; i < at + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<int64_t> parse_timestamp(std::string_view s) {
    unsigned year, month, day, hour, minute, second;
    if (!parse_fixed_uint(s, 0, 4, year) || s.size() < 19 || s[4] != '-' || s[7] != '-' ||
        (s[10] != 'T' && s[10] != ' ') || s[13] != ':' || s[16] != ':' ||
        !parse_fixed_uint(s, 5, 2, month) || !parse_fixed_uint(s, 8, 2, day) ||
        !parse_fixed_uint(s, 11, 2, hour) || !parse_fixed_uint(s, 14, 2, minute) ||
        !parse_fixed_uint(s, 17, 2, second))
        return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        return std::nullopt;

    int64_t offset = 0;
    const std::string_view rest = s.substr(19);
    if (rest == "Z" || rest.empty()) {
        // UTC
    } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':') {
        unsigned oh, om;
        if (!parse_fixed_uint(rest, 1, 2, oh) || !parse_fixed_uint(rest, 4, 2, om) || oh > 23 ||
            om > 59)
            return std::nullopt;
        offset = static_cast<int64_t>(oh) * 3600 + static_cast<int64_t>(om) * 60;
        if (rest[0] == '-') offset = -offset;
    } else {
        return std::nullopt;
    }

    const int64_t days = days_from_civil(static_cast<int64_t>(year), month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_timestamp(int64_t epoch_seconds) {
    int64_t days = epoch_seconds / 86400;
    int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

bool is_ip_literal(std::string_view editor) {
    if (editor.empty() || editor.size() > 45) return false;
    char buf[64];
    std::memcpy(buf, editor.data(), editor.size());
    buf[editor.size()] = '\0';
    unsigned char scratch[sizeof(struct in6_addr)];
    if (editor.find(':') != std::string_view::npos)
        return inet_pton(AF_INET6, buf, scratch) == 1;
    return inet_pton(AF_INET, buf, scratch) == 1;
}

namespace {

struct HeaderMap {
    std::map<std::string, size_t> cols;
    size_t require(const std::string& name, const std::filesystem::path& file) const {
        const auto it = cols.find(name);
        if (it == cols.end())
            throw std::runtime_error(file.string() + ": missing required column '" + name + "'");
        return it->second;
    }
    std::optional<size_t> find(const std::string& name) const {
        const auto it = cols.find(name);
        if (it == cols.end()) return std::nullopt;
        return it->second;
    }
};

HeaderMap header_map(const csv::Row& header) {
    HeaderMap map;
    for (size_t i = 0; i < header.fields.size(); ++i) map.cols.emplace(header.fields[i], i);
    return map;
}

bool blank_row(const csv::Row& row) {
    return row.fields.size() == 1 && row.fields[0].empty();
}

std::string field(const csv::Row& row, std::optional<size_t> col) {
    if (!col || *col >= row.fields.size()) return {};
    return row.fields[*col];
}

}  // namespace

CorpusIndex load_corpus(const std::filesystem::path& root) {
    const std::filesystem::path edits_csv = root / "edits.csv";
    if (!std::filesystem::exists(edits_csv))
        throw std::runtime_error("missing corpus metadata: " + edits_csv.string());

    CorpusIndex index;

    // Revision-id → file, resolved deterministically regardless of listing
    // order: smallest path wins on duplicate stems.
    std::vector<std::pair<std::string, std::filesystem::path>> txt_files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            txt_files.emplace_back(entry.path().stem().string(), entry.path());
    }
    std::sort(txt_files.begin(), txt_files.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::map<std::string, std::filesystem::path> revision_files;
    for (auto& [stem, path] : txt_files) {
        if (!revision_files.emplace(stem, path).second)
            index.reports.push_back("duplicate revision file ignored: " + path.string());
    }

    auto read_revision = [&](const std::string& rev_id, const std::string& edit_id) {
        if (rev_id.empty()) return std::string();
        const auto it = revision_files.find(rev_id);
        if (it == revision_files.end()) {
            index.reports.push_back("missing revision file " + rev_id + " for edit " + edit_id);
            return std::string();
        }
        std::string raw = slurp(it->second);
        std::string clean = uni::encode_utf8(uni::decode_utf8(raw));
        if (clean != raw)
            index.reports.push_back("revision " + rev_id + ": invalid UTF-8 replaced");
        return clean;
    };

    const std::vector<csv::Row> rows = csv::parse(slurp(edits_csv));
    if (rows.empty()) throw std::runtime_error(edits_csv.string() + ": empty file");
    const HeaderMap head = header_map(rows[0]);
    const size_t c_id = head.require("editid", edits_csv);
    const size_t c_editor = head.require("editor", edits_csv);
    const size_t c_old = head.require("oldrevisionid", edits_csv);
    const size_t c_new = head.require("newrevisionid", edits_csv);
    const size_t c_comment = head.require("editcomment", edits_csv);
    const std::optional<size_t> c_time = head.find("edittime");
    const std::optional<size_t> c_title = head.find("articletitle");

    for (size_t r = 1; r < rows.size(); ++r) {
        const csv::Row& row = rows[r];
        if (blank_row(row)) continue;
        if (row.fields.size() < rows[0].fields.size())
            throw csv::ParseError(row.line, "expected " + std::to_string(rows[0].fields.size()) +
                                                " fields, got " +
                                                std::to_string(row.fields.size()));
        featureset::Edit edit;
        edit.edit_id = row.fields[c_id];
        if (edit.edit_id.empty()) throw csv::ParseError(row.line, "empty editid");
        if (index.by_id.count(edit.edit_id)) {
            index.reports.push_back("duplicate editid " + edit.edit_id + " ignored");
            continue;
        }
        edit.editor = row.fields[c_editor];
        edit.is_anonymous = is_ip_literal(edit.editor);
        edit.old_revision_id = row.fields[c_old];
        edit.new_revision_id = row.fields[c_new];
        edit.comment = uni::encode_utf8(uni::decode_utf8(row.fields[c_comment]));
        edit.article_title = field(row, c_title);
        const std::string when = field(row, c_time);
        if (!when.empty()) {
            const auto ts = parse_timestamp(when);
            if (ts) {
                edit.timestamp = *ts;
            } else {
                index.reports.push_back("edit " + edit.edit_id + ": unparseable edittime '" +
                                        when + "'");
            }
        }
        edit.old_text = read_revision(edit.old_revision_id, edit.edit_id);
        edit.new_text = read_revision(edit.new_revision_id, edit.edit_id);
        index.by_id.emplace(edit.edit_id, 0);  // placeholder, fixed after sort
        index.edits.push_back(std::move(edit));
    }

    std::sort(index.edits.begin(), index.edits.end(),
              [](const featureset::Edit& a, const featureset::Edit& b) {
                  return id_less(a.edit_id, b.edit_id);
              });
    for (size_t i = 0; i < index.edits.size(); ++i) index.by_id[index.edits[i].edit_id] = i;

    const std::filesystem::path gold_csv = root / "gold-annotations.csv";
    if (std::filesystem::exists(gold_csv)) {
        const std::vector<csv::Row> gold = csv::parse(slurp(gold_csv));
        if (gold.empty()) throw std::runtime_error(gold_csv.string() + ": empty file");
        const HeaderMap ghead = header_map(gold[0]);
        const size_t g_id = ghead.require("editid", gold_csv);
        const size_t g_class = ghead.require("class", gold_csv);
        for (size_t r = 1; r < gold.size(); ++r) {
            if (blank_row(gold[r])) continue;
            const std::string& id = gold[r].fields.at(g_id);
            const std::string& cls = gold[r].fields.at(g_class);
            const auto label = featureset::parse_label(cls);
            if (!label) throw csv::ParseError(gold[r].line, "unknown class '" + cls + "'");
            if (!index.by_id.count(id)) {
                index.reports.push_back("gold annotation for unknown edit " + id + " ignored");
                continue;
            }
            index.labels[id] = *label;
        }
    } else {
        index.reports.push_back("no gold-annotations.csv: corpus loaded unlabeled");
    }

    return index;
}

void export_corpus(const CorpusIndex& index, const std::filesystem::path& root) {
    std::filesystem::create_directories(root);

    std::ofstream edits_out(root / "edits.csv", std::ios::binary);
    edits_out << "editid,editor,oldrevisionid,newrevisionid,edittime,editcomment,articletitle\n";
    std::map<std::string, const std::string*> revisions;  // id → text
    for (const auto& e : index.edits) {
        edits_out << csv::format_row({e.edit_id, e.editor, e.old_revision_id, e.new_revision_id,
                                      format_timestamp(e.timestamp), e.comment, e.article_title});
        if (!e.old_revision_id.empty()) revisions.emplace(e.old_revision_id, &e.old_text);
        if (!e.new_revision_id.empty()) revisions.emplace(e.new_revision_id, &e.new_text);
    }
    edits_out.close();

    std::ofstream gold_out(root / "gold-annotations.csv", std::ios::binary);
    gold_out << "editid,class\n";
    for (const auto& [id, label] : index.labels)
        gold_out << csv::format_row({id, std::string(featureset::label_name(label))});
    gold_out.close();

    size_t i = 0;
    for (const auto& [rev_id, text] : revisions) {
        char part[32];
        std::snprintf(part, sizeof(part), "part%03zu", i++ / 1000);
        const std::filesystem::path dir = root / "article-revisions" / part;
        std::filesystem::create_directories(dir);
        std::ofstream(dir / (rev_id + ".txt"), std::ios::binary) << *text;
    }
}

ClassStatistics class_statistics(const CorpusIndex& index) {
    ClassStatistics stats;
    int64_t anon_regular = 0, anon_vandalism = 0;
    for (const auto& edit : index.edits) {
        const auto it = index.labels.find(edit.edit_id);
        if (it == index.labels.end()) {
            ++stats.unlabeled;
            continue;
        }
        if (it->second == featureset::Label::vandalism) {
            ++stats.vandalism;
            anon_vandalism += edit.is_anonymous;
        } else {
            ++stats.regular;
            anon_regular += edit.is_anonymous;
        }
    }
    if (stats.regular > 0)
        stats.anonymous_rate_regular =
            static_cast<double>(anon_regular) / static_cast<double>(stats.regular);
    if (stats.vandalism > 0)
        stats.anonymous_rate_vandalism =
            static_cast<double>(anon_vandalism) / static_cast<double>(stats.vandalism);
    return stats;
}

void attach_labels(const CorpusIndex& index, std::vector<featureset::FeatureVector>& vectors) {
    const size_t n = std::min(index.edits.size(), vectors.size());
    for (size_t i = 0; i < n; ++i) {
        const auto it = index.labels.find(index.edits[i].edit_id);
        if (it != index.labels.end()) vectors[i].label = it->second;
    }
}

}  // namespace editguard::corpus
