#include "editguard/editdiff.hpp"

#include <algorithm>
#include <climits>
#include <string_view>

#include "editguard/unicode.hpp"

namespace editguard::editdiff {

namespace {

using U32View = std::u32string_view;

struct Op32 {
    OpKind kind;
    std::u32string text;
};
using Script = std::vector<Op32>;

std::size_t common_prefix(U32View a, U32View b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

std::size_t common_suffix(U32View a, U32View b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[a.size() - 1 - i] == b[b.size() - 1 - i]) ++i;
    return i;
}

Script diff_main(U32View a, U32View b, int cap);

Script bisect_split(U32View a, U32View b, std::size_t x, std::size_t y, int cap) {
    Script left = diff_main(a.substr(0, x), b.substr(0, y), cap);
    Script right = diff_main(a.substr(x), b.substr(y), cap);
    left.insert(left.end(), std::make_move_iterator(right.begin()),
                std::make_move_iterator(right.end()));
    return left;
}

// Linear-space Myers: walk furthest-reaching D-paths from both corners until
// they overlap, then recurse on the two halves. Gives a shortest script
// unless the work cap is hit, in which case the segment degrades to a full
// replacement.
Script bisect(U32View a, U32View b, int cap) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    int max_d = (m + n + 1) / 2;
    if (cap > 0) max_d = std::min(max_d, cap);
    const int v_offset = max_d;
    const int v_length = 2 * max_d + 2;
    std::vector<int> v1(v_length, -1), v2(v_length, -1);
    v1[v_offset + 1] = 0;
    v2[v_offset + 1] = 0;
    const int delta = m - n;
    // With an odd delta the forward path detects the overlap, otherwise the
    // reverse path does.
    const bool front = (delta % 2 != 0);
    int k1start = 0, k1end = 0, k2start = 0, k2end = 0;
    for (int d = 0; d < max_d; ++d) {
        for (int k1 = -d + k1start; k1 <= d - k1end; k1 += 2) {
            const int k1_offset = v_offset + k1;
            int x1;
            if (k1 == -d || (k1 != d && v1[k1_offset - 1] < v1[k1_offset + 1])) {
                x1 = v1[k1_offset + 1];
            } else {
                x1 = v1[k1_offset - 1] + 1;
            }
            int y1 = x1 - k1;
            while (x1 < m && y1 < n && a[x1] == b[y1]) {
                ++x1;
                ++y1;
            }
            v1[k1_offset] = x1;
            if (x1 > m) {
                k1end += 2;
            } else if (y1 > n) {
                k1start += 2;
            } else if (front) {
                const int k2_offset = v_offset + delta - k1;
                if (k2_offset >= 0 && k2_offset < v_length && v2[k2_offset] != -1) {
                    const int x2 = m - v2[k2_offset];
                    if (x1 >= x2) {
                        return bisect_split(a, b, static_cast<std::size_t>(x1),
                                            static_cast<std::size_t>(y1), cap);
                    }
                }
            }
        }
        for (int k2 = -d + k2start; k2 <= d - k2end; k2 += 2) {
            const int k2_offset = v_offset + k2;
            int x2;
            if (k2 == -d || (k2 != d && v2[k2_offset - 1] < v2[k2_offset + 1])) {
                x2 = v2[k2_offset + 1];
            } else {
                x2 = v2[k2_offset - 1] + 1;
            }
            int y2 = x2 - k2;
            while (x2 < m && y2 < n && a[m - x2 - 1] == b[n - y2 - 1]) {
                ++x2;
                ++y2;
            }
            v2[k2_offset] = x2;
            if (x2 > m) {
                k2end += 2;
            } else if (y2 > n) {
                k2start += 2;
            } else if (!front) {
                const int k1_offset = v_offset + delta - k2;
                if (k1_offset >= 0 && k1_offset < v_length && v1[k1_offset] != -1) {
                    const int x1 = v1[k1_offset];
                    const int y1 = v_offset + x1 - k1_offset;
                    const int x2abs = m - x2;
                    if (x1 >= x2abs) {
                        return bisect_split(a, b, static_cast<std::size_t>(x1),
                                            static_cast<std::size_t>(y1), cap);
                    }
                }
            }
        }
    }
    return {{OpKind::remove, std::u32string(a)}, {OpKind::insert, std::u32string(b)}};
}

Script diff_compute(U32View a, U32View b, int cap) {
    if (a.empty()) return {{OpKind::insert, std::u32string(b)}};
    if (b.empty()) return {{OpKind::remove, std::u32string(a)}};
    const U32View longtext = a.size() > b.size() ? a : b;
    const U32View shorttext = a.size() > b.size() ? b : a;
    const std::size_t i = longtext.find(shorttext);
    if (i != U32View::npos) {
        const OpKind k = a.size() > b.size() ? OpKind::remove : OpKind::insert;
        Script s;
        if (i > 0) s.push_back({k, std::u32string(longtext.substr(0, i))});
        s.push_back({OpKind::equal, std::u32string(shorttext)});
        if (i + shorttext.size() < longtext.size()) {
            s.push_back({k, std::u32string(longtext.substr(i + shorttext.size()))});
        }
        return s;
    }
    if (shorttext.size() == 1) {
        // Single char with no occurrence in the other text: nothing in common.
        return {{OpKind::remove, std::u32string(a)}, {OpKind::insert, std::u32string(b)}};
    }
    return bisect(a, b, cap);
}

bool ends_with(const std::u32string& s, const std::u32string& suffix) {
    return s.size() >= suffix.size() &&
           std::equal(suffix.rbegin(), suffix.rend(), s.rbegin());
}

bool starts_with(const std::u32string& s, const std::u32string& prefix) {
    return s.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

// Reorder any single edit surrounded by equalities, eliminate empty or
// mergeable ops, and factor text common to a paired deletion/insertion out
// into the neighbouring equalities.
void cleanup_merge(Script& ops) {
    ops.push_back({OpKind::equal, {}});  // sentinel
    std::size_t pointer = 0;
    std::size_t count_remove = 0, count_insert = 0;
    std::u32string text_remove, text_insert;
    while (pointer < ops.size()) {
        switch (ops[pointer].kind) {
            case OpKind::insert:
                ++count_insert;
                text_insert += ops[pointer].text;
                ++pointer;
                break;
            case OpKind::remove:
                ++count_remove;
                text_remove += ops[pointer].text;
                ++pointer;
                break;
            case OpKind::equal:
                if (count_remove + count_insert > 1) {
                    if (count_remove != 0 && count_insert != 0) {
                        std::size_t cl = common_prefix(text_insert, text_remove);
                        if (cl != 0) {
                            const std::size_t first = pointer - count_remove - count_insert;
                            if (first > 0 && ops[first - 1].kind == OpKind::equal) {
                                ops[first - 1].text += text_insert.substr(0, cl);
                            } else {
                                ops.insert(ops.begin(),
                                           {OpKind::equal, text_insert.substr(0, cl)});
                                ++pointer;
                            }
                            text_insert.erase(0, cl);
                            text_remove.erase(0, cl);
                        }
                        std::size_t cs = common_suffix(text_insert, text_remove);
                        if (cs != 0) {
                            ops[pointer].text =
                                text_insert.substr(text_insert.size() - cs) + ops[pointer].text;
                            text_insert.resize(text_insert.size() - cs);
                            text_remove.resize(text_remove.size() - cs);
                        }
                    }
                    const std::size_t first = pointer - count_remove - count_insert;
                    ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(first),
                              ops.begin() + static_cast<std::ptrdiff_t>(pointer));
                    pointer = first;
                    if (!text_remove.empty()) {
                        ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(pointer),
                                   {OpKind::remove, text_remove});
                        ++pointer;
                    }
                    if (!text_insert.empty()) {
                        ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(pointer),
                                   {OpKind::insert, text_insert});
                        ++pointer;
                    }
                    ++pointer;
                } else if (pointer != 0 && ops[pointer - 1].kind == OpKind::equal) {
                    ops[pointer - 1].text += ops[pointer].text;
                    ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(pointer));
                } else {
                    ++pointer;
                }
                count_insert = 0;
                count_remove = 0;
                text_remove.clear();
                text_insert.clear();
                break;
        }
    }
    if (ops.back().text.empty()) ops.pop_back();

    // Shift single edits sandwiched between equalities sideways when that
    // lets an equality merge away: A<ins>BA</ins>C becomes <ins>AB</ins>AC.
    bool changes = false;
    for (std::size_t p = 1; p + 1 < ops.size(); ++p) {
        if (ops[p - 1].kind != OpKind::equal || ops[p + 1].kind != OpKind::equal) continue;
        if (ends_with(ops[p].text, ops[p - 1].text)) {
            ops[p].text = ops[p - 1].text +
                          ops[p].text.substr(0, ops[p].text.size() - ops[p - 1].text.size());
            ops[p + 1].text = ops[p - 1].text + ops[p + 1].text;
            ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(p - 1));
            changes = true;
        } else if (starts_with(ops[p].text, ops[p + 1].text)) {
            ops[p - 1].text += ops[p + 1].text;
            ops[p].text = ops[p].text.substr(ops[p + 1].text.size()) + ops[p + 1].text;
            ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(p + 1));
            changes = true;
        }
    }
    if (changes) cleanup_merge(ops);
}

// Fold equalities that are too short to be worth keeping (shorter than
// edit_cost and hemmed in by edits) into the surrounding edit run.
void cleanup_efficiency(Script& ops, int edit_cost) {
    if (edit_cost <= 0) return;
    bool changes = false;
    std::vector<std::ptrdiff_t> equalities;
    bool has_last = false;
    std::u32string last_equality;
    bool pre_ins = false, pre_del = false, post_ins = false, post_del = false;
    std::ptrdiff_t pointer = 0;
    while (pointer < static_cast<std::ptrdiff_t>(ops.size())) {
        auto& op = ops[static_cast<std::size_t>(pointer)];
        if (op.kind == OpKind::equal) {
            if (op.text.size() < static_cast<std::size_t>(edit_cost) && (post_ins || post_del)) {
                equalities.push_back(pointer);
                pre_ins = post_ins;
                pre_del = post_del;
                last_equality = op.text;
                has_last = true;
            } else {
                equalities.clear();
                has_last = false;
            }
            post_ins = post_del = false;
        } else {
            if (op.kind == OpKind::remove) {
                post_del = true;
            } else {
                post_ins = true;
            }
            const int sides = (pre_ins ? 1 : 0) + (pre_del ? 1 : 0) + (post_ins ? 1 : 0) +
                              (post_del ? 1 : 0);
            if (has_last && ((pre_ins && pre_del && post_ins && post_del) ||
                             (last_equality.size() < static_cast<std::size_t>(edit_cost / 2) &&
                              sides == 3))) {
                const std::ptrdiff_t at = equalities.back();
                // Replace the equality with a paired delete+insert of itself.
                ops[static_cast<std::size_t>(at)] = {OpKind::remove, last_equality};
                ops.insert(ops.begin() + at + 1, {OpKind::insert, last_equality});
                ++pointer;  // the current edit op shifted right by one
                equalities.pop_back();
                has_last = false;
                if (pre_ins && pre_del) {
                    post_ins = post_del = true;
                    equalities.clear();
                } else {
                    // Rescan from before the previous tracked equality, whose
                    // surroundings just changed.
                    if (!equalities.empty()) equalities.pop_back();
                    pointer = equalities.empty() ? -1 : equalities.back();
                    post_ins = post_del = false;
                }
                changes = true;
            }
        }
        ++pointer;
    }
    if (changes) cleanup_merge(ops);
}

Script diff_main(U32View a, U32View b, int cap) {
    if (a == b) {
        if (a.empty()) return {};
        return {{OpKind::equal, std::u32string(a)}};
    }
    const std::size_t p = common_prefix(a, b);
    U32View ta = a.substr(p), tb = b.substr(p);
    const std::size_t s = common_suffix(ta, tb);
    ta = ta.substr(0, ta.size() - s);
    tb = tb.substr(0, tb.size() - s);

    Script script = diff_compute(ta, tb, cap);
    if (p > 0) script.insert(script.begin(), {OpKind::equal, std::u32string(a.substr(0, p))});
    if (s > 0) script.push_back({OpKind::equal, std::u32string(a.substr(a.size() - s))});
    cleanup_merge(script);
    return script;
}

void invert(Script& ops) {
    for (auto& op : ops) {
        if (op.kind == OpKind::insert) {
            op.kind = OpKind::remove;
        } else if (op.kind == OpKind::remove) {
            op.kind = OpKind::insert;
        }
    }
}

// Restore canonical op order after inversion: within each run of edits the
// deletion precedes the insertion. Keeps texts untouched.
Script normalize_runs(const Script& ops) {
    Script out;
    std::u32string del_text, ins_text;
    auto flush = [&] {
        if (!del_text.empty()) out.push_back({OpKind::remove, std::move(del_text)});
        if (!ins_text.empty()) out.push_back({OpKind::insert, std::move(ins_text)});
        del_text = {};
        ins_text = {};
    };
    for (const auto& op : ops) {
        if (op.kind == OpKind::equal) {
            flush();
            if (!out.empty() && out.back().kind == OpKind::equal) {
                out.back().text += op.text;
            } else {
                out.push_back(op);
            }
        } else if (op.kind == OpKind::remove) {
            del_text += op.text;
        } else {
            ins_text += op.text;
        }
    }
    flush();
    return out;
}

}  // namespace

DiffResult compute_diff(std::string_view old_text, std::string_view new_text,
                        const DiffOptions& options) {
    const std::u32string a = uni::decode_utf8(old_text);
    const std::u32string b = uni::decode_utf8(new_text);

    DiffResult result;
    if (a == b) {
        if (!a.empty()) result.ops.push_back({OpKind::equal, std::string(old_text)});
        return result;
    }

    // The pair is always diffed in one canonical orientation and mirrored
    // back if needed, so compute_diff(x, y) and compute_diff(y, x) produce
    // exact inverse scripts.
    const bool flip = b < a;
    Script script = flip ? diff_main(b, a, options.max_edit_distance)
                         : diff_main(a, b, options.max_edit_distance);
    cleanup_efficiency(script, options.edit_cost);
    if (flip) {
        invert(script);
        script = normalize_runs(script);
    }

    result.ops.reserve(script.size());
    for (const auto& op : script) {
        result.ops.push_back({op.kind, uni::encode_utf8(op.text)});
    }
    return result;
}

DiffResult compute_diff(std::string_view old_text, std::string_view new_text, int edit_cost) {
    DiffOptions options;
    options.edit_cost = edit_cost;
    return compute_diff(old_text, new_text, options);
}

std::vector<std::string> inserted_spans(const DiffResult& diff) {
    std::vector<std::string> spans;
    for (const auto& op : diff.ops) {
        if (op.kind == OpKind::insert) spans.push_back(op.text);
    }
    return spans;
}

std::vector<std::string> deleted_spans(const DiffResult& diff) {
    std::vector<std::string> spans;
    for (const auto& op : diff.ops) {
        if (op.kind == OpKind::remove) spans.push_back(op.text);
    }
    return spans;
}

std::string reconstruct_old(const DiffResult& diff) {
    std::string out;
    for (const auto& op : diff.ops) {
        if (op.kind != OpKind::insert) out += op.text;
    }
    return out;
}

std::string reconstruct_new(const DiffResult& diff) {
    std::string out;
    for (const auto& op : diff.ops) {
        if (op.kind != OpKind::remove) out += op.text;
    }
    return out;
}

std::size_t edit_distance(const DiffResult& diff) {
    std::size_t d = 0;
    for (const auto& op : diff.ops) {
        if (op.kind != OpKind::equal) d += uni::count_codepoints(op.text);
    }
    return d;
}

}  // namespace editguard::editdiff
