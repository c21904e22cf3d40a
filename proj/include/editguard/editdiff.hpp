#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Character-level diff between two revision texts. Produces a canonical
// shortest-or-near-shortest edit script over Unicode scalar values, then
// applies an efficiency cleanup that folds short equalities (length below
// edit_cost) into the surrounding edits so trivially fragmented scripts
// coalesce.

namespace editguard::editdiff {

enum class OpKind : uint8_t { equal, insert, remove };

struct DiffOp {
    OpKind kind;
    std::string text;  // UTF-8

    bool operator==(const DiffOp&) const = default;
};

// Canonical form: no empty op, no two adjacent ops of the same kind, and
// within a run of edits deletions precede insertions. Concatenating
// equal+remove texts yields the old text; equal+insert yields the new one.
struct DiffResult {
    std::vector<DiffOp> ops;

    bool operator==(const DiffResult&) const = default;
};

struct DiffOptions {
    // Equalities shorter than this merge into surrounding edits. 0 disables
    // the cleanup.
    int edit_cost = 6;
    // Deterministic work cap: a sub-problem whose edit distance exceeds this
    // bound degrades to delete-all + insert-all. Keeps worst-case unrelated
    // texts tractable without a wall-clock timeout (which would break
    // run-to-run determinism).
    int max_edit_distance = 4096;
    // Accepted for configuration fidelity with the original diff library;
    // the patch/match phases they control are never used here.
    int patch_margin = 0;
    int match_distance = 500;
};

DiffResult compute_diff(std::string_view old_text, std::string_view new_text,
                        const DiffOptions& options);
DiffResult compute_diff(std::string_view old_text, std::string_view new_text,
                        int edit_cost = 6);

std::vector<std::string> inserted_spans(const DiffResult& diff);
std::vector<std::string> deleted_spans(const DiffResult& diff);

// Reconstruct the inputs from the script (round-trip check).
std::string reconstruct_old(const DiffResult& diff);
std::string reconstruct_new(const DiffResult& diff);

// Sum of inserted and deleted character counts implied by the script.
std::size_t edit_distance(const DiffResult& diff);

}  // namespace editguard::editdiff
