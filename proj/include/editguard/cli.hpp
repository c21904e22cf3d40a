#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

// Command-line surface: subcommands extract / train / cv / predict / stats
// over the library. Logs go to standard error, data to --out or standard
// output, so pipelines compose. Exit codes: 0 success, 1 runtime failure,
// 2 usage or configuration error.

namespace editguard::cli {

// Every tunable that affects emitted artifacts, so a run is reproducible
// from the config file alone. Flags override file values; the
// EDITGUARD_LEXICON_DIR environment variable backs --lexicon-dir when
// neither a flag nor the file supplies it.
struct Config {
    std::string lexicon_dir;
    int64_t diff_edit_cost = 6;
    int64_t diff_size_cutoff = 1 << 20;   // bytes diffed per revision text
    int64_t kl_fallback_threshold = 100;  // chars below which the reference
                                          // character distribution is used
    uint64_t seed = 0;
    int64_t jobs = 0;  // 0 = all hardware threads

    bool operator==(const Config&) const = default;
};

// key=value lines; blank lines and #-comments ignored. Unknown keys,
// malformed numbers and broken invariants (the three diff/KL tunables must
// be positive, jobs non-negative) throw std::runtime_error with file:line
// context. save_config followed by load_config is lossless.
Config load_config(const std::filesystem::path& file);
void save_config(const Config& config, const std::filesystem::path& file);

// Full argv-level entry point (argv[0] is the program name). Never throws;
// all diagnostics go to stderr.
int run(int argc, const char* const* argv);

}  // namespace editguard::cli
