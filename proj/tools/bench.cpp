// A/B benchmark of the OpenMP kernels against their serial references:
// feature extraction over a synthetic corpus and forest training over a
// synthetic dataset. Outputs are verified bit-identical before any timing
// is reported, so a speedup never comes at the cost of determinism.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "editguard/featureset.hpp"
#include "editguard/learn.hpp"
#include "editguard/lexicon.hpp"
#include "editguard/parallel.hpp"
#include "editguard/rng.hpp"

namespace {

using editguard::Rng;
namespace featureset = editguard::featureset;
namespace learn = editguard::learn;
namespace lexicon = editguard::lexicon;

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

const std::vector<std::string> kVocab = {
    "the",     "quick",   "brown",  "fox",    "jumps",   "over",    "lazy",   "dog",
    "article", "history", "people", "city",   "country", "science", "music",  "film",
    "born",    "known",   "called", "first",  "world",   "during",  "between", "after",
    "stupid",  "hate",    "you",    "cool",   "awesome", "really",  "very",    "thing",
};

std::string random_words(Rng& rng, size_t n) {
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += kVocab[rng.next_below(kVocab.size())];
    }
    return out;
}

std::vector<featureset::Edit> synthetic_edits(size_t count, uint64_t seed) {
    std::vector<featureset::Edit> edits(count);
    for (size_t i = 0; i < count; ++i) {
        Rng rng = Rng::stream(seed, i);
        featureset::Edit& e = edits[i];
        e.edit_id = std::to_string(i + 1);
        bool anon = rng.next_below(3) == 0;
        e.is_anonymous = anon;
        e.editor = anon ? "10.0." + std::to_string(rng.next_below(256)) + "." +
                              std::to_string(rng.next_below(256))
                        : "Editor" + std::to_string(rng.next_below(50));
        e.comment = random_words(rng, rng.next_below(8));
        e.article_title = "Article " + std::to_string(rng.next_below(40));
        e.timestamp = 1262304000 + static_cast<int64_t>(rng.next_below(86400 * 365));
        e.old_text = random_words(rng, 200 + rng.next_below(1200));
        // Mutate: cut a slice, splice new words somewhere.
        std::string text = e.old_text;
        size_t cut = rng.next_below(text.size() / 2);
        size_t at = rng.next_below(text.size() - cut);
        text.erase(at, cut);
        std::string insert = random_words(rng, 1 + rng.next_below(60));
        if (rng.next_below(4) == 0) insert += " STUPID STUPID!!! hate hate hate";
        text.insert(rng.next_below(text.size()), " " + insert + " ");
        e.new_text = text;
    }
    return edits;
}

lexicon::LexiconSet synthetic_lexicons() {
    auto make = [](std::string name, std::vector<std::string> words) {
        lexicon::Lexicon lex;
        lex.name = std::move(name);
        lex.words.insert(words.begin(), words.end());
        return lex;
    };
    lexicon::LexiconSet set;
    set.categories.push_back(make("all", {"stupid", "hate", "you", "sex", "damn", "ugly"}));
    set.categories.push_back(make("vulgarism", {"damn"}));
    set.categories.push_back(make("bad", {"stupid", "ugly"}));
    set.categories.push_back(make("biased", {"awesome", "really"}));
    set.categories.push_back(make("sex", {"sex"}));
    set.categories.push_back(make("pronoun", {"you", "i"}));
    set.categories.push_back(make("good", {"reference", "category"}));
    return set;
}

bool same_vectors(const std::vector<featureset::FeatureVector>& a,
                  const std::vector<featureset::FeatureVector>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].values != b[i].values || a[i].truncated_diff != b[i].truncated_diff) return false;
    return true;
}

std::vector<featureset::FeatureVector> synthetic_rows(size_t count, uint64_t seed) {
    std::vector<featureset::FeatureVector> rows(count);
    Rng rng(seed);
    for (auto& v : rows) {
        double signal = 0.0;
        for (size_t f = 0; f < featureset::kFeatureCount; ++f) {
            v.values[f] = rng.next_gaussian();
            if (f % 7 == 3) signal += v.values[f];
        }
        v.label = signal + 0.8 * rng.next_gaussian() > 0.0 ? featureset::Label::vandalism
                                                           : featureset::Label::regular;
    }
    return rows;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.1f %12.1f %9.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    size_t n_edits = 300;
    size_t n_rows = 1500;
    int n_trees = 48;
    int jobs = 0;
    uint64_t seed = 42;

    CLI::App app{"editguard serial-vs-parallel kernel benchmark", "editguard_bench"};
    app.add_option("--edits", n_edits, "synthetic corpus size");
    app.add_option("--rows", n_rows, "synthetic training rows");
    app.add_option("--trees", n_trees, "forest size");
    app.add_option("--jobs", jobs, "worker threads, 0 = all");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", editguard::effective_jobs(jobs));
    std::printf("%-34s %10s %12s %9s\n", "kernel", "serial_ms", "parallel_ms", "speedup");

    {
        auto edits = synthetic_edits(n_edits, seed);
        auto lexicons = synthetic_lexicons();
        featureset::ExtractionConfig config;
        featureset::BatchResult serial, parallel;
        double t_serial =
            time_ms([&] { serial = featureset::extract_batch_serial(edits, lexicons, config); });
        double t_parallel =
            time_ms([&] { parallel = featureset::extract_batch(edits, lexicons, config, jobs); });
        if (!same_vectors(serial.vectors, parallel.vectors)) {
            std::fprintf(stderr, "extract_batch: parallel output differs from serial reference\n");
            return 1;
        }
        std::string label = "extract_batch (" + std::to_string(n_edits) + " edits)";
        report(label.c_str(), t_serial, t_parallel);
    }

    {
        auto data = learn::make_dataset(synthetic_rows(n_rows, seed + 1));
        learn::ForestParams params;
        params.n_trees = n_trees;
        params.seed = seed;
        learn::RandomForest serial, parallel;
        double t_serial = time_ms([&] { serial = learn::train_forest_serial(data, params); });
        params.jobs = jobs;
        double t_parallel = time_ms([&] { parallel = learn::train_forest(data, params); });
        auto probes = synthetic_rows(200, seed + 2);
        bool same = serial.oob_error == parallel.oob_error &&
                    serial.trees.size() == parallel.trees.size();
        for (const auto& p : probes)
            if (serial.predict(p) != parallel.predict(p)) same = false;
        if (!same) {
            std::fprintf(stderr, "train_forest: parallel output differs from serial reference\n");
            return 1;
        }
        std::string label = "train_forest (" + std::to_string(n_trees) + " trees)";
        report(label.c_str(), t_serial, t_parallel);
    }
    return 0;
}
