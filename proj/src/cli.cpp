#include "editguard/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "editguard/corpus.hpp"
#include "editguard/evalharness.hpp"
#include "editguard/featureset.hpp"
#include "editguard/learn.hpp"
#include "editguard/lexicon.hpp"
#include "editguard/numfmt.hpp"

namespace editguard::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for problems the user can fix by changing the invocation or the
// config; mapped to exit code 2 (everything else that escapes is 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<uint64_t> parse_u64(std::string_view s) {
    uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

void check_invariants(const Config& cfg) {
    if (cfg.diff_edit_cost < 1) throw std::runtime_error("config: diff_edit_cost must be positive");
    if (cfg.diff_size_cutoff < 1) throw std::runtime_error("config: diff_size_cutoff must be positive");
    if (cfg.kl_fallback_threshold < 1)
        throw std::runtime_error("config: kl_fallback_threshold must be positive");
    if (cfg.jobs < 0) throw std::runtime_error("config: jobs must be non-negative");
}

}  // namespace

Config load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config file: " + file.string());
    Config cfg;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) fail("expected key=value");
        std::string key(trim(s.substr(0, eq)));
        std::string value(trim(s.substr(eq + 1)));
        if (key == "lexicon_dir") {
            cfg.lexicon_dir = value;
            continue;
        }
        if (key == "seed") {
            auto v = parse_u64(value);
            if (!v) fail("seed is not an unsigned integer: " + value);
            cfg.seed = *v;
            continue;
        }
        auto v = parse_int(value);
        if (key == "diff_edit_cost" || key == "diff_size_cutoff" || key == "kl_fallback_threshold" ||
            key == "jobs") {
            if (!v) fail(key + " is not an integer: " + value);
            if (key == "diff_edit_cost") cfg.diff_edit_cost = *v;
            else if (key == "diff_size_cutoff") cfg.diff_size_cutoff = *v;
            else if (key == "kl_fallback_threshold") cfg.kl_fallback_threshold = *v;
            else cfg.jobs = *v;
            continue;
        }
        fail("unknown key '" + key + "'");
    }
    check_invariants(cfg);
    return cfg;
}

void save_config(const Config& cfg, const fs::path& file) {
    check_invariants(cfg);
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open config file for writing: " + file.string());
    out << "# editguard configuration\n";
    out << "lexicon_dir=" << cfg.lexicon_dir << '\n';
    out << "diff_edit_cost=" << cfg.diff_edit_cost << '\n';
    out << "diff_size_cutoff=" << cfg.diff_size_cutoff << '\n';
    out << "kl_fallback_threshold=" << cfg.kl_fallback_threshold << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "jobs=" << cfg.jobs << '\n';
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

namespace {

// ---------------------------------------------------------------------------
// Option plumbing

struct SharedArgs {
    std::string config_file;
    std::string save_config_file;
    std::string lexicon_dir;
    int64_t edit_cost = 6;
    int64_t size_cutoff = 1 << 20;
    int64_t kl_threshold = 100;
    uint64_t seed = 0;
    int64_t jobs = 0;
    CLI::Option* lex_opt = nullptr;
    CLI::Option* cost_opt = nullptr;
    CLI::Option* cutoff_opt = nullptr;
    CLI::Option* kl_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
};

void add_shared_options(CLI::App* cmd, SharedArgs& a) {
    cmd->add_option("--config", a.config_file, "key=value config file; flags override its values");
    cmd->add_option("--save-config", a.save_config_file,
                    "write the effective configuration to this file");
    a.lex_opt = cmd->add_option("--lexicon-dir", a.lexicon_dir,
                                "directory with the category word lists "
                                "(fallback: EDITGUARD_LEXICON_DIR)");
    a.cost_opt = cmd->add_option("--edit-cost", a.edit_cost, "diff cleanup edit cost")
                     ->check(CLI::PositiveNumber);
    a.cutoff_opt = cmd->add_option("--max-diff-bytes", a.size_cutoff,
                                   "diff only the first N bytes of oversized revisions")
                       ->check(CLI::PositiveNumber);
    a.kl_opt = cmd->add_option("--kl-threshold", a.kl_threshold,
                               "revisions shorter than N chars use the reference character "
                               "distribution")
                   ->check(CLI::PositiveNumber);
    a.seed_opt = cmd->add_option("--seed", a.seed, "RNG seed for training and fold assignment");
    a.jobs_opt = cmd->add_option("--jobs", a.jobs, "worker threads, 0 = all hardware threads")
                     ->check(CLI::NonNegativeNumber);
}

Config resolve_config(const SharedArgs& a) {
    Config cfg;
    try {
        if (!a.config_file.empty()) cfg = load_config(a.config_file);
        if (a.lex_opt->count() > 0) cfg.lexicon_dir = a.lexicon_dir;
        if (a.cost_opt->count() > 0) cfg.diff_edit_cost = a.edit_cost;
        if (a.cutoff_opt->count() > 0) cfg.diff_size_cutoff = a.size_cutoff;
        if (a.kl_opt->count() > 0) cfg.kl_fallback_threshold = a.kl_threshold;
        if (a.seed_opt->count() > 0) cfg.seed = a.seed;
        if (a.jobs_opt->count() > 0) cfg.jobs = a.jobs;
        check_invariants(cfg);
        if (!a.save_config_file.empty()) save_config(cfg, a.save_config_file);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::string resolve_lexicon_dir(const Config& cfg) {
    if (!cfg.lexicon_dir.empty()) return cfg.lexicon_dir;
    if (const char* env = std::getenv("EDITGUARD_LEXICON_DIR"); env != nullptr && *env != '\0')
        return env;
    throw UsageError(
        "no lexicon directory configured; pass --lexicon-dir, set lexicon_dir in the config "
        "file, or export EDITGUARD_LEXICON_DIR");
}

// ---------------------------------------------------------------------------
// Small IO helpers

void require_dir(const std::string& path, const char* what) {
    if (!fs::is_directory(path)) throw UsageError(std::string(what) + " not found: " + path);
}

void require_file(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// `-` (or empty) targets stdout; everything else is a file path.
void write_output(const std::string& path, std::string_view data) {
    if (path.empty() || path == "-") {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Corpus → features pipeline shared by extract and predict --corpus

struct ExtractedCorpus {
    corpus::CorpusIndex index;
    std::vector<featureset::FeatureVector> vectors;
};

ExtractedCorpus extract_corpus(const std::string& corpus_dir, const Config& cfg) {
    require_dir(corpus_dir, "corpus directory");
    std::string lexdir = resolve_lexicon_dir(cfg);
    require_dir(lexdir, "lexicon directory");

    corpus::CorpusIndex index = corpus::load_corpus(corpus_dir);
    for (const auto& note : index.reports) std::cerr << "note: " << note << '\n';

    std::vector<std::string> warnings;
    lexicon::LexiconSet lexicons = lexicon::load_lexicons(lexdir, &warnings);
    for (const auto& note : warnings) std::cerr << "note: " << note << '\n';

    featureset::ExtractionConfig ec;
    ec.diff.edit_cost = static_cast<int>(cfg.diff_edit_cost);
    ec.max_diff_bytes = cfg.diff_size_cutoff;
    ec.kl_min_revision_chars = cfg.kl_fallback_threshold;

    featureset::BatchResult batch =
        featureset::extract_batch(index.edits, lexicons, ec, static_cast<int>(cfg.jobs));
    if (!batch.errors.empty()) {
        for (const auto& err : batch.errors) std::cerr << "error: " << err << '\n';
        throw std::runtime_error(std::to_string(batch.errors.size()) +
                                 " edit(s) failed feature extraction");
    }
    corpus::attach_labels(index, batch.vectors);
    return {std::move(index), std::move(batch.vectors)};
}

void print_class_stats(std::ostream& os, size_t total, const corpus::ClassStatistics& st) {
    os << "edits " << total << '\n';
    os << "regular " << st.regular << '\n';
    os << "vandalism " << st.vandalism << '\n';
    os << "unlabeled " << st.unlabeled << '\n';
    os << "anonymous_rate_regular "
       << (st.anonymous_rate_regular ? format_double(*st.anonymous_rate_regular) : "n/a") << '\n';
    os << "anonymous_rate_vandalism "
       << (st.anonymous_rate_vandalism ? format_double(*st.anonymous_rate_vandalism) : "n/a")
       << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands

struct ExtractArgs {
    std::string corpus_dir;
    std::string out = "-";
    std::string format = "csv";
};

int cmd_extract(const SharedArgs& shared, const ExtractArgs& args) {
    Config cfg = resolve_config(shared);
    ExtractedCorpus ex = extract_corpus(args.corpus_dir, cfg);

    std::ostringstream data;
    if (args.format == "arff") featureset::write_arff(data, ex.vectors, "editguard");
    else featureset::write_csv(data, ex.vectors);
    write_output(args.out, data.str());

    print_class_stats(std::cerr, ex.index.edits.size(), corpus::class_statistics(ex.index));
    std::cerr << "wrote " << ex.vectors.size() << " feature rows\n";
    return 0;
}

struct StatsArgs {
    std::string corpus_dir;
    std::string out = "-";
    std::string format = "text";
};

int cmd_stats(const StatsArgs& args) {
    require_dir(args.corpus_dir, "corpus directory");
    corpus::CorpusIndex index = corpus::load_corpus(args.corpus_dir);
    for (const auto& note : index.reports) std::cerr << "note: " << note << '\n';
    corpus::ClassStatistics st = corpus::class_statistics(index);

    std::ostringstream data;
    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["edits"] = index.edits.size();
        j["regular"] = st.regular;
        j["vandalism"] = st.vandalism;
        j["unlabeled"] = st.unlabeled;
        j["anonymous_rate_regular"] =
            st.anonymous_rate_regular ? nlohmann::ordered_json(*st.anonymous_rate_regular)
                                      : nlohmann::ordered_json(nullptr);
        j["anonymous_rate_vandalism"] =
            st.anonymous_rate_vandalism ? nlohmann::ordered_json(*st.anonymous_rate_vandalism)
                                        : nlohmann::ordered_json(nullptr);
        data << j.dump(2) << '\n';
    } else {
        print_class_stats(data, index.edits.size(), st);
    }
    write_output(args.out, data.str());
    return 0;
}

featureset::FeatureTable load_labeled_features(const std::string& path) {
    require_file(path, "features file");
    featureset::FeatureTable table = featureset::read_csv(read_file(path));
    if (!table.has_labels)
        throw std::runtime_error("features file " + path +
                                 " is unlabeled; extract from a corpus with gold annotations");
    for (const auto& v : table.vectors)
        if (!v.label)
            throw std::runtime_error("features file " + path + " contains unlabeled rows");
    return table;
}

learn::SplitCriterion parse_criterion(const std::string& name) {
    return name == "info-gain" ? learn::SplitCriterion::info_gain
                               : learn::SplitCriterion::gain_ratio;
}

struct TrainArgs {
    std::string features;
    std::string model_out;
    std::string algo = "forest";
    std::string criterion = "gain-ratio";
    int trees = 1000;
    int iters = 100;
    int k_features = 0;
    double min_leaf = -1.0;  // <0: per-algorithm default
    int laplace = -1;        // <0: per-algorithm default
    double cost = 1.0;
    double shrinkage = 1.0;
};

int cmd_train(const SharedArgs& shared, const TrainArgs& args) {
    Config cfg = resolve_config(shared);
    featureset::FeatureTable table = load_labeled_features(args.features);
    learn::WeightedDataset data = learn::make_dataset(std::move(table.vectors));
    if (args.cost != 1.0) data = learn::apply_cost_weights(data, args.cost);

    learn::Model model;
    if (args.algo == "tree") {
        learn::TreeParams params;
        params.min_leaf = args.min_leaf >= 0 ? args.min_leaf : 6.0;
        params.laplace = args.laplace < 0 ? true : args.laplace != 0;
        params.criterion = parse_criterion(args.criterion);
        learn::DecisionTree tree = learn::train_tree(data, params);
        std::cerr << "trained tree: " << tree.nodes.size() << " nodes, " << tree.leaf_count()
                  << " leaves, depth " << tree.depth() << '\n';
        model.value = std::move(tree);
    } else if (args.algo == "forest") {
        learn::ForestParams params;
        params.n_trees = args.trees;
        params.k_features = args.k_features;
        params.seed = cfg.seed;
        params.jobs = static_cast<int>(cfg.jobs);
        if (args.min_leaf >= 0) params.min_leaf = args.min_leaf;
        if (args.laplace >= 0) params.laplace = args.laplace != 0;
        params.criterion = parse_criterion(args.criterion);
        learn::RandomForest forest = learn::train_forest(data, params);
        std::cerr << "trained forest: " << forest.trees.size() << " trees, oob error "
                  << format_double(forest.oob_error) << '\n';
        model.value = std::move(forest);
    } else {
        learn::BoostParams params;
        params.iterations = args.iters;
        params.shrinkage = args.shrinkage;
        learn::BoostedStumps boost = learn::train_logitboost(data, params);
        std::cerr << "trained logitboost: " << boost.stumps.size() << " stumps\n";
        model.value = std::move(boost);
    }
    learn::save_model(model, args.model_out);
    std::cerr << "model written to " << args.model_out << '\n';
    return 0;
}

struct CvArgs {
    std::string features;
    std::string out = "-";
    std::string roc;
    std::string format = "text";
    std::string algo = "forest";
    std::string criterion = "gain-ratio";
    int table = 0;  // 0 = single-algorithm mode
    int k = 10;
    int trees = 100;
    int iters = 100;
    int k_features = 0;
    double cost = -1.0;  // <0: 10 for --table 1, 1 otherwise
    double min_leaf = -1.0;
    int laplace = -1;
    double shrinkage = 1.0;
    std::vector<int> forest_sizes;
    std::vector<int> boost_iters;
};

evalharness::Trainer make_trainer(const CvArgs& args, const Config& cfg, double cost) {
    learn::SplitCriterion criterion = parse_criterion(args.criterion);
    auto weighted = [cost](const std::vector<featureset::FeatureVector>& train) {
        learn::WeightedDataset data = learn::make_dataset(train);
        if (cost != 1.0) data = learn::apply_cost_weights(data, cost);
        return data;
    };
    if (args.algo == "tree") {
        learn::TreeParams params;
        params.min_leaf = args.min_leaf >= 0 ? args.min_leaf : 6.0;
        params.laplace = args.laplace < 0 ? true : args.laplace != 0;
        params.criterion = criterion;
        return [params, weighted](const std::vector<featureset::FeatureVector>& train) {
            auto tree = std::make_shared<learn::DecisionTree>(learn::train_tree(weighted(train), params));
            return evalharness::Scorer(
                [tree](const featureset::FeatureVector& v) { return tree->predict(v); });
        };
    }
    if (args.algo == "forest") {
        learn::ForestParams params;
        params.n_trees = args.trees;
        params.k_features = args.k_features;
        params.seed = cfg.seed;
        params.jobs = static_cast<int>(cfg.jobs);
        if (args.min_leaf >= 0) params.min_leaf = args.min_leaf;
        if (args.laplace >= 0) params.laplace = args.laplace != 0;
        params.criterion = criterion;
        return [params, weighted](const std::vector<featureset::FeatureVector>& train) {
            auto forest =
                std::make_shared<learn::RandomForest>(learn::train_forest(weighted(train), params));
            return evalharness::Scorer(
                [forest](const featureset::FeatureVector& v) { return forest->predict(v); });
        };
    }
    learn::BoostParams params;
    params.iterations = args.iters;
    params.shrinkage = args.shrinkage;
    return [params, weighted](const std::vector<featureset::FeatureVector>& train) {
        auto boost =
            std::make_shared<learn::BoostedStumps>(learn::train_logitboost(weighted(train), params));
        return evalharness::Scorer(
            [boost](const featureset::FeatureVector& v) { return boost->predict(v); });
    };
}

std::string single_algo_name(const CvArgs& args) {
    if (args.algo == "tree") return "C4.5";
    if (args.algo == "forest") return "Random Forest " + std::to_string(args.trees) + " it.";
    return "LogitBoost " + std::to_string(args.iters) + " it.";
}

int cmd_cv(const SharedArgs& shared, const CvArgs& args) {
    if (args.table != 0 && !args.roc.empty())
        throw UsageError("--roc is only available in single-algorithm mode (without --table)");
    Config cfg = resolve_config(shared);
    featureset::FeatureTable table = load_labeled_features(args.features);

    std::vector<evalharness::NamedReport> rows;
    if (args.table == 1) {
        evalharness::Table1Options opt;
        opt.k = args.k;
        opt.seed = cfg.seed;
        opt.jobs = static_cast<int>(cfg.jobs);
        opt.cost = args.cost < 0 ? 10.0 : args.cost;
        if (args.min_leaf >= 0) opt.min_leaf = args.min_leaf;
        if (args.laplace >= 0) opt.laplace = args.laplace != 0;
        rows = evalharness::table1_report(table.vectors, opt);
    } else if (args.table == 2) {
        evalharness::Table2Options opt;
        opt.k = args.k;
        opt.seed = cfg.seed;
        opt.jobs = static_cast<int>(cfg.jobs);
        opt.cost = args.cost < 0 ? 1.0 : args.cost;
        if (!args.forest_sizes.empty()) opt.forest_sizes = args.forest_sizes;
        if (!args.boost_iters.empty()) opt.boost_iterations = args.boost_iters;
        rows = evalharness::table2_report(table.vectors, opt);
    } else {
        double cost = args.cost < 0 ? 1.0 : args.cost;
        evalharness::Trainer trainer = make_trainer(args, cfg, cost);
        evalharness::CrossValResult cv = evalharness::cross_validate(
            table.vectors, trainer, args.k, cfg.seed, static_cast<int>(cfg.jobs));
        if (!args.roc.empty()) {
            std::vector<evalharness::ScoredLabel> scored(cv.scores.size());
            for (size_t i = 0; i < cv.scores.size(); ++i)
                scored[i] = {cv.scores[i], *table.vectors[i].label};
            std::ostringstream roc;
            evalharness::write_roc_csv(roc, evalharness::roc_points(scored));
            write_output(args.roc, roc.str());
        }
        rows.push_back({single_algo_name(args), std::move(cv.report)});
    }

    std::ostringstream data;
    if (args.format == "csv") evalharness::write_reports_csv(data, rows);
    else if (args.format == "json") evalharness::write_reports_json(data, rows);
    else evalharness::write_reports_text(data, rows);
    write_output(args.out, data.str());
    return 0;
}

struct PredictArgs {
    std::string model;
    std::string features;
    std::string corpus_dir;
    std::string out = "-";
    double threshold = 0.5;
    bool with_labels = false;
};

int cmd_predict(const SharedArgs& shared, const PredictArgs& args) {
    if (args.features.empty() && args.corpus_dir.empty())
        throw UsageError("predict needs an input: --features FILE or --corpus DIR");
    require_file(args.model, "model file");
    learn::Model model = learn::load_model(args.model);

    std::vector<std::string> ids;
    std::vector<featureset::FeatureVector> vectors;
    if (!args.corpus_dir.empty()) {
        Config cfg = resolve_config(shared);
        ExtractedCorpus ex = extract_corpus(args.corpus_dir, cfg);
        ids.reserve(ex.index.edits.size());
        for (const auto& e : ex.index.edits) ids.push_back(e.edit_id);
        vectors = std::move(ex.vectors);
    } else {
        require_file(args.features, "features file");
        featureset::FeatureTable table = featureset::read_csv(read_file(args.features));
        vectors = std::move(table.vectors);
        ids.reserve(vectors.size());
        for (size_t i = 0; i < vectors.size(); ++i) ids.push_back(std::to_string(i + 1));
    }

    std::ostringstream data;
    data << (args.with_labels ? "edit_id,score,label" : "edit_id,score") << '\n';
    for (size_t i = 0; i < vectors.size(); ++i) {
        double score = model.predict(vectors[i]);
        data << ids[i] << ',' << format_double(score);
        if (args.with_labels)
            data << ','
                 << featureset::label_name(score >= args.threshold ? featureset::Label::vandalism
                                                                   : featureset::Label::regular);
        data << '\n';
    }
    write_output(args.out, data.str());
    std::cerr << "scored " << vectors.size() << " edit(s) with " << model.kind_name()
              << " model\n";
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Wikipedia edit vandalism scoring toolkit", "editguard"};
    app.require_subcommand(1);

    SharedArgs ext_shared, train_shared, cv_shared, pred_shared;
    ExtractArgs ext_args;
    StatsArgs stats_args;
    TrainArgs train_args;
    CvArgs cv_args;
    PredictArgs pred_args;

    CLI::App* ext = app.add_subcommand("extract", "Extract feature vectors from a corpus");
    ext->add_option("--corpus", ext_args.corpus_dir, "corpus root directory")->required();
    ext->add_option("-o,--out", ext_args.out, "output file, - for stdout");
    ext->add_option("--format", ext_args.format, "csv or arff")
        ->check(CLI::IsMember({"csv", "arff"}));
    add_shared_options(ext, ext_shared);

    CLI::App* sts = app.add_subcommand("stats", "Report corpus class statistics");
    sts->add_option("--corpus", stats_args.corpus_dir, "corpus root directory")->required();
    sts->add_option("-o,--out", stats_args.out, "output file, - for stdout");
    sts->add_option("--format", stats_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* trn = app.add_subcommand("train", "Train a model on extracted features");
    trn->add_option("--features", train_args.features, "labeled features CSV")->required();
    trn->add_option("-o,--out", train_args.model_out, "model output path")->required();
    trn->add_option("--algo", train_args.algo, "tree, forest or logitboost")
        ->check(CLI::IsMember({"tree", "forest", "logitboost"}));
    trn->add_option("--trees", train_args.trees, "forest size")->check(CLI::PositiveNumber);
    trn->add_option("--iters", train_args.iters, "boosting rounds")->check(CLI::PositiveNumber);
    trn->add_option("--k-features", train_args.k_features,
                    "features sampled per forest node, 0 = floor(log2(M))+1")
        ->check(CLI::NonNegativeNumber);
    trn->add_option("--min-leaf", train_args.min_leaf,
                    "minimum weighted instances per leaf (default: 6 tree, 1 forest)")
        ->check(CLI::PositiveNumber);
    trn->add_option("--laplace", train_args.laplace,
                    "0/1 Laplace leaf smoothing (default: 1 tree, 0 forest)")
        ->check(CLI::IsMember({0, 1}));
    trn->add_option("--criterion", train_args.criterion, "gain-ratio or info-gain")
        ->check(CLI::IsMember({"gain-ratio", "info-gain"}));
    trn->add_option("--cost", train_args.cost, "vandalism training-instance weight")
        ->check(CLI::PositiveNumber);
    trn->add_option("--shrinkage", train_args.shrinkage, "logitboost shrinkage")
        ->check(CLI::PositiveNumber);
    add_shared_options(trn, train_shared);

    CLI::App* cvc = app.add_subcommand("cv", "Stratified cross-validation report");
    cvc->add_option("--features", cv_args.features, "labeled features CSV")->required();
    cvc->add_option("-o,--out", cv_args.out, "output file, - for stdout");
    cvc->add_option("--table", cv_args.table,
                    "1 = per-feature single-attribute grid, 2 = classifier grid")
        ->check(CLI::IsMember({1, 2}));
    cvc->add_option("--algo", cv_args.algo, "tree, forest or logitboost (without --table)")
        ->check(CLI::IsMember({"tree", "forest", "logitboost"}));
    cvc->add_option("--k", cv_args.k, "number of folds")->check(CLI::Range(2, 1000));
    cvc->add_option("--trees", cv_args.trees, "forest size (single-algorithm mode)")
        ->check(CLI::PositiveNumber);
    cvc->add_option("--iters", cv_args.iters, "boosting rounds (single-algorithm mode)")
        ->check(CLI::PositiveNumber);
    cvc->add_option("--k-features", cv_args.k_features,
                    "features sampled per forest node, 0 = floor(log2(M))+1")
        ->check(CLI::NonNegativeNumber);
    cvc->add_option("--cost", cv_args.cost,
                    "vandalism training-instance weight (default: 10 for --table 1, else 1)")
        ->check(CLI::PositiveNumber);
    cvc->add_option("--min-leaf", cv_args.min_leaf, "minimum weighted instances per leaf")
        ->check(CLI::PositiveNumber);
    cvc->add_option("--laplace", cv_args.laplace, "0/1 Laplace leaf smoothing")
        ->check(CLI::IsMember({0, 1}));
    cvc->add_option("--criterion", cv_args.criterion, "gain-ratio or info-gain")
        ->check(CLI::IsMember({"gain-ratio", "info-gain"}));
    cvc->add_option("--shrinkage", cv_args.shrinkage, "logitboost shrinkage")
        ->check(CLI::PositiveNumber);
    cvc->add_option("--forest-sizes", cv_args.forest_sizes,
                    "forest sizes for --table 2 (default 100,500,1000)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cvc->add_option("--boost-iters", cv_args.boost_iters,
                    "boosting rounds for --table 2 (default 100,500,1000)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cvc->add_option("--format", cv_args.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cvc->add_option("--roc", cv_args.roc,
                    "also write the pooled ROC sweep to this CSV file (single-algorithm mode)");
    add_shared_options(cvc, cv_shared);

    CLI::App* prd = app.add_subcommand("predict", "Score edits with a trained model");
    prd->add_option("--model", pred_args.model, "model file from `train`")->required();
    CLI::Option* pf = prd->add_option("--features", pred_args.features,
                                      "features CSV to score (ids are 1-based row numbers)");
    CLI::Option* pc = prd->add_option("--corpus", pred_args.corpus_dir,
                                      "corpus to extract and score (ids are edit ids)");
    pf->excludes(pc);
    prd->add_option("-o,--out", pred_args.out, "output file, - for stdout");
    CLI::Option* thr = prd->add_option("--threshold", pred_args.threshold,
                                       "decision threshold; adds a label column")
                           ->check(CLI::Range(0.0, 1.0));
    add_shared_options(prd, pred_shared);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    pred_args.with_labels = thr->count() > 0;

    try {
        if (app.got_subcommand(ext)) return cmd_extract(ext_shared, ext_args);
        if (app.got_subcommand(sts)) return cmd_stats(stats_args);
        if (app.got_subcommand(trn)) return cmd_train(train_shared, train_args);
        if (app.got_subcommand(cvc)) return cmd_cv(cv_shared, cv_args);
        if (app.got_subcommand(prd)) return cmd_predict(pred_shared, pred_args);
    } catch (const UsageError& e) {
        std::cerr << "editguard: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "editguard: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace editguard::cli
