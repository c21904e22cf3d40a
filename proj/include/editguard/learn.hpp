#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <variant>
#include <vector>

#include "editguard/featureset.hpp"

// Supervised learners: cost-sensitive decision tree, Random Forest with
// out-of-bag error, and LogitBoost over decision stumps. Vandalism is the
// positive class everywhere; predict() returns its probability.

namespace editguard::learn {

using featureset::FeatureVector;
using featureset::Label;

struct WeightedDataset {
    std::vector<FeatureVector> vectors;  // every vector must be labeled
    std::vector<double> weights;         // parallel to vectors, all > 0
};

// Unit weights; throws std::invalid_argument on empty input or missing labels.
WeightedDataset make_dataset(std::vector<FeatureVector> vectors);

// Vandalism instances weighted `vandalism_weight`, regular ones 1.0.
WeightedDataset apply_cost_weights(const WeightedDataset& data, double vandalism_weight);

enum class SplitCriterion : uint8_t { gain_ratio = 0, info_gain = 1 };

struct TreeParams {
    double min_leaf = 6.0;  // minimum weighted instances per leaf
    bool laplace = true;
    SplitCriterion criterion = SplitCriterion::gain_ratio;
    // Feature indices eligible for splitting; empty means all of them.
    std::vector<size_t> candidate_features;
};

struct TreeNode {
    int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    double p_vandalism = 0.0;  // meaningful on leaves only
    int32_t left = -1;
    int32_t right = -1;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root; <= goes left
    double min_leaf = 6.0;
    bool laplace = true;
    SplitCriterion criterion = SplitCriterion::gain_ratio;

    double predict(const FeatureVector& v) const;
    size_t leaf_count() const;
    size_t depth() const;
};

// Greedy top-down induction: binary splits at midpoints between sorted
// distinct values, ranked by the chosen criterion on weighted class counts;
// stops when no split keeps min_leaf weight on both children or the
// information gain is non-positive. Ties break on the lowest feature index,
// then the lowest threshold.
DecisionTree train_tree(const WeightedDataset& data, const TreeParams& params = {});

struct ForestParams {
    int n_trees = 100;
    // Features drawn per node; 0 means the floor(log2(M)) + 1 default.
    int k_features = 0;
    uint64_t seed = 0;
    bool bootstrap = true;  // test hook: off trains every tree on the full data
    int jobs = 0;           // worker threads; results are identical for any value
    double min_leaf = 1.0;
    bool laplace = false;
    SplitCriterion criterion = SplitCriterion::gain_ratio;
};

struct RandomForest {
    std::vector<DecisionTree> trees;
    int k_features = 0;
    double oob_error = 0.0;  // weighted OOB misclassification rate at 0.5
    uint64_t seed = 0;

    double predict(const FeatureVector& v) const;  // mean of tree outputs
};

int default_k_features(size_t feature_count);

// Each tree trains on a weight-proportional bootstrap resample (same size,
// with replacement) drawn from its own counter-based stream of `seed`, so
// the result is byte-identical for every `jobs` value.
RandomForest train_forest(const WeightedDataset& data, const ForestParams& params = {});

// Serial reference implementation (kept for A/B testing the parallel path).
RandomForest train_forest_serial(const WeightedDataset& data, const ForestParams& params = {});

struct Stump {
    int32_t feature = 0;
    double threshold = 0.0;
    double left_value = 0.0;   // applied when value <= threshold
    double right_value = 0.0;
};

struct BoostParams {
    int iterations = 100;
    double shrinkage = 1.0;
    double z_max = 3.0;  // working-response clamp
};

struct BoostedStumps {
    std::vector<Stump> stumps;
    double shrinkage = 1.0;

    double predict(const FeatureVector& v) const;  // 1 / (1 + e^{-2F})
};

// Two-class LogitBoost: per round, fit a weighted least-squares stump to the
// clamped working responses and add half its prediction to F.
BoostedStumps train_logitboost(const WeightedDataset& data, const BoostParams& params = {});

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Model {
    std::variant<DecisionTree, RandomForest, BoostedStumps> value;

    double predict(const FeatureVector& v) const;
    std::string_view kind_name() const;  // "tree" | "forest" | "logitboost"
};

// Versioned, checksummed binary container (layout documented in README.md).
// A reloaded model predicts bit-identically to the saved one.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace editguard::learn
