#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "editguard/featureset.hpp"

// Stratified cross-validation and the evaluation metrics: precision, recall,
// F-measure and AUC, plus the two report grids (per-feature trees and the
// classifier comparison). Vandalism is the positive class; the probability
// threshold for the confusion counts is 0.5 (score >= 0.5 predicts vandalism).

namespace editguard::evalharness {

using featureset::FeatureVector;
using featureset::Label;

struct Confusion {
    int64_t tp = 0, fp = 0, fn = 0, tn = 0;

    Confusion& operator+=(const Confusion& other);
    bool operator==(const Confusion&) const = default;
};

Confusion confusion_at_half(const std::vector<double>& scores,
                            const std::vector<Label>& labels);

struct PrF {
    double precision = 0.0, recall = 0.0, f_measure = 0.0;
};

// Zero denominators yield 0 by convention.
PrF pr_f(const Confusion& c);

struct ScoredLabel {
    double score = 0.0;
    Label label = Label::regular;
};

// Trapezoidal area under the ROC curve; equals the Mann-Whitney statistic
// P(score_vandal > score_regular) + half the tie probability. Throws
// std::invalid_argument when only one class is present. Computed from exact
// integer pair counts, so auc(data) + auc(label-swapped data) == 1.0 exactly.
double auc(const std::vector<ScoredLabel>& scores);

// Partitions indices 0..n-1 into k test folds with per-class counts differing
// by at most one across folds. Deterministic for a fixed seed. Throws
// std::invalid_argument when k < 2 or some class has fewer than k instances.
std::vector<std::vector<size_t>> stratified_kfold(const std::vector<Label>& labels, int k,
                                                  uint64_t seed);

struct FoldMetrics {
    double precision = 0.0, recall = 0.0, f_measure = 0.0, auc = 0.0;
    Confusion confusion;
};

struct EvalReport {
    // Pooled (micro) metrics over the concatenated fold predictions.
    double precision = 0.0, recall = 0.0, f_measure = 0.0, auc = 0.0;
    Confusion confusion;
    std::vector<FoldMetrics> per_fold;
};

using Scorer = std::function<double(const FeatureVector&)>;
// Receives the training instances of one fold, returns the fitted scorer.
using Trainer = std::function<Scorer(const std::vector<FeatureVector>&)>;

struct CrossValResult {
    EvalReport report;
    std::vector<double> scores;  // out-of-fold score per input instance
};

// Folds evaluate independently (parallel across folds); the result is
// identical for every jobs value. All instances must be labeled.
CrossValResult cross_validate(const std::vector<FeatureVector>& data, const Trainer& trainer,
                              int k, uint64_t seed, int jobs = 0);

struct NamedReport {
    std::string name;
    EvalReport report;
};

struct Table1Options {
    int k = 10;
    uint64_t seed = 0;
    double cost = 10.0;  // vandalism instance weight during training
    double min_leaf = 6.0;
    bool laplace = true;
    int jobs = 0;
};

// One cost-weighted single-feature tree per feature, cross-validated; rows in
// canonical feature order.
std::vector<NamedReport> table1_report(const std::vector<FeatureVector>& data,
                                       const Table1Options& options = {});

struct Table2Options {
    int k = 10;
    uint64_t seed = 0;
    double cost = 1.0;  // optional cost weighting (off by default)
    int jobs = 0;
    std::vector<int> forest_sizes{100, 500, 1000};
    std::vector<int> boost_iterations{100, 500, 1000};
};

// Classifier grid: the baseline tree, forests and boosted stumps of the
// configured sizes, each cross-validated on the same folds.
std::vector<NamedReport> table2_report(const std::vector<FeatureVector>& data,
                                       const Table2Options& options = {});

void write_reports_text(std::ostream& out, const std::vector<NamedReport>& reports);
void write_reports_csv(std::ostream& out, const std::vector<NamedReport>& reports);
void write_reports_json(std::ostream& out, const std::vector<NamedReport>& reports);

struct RocPoint {
    double fpr = 0.0, tpr = 0.0;
    double threshold = 0.0;
};

// Threshold sweep over the distinct scores, from (0,0) to (1,1).
std::vector<RocPoint> roc_points(const std::vector<ScoredLabel>& scores);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points);

}  // namespace editguard::evalharness
