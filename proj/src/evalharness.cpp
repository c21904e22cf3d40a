#include "editguard/evalharness.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "editguard/learn.hpp"
#include "editguard/numfmt.hpp"
#include "editguard/parallel.hpp"
#include "editguard/rng.hpp"

namespace editguard::evalharness {

Confusion& Confusion::operator+=(const Confusion& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
}

Confusion confusion_at_half(const std::vector<double>& scores,
                            const std::vector<Label>& labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("scores and labels differ in length");
    Confusion c;
    for (size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= 0.5;
        const bool actual = labels[i] == Label::vandalism;
        if (predicted && actual)
            ++c.tp;
        else if (predicted && !actual)
            ++c.fp;
        else if (!predicted && actual)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

PrF pr_f(const Confusion& c) {
    PrF m;
    if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (m.precision + m.recall > 0.0)
        m.f_measure = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

double auc(const std::vector<ScoredLabel>& scores) {
    int64_t positives = 0, negatives = 0;
    for (const ScoredLabel& s : scores)
        (s.label == Label::vandalism ? positives : negatives) += 1;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("auc requires both classes present");

    std::vector<ScoredLabel> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });

    // Twice the pair-count area: each negative scores 2 per strictly higher
    // positive and 1 per tied positive. All terms are exact small integers.
    double area2 = 0.0;
    double tp_before = 0.0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        double pos_here = 0.0, neg_here = 0.0;
        while (j < sorted.size() && sorted[j].score == sorted[i].score) {
            (sorted[j].label == Label::vandalism ? pos_here : neg_here) += 1.0;
            ++j;
        }
        area2 += neg_here * (2.0 * tp_before + pos_here);
        tp_before += pos_here;
        i = j;
    }
    const double denom = 2.0 * static_cast<double>(positives) * static_cast<double>(negatives);
    // Canonicalized so that auc(x) + auc(label-swap(x)) == 1.0 bit-exactly.
    if (area2 + area2 == denom) return 0.5;
    if (area2 + area2 < denom) return area2 / denom;
    return 1.0 - (denom - area2) / denom;
}

std::vector<std::vector<size_t>> stratified_kfold(const std::vector<Label>& labels, int k,
                                                  uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be at least 2");
    std::array<std::vector<size_t>, 2> by_class;
    for (size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i] == Label::vandalism ? 1 : 0].push_back(i);
    for (size_t c = 0; c < 2; ++c) {
        if (by_class[c].size() < static_cast<size_t>(k))
            throw std::invalid_argument(
                std::string("class ") + (c == 1 ? "vandalism" : "regular") + " has " +
                std::to_string(by_class[c].size()) + " instances, fewer than the " +
                std::to_string(k) + " folds");
    }
    std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
    for (size_t c = 0; c < 2; ++c) {
        Rng rng = Rng::stream(seed, c);
        rng.shuffle(by_class[c]);
        for (size_t i = 0; i < by_class[c].size(); ++i)
            folds[i % static_cast<size_t>(k)].push_back(by_class[c][i]);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

CrossValResult cross_validate(const std::vector<FeatureVector>& data, const Trainer& trainer,
                              int k, uint64_t seed, int jobs) {
    std::vector<Label> labels;
    labels.reserve(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
        if (!data[i].label.has_value())
            throw std::invalid_argument("unlabeled instance at index " + std::to_string(i));
        labels.push_back(*data[i].label);
    }
    const std::vector<std::vector<size_t>> folds = stratified_kfold(labels, k, seed);

    std::vector<size_t> fold_of(data.size());
    for (size_t f = 0; f < folds.size(); ++f)
        for (size_t idx : folds[f]) fold_of[idx] = f;

    CrossValResult result;
    result.scores.assign(data.size(), 0.0);
    result.report.per_fold.resize(folds.size());

    parallel_for(folds.size(), jobs, [&](size_t f) {
        std::vector<FeatureVector> train;
        train.reserve(data.size() - folds[f].size());
        for (size_t i = 0; i < data.size(); ++i)
            if (fold_of[i] != f) train.push_back(data[i]);
        const Scorer scorer = trainer(train);

        std::vector<double> fold_scores;
        std::vector<Label> fold_labels;
        std::vector<ScoredLabel> fold_scored;
        fold_scores.reserve(folds[f].size());
        for (size_t idx : folds[f]) {
            const double s = scorer(data[idx]);
            result.scores[idx] = s;
            fold_scores.push_back(s);
            fold_labels.push_back(labels[idx]);
            fold_scored.push_back({s, labels[idx]});
        }
        FoldMetrics& metrics = result.report.per_fold[f];
        metrics.confusion = confusion_at_half(fold_scores, fold_labels);
        const PrF prf = pr_f(metrics.confusion);
        metrics.precision = prf.precision;
        metrics.recall = prf.recall;
        metrics.f_measure = prf.f_measure;
        metrics.auc = auc(fold_scored);  // stratification guarantees both classes
    });

    Confusion pooled;
    for (const FoldMetrics& m : result.report.per_fold) pooled += m.confusion;
    result.report.confusion = pooled;
    const PrF prf = pr_f(pooled);
    result.report.precision = prf.precision;
    result.report.recall = prf.recall;
    result.report.f_measure = prf.f_measure;
    std::vector<ScoredLabel> all;
    all.reserve(data.size());
    for (size_t i = 0; i < data.size(); ++i) all.push_back({result.scores[i], labels[i]});
    result.report.auc = auc(all);
    return result;
}

std::vector<NamedReport> table1_report(const std::vector<FeatureVector>& data,
                                       const Table1Options& options) {
    std::vector<NamedReport> rows;
    rows.reserve(featureset::kFeatureCount);
    for (size_t feature = 0; feature < featureset::kFeatureCount; ++feature) {
        const Trainer trainer = [feature, &options](const std::vector<FeatureVector>& train) {
            learn::WeightedDataset dataset = learn::make_dataset(train);
            if (options.cost != 1.0) dataset = learn::apply_cost_weights(dataset, options.cost);
            learn::TreeParams params;
            params.min_leaf = options.min_leaf;
            params.laplace = options.laplace;
            params.candidate_features = {feature};
            learn::DecisionTree tree = learn::train_tree(dataset, params);
            return Scorer([tree = std::move(tree)](const FeatureVector& v) {
                return tree.predict(v);
            });
        };
        CrossValResult cv = cross_validate(data, trainer, options.k, options.seed, options.jobs);
        rows.push_back({std::string(featureset::kFeatureNames[feature]),
                        std::move(cv.report)});
    }
    return rows;
}

std::vector<NamedReport> table2_report(const std::vector<FeatureVector>& data,
                                       const Table2Options& options) {
    auto weighted = [&options](const std::vector<FeatureVector>& train) {
        learn::WeightedDataset dataset = learn::make_dataset(train);
        if (options.cost != 1.0) dataset = learn::apply_cost_weights(dataset, options.cost);
        return dataset;
    };

    std::vector<NamedReport> rows;

    const Trainer tree_trainer = [&](const std::vector<FeatureVector>& train) {
        learn::DecisionTree tree = learn::train_tree(weighted(train));
        return Scorer([tree = std::move(tree)](const FeatureVector& v) {
            return tree.predict(v);
        });
    };
    rows.push_back({"C4.5",
                    cross_validate(data, tree_trainer, options.k, options.seed, options.jobs)
                        .report});

    for (int n_trees : options.forest_sizes) {
        const Trainer trainer = [&, n_trees](const std::vector<FeatureVector>& train) {
            learn::ForestParams params;
            params.n_trees = n_trees;
            params.seed = options.seed;
            params.jobs = options.jobs;
            learn::RandomForest forest = learn::train_forest(weighted(train), params);
            return Scorer([forest = std::move(forest)](const FeatureVector& v) {
                return forest.predict(v);
            });
        };
        rows.push_back({"Random Forest " + std::to_string(n_trees) + " it.",
                        cross_validate(data, trainer, options.k, options.seed, options.jobs)
                            .report});
    }

    for (int iterations : options.boost_iterations) {
        const Trainer trainer = [&, iterations](const std::vector<FeatureVector>& train) {
            learn::BoostParams params;
            params.iterations = iterations;
            learn::BoostedStumps model = learn::train_logitboost(weighted(train), params);
            return Scorer([model = std::move(model)](const FeatureVector& v) {
                return model.predict(v);
            });
        };
        rows.push_back({"LogitBoost " + std::to_string(iterations) + " it.",
                        cross_validate(data, trainer, options.k, options.seed, options.jobs)
                            .report});
    }
    return rows;
}

void write_reports_text(std::ostream& out, const std::vector<NamedReport>& reports) {
    size_t width = 4;
    for (const NamedReport& row : reports) width = std::max(width, row.name.size());
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %9s  %9s  %9s  %9s\n",
                  static_cast<int>(width), "name", "Precision", "Recall", "F-Measure", "AUC");
    out << line;
    for (const NamedReport& row : reports) {
        std::snprintf(line, sizeof line, "%-*s  %9.3f  %9.3f  %9.3f  %9.3f\n",
                      static_cast<int>(width), row.name.c_str(), row.report.precision,
                      row.report.recall, row.report.f_measure, row.report.auc);
        out << line;
    }
}

void write_reports_csv(std::ostream& out, const std::vector<NamedReport>& reports) {
    out << "name,precision,recall,f_measure,auc,tp,fp,fn,tn\n";
    for (const NamedReport& row : reports) {
        out << row.name << ',' << format_double(row.report.precision) << ','
            << format_double(row.report.recall) << ',' << format_double(row.report.f_measure)
            << ',' << format_double(row.report.auc) << ',' << row.report.confusion.tp << ','
            << row.report.confusion.fp << ',' << row.report.confusion.fn << ','
            << row.report.confusion.tn << '\n';
    }
}

void write_reports_json(std::ostream& out, const std::vector<NamedReport>& reports) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (const NamedReport& row : reports) {
        nlohmann::ordered_json entry;
        entry["name"] = row.name;
        entry["precision"] = row.report.precision;
        entry["recall"] = row.report.recall;
        entry["f_measure"] = row.report.f_measure;
        entry["auc"] = row.report.auc;
        entry["confusion"] = {{"tp", row.report.confusion.tp},
                              {"fp", row.report.confusion.fp},
                              {"fn", row.report.confusion.fn},
                              {"tn", row.report.confusion.tn}};
        nlohmann::ordered_json folds = nlohmann::ordered_json::array();
        for (const FoldMetrics& m : row.report.per_fold) {
            folds.push_back({{"precision", m.precision},
                             {"recall", m.recall},
                             {"f_measure", m.f_measure},
                             {"auc", m.auc}});
        }
        entry["per_fold"] = std::move(folds);
        root.push_back(std::move(entry));
    }
    out << root.dump(2) << '\n';
}

std::vector<RocPoint> roc_points(const std::vector<ScoredLabel>& scores) {
    int64_t positives = 0, negatives = 0;
    for (const ScoredLabel& s : scores)
        (s.label == Label::vandalism ? positives : negatives) += 1;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("roc requires both classes present");

    std::vector<ScoredLabel> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });

    std::vector<RocPoint> points;
    points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    int64_t tp = 0, fp = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j < sorted.size() && sorted[j].score == sorted[i].score) {
            (sorted[j].label == Label::vandalism ? tp : fp) += 1;
            ++j;
        }
        points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                          static_cast<double>(tp) / static_cast<double>(positives),
                          sorted[i].score});
        i = j;
    }
    return points;
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points) {
    out << "fpr,tpr,threshold\n";
    for (const RocPoint& p : points) {
        out << format_double(p.fpr) << ',' << format_double(p.tpr) << ','
            << format_double(p.threshold) << '\n';
    }
}

}  // namespace editguard::evalharness
