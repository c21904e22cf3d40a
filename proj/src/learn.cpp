#include "editguard/learn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "editguard/rng.hpp"
#include "editguard/parallel.hpp"

namespace editguard::learn {

namespace {

constexpr double kGainEps = 1e-12;  // gains at or below this count as zero

void validate_dataset(const WeightedDataset& data) {
    if (data.vectors.empty()) throw std::invalid_argument("empty dataset");
    if (data.vectors.size() != data.weights.size())
        throw std::invalid_argument("dataset weights do not match vectors");
    for (size_t i = 0; i < data.vectors.size(); ++i) {
        if (!data.vectors[i].label.has_value())
            throw std::invalid_argument("unlabeled instance at index " + std::to_string(i));
        if (!(data.weights[i] > 0.0))
            throw std::invalid_argument("non-positive weight at index " + std::to_string(i));
    }
}

// Binary entropy of a weighted two-class count, in bits. The expression is
// part of the determinism contract: tie behaviour depends on its exact
// floating-point form, so tests and oracles use the same shape.
double entropy2(double w_regular, double w_vandal) {
    const double total = w_regular + w_vandal;
    if (!(total > 0.0)) return 0.0;
    double h = 0.0;
    if (w_regular > 0.0) {
        const double p = w_regular / total;
        h -= p * std::log2(p);
    }
    if (w_vandal > 0.0) {
        const double p = w_vandal / total;
        h -= p * std::log2(p);
    }
    return h;
}

// Midpoint between two consecutive distinct values, nudged down if rounding
// lands on the upper value, so `<= threshold` always separates them.
double midpoint(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    return mid < hi ? mid : lo;
}

struct SplitChoice {
    bool found = false;
    size_t feature = 0;
    double threshold = 0.0;
    double criterion_value = 0.0;
};

struct InductionContext {
    const std::vector<FeatureVector>& vectors;
    double min_leaf;
    SplitCriterion criterion;
    const std::vector<size_t>& candidates;  // ascending feature indices
    Rng* rng;        // non-null only for forest trees
    size_t k_node;   // features drawn per node when rng is set
};

// Instances at one node: index into ctx.vectors plus this instance's weight.
struct Item {
    size_t index;
    double weight;
};

double item_value(const InductionContext& ctx, const Item& it, size_t feature) {
    return ctx.vectors[it.index].values[feature];
}

bool is_vandal(const InductionContext& ctx, const Item& it) {
    return *ctx.vectors[it.index].label == Label::vandalism;
}

// Evaluates every boundary of one feature; updates `best` under strict
// improvement so earlier (lower feature, lower threshold) candidates win ties.
void scan_feature(const InductionContext& ctx, std::vector<Item>& items, size_t feature,
                  double w_regular, double w_vandal, double parent_entropy,
                  SplitChoice& best) {
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        const double va = item_value(ctx, a, feature);
        const double vb = item_value(ctx, b, feature);
        if (va != vb) return va < vb;
        return a.index < b.index;  // total order keeps accumulation deterministic
    });
    const double total = w_regular + w_vandal;
    double left_regular = 0.0, left_vandal = 0.0;
    for (size_t i = 0; i + 1 < items.size(); ++i) {
        if (is_vandal(ctx, items[i]))
            left_vandal += items[i].weight;
        else
            left_regular += items[i].weight;
        const double value = item_value(ctx, items[i], feature);
        const double next = item_value(ctx, items[i + 1], feature);
        if (value == next) continue;  // boundaries only between distinct values
        const double left_total = left_regular + left_vandal;
        const double right_total = total - left_total;
        if (left_total < ctx.min_leaf || right_total < ctx.min_leaf) continue;
        const double gain = parent_entropy -
                            (left_total / total) * entropy2(left_regular, left_vandal) -
                            (right_total / total) *
                                entropy2(w_regular - left_regular, w_vandal - left_vandal);
        if (gain <= kGainEps) continue;
        double criterion_value = gain;
        if (ctx.criterion == SplitCriterion::gain_ratio) {
            const double pl = left_total / total;
            const double pr = right_total / total;
            const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
            if (!(split_info > 0.0)) continue;
            criterion_value = gain / split_info;
        }
        if (!best.found || criterion_value > best.criterion_value) {
            best.found = true;
            best.feature = feature;
            best.threshold = midpoint(value, next);
            best.criterion_value = criterion_value;
        }
    }
}

std::vector<size_t> sample_node_features(const InductionContext& ctx) {
    if (ctx.rng == nullptr || ctx.k_node >= ctx.candidates.size()) return ctx.candidates;
    std::vector<size_t> pool = ctx.candidates;
    for (size_t j = 0; j < ctx.k_node; ++j) {
        const size_t pick = j + static_cast<size_t>(ctx.rng->next_below(pool.size() - j));
        std::swap(pool[j], pool[pick]);
    }
    pool.resize(ctx.k_node);
    std::sort(pool.begin(), pool.end());
    return pool;
}

int32_t build_node(InductionContext& ctx, std::vector<Item>&& items,
                   std::vector<TreeNode>& nodes, bool laplace) {
    double w_regular = 0.0, w_vandal = 0.0;
    for (const Item& it : items) {
        if (is_vandal(ctx, it))
            w_vandal += it.weight;
        else
            w_regular += it.weight;
    }
    const double total = w_regular + w_vandal;

    SplitChoice best;
    if (w_regular > 0.0 && w_vandal > 0.0 && total >= 2.0 * ctx.min_leaf) {
        const double parent_entropy = entropy2(w_regular, w_vandal);
        for (size_t feature : sample_node_features(ctx))
            scan_feature(ctx, items, feature, w_regular, w_vandal, parent_entropy, best);
    }

    const int32_t id = static_cast<int32_t>(nodes.size());
    nodes.emplace_back();
    if (!best.found) {
        nodes[id].p_vandalism =
            laplace ? (w_vandal + 1.0) / (total + 2.0) : (total > 0.0 ? w_vandal / total : 0.5);
        return id;
    }

    std::vector<Item> left, right;
    left.reserve(items.size());
    right.reserve(items.size());
    for (const Item& it : items) {
        if (item_value(ctx, it, best.feature) <= best.threshold)
            left.push_back(it);
        else
            right.push_back(it);
    }
    items.clear();
    items.shrink_to_fit();

    nodes[id].feature = static_cast<int32_t>(best.feature);
    nodes[id].threshold = best.threshold;
    const int32_t left_id = build_node(ctx, std::move(left), nodes, laplace);
    const int32_t right_id = build_node(ctx, std::move(right), nodes, laplace);
    nodes[id].left = left_id;
    nodes[id].right = right_id;
    return id;
}

std::vector<size_t> all_features() {
    std::vector<size_t> v(featureset::kFeatureCount);
    std::iota(v.begin(), v.end(), size_t{0});
    return v;
}

DecisionTree induce_tree(const std::vector<FeatureVector>& vectors, std::vector<Item>&& items,
                         double min_leaf, bool laplace, SplitCriterion criterion,
                         const std::vector<size_t>& candidates, Rng* rng, size_t k_node) {
    InductionContext ctx{vectors, min_leaf, criterion, candidates, rng, k_node};
    DecisionTree tree;
    tree.min_leaf = min_leaf;
    tree.laplace = laplace;
    tree.criterion = criterion;
    build_node(ctx, std::move(items), tree.nodes, laplace);
    return tree;
}

}  // namespace

WeightedDataset make_dataset(std::vector<FeatureVector> vectors) {
    WeightedDataset data;
    data.weights.assign(vectors.size(), 1.0);
    data.vectors = std::move(vectors);
    validate_dataset(data);
    return data;
}

WeightedDataset apply_cost_weights(const WeightedDataset& data, double vandalism_weight) {
    if (!(vandalism_weight > 0.0)) throw std::invalid_argument("vandalism weight must be > 0");
    validate_dataset(data);
    WeightedDataset out = data;
    for (size_t i = 0; i < out.vectors.size(); ++i)
        out.weights[i] = *out.vectors[i].label == Label::vandalism ? vandalism_weight : 1.0;
    return out;
}

double DecisionTree::predict(const FeatureVector& v) const {
    const TreeNode* node = &nodes[0];
    while (node->feature >= 0) {
        node = v.values[static_cast<size_t>(node->feature)] <= node->threshold
                   ? &nodes[static_cast<size_t>(node->left)]
                   : &nodes[static_cast<size_t>(node->right)];
    }
    return node->p_vandalism;
}

size_t DecisionTree::leaf_count() const {
    size_t n = 0;
    for (const TreeNode& node : nodes)
        if (node.feature < 0) ++n;
    return n;
}

size_t DecisionTree::depth() const {
    // Iterative DFS over the flat node array.
    std::vector<std::pair<int32_t, size_t>> stack{{0, 0}};
    size_t best = 0;
    while (!stack.empty()) {
        const auto [id, d] = stack.back();
        stack.pop_back();
        const TreeNode& node = nodes[static_cast<size_t>(id)];
        if (node.feature < 0) {
            best = std::max(best, d);
            continue;
        }
        stack.emplace_back(node.left, d + 1);
        stack.emplace_back(node.right, d + 1);
    }
    return best;
}

DecisionTree train_tree(const WeightedDataset& data, const TreeParams& params) {
    validate_dataset(data);
    if (!(params.min_leaf > 0.0)) throw std::invalid_argument("min_leaf must be > 0");
    std::vector<Item> items(data.vectors.size());
    for (size_t i = 0; i < items.size(); ++i) items[i] = {i, data.weights[i]};
    const std::vector<size_t> candidates =
        params.candidate_features.empty() ? all_features() : params.candidate_features;
    for (size_t f : candidates)
        if (f >= featureset::kFeatureCount)
            throw std::invalid_argument("candidate feature index out of range");
    return induce_tree(data.vectors, std::move(items), params.min_leaf, params.laplace,
                       params.criterion, candidates, nullptr, 0);
}

int default_k_features(size_t feature_count) {
    int k = 1;
    while ((size_t{1} << k) <= feature_count) ++k;  // k = floor(log2(M)) + 1
    return k;
}

double RandomForest::predict(const FeatureVector& v) const {
    double sum = 0.0;
    for (const DecisionTree& tree : trees) sum += tree.predict(v);
    return sum / static_cast<double>(trees.size());
}

namespace {

RandomForest train_forest_impl(const WeightedDataset& data, const ForestParams& params,
                               bool parallel) {
    validate_dataset(data);
    if (params.n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
    const size_t n = data.vectors.size();
    const std::vector<size_t> candidates = all_features();
    const int k = params.k_features > 0 ? params.k_features
                                        : default_k_features(featureset::kFeatureCount);

    // Cumulative weights make the bootstrap weight-proportional.
    std::vector<double> cumulative(n);
    double running = 0.0;
    for (size_t i = 0; i < n; ++i) {
        running += data.weights[i];
        cumulative[i] = running;
    }

    RandomForest forest;
    forest.k_features = k;
    forest.seed = params.seed;
    forest.trees.resize(static_cast<size_t>(params.n_trees));
    std::vector<std::vector<uint8_t>> in_bag(forest.trees.size(),
                                             std::vector<uint8_t>(n, 0));

    auto train_one = [&](size_t t) {
        Rng rng = Rng::stream(params.seed, t);
        std::vector<Item> items;
        items.reserve(n);
        if (params.bootstrap) {
            for (size_t draw = 0; draw < n; ++draw) {
                const double u = rng.next_double() * running;
                const size_t pick = static_cast<size_t>(
                    std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                    cumulative.begin());
                const size_t index = std::min(pick, n - 1);
                items.push_back({index, 1.0});
                in_bag[t][index] = 1;
            }
        } else {
            for (size_t i = 0; i < n; ++i) {
                items.push_back({i, data.weights[i]});
                in_bag[t][i] = 1;
            }
        }
        forest.trees[t] = induce_tree(data.vectors, std::move(items), params.min_leaf,
                                      params.laplace, params.criterion, candidates, &rng,
                                      static_cast<size_t>(k));
    };
    if (parallel)
        parallel_for(forest.trees.size(), params.jobs, train_one);
    else
        serial_for(forest.trees.size(), train_one);

    // Out-of-bag error: each instance judged only by trees that never saw it.
    double wrong = 0.0, seen = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        size_t votes = 0;
        for (size_t t = 0; t < forest.trees.size(); ++t) {
            if (in_bag[t][i]) continue;
            sum += forest.trees[t].predict(data.vectors[i]);
            ++votes;
        }
        if (votes == 0) continue;
        const bool predicted_vandal = sum / static_cast<double>(votes) >= 0.5;
        const bool actual_vandal = *data.vectors[i].label == Label::vandalism;
        seen += data.weights[i];
        if (predicted_vandal != actual_vandal) wrong += data.weights[i];
    }
    forest.oob_error = seen > 0.0 ? wrong / seen : 0.0;
    return forest;
}

}  // namespace

RandomForest train_forest(const WeightedDataset& data, const ForestParams& params) {
    return train_forest_impl(data, params, true);
}

RandomForest train_forest_serial(const WeightedDataset& data, const ForestParams& params) {
    return train_forest_impl(data, params, false);
}

double BoostedStumps::predict(const FeatureVector& v) const {
    double f = 0.0;
    for (const Stump& s : stumps)
        f += 0.5 * shrinkage *
             (v.values[static_cast<size_t>(s.feature)] <= s.threshold ? s.left_value
                                                                      : s.right_value);
    return 1.0 / (1.0 + std::exp(-2.0 * f));
}

BoostedStumps train_logitboost(const WeightedDataset& data, const BoostParams& params) {
    validate_dataset(data);
    if (params.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    const size_t n = data.vectors.size();
    size_t vandal_count = 0;
    for (const FeatureVector& v : data.vectors)
        if (*v.label == Label::vandalism) ++vandal_count;
    if (vandal_count == 0 || vandal_count == n)
        throw std::invalid_argument("logitboost requires both classes");

    // Feature orders are fixed across iterations; presort once.
    const size_t m = featureset::kFeatureCount;
    std::vector<std::vector<size_t>> order(m);
    for (size_t f = 0; f < m; ++f) {
        order[f].resize(n);
        std::iota(order[f].begin(), order[f].end(), size_t{0});
        std::sort(order[f].begin(), order[f].end(), [&](size_t a, size_t b) {
            const double va = data.vectors[a].values[f];
            const double vb = data.vectors[b].values[f];
            if (va != vb) return va < vb;
            return a < b;
        });
    }

    std::vector<double> score(n, 0.0);  // F(x)
    std::vector<double> w(n), z(n);
    BoostedStumps model;
    model.shrinkage = params.shrinkage;
    model.stumps.reserve(static_cast<size_t>(params.iterations));

    for (int round = 0; round < params.iterations; ++round) {
        for (size_t i = 0; i < n; ++i) {
            double p = 1.0 / (1.0 + std::exp(-2.0 * score[i]));
            p = std::clamp(p, 1e-8, 1.0 - 1e-8);
            const double y = *data.vectors[i].label == Label::vandalism ? 1.0 : 0.0;
            const double variance = p * (1.0 - p);
            z[i] = std::clamp((y - p) / variance, -params.z_max, params.z_max);
            w[i] = variance * data.weights[i];
        }

        double w_total = 0.0, wz_total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            w_total += w[i];
            wz_total += w[i] * z[i];
        }

        // Weighted least-squares stump: maximize the explained sum of squares
        // (WZ_l)^2/W_l + (WZ_r)^2/W_r over all boundaries.
        bool found = false;
        Stump best{};
        double best_score = 0.0;
        for (size_t f = 0; f < m; ++f) {
            double w_left = 0.0, wz_left = 0.0;
            for (size_t i = 0; i + 1 < n; ++i) {
                const size_t a = order[f][i];
                const size_t b = order[f][i + 1];
                w_left += w[a];
                wz_left += w[a] * z[a];
                const double value = data.vectors[a].values[f];
                const double next = data.vectors[b].values[f];
                if (value == next) continue;
                const double w_right = w_total - w_left;
                if (!(w_left > 0.0) || !(w_right > 0.0)) continue;
                const double wz_right = wz_total - wz_left;
                const double explained =
                    wz_left * wz_left / w_left + wz_right * wz_right / w_right;
                if (!found || explained > best_score) {
                    found = true;
                    best_score = explained;
                    best.feature = static_cast<int32_t>(f);
                    best.threshold = midpoint(value, next);
                    best.left_value = wz_left / w_left;
                    best.right_value = wz_right / w_right;
                }
            }
        }
        if (!found) {
            // Every feature is constant: fall back to a constant stump.
            const double mean = w_total > 0.0 ? wz_total / w_total : 0.0;
            best.feature = 0;
            best.threshold = std::numeric_limits<double>::infinity();
            best.left_value = mean;
            best.right_value = mean;
        }

        for (size_t i = 0; i < n; ++i) {
            const double fit = data.vectors[i].values[static_cast<size_t>(best.feature)] <=
                                       best.threshold
                                   ? best.left_value
                                   : best.right_value;
            score[i] += 0.5 * params.shrinkage * fit;
        }
        model.stumps.push_back(best);
    }
    return model;
}

double Model::predict(const FeatureVector& v) const {
    return std::visit([&](const auto& m) { return m.predict(v); }, value);
}

std::string_view Model::kind_name() const {
    switch (value.index()) {
        case 0: return "tree";
        case 1: return "forest";
        default: return "logitboost";
    }
}

// ---------------------------------------------------------------------------
// Serialization. Little-endian binary container:
//   "EDGMODEL" | u32 version | u8 kind | u32 feature_count |
//   u64 payload_size | payload | u64 fnv1a64(payload)

namespace {

constexpr char kMagic[8] = {'E', 'D', 'G', 'M', 'O', 'D', 'E', 'L'};
constexpr uint32_t kFormatVersion = 1;

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i32(std::string& out, int32_t v) { put_u32(out, static_cast<uint32_t>(v)); }

void put_f64(std::string& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

struct ByteReader {
    const std::string& bytes;
    size_t pos = 0;

    void need(size_t n) const {
        if (pos + n > bytes.size()) throw ModelError("corrupt model file: truncated payload");
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[pos++])) << (8 * i);
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<uint64_t>(static_cast<unsigned char>(bytes[pos++])) << (8 * i);
        return v;
    }
    int32_t i32() { return static_cast<int32_t>(u32()); }
    double f64() {
        const uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(bytes[pos++]);
    }
};

void encode_tree(std::string& out, const DecisionTree& tree) {
    put_f64(out, tree.min_leaf);
    out.push_back(tree.laplace ? 1 : 0);
    out.push_back(static_cast<char>(tree.criterion));
    put_u32(out, static_cast<uint32_t>(tree.nodes.size()));
    for (const TreeNode& node : tree.nodes) {
        put_i32(out, node.feature);
        put_f64(out, node.threshold);
        put_f64(out, node.p_vandalism);
        put_i32(out, node.left);
        put_i32(out, node.right);
    }
}

DecisionTree decode_tree(ByteReader& in) {
    DecisionTree tree;
    tree.min_leaf = in.f64();
    tree.laplace = in.u8() != 0;
    tree.criterion = static_cast<SplitCriterion>(in.u8());
    const uint32_t count = in.u32();
    if (count == 0) throw ModelError("corrupt model file: empty tree");
    tree.nodes.resize(count);
    for (TreeNode& node : tree.nodes) {
        node.feature = in.i32();
        node.threshold = in.f64();
        node.p_vandalism = in.f64();
        node.left = in.i32();
        node.right = in.i32();
        if (node.feature >= static_cast<int32_t>(featureset::kFeatureCount) ||
            node.feature < -1)
            throw ModelError("corrupt model file: feature index out of range");
        if (node.feature >= 0 &&
            (node.left < 0 || node.right < 0 ||
             node.left >= static_cast<int32_t>(count) ||
             node.right >= static_cast<int32_t>(count)))
            throw ModelError("corrupt model file: child index out of range");
    }
    return tree;
}

uint8_t model_kind(const Model& model) { return static_cast<uint8_t>(model.value.index() + 1); }

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
    std::string payload;
    if (const auto* tree = std::get_if<DecisionTree>(&model.value)) {
        encode_tree(payload, *tree);
    } else if (const auto* forest = std::get_if<RandomForest>(&model.value)) {
        put_u32(payload, static_cast<uint32_t>(forest->k_features));
        put_f64(payload, forest->oob_error);
        put_u64(payload, forest->seed);
        put_u32(payload, static_cast<uint32_t>(forest->trees.size()));
        for (const DecisionTree& tree : forest->trees) encode_tree(payload, tree);
    } else {
        const auto& boost = std::get<BoostedStumps>(model.value);
        put_f64(payload, boost.shrinkage);
        put_u32(payload, static_cast<uint32_t>(boost.stumps.size()));
        for (const Stump& s : boost.stumps) {
            put_i32(payload, s.feature);
            put_f64(payload, s.threshold);
            put_f64(payload, s.left_value);
            put_f64(payload, s.right_value);
        }
    }

    std::string header;
    header.append(kMagic, sizeof kMagic);
    put_u32(header, kFormatVersion);
    header.push_back(static_cast<char>(model_kind(model)));
    put_u32(header, static_cast<uint32_t>(featureset::kFeatureCount));
    put_u64(header, payload.size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError("cannot open model file for writing: " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    std::string tail;
    put_u64(tail, fnv1a64(payload));
    out.write(tail.data(), static_cast<std::streamsize>(tail.size()));
    if (!out) throw ModelError("failed writing model file: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    constexpr size_t kHeaderSize = sizeof kMagic + 4 + 1 + 4 + 8;
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        throw ModelError("not an editguard model file: " + path.string());

    ByteReader reader{bytes, sizeof kMagic};
    const uint32_t version = reader.u32();
    if (version != kFormatVersion)
        throw ModelError("model format version mismatch: file has version " +
                         std::to_string(version) + ", this build reads version " +
                         std::to_string(kFormatVersion));
    const uint8_t kind = reader.u8();
    const uint32_t features = reader.u32();
    if (features != featureset::kFeatureCount)
        throw ModelError("feature schema mismatch: model expects " + std::to_string(features) +
                         " features, this build provides " +
                         std::to_string(featureset::kFeatureCount));
    const uint64_t payload_size = reader.u64();
    if (bytes.size() != kHeaderSize + payload_size + 8)
        throw ModelError("corrupt model file: truncated or trailing bytes");

    const std::string payload = bytes.substr(kHeaderSize, payload_size);
    ByteReader tail{bytes, kHeaderSize + payload_size};
    if (tail.u64() != fnv1a64(payload))
        throw ModelError("corrupt model file: checksum mismatch");

    ByteReader body{payload, 0};
    Model model;
    switch (kind) {
        case 1:
            model.value = decode_tree(body);
            break;
        case 2: {
            RandomForest forest;
            forest.k_features = static_cast<int>(body.u32());
            forest.oob_error = body.f64();
            forest.seed = body.u64();
            const uint32_t count = body.u32();
            if (count == 0) throw ModelError("corrupt model file: empty forest");
            forest.trees.reserve(count);
            for (uint32_t t = 0; t < count; ++t) forest.trees.push_back(decode_tree(body));
            model.value = std::move(forest);
            break;
        }
        case 3: {
            BoostedStumps boost;
            boost.shrinkage = body.f64();
            const uint32_t count = body.u32();
            boost.stumps.resize(count);
            for (Stump& s : boost.stumps) {
                s.feature = body.i32();
                s.threshold = body.f64();
                s.left_value = body.f64();
                s.right_value = body.f64();
                if (s.feature < 0 ||
                    s.feature >= static_cast<int32_t>(featureset::kFeatureCount))
                    throw ModelError("corrupt model file: stump feature out of range");
            }
            model.value = std::move(boost);
            break;
        }
        default:
            throw ModelError("corrupt model file: unknown model kind " + std::to_string(kind));
    }
    if (body.pos != payload.size())
        throw ModelError("corrupt model file: trailing payload bytes");
    return model;
}

}  // namespace editguard::learn
