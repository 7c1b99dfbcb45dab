#include "spamhunt/learn.hpp"

#include "spamhunt/errors.hpp"
#include "spamhunt/io.hpp"
#include "spamhunt/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace spamhunt {

using nlohmann::json;

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::NaiveBayes: return "naive_bayes";
        case Algorithm::DecisionTree: return "decision_tree";
        case Algorithm::RandomForest: return "random_forest";
        case Algorithm::AdaBoost: return "adaboost";
    }
    return "naive_bayes";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "naive_bayes") return Algorithm::NaiveBayes;
    if (s == "decision_tree") return Algorithm::DecisionTree;
    if (s == "random_forest") return Algorithm::RandomForest;
    if (s == "adaboost") return Algorithm::AdaBoost;
    throw InputError("unknown algorithm: " + s);
}

std::string to_string(RankMethod m) {
    return m == RankMethod::InfoGain ? "infogain" : "chi2";
}

RankMethod rank_method_from_string(const std::string& s) {
    if (s == "infogain") return RankMethod::InfoGain;
    if (s == "chi2") return RankMethod::ChiSquared;
    throw InputError("unknown ranking method: " + s);
}

std::vector<double> project_features(const FeatureVector& v,
                                     const std::vector<std::string>& feature_names) {
    std::vector<double> row;
    row.reserve(feature_names.size());
    for (const auto& name : feature_names) row.push_back(v.get(name));
    return row;
}

Dataset make_dataset(const std::vector<FeatureVector>& vectors,
                     const std::vector<std::pair<std::string, AccountClass>>& classes,
                     const std::vector<std::string>& feature_names,
                     std::size_t* dropped) {
    std::unordered_map<std::string, AccountClass> by_id(classes.begin(), classes.end());
    Dataset ds;
    ds.feature_names = feature_names;
    std::size_t skipped = 0;
    for (const auto& v : vectors) {
        const auto it = by_id.find(v.account_id);
        if (it == by_id.end()) {
            ++skipped;
            continue;
        }
        ds.rows.push_back(project_features(v, feature_names));
        // Compromised accounts train as NonSpammer; the binary classifier
        // only sees two classes.
        ds.labels.push_back(it->second == AccountClass::Spammer ? 1 : 0);
    }
    if (dropped) *dropped = skipped;
    return ds;
}

Dataset project_dataset(const Dataset& ds, const std::vector<std::string>& feature_names) {
    std::vector<std::size_t> columns;
    columns.reserve(feature_names.size());
    for (const auto& name : feature_names) {
        const auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), name);
        if (it == ds.feature_names.end()) throw InputError("unknown feature: " + name);
        columns.push_back(static_cast<std::size_t>(it - ds.feature_names.begin()));
    }
    Dataset out;
    out.feature_names = feature_names;
    out.labels = ds.labels;
    out.rows.reserve(ds.rows.size());
    for (const auto& row : ds.rows) {
        std::vector<double> projected;
        projected.reserve(columns.size());
        for (std::size_t c : columns) projected.push_back(row[c]);
        out.rows.push_back(std::move(projected));
    }
    return out;
}

namespace {

constexpr double kVarianceFloor = 1e-9;

void validate_training_input(const Dataset& ds, const TrainConfig& config) {
    if (ds.rows.size() != ds.labels.size()) {
        throw InputError("dataset rows and labels differ in length");
    }
    if (config.max_depth < 0 || config.min_leaf < 1 || config.n_trees < 1 ||
        config.boost_rounds < 1) {
        throw InputError("invalid training configuration");
    }
    bool has_spam = false, has_non = false;
    for (int label : ds.labels) {
        if (label != 0 && label != 1) throw InputError("labels must be 0 or 1");
        (label == 1 ? has_spam : has_non) = true;
    }
    if (!has_spam || !has_non) {
        throw InputError("training requires at least one example of each class");
    }
    for (const auto& row : ds.rows) {
        if (row.size() != ds.feature_names.size()) {
            throw InputError("row width does not match the feature-name list");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw InputError("non-finite feature value in dataset");
        }
    }
}

NaiveBayesParams train_naive_bayes(const Dataset& ds) {
    const std::size_t d = ds.feature_names.size();
    NaiveBayesParams nb;
    std::array<std::size_t, 2> counts{};
    for (int c = 0; c < 2; ++c) {
        nb.means[c].assign(d, 0.0);
        nb.variances[c].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const int c = ds.labels[i];
        ++counts[c];
        for (std::size_t j = 0; j < d; ++j) nb.means[c][j] += ds.rows[i][j];
    }
    for (int c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < d; ++j) nb.means[c][j] /= static_cast<double>(counts[c]);
        nb.priors[c] = static_cast<double>(counts[c]) / static_cast<double>(ds.rows.size());
    }
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const int c = ds.labels[i];
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = ds.rows[i][j] - nb.means[c][j];
            nb.variances[c][j] += delta * delta;
        }
    }
    for (int c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < d; ++j) {
            nb.variances[c][j] =
                std::max(kVarianceFloor, nb.variances[c][j] / static_cast<double>(counts[c]));
        }
    }
    return nb;
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = 0.0;
};

double gini(std::size_t n_non, std::size_t n_spam) {
    const double n = static_cast<double>(n_non + n_spam);
    if (n == 0.0) return 0.0;
    const double p0 = static_cast<double>(n_non) / n;
    const double p1 = static_cast<double>(n_spam) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const TrainConfig& config, DetRng* rng, std::size_t mtry)
        : ds_(ds), config_(config), rng_(rng), mtry_(mtry) {}

    TreeModel build(std::vector<std::size_t> indices) {
        TreeModel model;
        grow(model, std::move(indices), 1);
        return model;
    }

private:
    int grow(TreeModel& model, std::vector<std::size_t> indices, int depth) {
        const int node_index = static_cast<int>(model.nodes.size());
        model.nodes.emplace_back();
        std::size_t n_spam = 0;
        for (std::size_t i : indices) n_spam += static_cast<std::size_t>(ds_.labels[i]);
        const std::size_t n_non = indices.size() - n_spam;
        model.nodes[node_index].n_non = static_cast<std::int64_t>(n_non);
        model.nodes[node_index].n_spam = static_cast<std::int64_t>(n_spam);

        const bool pure = n_spam == 0 || n_non == 0;
        const bool depth_capped = config_.max_depth > 0 && depth > config_.max_depth;
        if (pure || depth_capped ||
            indices.size() < 2 * static_cast<std::size_t>(config_.min_leaf)) {
            return node_index;
        }
        const SplitChoice split = best_split(indices, n_non, n_spam);
        if (!split.found) return node_index;

        std::vector<std::size_t> left, right;
        for (std::size_t i : indices) {
            (ds_.rows[i][split.feature] <= split.threshold ? left : right).push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();
        model.nodes[node_index].feature = static_cast<int>(split.feature);
        model.nodes[node_index].threshold = split.threshold;
        const int left_index = grow(model, std::move(left), depth + 1);
        model.nodes[node_index].left = left_index;
        const int right_index = grow(model, std::move(right), depth + 1);
        model.nodes[node_index].right = right_index;
        return node_index;
    }

    std::vector<std::size_t> candidate_features() {
        const std::size_t d = ds_.feature_names.size();
        std::vector<std::size_t> features(d);
        std::iota(features.begin(), features.end(), 0);
        if (!rng_ || mtry_ >= d) return features;
        // Partial Fisher-Yates draw of mtry features without replacement.
        for (std::size_t i = 0; i < mtry_; ++i) {
            std::swap(features[i], features[i + rng_->bounded(d - i)]);
        }
        features.resize(mtry_);
        std::sort(features.begin(), features.end());
        return features;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices, std::size_t n_non,
                           std::size_t n_spam) {
        const double parent_gini = gini(n_non, n_spam);
        const double n = static_cast<double>(indices.size());
        const auto min_leaf = static_cast<std::size_t>(config_.min_leaf);
        SplitChoice best;
        std::vector<std::pair<double, int>> column(indices.size());
        for (std::size_t f : candidate_features()) {
            for (std::size_t k = 0; k < indices.size(); ++k) {
                column[k] = {ds_.rows[indices[k]][f], ds_.labels[indices[k]]};
            }
            std::sort(column.begin(), column.end());
            std::size_t left_non = 0, left_spam = 0;
            for (std::size_t k = 0; k + 1 < column.size(); ++k) {
                (column[k].second == 1 ? left_spam : left_non) += 1;
                if (column[k].first == column[k + 1].first) continue;
                const std::size_t left_count = k + 1;
                const std::size_t right_count = column.size() - left_count;
                if (left_count < min_leaf || right_count < min_leaf) continue;
                const double weighted =
                    (static_cast<double>(left_count) / n) * gini(left_non, left_spam) +
                    (static_cast<double>(right_count) / n) *
                        gini(n_non - left_non, n_spam - left_spam);
                const double decrease = parent_gini - weighted;
                if (decrease > best.decrease + 1e-12) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = column[k].first + (column[k + 1].first - column[k].first) / 2.0;
                    best.decrease = decrease;
                }
            }
        }
        return best;
    }

    const Dataset& ds_;
    const TrainConfig& config_;
    DetRng* rng_;
    std::size_t mtry_;
};

TreeModel train_tree(const Dataset& ds, const TrainConfig& config) {
    std::vector<std::size_t> all(ds.rows.size());
    std::iota(all.begin(), all.end(), 0);
    return TreeBuilder(ds, config, nullptr, ds.feature_names.size()).build(std::move(all));
}

std::vector<TreeModel> train_forest(const Dataset& ds, const TrainConfig& config,
                                    std::uint64_t seed, unsigned jobs) {
    const auto n_trees = static_cast<std::size_t>(config.n_trees);
    const std::size_t d = ds.feature_names.size();
    const auto mtry = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))));
    std::vector<TreeModel> forest(n_trees);
    parallel_for(n_trees, jobs, [&](std::size_t t) {
        DetRng rng(seed ^ static_cast<std::uint64_t>(t));
        std::vector<std::size_t> bootstrap(ds.rows.size());
        for (auto& idx : bootstrap) idx = rng.bounded(ds.rows.size());
        forest[t] = TreeBuilder(ds, config, &rng, mtry).build(std::move(bootstrap));
    });
    return forest;
}

std::vector<Stump> train_adaboost(const Dataset& ds, const TrainConfig& config) {
    const std::size_t n = ds.rows.size();
    const std::size_t d = ds.feature_names.size();

    // Sort orders per feature are reused across rounds.
    std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
    for (std::size_t f = 0; f < d; ++f) {
        std::iota(order[f].begin(), order[f].end(), 0);
        std::stable_sort(order[f].begin(), order[f].end(), [&](std::size_t a, std::size_t b) {
            return ds.rows[a][f] < ds.rows[b][f];
        });
    }

    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<Stump> stumps;
    for (int round = 0; round < config.boost_rounds; ++round) {
        double total_spam_weight = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (ds.labels[i] == 1) total_spam_weight += weights[i];
        }
        Stump best;
        double best_error = 2.0;
        for (std::size_t f = 0; f < d; ++f) {
            const auto& sorted = order[f];
            // err(spam if >) scanned left to right: spam weight on the left
            // plus non-spam weight on the right.
            double left_spam = 0, left_non = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                const std::size_t i = sorted[k];
                (ds.labels[i] == 1 ? left_spam : left_non) += weights[i];
                const double v = ds.rows[i][f];
                const double v_next = ds.rows[sorted[k + 1]][f];
                if (v == v_next) continue;
                const double err_gt = left_spam + (1.0 - total_spam_weight - left_non);
                for (const bool spam_if_gt : {true, false}) {
                    const double err = spam_if_gt ? err_gt : 1.0 - err_gt;
                    if (err < best_error - 1e-12) {
                        best_error = err;
                        best.feature = static_cast<int>(f);
                        best.threshold = v + (v_next - v) / 2.0;
                        best.spam_if_gt = spam_if_gt;
                    }
                }
            }
        }
        if (best_error >= 0.5) break;
        const double floored = std::max(best_error, 1e-12);
        best.alpha = 0.5 * std::log((1.0 - floored) / floored);
        stumps.push_back(best);
        if (best_error <= 0.0) break; // perfect stump
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = ds.rows[i][static_cast<std::size_t>(best.feature)];
            const int h = (x > best.threshold) == best.spam_if_gt ? 1 : -1;
            const int y = ds.labels[i] == 1 ? 1 : -1;
            weights[i] *= std::exp(-best.alpha * h * y);
            norm += weights[i];
        }
        for (auto& w : weights) w /= norm;
    }
    return stumps;
}

double tree_spam_fraction(const TreeModel& tree, const std::vector<double>& row) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
        const double v = row[static_cast<std::size_t>(node->feature)];
        node = &tree.nodes[static_cast<std::size_t>(v <= node->threshold ? node->left
                                                                         : node->right)];
    }
    const double total = static_cast<double>(node->n_non + node->n_spam);
    return total == 0.0 ? 0.5 : static_cast<double>(node->n_spam) / total;
}

} // namespace

TrainedModel train(const Dataset& ds, Algorithm kind, const TrainConfig& config,
                   std::uint64_t seed, unsigned jobs) {
    validate_training_input(ds);
    TrainedModel model;
    model.kind = kind;
    model.feature_names = ds.feature_names;
    model.config = config;
    model.seed = seed;
    switch (kind) {
        case Algorithm::NaiveBayes: model.nb = train_naive_bayes(ds); break;
        case Algorithm::DecisionTree: model.tree = train_tree(ds, config); break;
        case Algorithm::RandomForest: model.forest = train_forest(ds, config, seed, jobs); break;
        case Algorithm::AdaBoost: model.stumps = train_adaboost(ds, config); break;
    }
    return model;
}

Prediction predict_row(const TrainedModel& model, const std::vector<double>& row) {
    if (row.size() != model.feature_names.size()) {
        throw InputError("feature row width does not match the model");
    }
    double score = 0.5;
    switch (model.kind) {
        case Algorithm::NaiveBayes: {
            // Log-space Gaussian likelihoods, normalized with log-sum-exp.
            std::array<double, 2> log_post{};
            for (int c = 0; c < 2; ++c) {
                double lp = std::log(model.nb.priors[c]);
                for (std::size_t j = 0; j < row.size(); ++j) {
                    const double var = model.nb.variances[c][j];
                    const double delta = row[j] - model.nb.means[c][j];
                    lp += -0.5 * std::log(2.0 * M_PI * var) - delta * delta / (2.0 * var);
                }
                log_post[c] = lp;
            }
            const double m = std::max(log_post[0], log_post[1]);
            const double z = std::exp(log_post[0] - m) + std::exp(log_post[1] - m);
            score = std::exp(log_post[1] - m) / z;
            break;
        }
        case Algorithm::DecisionTree:
            score = tree_spam_fraction(model.tree, row);
            break;
        case Algorithm::RandomForest: {
            std::size_t votes = 0;
            for (const auto& tree : model.forest) {
                if (tree_spam_fraction(tree, row) > 0.5) ++votes;
            }
            score = model.forest.empty()
                        ? 0.5
                        : static_cast<double>(votes) / static_cast<double>(model.forest.size());
            break;
        }
        case Algorithm::AdaBoost: {
            double margin = 0;
            for (const auto& stump : model.stumps) {
                const double v = row[static_cast<std::size_t>(stump.feature)];
                const int h = (v > stump.threshold) == stump.spam_if_gt ? 1 : -1;
                margin += stump.alpha * h;
            }
            score = 1.0 / (1.0 + std::exp(-margin));
            break;
        }
    }
    Prediction p;
    p.score = score;
    p.account_class = score > 0.5 ? AccountClass::Spammer : AccountClass::NonSpammer;
    return p;
}

Prediction predict(const TrainedModel& model, const FeatureVector& v) {
    return predict_row(model, project_features(v, model.feature_names));
}

namespace {

json tree_to_json(const TreeModel& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
        json node;
        node["feature"] = n.feature;
        node["threshold"] = n.threshold;
        node["left"] = n.left;
        node["right"] = n.right;
        node["n_non"] = n.n_non;
        node["n_spam"] = n.n_spam;
        nodes.push_back(std::move(node));
    }
    return json{{"nodes", std::move(nodes)}};
}

TreeModel tree_from_json(const json& j) {
    TreeModel tree;
    for (const auto& node : j.at("nodes")) {
        TreeNode n;
        n.feature = node.at("feature").get<int>();
        n.threshold = node.at("threshold").get<double>();
        n.left = node.at("left").get<int>();
        n.right = node.at("right").get<int>();
        n.n_non = node.at("n_non").get<std::int64_t>();
        n.n_spam = node.at("n_spam").get<std::int64_t>();
        tree.nodes.push_back(n);
    }
    if (tree.nodes.empty()) throw InputError("tree model has no nodes");
    return tree;
}

} // namespace

std::string serialize_model(const TrainedModel& model) {
    json j;
    j["format_version"] = 1;
    j["algorithm"] = to_string(model.kind);
    j["feature_names"] = model.feature_names;
    j["seed"] = model.seed;
    j["config"] = {
        {"max_depth", model.config.max_depth},
        {"min_leaf", model.config.min_leaf},
        {"n_trees", model.config.n_trees},
        {"boost_rounds", model.config.boost_rounds},
    };
    json params;
    switch (model.kind) {
        case Algorithm::NaiveBayes:
            params["priors"] = model.nb.priors;
            params["means"] = model.nb.means;
            params["variances"] = model.nb.variances;
            break;
        case Algorithm::DecisionTree:
            params["tree"] = tree_to_json(model.tree);
            break;
        case Algorithm::RandomForest: {
            json trees = json::array();
            for (const auto& tree : model.forest) trees.push_back(tree_to_json(tree));
            params["trees"] = std::move(trees);
            break;
        }
        case Algorithm::AdaBoost: {
            json stumps = json::array();
            for (const auto& s : model.stumps) {
                stumps.push_back({{"feature", s.feature},
                                  {"threshold", s.threshold},
                                  {"spam_if_gt", s.spam_if_gt},
                                  {"alpha", s.alpha}});
            }
            params["stumps"] = std::move(stumps);
            break;
        }
    }
    j["params"] = std::move(params);
    return j.dump(2) + "\n";
}

TrainedModel deserialize_model(const std::string& text) {
    try {
        const json j = json::parse(text);
        if (j.at("format_version").get<int>() != 1) {
            throw InputError("unsupported model format version");
        }
        TrainedModel model;
        model.kind = algorithm_from_string(j.at("algorithm").get<std::string>());
        for (const auto& name : j.at("feature_names")) {
            model.feature_names.push_back(name.get<std::string>());
        }
        model.seed = j.at("seed").get<std::uint64_t>();
        const json& config = j.at("config");
        model.config.max_depth = config.at("max_depth").get<int>();
        model.config.min_leaf = config.at("min_leaf").get<int>();
        model.config.n_trees = config.at("n_trees").get<int>();
        model.config.boost_rounds = config.at("boost_rounds").get<int>();
        const json& params = j.at("params");
        switch (model.kind) {
            case Algorithm::NaiveBayes:
                for (int c = 0; c < 2; ++c) {
                    model.nb.priors[c] = params.at("priors")[c].get<double>();
                    for (const auto& v : params.at("means")[c]) {
                        model.nb.means[c].push_back(v.get<double>());
                    }
                    for (const auto& v : params.at("variances")[c]) {
                        model.nb.variances[c].push_back(v.get<double>());
                    }
                }
                break;
            case Algorithm::DecisionTree:
                model.tree = tree_from_json(params.at("tree"));
                break;
            case Algorithm::RandomForest:
                for (const auto& tree : params.at("trees")) {
                    model.forest.push_back(tree_from_json(tree));
                }
                break;
            case Algorithm::AdaBoost:
                for (const auto& s : params.at("stumps")) {
                    Stump stump;
                    stump.feature = s.at("feature").get<int>();
                    stump.threshold = s.at("threshold").get<double>();
                    stump.spam_if_gt = s.at("spam_if_gt").get<bool>();
                    stump.alpha = s.at("alpha").get<double>();
                    model.stumps.push_back(stump);
                }
                break;
        }
        return model;
    } catch (const json::exception& e) {
        throw InputError(std::string("cannot parse model: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
    atomic_write_file(path, serialize_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
    return deserialize_model(read_file(path));
}

std::vector<int> equal_frequency_bins(const std::vector<double>& values, int bins) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    // Rank-based assignment; runs of equal values share the bin of the
    // run's first rank, which makes the binning invariant under strictly
    // monotonic transforms.
    std::vector<int> assignment(n, 0);
    std::size_t run_start = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r > 0 && values[order[r]] != values[order[r - 1]]) run_start = r;
        assignment[order[r]] =
            static_cast<int>(run_start * static_cast<std::size_t>(bins) / n);
    }
    return assignment;
}

namespace {

double entropy_bits(const std::vector<std::size_t>& counts, std::size_t total) {
    double h = 0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

FeatureRanking rank_features(const Dataset& ds, RankMethod method, int bins) {
    if (bins < 2) throw InputError("bins must be at least 2");
    if (ds.rows.empty()) throw InputError("empty dataset");
    const std::size_t n = ds.rows.size();
    const std::size_t d = ds.feature_names.size();

    std::vector<std::size_t> class_counts(2, 0);
    for (int label : ds.labels) ++class_counts[static_cast<std::size_t>(label)];
    const double class_entropy = entropy_bits(class_counts, n);

    FeatureRanking ranking;
    ranking.method = method;
    std::vector<std::pair<double, std::size_t>> scored(d);
    std::vector<double> column(n);
    for (std::size_t f = 0; f < d; ++f) {
        for (std::size_t i = 0; i < n; ++i) column[i] = ds.rows[i][f];
        const std::vector<int> assignment = equal_frequency_bins(column, bins);
        std::map<int, std::vector<std::size_t>> table; // bin -> class counts
        for (std::size_t i = 0; i < n; ++i) {
            auto& cell = table[assignment[i]];
            if (cell.empty()) cell.assign(2, 0);
            ++cell[static_cast<std::size_t>(ds.labels[i])];
        }
        double score = 0;
        if (method == RankMethod::InfoGain) {
            double conditional = 0;
            for (const auto& [bin, counts] : table) {
                const std::size_t bin_total = counts[0] + counts[1];
                conditional += static_cast<double>(bin_total) / static_cast<double>(n) *
                               entropy_bits(counts, bin_total);
            }
            score = std::max(0.0, class_entropy - conditional);
        } else {
            for (const auto& [bin, counts] : table) {
                const std::size_t bin_total = counts[0] + counts[1];
                for (int c = 0; c < 2; ++c) {
                    const double expected = static_cast<double>(bin_total) *
                                            static_cast<double>(class_counts[c]) /
                                            static_cast<double>(n);
                    if (expected == 0.0) continue;
                    const double delta = static_cast<double>(counts[c]) - expected;
                    score += delta * delta / expected;
                }
            }
        }
        scored[f] = {score, f};
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second; // ties keep canonical feature order
    });
    for (const auto& [score, f] : scored) {
        ranking.scores.emplace_back(ds.feature_names[f], score);
    }
    return ranking;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean_a = 0, mean_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);
    double cov = 0, var_a = 0, var_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return 0.0; // constant columns
    return cov / std::sqrt(var_a * var_b);
}

std::vector<std::string> select_features(const Dataset& ds, std::size_t top_k,
                                         double corr_threshold, RankMethod method, int bins) {
    if (top_k > ds.feature_names.size()) {
        throw InputError("top_k exceeds the feature count");
    }
    const FeatureRanking ranking = rank_features(ds, method, bins);

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t f = 0; f < ds.feature_names.size(); ++f) index[ds.feature_names[f]] = f;
    const auto column = [&](const std::string& name) {
        std::vector<double> col(ds.rows.size());
        const std::size_t f = index.at(name);
        for (std::size_t i = 0; i < ds.rows.size(); ++i) col[i] = ds.rows[i][f];
        return col;
    };

    std::vector<std::string> kept;
    std::vector<std::vector<double>> kept_columns;
    for (std::size_t r = 0; r < top_k && r < ranking.scores.size(); ++r) {
        const std::string& name = ranking.scores[r].first;
        std::vector<double> col = column(name);
        bool correlated = false;
        for (const auto& kept_col : kept_columns) {
            if (std::abs(pearson_correlation(kept_col, col)) > corr_threshold) {
                correlated = true;
                break;
            }
        }
        if (!correlated) {
            kept.push_back(name);
            kept_columns.push_back(std::move(col));
        }
    }
    return kept;
}

std::vector<std::string> feature_set_preset(const std::string& name) {
    if (name == "full") return feature_catalog();
    if (name == "paper-selected") {
        return {
            "tweeting_freq_recent",
            "rate_reply",
            "nb_replicates",
            "frac_tweets_with_mention",
            "adjusted_uses_url",
            "hashtag_per_day",
            "adjusted_uses_hashtag",
            "nb_mention",
            "mention_per_day",
            "adjusted_uses_mention",
            "words_per_tweet_min",
            "mention_per_tweet_max",
            "mention_per_word_avg",
            "retweets_per_tweet_avg",
        };
    }
    throw InputError("unknown feature-set preset: " + name);
}

std::vector<std::string> feature_set_preset_names() {
    return {"full", "paper-selected"};
}

} // namespace spamhunt
