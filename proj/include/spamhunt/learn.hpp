#pragma once

#include "spamhunt/features.hpp"
#include "spamhunt/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace spamhunt {

/// Binary training view: label 1 = Spammer, 0 = NonSpammer (Compromised
/// maps to NonSpammer when datasets are assembled).
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows; // rows[i][j] = feature j of example i
    std::vector<int> labels;

    std::size_t size() const { return rows.size(); }
};

/// Joins feature vectors with account classes; vectors without a label are
/// skipped and counted in dropped.
Dataset make_dataset(const std::vector<FeatureVector>& vectors,
                     const std::vector<std::pair<std::string, AccountClass>>& classes,
                     const std::vector<std::string>& feature_names,
                     std::size_t* dropped = nullptr);

/// Restriction of ds to the named features, in the given order.
Dataset project_dataset(const Dataset& ds, const std::vector<std::string>& feature_names);

enum class Algorithm { NaiveBayes, DecisionTree, RandomForest, AdaBoost };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct TrainConfig {
    int max_depth = 0; // 0 = unbounded
    int min_leaf = 1;
    int n_trees = 100;
    int boost_rounds = 50;
};

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;  // x[feature] <= threshold
    int right = -1; // x[feature] >  threshold
    std::int64_t n_non = 0; // leaf class counts
    std::int64_t n_spam = 0;

    bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
    std::vector<TreeNode> nodes; // root at index 0
};

struct NaiveBayesParams {
    std::array<double, 2> priors{};               // [non, spam]
    std::array<std::vector<double>, 2> means{};   // per class, per feature
    std::array<std::vector<double>, 2> variances{};
};

struct Stump {
    int feature = 0;
    double threshold = 0.0;
    bool spam_if_gt = true; // vote orientation across the threshold
    double alpha = 0.0;
};

struct TrainedModel {
    Algorithm kind = Algorithm::NaiveBayes;
    std::vector<std::string> feature_names;
    TrainConfig config;
    std::uint64_t seed = 0;

    NaiveBayesParams nb;
    TreeModel tree;
    std::vector<TreeModel> forest;
    std::vector<Stump> stumps;
};

/// Deterministic in (ds, config, seed). Forest trees use per-tree seeds
/// derived as seed ^ tree index and may be trained concurrently.
TrainedModel train(const Dataset& ds, Algorithm kind, const TrainConfig& config,
                   std::uint64_t seed, unsigned jobs = 1);

struct Prediction {
    AccountClass account_class = AccountClass::NonSpammer;
    double score = 0.0; // spammer probability-like score in [0,1]
};

/// Score > 0.5 classifies Spammer; ties go to NonSpammer.
Prediction predict_row(const TrainedModel& model, const std::vector<double>& row);
Prediction predict(const TrainedModel& model, const FeatureVector& v);

/// Row in model feature order pulled from a named vector.
std::vector<double> project_features(const FeatureVector& v,
                                     const std::vector<std::string>& feature_names);

std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::string& text);
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

enum class RankMethod { InfoGain, ChiSquared };

std::string to_string(RankMethod m);
RankMethod rank_method_from_string(const std::string& s);

struct FeatureRanking {
    RankMethod method = RankMethod::InfoGain;
    std::vector<std::pair<std::string, double>> scores; // descending
};

/// Equal-frequency discretization into `bins` rank bins (ties share a
/// bin), scored against the class by information gain in bits or the
/// Pearson chi-squared statistic.
FeatureRanking rank_features(const Dataset& ds, RankMethod method, int bins);

/// Assigns each example to a rank bin; exposed for the ranking tests.
std::vector<int> equal_frequency_bins(const std::vector<double>& values, int bins);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Top-k ranking followed by greedy pruning of features correlating above
/// the threshold with a higher-ranked kept feature.
std::vector<std::string> select_features(const Dataset& ds, std::size_t top_k,
                                         double corr_threshold,
                                         RankMethod method = RankMethod::InfoGain, int bins = 10);

/// Registered feature-set presets: "full" and "paper-selected".
std::vector<std::string> feature_set_preset(const std::string& name);
std::vector<std::string> feature_set_preset_names();

} // namespace spamhunt
