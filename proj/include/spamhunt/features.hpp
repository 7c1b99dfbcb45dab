#pragma once

#include "spamhunt/types.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace spamhunt {

constexpr const char* kFeatureCatalogVersion = "1";
constexpr double kDuplicateThreshold = 0.90;

/// Named values in canonical catalog order.
using PartialFeatures = std::vector<std::pair<std::string, double>>;

struct FeatureVector {
    std::string account_id;
    PartialFeatures features;

    double get(const std::string& name) const;
    bool has(const std::string& name) const;
};

/// Canonical feature names; every extractor output carries exactly these
/// keys in this order.
const std::vector<std::string>& feature_catalog();

/// Versioned manifest text consumed by training and evaluation.
std::string catalog_manifest();
std::vector<std::string> parse_catalog_manifest(const std::string& text);

/// Spam terms matched whole-token after case folding.
class SpamDictionary {
public:
    static SpamDictionary from_terms(const std::vector<std::string>& terms);
    static SpamDictionary load(const std::filesystem::path& path);

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool contains(const std::string& token) const;
    const std::set<std::string>& terms() const { return terms_; }
    std::string to_text() const;
    void save(const std::filesystem::path& path) const;

private:
    std::set<std::string> terms_; // case-folded
};

struct ExtractorConfig {
    double duplicate_threshold = kDuplicateThreshold;
};

PartialFeatures profile_features(const AccountSnapshot& acc);
PartialFeatures content_rates(const AccountSnapshot& acc);
PartialFeatures entity_features(const AccountSnapshot& acc);
PartialFeatures replication_features(const AccountSnapshot& acc,
                                     double duplicate_threshold = kDuplicateThreshold);
PartialFeatures reputation_features(const AccountSnapshot& acc);
PartialFeatures dictionary_feature(const AccountSnapshot& acc, const SpamDictionary& dict);

/// Full per-account vector; keys match feature_catalog() exactly and all
/// values are finite.
FeatureVector extract(const AccountSnapshot& acc, const SpamDictionary& dict,
                      const ExtractorConfig& config = {});

std::string feature_lines(const std::vector<FeatureVector>& vectors);
void write_feature_file(const std::filesystem::path& path, const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> read_feature_file(const std::filesystem::path& path);

} // namespace spamhunt
