#include "spamhunt/features.hpp"

#include "spamhunt/errors.hpp"
#include "spamhunt/io.hpp"
#include "spamhunt/similarity.hpp"
#include "spamhunt/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace spamhunt {

using nlohmann::json;

double FeatureVector::get(const std::string& name) const {
    for (const auto& [key, value] : features) {
        if (key == name) return value;
    }
    throw InputError("missing feature: " + name);
}

bool FeatureVector::has(const std::string& name) const {
    return std::any_of(features.begin(), features.end(),
                       [&](const auto& kv) { return kv.first == name; });
}

namespace {

constexpr double kEpsilonDays = 1.0 / 86400.0;

const char* const kEntityKinds[3] = {"url", "hashtag", "mention"};

struct Stats {
    double min = 0, max = 0, median = 0, avg = 0;
};

Stats stats_of(std::vector<double> values) {
    Stats s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    double sum = 0;
    for (double v : values) sum += v;
    s.avg = sum / static_cast<double>(n);
    return s;
}

void push_stats(PartialFeatures& out, const std::string& prefix, const Stats& s) {
    out.emplace_back(prefix + "_min", s.min);
    out.emplace_back(prefix + "_max", s.max);
    out.emplace_back(prefix + "_median", s.median);
    out.emplace_back(prefix + "_avg", s.avg);
}

// Zero-denominator ratios resolve to 0 so vectors stay finite.
double ratio(double num, double den) {
    return den == 0.0 ? 0.0 : num / den;
}

void require_window(const AccountSnapshot& acc) {
    if (acc.recent_tweets.empty()) {
        throw InputError("account " + acc.account_id + ": empty recent-tweet window");
    }
}

// Days spanned by the recent window, floored at one second.
double window_days(const AccountSnapshot& acc) {
    const Timestamp newest = acc.recent_tweets.front().created_at;
    const Timestamp oldest = acc.recent_tweets.back().created_at;
    const double days = static_cast<double>(newest - oldest) / kSecondsPerDay;
    return std::max(kEpsilonDays, days);
}

const std::vector<std::string>& tweet_entities(const TweetRecord& t, const std::string& kind) {
    if (kind == "url") return t.urls;
    if (kind == "hashtag") return t.hashtags;
    return t.mentions;
}

} // namespace

PartialFeatures profile_features(const AccountSnapshot& acc) {
    const double age_days = static_cast<double>(acc.snapshot_at - acc.created_at) / kSecondsPerDay;
    if (age_days <= 0.0) {
        throw InputError("account " + acc.account_id + ": non-positive age");
    }
    const auto followers = static_cast<double>(acc.followers_count);
    const auto friends = static_cast<double>(acc.friends_count);

    PartialFeatures out;
    out.emplace_back("followers", followers);
    out.emplace_back("friends", friends);
    out.emplace_back("ratio_fpf", ratio(followers, friends));
    out.emplace_back("ratio_alt", ratio(friends, followers * followers));
    out.emplace_back("reputation", ratio(followers, friends + followers));
    out.emplace_back("followers_per_day", followers / age_days);
    out.emplace_back("friends_per_day", friends / age_days);
    out.emplace_back("statuses_count", static_cast<double>(acc.statuses_count));
    out.emplace_back("listed_count", static_cast<double>(acc.listed_count));
    out.emplace_back("favourites_count", static_cast<double>(acc.favourites_count));
    out.emplace_back("age_days", age_days);
    out.emplace_back("tweeting_freq_global", static_cast<double>(acc.statuses_count) / age_days);
    const double recent = acc.recent_tweets.empty()
                              ? 0.0
                              : static_cast<double>(acc.recent_tweets.size()) / window_days(acc);
    out.emplace_back("tweeting_freq_recent", recent);
    return out;
}

PartialFeatures content_rates(const AccountSnapshot& acc) {
    require_window(acc);
    const double n = static_cast<double>(acc.recent_tweets.size());
    std::size_t retweets = 0, replies = 0;
    std::vector<double> words;
    words.reserve(acc.recent_tweets.size());
    for (const auto& t : acc.recent_tweets) {
        if (t.is_retweet) {
            ++retweets; // retweet wins over the leading-mention reply rule
        } else {
            const auto tokens = whitespace_tokens(t.text);
            if (!tokens.empty() && tokens.front().front() == '@') ++replies;
        }
        words.push_back(static_cast<double>(word_count(t.text)));
    }
    PartialFeatures out;
    out.emplace_back("rate_retweet", static_cast<double>(retweets) / n);
    out.emplace_back("rate_reply", static_cast<double>(replies) / n);
    out.emplace_back("rate_original",
                     static_cast<double>(acc.recent_tweets.size() - retweets - replies) / n);
    push_stats(out, "words_per_tweet", stats_of(std::move(words)));
    return out;
}

PartialFeatures entity_features(const AccountSnapshot& acc) {
    require_window(acc);
    const double n = static_cast<double>(acc.recent_tweets.size());
    const double days = window_days(acc);

    PartialFeatures out;
    for (const std::string kind : kEntityKinds) {
        std::map<std::string, std::int64_t> uses;
        std::int64_t total = 0;
        std::size_t tweets_with = 0;
        std::vector<double> per_tweet, per_word;
        per_tweet.reserve(acc.recent_tweets.size());
        per_word.reserve(acc.recent_tweets.size());
        for (const auto& t : acc.recent_tweets) {
            const auto& entities = tweet_entities(t, kind);
            if (!entities.empty()) ++tweets_with;
            for (const auto& e : entities) ++uses[e];
            total += static_cast<std::int64_t>(entities.size());
            const auto occurrences = static_cast<double>(entities.size());
            per_tweet.push_back(occurrences);
            per_word.push_back(occurrences /
                               std::max<double>(1.0, static_cast<double>(word_count(t.text))));
        }
        // True diversity 1/sum(p_i^2) computed as total^2 / sum(c_i^2) so
        // uniform usage lands exactly on the unique-entity count.
        double sum_sq = 0;
        for (const auto& [entity, count] : uses) {
            sum_sq += static_cast<double>(count) * static_cast<double>(count);
        }
        const double nb = static_cast<double>(total);
        const double unique = static_cast<double>(uses.size());
        const double diversity = ratio(nb * nb, sum_sq);
        out.emplace_back("frac_tweets_with_" + kind, static_cast<double>(tweets_with) / n);
        out.emplace_back("nb_" + kind, nb);
        out.emplace_back("nb_unique_" + kind, unique);
        out.emplace_back("avg_uses_" + kind, ratio(nb, unique));
        out.emplace_back("diversity_" + kind, diversity);
        out.emplace_back("adjusted_uses_" + kind, ratio(nb, diversity));
        out.emplace_back(kind + "_per_day", nb / days);
        push_stats(out, kind + "_per_tweet", stats_of(std::move(per_tweet)));
        push_stats(out, kind + "_per_word", stats_of(std::move(per_word)));
    }
    return out;
}

PartialFeatures replication_features(const AccountSnapshot& acc, double duplicate_threshold) {
    require_window(acc);
    // Chronological order: the window is newest-first, so walk it backwards.
    std::vector<std::vector<char32_t>> texts;
    texts.reserve(acc.recent_tweets.size());
    for (auto it = acc.recent_tweets.rbegin(); it != acc.recent_tweets.rend(); ++it) {
        texts.push_back(utf8_decode(normalize_text(it->text)));
    }
    const std::size_t n = texts.size();
    double sum = 0;
    std::size_t replicates = 0;
    for (std::size_t j = 0; j < n; ++j) {
        bool duplicate = false;
        for (std::size_t i = 0; i < j; ++i) {
            sum += normalized_similarity(texts[i], texts[j]);
            if (!duplicate && is_near_duplicate(texts[i], texts[j], duplicate_threshold)) {
                duplicate = true;
            }
        }
        if (duplicate) ++replicates;
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    PartialFeatures out;
    out.emplace_back("avg_similarity", pairs == 0.0 ? 0.0 : sum / pairs);
    out.emplace_back("nb_replicates", static_cast<double>(replicates));
    return out;
}

PartialFeatures reputation_features(const AccountSnapshot& acc) {
    require_window(acc);
    std::vector<double> retweets, favorites;
    retweets.reserve(acc.recent_tweets.size());
    favorites.reserve(acc.recent_tweets.size());
    for (const auto& t : acc.recent_tweets) {
        retweets.push_back(static_cast<double>(t.retweet_count));
        favorites.push_back(static_cast<double>(t.favorite_count));
    }
    PartialFeatures out;
    push_stats(out, "retweets_per_tweet", stats_of(std::move(retweets)));
    push_stats(out, "favorites_per_tweet", stats_of(std::move(favorites)));
    return out;
}

PartialFeatures dictionary_feature(const AccountSnapshot& acc, const SpamDictionary& dict) {
    require_window(acc);
    if (dict.empty()) throw InputError("spam dictionary is empty");
    std::size_t matching = 0;
    for (const auto& t : acc.recent_tweets) {
        for (const auto& token : whitespace_tokens(t.text)) {
            if (dict.contains(token)) {
                ++matching;
                break;
            }
        }
    }
    PartialFeatures out;
    out.emplace_back("frac_tweets_spamterm",
                     static_cast<double>(matching) / static_cast<double>(acc.recent_tweets.size()));
    return out;
}

FeatureVector extract(const AccountSnapshot& acc, const SpamDictionary& dict,
                      const ExtractorConfig& config) {
    FeatureVector v;
    v.account_id = acc.account_id;
    for (auto& part : {profile_features(acc), content_rates(acc), entity_features(acc),
                       replication_features(acc, config.duplicate_threshold),
                       reputation_features(acc), dictionary_feature(acc, dict)}) {
        v.features.insert(v.features.end(), part.begin(), part.end());
    }
    const auto& catalog = feature_catalog();
    if (v.features.size() != catalog.size()) {
        throw std::logic_error("feature count does not match catalog");
    }
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (v.features[i].first != catalog[i]) {
            throw std::logic_error("feature order does not match catalog: " + v.features[i].first);
        }
        if (!std::isfinite(v.features[i].second)) {
            throw std::logic_error("non-finite feature: " + v.features[i].first);
        }
    }
    return v;
}

const std::vector<std::string>& feature_catalog() {
    static const std::vector<std::string> catalog = [] {
        std::vector<std::string> names = {
            "followers", "friends", "ratio_fpf", "ratio_alt", "reputation",
            "followers_per_day", "friends_per_day", "statuses_count", "listed_count",
            "favourites_count", "age_days", "tweeting_freq_global", "tweeting_freq_recent",
            "rate_retweet", "rate_reply", "rate_original",
            "words_per_tweet_min", "words_per_tweet_max", "words_per_tweet_median",
            "words_per_tweet_avg",
        };
        for (const std::string kind : kEntityKinds) {
            names.push_back("frac_tweets_with_" + kind);
            names.push_back("nb_" + kind);
            names.push_back("nb_unique_" + kind);
            names.push_back("avg_uses_" + kind);
            names.push_back("diversity_" + kind);
            names.push_back("adjusted_uses_" + kind);
            names.push_back(kind + "_per_day");
            for (const char* stat : {"min", "max", "median", "avg"}) {
                names.push_back(kind + "_per_tweet_" + stat);
            }
            for (const char* stat : {"min", "max", "median", "avg"}) {
                names.push_back(kind + "_per_word_" + stat);
            }
        }
        names.insert(names.end(), {"avg_similarity", "nb_replicates"});
        for (const char* stat : {"min", "max", "median", "avg"}) {
            names.push_back(std::string("retweets_per_tweet_") + stat);
        }
        for (const char* stat : {"min", "max", "median", "avg"}) {
            names.push_back(std::string("favorites_per_tweet_") + stat);
        }
        names.push_back("frac_tweets_spamterm");
        return names;
    }();
    return catalog;
}

std::string catalog_manifest() {
    std::string out = std::string("# spamhunt feature catalog v") + kFeatureCatalogVersion + "\n";
    for (const auto& name : feature_catalog()) {
        out += name;
        out.push_back('\n');
    }
    return out;
}

std::vector<std::string> parse_catalog_manifest(const std::string& text) {
    std::vector<std::string> names;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() != '#') names.push_back(std::move(line));
        start = end + 1;
    }
    return names;
}

SpamDictionary SpamDictionary::from_terms(const std::vector<std::string>& terms) {
    SpamDictionary dict;
    for (const auto& term : terms) {
        if (!term.empty()) dict.terms_.insert(case_fold(term));
    }
    return dict;
}

SpamDictionary SpamDictionary::load(const std::filesystem::path& path) {
    return from_terms(read_lines(path));
}

bool SpamDictionary::contains(const std::string& token) const {
    return terms_.count(case_fold(token)) > 0;
}

std::string SpamDictionary::to_text() const {
    std::string out;
    for (const auto& term : terms_) {
        out += term;
        out.push_back('\n');
    }
    return out;
}

void SpamDictionary::save(const std::filesystem::path& path) const {
    atomic_write_file(path, to_text());
}

std::string feature_lines(const std::vector<FeatureVector>& vectors) {
    std::string out;
    for (const auto& v : vectors) {
        json j;
        j["account_id"] = v.account_id;
        json features;
        for (const auto& [name, value] : v.features) features[name] = value;
        j["features"] = std::move(features);
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

void write_feature_file(const std::filesystem::path& path,
                        const std::vector<FeatureVector>& vectors) {
    atomic_write_file(path, feature_lines(vectors));
}

std::vector<FeatureVector> read_feature_file(const std::filesystem::path& path) {
    std::vector<FeatureVector> vectors;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            const json j = json::parse(lines[i]);
            FeatureVector v;
            v.account_id = j.at("account_id").get<std::string>();
            for (const auto& [name, value] : j.at("features").items()) {
                v.features.emplace_back(name, value.get<double>());
            }
            vectors.push_back(std::move(v));
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return vectors;
}

} // namespace spamhunt
