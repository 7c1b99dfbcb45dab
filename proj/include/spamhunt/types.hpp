#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spamhunt {

// Timestamps are UTC epoch seconds; per-day rates use 86400-second days.
using Timestamp = std::int64_t;

constexpr double kSecondsPerDay = 86400.0;

struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    std::string text;
    Timestamp created_at = 0;
    std::string source_name;
    std::optional<std::string> source_url;
    bool is_retweet = false;
    std::optional<std::string> retweeted_author_id;
    std::int64_t retweet_count = 0;
    std::int64_t favorite_count = 0;
    std::vector<std::string> hashtags; // without '#'
    std::vector<std::string> mentions; // without '@'
    std::vector<std::string> urls;     // expanded final form when known
    std::int64_t image_count = 0;
};

// Profile counters plus the most recent window of tweets (<= 200,
// newest first; ties broken by descending tweet_id).
struct AccountSnapshot {
    std::string account_id;
    std::string screen_name;
    Timestamp created_at = 0;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t statuses_count = 0;
    std::int64_t listed_count = 0;
    std::int64_t favourites_count = 0;
    std::vector<TweetRecord> recent_tweets;
    Timestamp snapshot_at = 0;
};

constexpr std::size_t kRecentTweetWindow = 200;

enum class SourceCategory { Official, Trusted, Automated, Unknown };

enum class AccountClass { Spammer, NonSpammer, Compromised };

enum class AutomationKind { Automated, HumanOperated };

constexpr double kAutomationThreshold = 0.80;

struct AutomationStatus {
    AutomationKind status = AutomationKind::HumanOperated;
    double automation_index = 0.0; // in [0,1]; Automated iff index > 0.80
};

std::string to_string(SourceCategory c);
std::string to_string(AccountClass c);
std::string to_string(AutomationKind k);

SourceCategory source_category_from_string(const std::string& s);
AccountClass account_class_from_string(const std::string& s);
AutomationKind automation_kind_from_string(const std::string& s);

} // namespace spamhunt
