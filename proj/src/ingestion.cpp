#include "spamhunt/ingestion.hpp"

#include "spamhunt/errors.hpp"
#include "spamhunt/io.hpp"
#include "spamhunt/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace spamhunt {

using nlohmann::json;

void SourceCatalog::set(const std::string& source_name, SourceCategory category,
                        const std::string& notes) {
    entries_[source_name] = Entry{category, notes};
}

SourceCategory SourceCatalog::classify(const std::string& source_name) const {
    const auto it = entries_.find(source_name);
    return it == entries_.end() ? SourceCategory::Unknown : it->second.category;
}

SourceCategory classify_source(const SourceCatalog& catalog, const std::string& source_name) {
    return catalog.classify(source_name);
}

SourceCatalog SourceCatalog::load(const std::filesystem::path& path) {
    SourceCatalog catalog;
    const auto lines = read_lines(path);
    if (lines.empty() || csv_split(lines[0]) != std::vector<std::string>{"source_name", "category", "notes"}) {
        throw InputError("source catalog " + path.string() +
                         " must start with header source_name,category,notes");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = csv_split(lines[i]);
        if (fields.size() != 3) {
            throw InputError("source catalog " + path.string() + " line " + std::to_string(i + 1) +
                             ": expected 3 fields, got " + std::to_string(fields.size()));
        }
        catalog.set(fields[0], source_category_from_string(fields[1]), fields[2]);
    }
    return catalog;
}

std::string SourceCatalog::to_csv() const {
    std::string out = "source_name,category,notes\n";
    for (const auto& [name, entry] : entries_) {
        out += csv_escape(name) + "," + to_string(entry.category) + "," + csv_escape(entry.notes) + "\n";
    }
    return out;
}

void SourceCatalog::save(const std::filesystem::path& path) const {
    atomic_write_file(path, to_csv());
}

namespace {

json tweet_to_json(const TweetRecord& t) {
    json j;
    j["tweet_id"] = t.tweet_id;
    j["author_id"] = t.author_id;
    j["text"] = t.text;
    j["created_at"] = t.created_at;
    j["source_name"] = t.source_name;
    if (t.source_url) j["source_url"] = *t.source_url;
    j["is_retweet"] = t.is_retweet;
    if (t.retweeted_author_id) j["retweeted_author_id"] = *t.retweeted_author_id;
    j["retweet_count"] = t.retweet_count;
    j["favorite_count"] = t.favorite_count;
    j["hashtags"] = t.hashtags;
    j["mentions"] = t.mentions;
    j["urls"] = t.urls;
    j["image_count"] = t.image_count;
    return j;
}

std::vector<std::string> string_list(const json& j, const char* key) {
    std::vector<std::string> out;
    for (const auto& item : j.at(key)) out.push_back(item.get<std::string>());
    return out;
}

TweetRecord tweet_from_json(const json& j) {
    TweetRecord t;
    t.tweet_id = j.at("tweet_id").get<std::string>();
    t.author_id = j.at("author_id").get<std::string>();
    t.text = j.at("text").get<std::string>();
    t.created_at = j.at("created_at").get<Timestamp>();
    t.source_name = j.at("source_name").get<std::string>();
    if (j.contains("source_url") && !j["source_url"].is_null()) {
        t.source_url = j["source_url"].get<std::string>();
    }
    t.is_retweet = j.at("is_retweet").get<bool>();
    if (j.contains("retweeted_author_id") && !j["retweeted_author_id"].is_null()) {
        t.retweeted_author_id = j["retweeted_author_id"].get<std::string>();
    }
    t.retweet_count = j.at("retweet_count").get<std::int64_t>();
    t.favorite_count = j.at("favorite_count").get<std::int64_t>();
    t.hashtags = string_list(j, "hashtags");
    t.mentions = string_list(j, "mentions");
    t.urls = string_list(j, "urls");
    t.image_count = j.at("image_count").get<std::int64_t>();

    if (t.tweet_id.empty()) throw InputError("empty tweet_id");
    if (t.is_retweet != t.retweeted_author_id.has_value()) {
        throw InputError("tweet " + t.tweet_id + ": is_retweet and retweeted_author_id disagree");
    }
    if (t.retweet_count < 0 || t.favorite_count < 0 || t.image_count < 0) {
        throw InputError("tweet " + t.tweet_id + ": negative counter");
    }
    return t;
}

json profile_to_json(const AccountSnapshot& a) {
    json j;
    j["account_id"] = a.account_id;
    j["screen_name"] = a.screen_name;
    j["created_at"] = a.created_at;
    j["followers_count"] = a.followers_count;
    j["friends_count"] = a.friends_count;
    j["statuses_count"] = a.statuses_count;
    j["listed_count"] = a.listed_count;
    j["favourites_count"] = a.favourites_count;
    j["snapshot_at"] = a.snapshot_at;
    return j;
}

AccountSnapshot profile_from_json(const json& j) {
    AccountSnapshot a;
    a.account_id = j.at("account_id").get<std::string>();
    a.screen_name = j.at("screen_name").get<std::string>();
    a.created_at = j.at("created_at").get<Timestamp>();
    a.followers_count = j.at("followers_count").get<std::int64_t>();
    a.friends_count = j.at("friends_count").get<std::int64_t>();
    a.statuses_count = j.at("statuses_count").get<std::int64_t>();
    a.listed_count = j.at("listed_count").get<std::int64_t>();
    a.favourites_count = j.at("favourites_count").get<std::int64_t>();
    a.snapshot_at = j.at("snapshot_at").get<Timestamp>();

    if (a.account_id.empty()) throw InputError("empty account_id");
    if (a.snapshot_at < a.created_at) {
        throw InputError("account " + a.account_id + ": snapshot_at before created_at");
    }
    if (a.followers_count < 0 || a.friends_count < 0 || a.statuses_count < 0 ||
        a.listed_count < 0 || a.favourites_count < 0) {
        throw InputError("account " + a.account_id + ": negative counter");
    }
    return a;
}

} // namespace

void sort_tweets_newest_first(std::vector<TweetRecord>& tweets) {
    std::sort(tweets.begin(), tweets.end(), [](const TweetRecord& a, const TweetRecord& b) {
        if (a.created_at != b.created_at) return a.created_at > b.created_at;
        return a.tweet_id > b.tweet_id;
    });
}

ParsedCorpus parse_corpus(const std::filesystem::path& path, bool strict) {
    ParsedCorpus result;
    std::unordered_map<std::string, AccountSnapshot> profiles;
    std::unordered_map<std::string, std::vector<TweetRecord>> tweets_by_author;
    std::unordered_set<std::string> seen_tweet_ids;

    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "profile") {
                AccountSnapshot profile = profile_from_json(j);
                if (!profiles.emplace(profile.account_id, std::move(profile)).second) {
                    ++result.stats.duplicate_profiles;
                }
            } else if (kind == "tweet") {
                TweetRecord tweet = tweet_from_json(j);
                if (!seen_tweet_ids.insert(tweet.tweet_id).second) {
                    ++result.stats.duplicate_tweets;
                } else {
                    tweets_by_author[tweet.author_id].push_back(std::move(tweet));
                }
            } else {
                throw InputError("unknown record kind: " + kind);
            }
        } catch (const std::exception& e) {
            if (strict) {
                throw InputError(path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
            }
            ++result.stats.malformed_lines;
        }
    }

    for (auto& [author_id, tweets] : tweets_by_author) {
        if (!profiles.count(author_id)) ++result.stats.accounts_without_profile;
    }
    for (auto& [account_id, profile] : profiles) {
        auto it = tweets_by_author.find(account_id);
        if (it != tweets_by_author.end()) {
            sort_tweets_newest_first(it->second);
            if (it->second.size() > kRecentTweetWindow) it->second.resize(kRecentTweetWindow);
            profile.recent_tweets = std::move(it->second);
        }
        result.snapshots.push_back(std::move(profile));
    }
    std::sort(result.snapshots.begin(), result.snapshots.end(),
              [](const AccountSnapshot& a, const AccountSnapshot& b) {
                  return a.account_id < b.account_id;
              });
    return result;
}

std::string snapshot_store_lines(const std::vector<AccountSnapshot>& snapshots) {
    std::vector<const AccountSnapshot*> ordered;
    ordered.reserve(snapshots.size());
    for (const auto& s : snapshots) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(), [](const AccountSnapshot* a, const AccountSnapshot* b) {
        return a->account_id < b->account_id;
    });
    std::string out;
    for (const AccountSnapshot* s : ordered) {
        json j = profile_to_json(*s);
        json tweets = json::array();
        for (const auto& t : s->recent_tweets) tweets.push_back(tweet_to_json(t));
        j["recent_tweets"] = std::move(tweets);
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

void write_snapshot_store(const std::filesystem::path& path,
                          const std::vector<AccountSnapshot>& snapshots) {
    atomic_write_file(path, snapshot_store_lines(snapshots));
}

std::vector<AccountSnapshot> read_snapshot_store(const std::filesystem::path& path) {
    std::vector<AccountSnapshot> snapshots;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            const json j = json::parse(lines[i]);
            AccountSnapshot s = profile_from_json(j);
            for (const auto& tj : j.at("recent_tweets")) {
                s.recent_tweets.push_back(tweet_from_json(tj));
            }
            if (s.recent_tweets.size() > kRecentTweetWindow) {
                throw InputError("account " + s.account_id + ": recent_tweets exceeds window");
            }
            snapshots.push_back(std::move(s));
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return snapshots;
}

SnapshotStore load_snapshot_store(const std::filesystem::path& path) {
    SnapshotStore store;
    for (auto& s : read_snapshot_store(path)) {
        std::string id = s.account_id;
        store.emplace(std::move(id), std::move(s));
    }
    return store;
}

std::string corpus_lines(const std::vector<AccountSnapshot>& snapshots) {
    std::string out;
    for (const auto& s : snapshots) {
        json j = profile_to_json(s);
        j["kind"] = "profile";
        out += j.dump();
        out.push_back('\n');
        for (const auto& t : s.recent_tweets) {
            json tj = tweet_to_json(t);
            tj["kind"] = "tweet";
            out += tj.dump();
            out.push_back('\n');
        }
    }
    return out;
}

std::string url_host(const std::string& url) {
    std::string rest = url;
    const auto scheme_pos = rest.find("://");
    if (scheme_pos != std::string::npos) rest = rest.substr(scheme_pos + 3);
    const auto end = rest.find_first_of("/?#");
    if (end != std::string::npos) rest = rest.substr(0, end);
    const auto at = rest.find('@');
    if (at != std::string::npos) rest = rest.substr(at + 1);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) rest = rest.substr(0, colon);
    return case_fold(rest);
}

bool is_valid_http_url(const std::string& url) {
    const std::string folded = case_fold(url);
    if (folded.rfind("http://", 0) != 0 && folded.rfind("https://", 0) != 0) return false;
    return !url_host(url).empty();
}

bool Blacklist::contains_host_of(const std::string& url) const {
    return hosts.count(url_host(url)) > 0;
}

Blacklist load_blacklist(const std::filesystem::path& path) {
    Blacklist blacklist;
    for (auto line : read_lines(path)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        blacklist.hosts.insert(case_fold(line.substr(first, last - first + 1)));
    }
    return blacklist;
}

std::optional<std::string> MockRedirectClient::next_hop(const std::string& url) {
    const auto it = hops_.find(url);
    if (it == hops_.end()) return std::nullopt;
    return it->second;
}

UrlResolution resolve_url(RedirectClient& client,
                          const std::string& url,
                          const Blacklist& blacklist,
                          std::size_t max_hops) {
    if (!is_valid_http_url(url)) throw InputError("invalid URL: " + url);
    UrlResolution resolution;
    resolution.original = url;
    resolution.final_url = url;
    while (true) {
        std::optional<std::string> next;
        try {
            next = client.next_hop(resolution.final_url);
        } catch (const TransportError&) {
            resolution.transport_error = true;
            break;
        }
        if (!next) break;
        if (resolution.redirect_hops == max_hops) {
            resolution.transport_error = true;
            break;
        }
        resolution.final_url = *next;
        ++resolution.redirect_hops;
    }
    resolution.blacklisted = blacklist.contains_host_of(resolution.final_url);
    return resolution;
}

std::vector<SourceActivity> source_activity_report(const std::vector<AccountSnapshot>& snapshots,
                                                   const SourceCatalog& catalog) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& s : snapshots) {
        for (const auto& t : s.recent_tweets) {
            ++counts[t.source_name];
            ++total;
        }
    }
    std::vector<SourceActivity> report;
    report.reserve(counts.size());
    for (const auto& [name, count] : counts) {
        SourceActivity row;
        row.source_name = name;
        row.category = catalog.classify(name);
        row.tweet_count = count;
        row.share = static_cast<double>(count) / static_cast<double>(total);
        report.push_back(std::move(row));
    }
    std::sort(report.begin(), report.end(), [](const SourceActivity& a, const SourceActivity& b) {
        if (a.tweet_count != b.tweet_count) return a.tweet_count > b.tweet_count;
        return a.source_name < b.source_name;
    });
    return report;
}

} // namespace spamhunt
