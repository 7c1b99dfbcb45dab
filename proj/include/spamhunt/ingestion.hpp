#pragma once

#include "spamhunt/types.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace spamhunt {

/// Maps exact source names to a category; absent names classify as Unknown.
class SourceCatalog {
public:
    struct Entry {
        SourceCategory category = SourceCategory::Unknown;
        std::string notes;
    };

    void set(const std::string& source_name, SourceCategory category, const std::string& notes = "");
    SourceCategory classify(const std::string& source_name) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Entry>& entries() const { return entries_; }

    static SourceCatalog load(const std::filesystem::path& path);
    std::string to_csv() const;
    void save(const std::filesystem::path& path) const;

private:
    std::map<std::string, Entry> entries_;
};

SourceCategory classify_source(const SourceCatalog& catalog, const std::string& source_name);

struct ParseStats {
    std::size_t malformed_lines = 0;
    std::size_t duplicate_tweets = 0;
    std::size_t duplicate_profiles = 0;
    std::size_t accounts_without_profile = 0;
};

struct ParsedCorpus {
    std::vector<AccountSnapshot> snapshots; // sorted by account_id
    ParseStats stats;
};

/// Reads a line-delimited corpus of profile and tweet records, groups
/// tweets by author, sorts newest-first and truncates to the 200-tweet
/// window. In strict mode the first malformed line aborts the parse.
ParsedCorpus parse_corpus(const std::filesystem::path& path, bool strict = false);

/// Newest-first; equal timestamps fall back to descending tweet_id.
void sort_tweets_newest_first(std::vector<TweetRecord>& tweets);

using SnapshotStore = std::map<std::string, AccountSnapshot>;

std::string snapshot_store_lines(const std::vector<AccountSnapshot>& snapshots);
void write_snapshot_store(const std::filesystem::path& path, const std::vector<AccountSnapshot>& snapshots);
std::vector<AccountSnapshot> read_snapshot_store(const std::filesystem::path& path);
SnapshotStore load_snapshot_store(const std::filesystem::path& path);

/// Corpus-format serialization (profile + tweet lines) of the snapshots.
std::string corpus_lines(const std::vector<AccountSnapshot>& snapshots);

struct Blacklist {
    std::set<std::string> hosts; // lowercase
    bool contains_host_of(const std::string& url) const;
};

/// One hostname per line; '#' starts a comment.
Blacklist load_blacklist(const std::filesystem::path& path);

std::string url_host(const std::string& url);
bool is_valid_http_url(const std::string& url);

struct UrlResolution {
    std::string original;
    std::string final_url;
    std::size_t redirect_hops = 0;
    bool blacklisted = false;
    bool transport_error = false;
};

class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

/// Single-hop redirect lookup; implementations must be safe for
/// concurrent use.
class RedirectClient {
public:
    virtual ~RedirectClient() = default;
    /// Next location for the URL, or nullopt when the URL is final.
    virtual std::optional<std::string> next_hop(const std::string& url) = 0;
};

class MockRedirectClient final : public RedirectClient {
public:
    void add_redirect(const std::string& from, const std::string& to) { hops_[from] = to; }
    std::optional<std::string> next_hop(const std::string& url) override;

private:
    std::map<std::string, std::string> hops_;
};

/// Real follower: issues GET requests and reads Location headers.
class HttpRedirectClient final : public RedirectClient {
public:
    explicit HttpRedirectClient(int timeout_seconds = 10) : timeout_seconds_(timeout_seconds) {}
    std::optional<std::string> next_hop(const std::string& url) override;

private:
    int timeout_seconds_;
};

/// Follows redirects up to max_hops and checks the final host against the
/// blacklist. Transport failures and the hop limit surface as a flagged
/// resolution holding the last URL reached.
UrlResolution resolve_url(RedirectClient& client,
                          const std::string& url,
                          const Blacklist& blacklist = {},
                          std::size_t max_hops = 10);

struct SourceActivity {
    std::string source_name;
    SourceCategory category = SourceCategory::Unknown;
    std::size_t tweet_count = 0;
    double share = 0.0;
};

/// Tweet counts per source across all snapshots, descending; shares sum to 1.
std::vector<SourceActivity> source_activity_report(const std::vector<AccountSnapshot>& snapshots,
                                                   const SourceCatalog& catalog);

} // namespace spamhunt
