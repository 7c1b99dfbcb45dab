#include "spamhunt/labeling.hpp"

#include "spamhunt/errors.hpp"
#include "spamhunt/io.hpp"
#include "spamhunt/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <unordered_map>

namespace spamhunt {

using nlohmann::json;

std::string to_string(SpamClause c) {
    switch (c) {
        case SpamClause::FollowerSelling: return "follower_selling";
        case SpamClause::TopicUnrelated: return "topic_unrelated";
        case SpamClause::UrlUnrelated: return "url_unrelated";
        case SpamClause::UrlMalicious: return "url_malicious";
        case SpamClause::AutomatedAdvertising: return "automated_advertising";
    }
    return "automated_advertising";
}

SpamClause spam_clause_from_string(const std::string& s) {
    if (s == "follower_selling") return SpamClause::FollowerSelling;
    if (s == "topic_unrelated") return SpamClause::TopicUnrelated;
    if (s == "url_unrelated") return SpamClause::UrlUnrelated;
    if (s == "url_malicious") return SpamClause::UrlMalicious;
    if (s == "automated_advertising") return SpamClause::AutomatedAdvertising;
    throw InputError("unknown spam clause: " + s);
}

const std::vector<std::string>& question_answers(const std::string& question_id) {
    static const std::unordered_map<std::string, std::vector<std::string>> registry = {
        {"recent_spam", {"yes", "no"}},
        {"behavior", {"constant", "subscribed_app", "one_off"}},
        {"topic_related", {"related", "unrelated"}},
        {"url_related", {"related", "unrelated", "malicious"}},
        {"automated_advertising", {"yes", "no"}},
        {"dict_accept", {"accept", "reject"}},
    };
    const auto it = registry.find(question_id);
    if (it == registry.end()) throw InputError("unknown question id: " + question_id);
    return it->second;
}

namespace {

std::string checked_answer(const std::string& question_id, const std::string& answer,
                           const std::string& subject) {
    const auto& allowed = question_answers(question_id);
    if (std::find(allowed.begin(), allowed.end(), answer) == allowed.end()) {
        throw ProtocolError("answer '" + answer + "' to question '" + question_id +
                            "' about '" + subject + "' is outside the declared answer set");
    }
    return answer;
}

} // namespace

void ScriptedVerdictProvider::add(const std::string& subject, const std::string& question_id,
                                  const std::string& answer) {
    answers_[{subject, question_id}] = answer;
}

ScriptedVerdictProvider ScriptedVerdictProvider::load(const std::filesystem::path& path) {
    ScriptedVerdictProvider provider;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i].front() == '#') continue;
        const auto fields = csv_split(lines[i]);
        if (fields.size() != 3) {
            throw InputError(path.string() + " line " + std::to_string(i + 1) +
                             ": expected subject,question_id,answer");
        }
        provider.add(fields[0], fields[1], fields[2]);
    }
    return provider;
}

std::string ScriptedVerdictProvider::ask(const std::string& subject,
                                         const std::string& question_id,
                                         const std::string& /*context*/) {
    const auto it = answers_.find({subject, question_id});
    if (it == answers_.end()) {
        throw ProtocolError("no scripted answer for question '" + question_id + "' about '" +
                            subject + "'");
    }
    return checked_answer(question_id, it->second, subject);
}

std::string FailingVerdictProvider::ask(const std::string& subject,
                                        const std::string& question_id,
                                        const std::string& /*context*/) {
    throw ProtocolError("unexpected oracle question '" + question_id + "' about '" + subject + "'");
}

std::string InteractiveVerdictProvider::ask(const std::string& subject,
                                            const std::string& question_id,
                                            const std::string& context) {
    const auto& allowed = question_answers(question_id);
    std::string prompt = "[" + subject + "] " + question_id + " (";
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (i) prompt += "/";
        prompt += allowed[i];
    }
    prompt += ")";
    while (true) {
        if (!context.empty()) {
            // U+2068 FIRST STRONG ISOLATE / U+2069 POP so RTL text renders safely
            std::cout << "  \xE2\x81\xA8" << context << "\xE2\x81\xA9\n";
        }
        std::cout << prompt << "\n> " << std::flush;
        std::string answer;
        if (!std::getline(std::cin, answer)) {
            throw ProtocolError("input closed while awaiting answer to '" + question_id + "'");
        }
        if (std::find(allowed.begin(), allowed.end(), answer) != allowed.end()) return answer;
        std::cout << "answer must be one of the listed options\n";
    }
}

AutomationStatus automation_index(const AccountSnapshot& acc, const SourceCatalog& catalog,
                                  double threshold) {
    if (acc.recent_tweets.empty()) {
        throw InputError("account " + acc.account_id + ": empty recent-tweet window");
    }
    std::size_t automated = 0;
    for (const auto& t : acc.recent_tweets) {
        const SourceCategory category = catalog.classify(t.source_name);
        // Unknown sources count toward automation; curators whitelist
        // exceptions as Trusted.
        if (category == SourceCategory::Automated || category == SourceCategory::Unknown) {
            ++automated;
        }
    }
    AutomationStatus status;
    status.automation_index =
        static_cast<double>(automated) / static_cast<double>(acc.recent_tweets.size());
    status.status = status.automation_index > threshold ? AutomationKind::Automated
                                                        : AutomationKind::HumanOperated;
    return status;
}

const std::vector<std::string>& default_selling_terms() {
    static const std::vector<std::string> terms = {
        "buy followers",
        "sell followers",
        "followers for sale",
        "free followers",
        "gain followers",
        "paid retweet",
        "retweet service",
        "auto retweet",
        "favorites for sale",
        "زيادة متابعين",
        "بيع متابعين",
        "رتويت تلقائي",
        "حسابات خليجية",
    };
    return terms;
}

TweetLabel spam_tweet_rule(const TweetRecord& tweet,
                           const std::optional<std::string>& context_hashtag,
                           HumanVerdictProvider& oracle,
                           const std::vector<std::string>& selling_terms) {
    TweetLabel label;
    const std::string folded = case_fold(tweet.text);
    for (const auto& term : selling_terms) {
        if (folded.find(case_fold(term)) != std::string::npos) {
            label.is_spam = true;
            label.clauses.push_back(SpamClause::FollowerSelling);
            return label; // fires regardless of entities; no oracle needed
        }
    }
    const bool has_entity = !tweet.hashtags.empty() || !tweet.mentions.empty() ||
                            !tweet.urls.empty() || tweet.image_count > 0;
    if (!has_entity) return label;

    const std::string context =
        context_hashtag ? tweet.text + "  [trend: #" + *context_hashtag + "]" : tweet.text;
    if (!tweet.hashtags.empty()) {
        if (oracle.ask(tweet.tweet_id, "topic_related", context) == "unrelated") {
            label.clauses.push_back(SpamClause::TopicUnrelated);
        }
    }
    if (label.clauses.empty() && !tweet.urls.empty()) {
        const std::string answer = oracle.ask(tweet.tweet_id, "url_related", context);
        if (answer == "unrelated") label.clauses.push_back(SpamClause::UrlUnrelated);
        if (answer == "malicious") label.clauses.push_back(SpamClause::UrlMalicious);
    }
    if (label.clauses.empty()) {
        if (oracle.ask(tweet.tweet_id, "automated_advertising", context) == "yes") {
            label.clauses.push_back(SpamClause::AutomatedAdvertising);
        }
    }
    label.is_spam = !label.clauses.empty();
    return label;
}

const std::vector<std::pair<std::string, std::string>>& workflow_edges() {
    static const std::vector<std::pair<std::string, std::string>> edges = {
        {"check_automation", "automated"},
        {"check_automation", "human_operated"},
        {"automated", "evidence_spam"},
        {"automated", "evidence_legitimate"},
        {"human_operated", "evidence_spam"},
        {"human_operated", "evidence_legitimate"},
        // automated + spam evidence: take the evidence
        {"evidence_spam", "verdict_spammer"},
        // automated + legitimate evidence: investigate the tweets further
        {"evidence_legitimate", "ask_recent_spam"},
        {"ask_recent_spam", "verdict_spammer"},
        {"ask_recent_spam", "verdict_nonspammer"},
        // human + legitimate evidence: take the evidence
        {"evidence_legitimate", "verdict_nonspammer"},
        // human + spam evidence: investigate the account page
        {"evidence_spam", "ask_behavior"},
        {"ask_behavior", "verdict_spammer"},
        {"ask_behavior", "verdict_compromised"},
        {"ask_behavior", "verdict_nonspammer"},
    };
    return edges;
}

bool valid_workflow_trace(const std::vector<std::string>& trace) {
    if (trace.empty() || trace.front() != "check_automation") return false;
    const auto& edges = workflow_edges();
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const auto edge = std::make_pair(trace[i], trace[i + 1]);
        if (std::find(edges.begin(), edges.end(), edge) == edges.end()) return false;
    }
    return trace.back().rfind("verdict_", 0) == 0;
}

LabeledAccount classify_account(const AccountSnapshot& acc, const TweetLabel& evidence,
                                const std::string& evidence_tweet_id,
                                const AutomationStatus& automation, HumanVerdictProvider& oracle) {
    LabeledAccount out;
    out.account_id = acc.account_id;
    out.automation = automation;
    out.evidence_tweet_id = evidence_tweet_id;
    out.labeler = oracle.labeler_id();

    const bool is_automated = automation.status == AutomationKind::Automated;
    out.verdict_trace = {"check_automation", is_automated ? "automated" : "human_operated",
                         evidence.is_spam ? "evidence_spam" : "evidence_legitimate"};

    if (is_automated && evidence.is_spam) {
        out.account_class = AccountClass::Spammer;
    } else if (is_automated && !evidence.is_spam) {
        out.verdict_trace.push_back("ask_recent_spam");
        const std::string answer = oracle.ask(acc.account_id, "recent_spam", acc.screen_name);
        out.account_class = answer == "yes" ? AccountClass::Spammer : AccountClass::NonSpammer;
    } else if (!is_automated && !evidence.is_spam) {
        out.account_class = AccountClass::NonSpammer;
    } else {
        out.verdict_trace.push_back("ask_behavior");
        const std::string answer = oracle.ask(acc.account_id, "behavior", acc.screen_name);
        if (answer == "constant") out.account_class = AccountClass::Spammer;
        else if (answer == "subscribed_app") out.account_class = AccountClass::Compromised;
        else out.account_class = AccountClass::NonSpammer;
    }

    switch (out.account_class) {
        case AccountClass::Spammer: out.verdict_trace.push_back("verdict_spammer"); break;
        case AccountClass::NonSpammer: out.verdict_trace.push_back("verdict_nonspammer"); break;
        case AccountClass::Compromised: out.verdict_trace.push_back("verdict_compromised"); break;
    }
    return out;
}

SpamDictionary build_spam_dictionary(const std::vector<std::string>& spam_texts,
                                     std::size_t min_freq, HumanVerdictProvider& review) {
    if (spam_texts.empty()) throw InputError("no spam texts to build a dictionary from");
    std::map<std::string, std::size_t> frequency;
    for (const auto& text : spam_texts) {
        for (const auto& token : whitespace_tokens(normalize_text(text))) {
            ++frequency[case_fold(token)];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> candidates;
    for (const auto& [term, freq] : frequency) {
        if (freq >= min_freq) candidates.emplace_back(term, freq);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> accepted;
    for (const auto& [term, freq] : candidates) {
        const std::string context = term + " (frequency " + std::to_string(freq) + ")";
        if (review.ask(term, "dict_accept", context) == "accept") accepted.push_back(term);
    }
    if (accepted.empty()) {
        throw InputError("spam dictionary is empty: no candidate term was accepted");
    }
    return SpamDictionary::from_terms(accepted);
}

std::vector<EvidenceRecord> read_evidence_file(const std::filesystem::path& path) {
    std::vector<EvidenceRecord> records;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            const json j = json::parse(lines[i]);
            EvidenceRecord r;
            r.account_id = j.at("account_id").get<std::string>();
            r.tweet_id = j.at("tweet_id").get<std::string>();
            const std::string label = j.at("label").get<std::string>();
            if (label != "spam" && label != "legitimate") {
                throw InputError("label must be spam or legitimate");
            }
            r.label.is_spam = label == "spam";
            if (j.contains("clauses")) {
                for (const auto& c : j["clauses"]) {
                    r.label.clauses.push_back(spam_clause_from_string(c.get<std::string>()));
                }
            }
            if (r.label.is_spam && r.label.clauses.empty()) {
                throw InputError("spam evidence requires at least one clause");
            }
            if (!r.label.is_spam && !r.label.clauses.empty()) {
                throw InputError("legitimate evidence must not carry clauses");
            }
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return records;
}

std::string evidence_lines(const std::vector<EvidenceRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        json j;
        j["account_id"] = r.account_id;
        j["tweet_id"] = r.tweet_id;
        j["label"] = r.label.is_spam ? "spam" : "legitimate";
        json clauses = json::array();
        for (const auto& c : r.label.clauses) clauses.push_back(to_string(c));
        j["clauses"] = std::move(clauses);
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

std::string label_lines(const std::vector<LabeledAccount>& labels) {
    std::string out;
    for (const auto& l : labels) {
        json j;
        j["account_id"] = l.account_id;
        j["class"] = to_string(l.account_class);
        j["automation_status"] = to_string(l.automation.status);
        j["automation_index"] = l.automation.automation_index;
        j["evidence_tweet_id"] = l.evidence_tweet_id;
        j["verdict_trace"] = l.verdict_trace;
        j["labeler"] = l.labeler;
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

void write_labels_file(const std::filesystem::path& path,
                       const std::vector<LabeledAccount>& labels) {
    atomic_write_file(path, label_lines(labels));
}

std::vector<LabeledAccount> read_labels_file(const std::filesystem::path& path) {
    std::vector<LabeledAccount> labels;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            const json j = json::parse(lines[i]);
            LabeledAccount l;
            l.account_id = j.at("account_id").get<std::string>();
            l.account_class = account_class_from_string(j.at("class").get<std::string>());
            l.automation.status =
                automation_kind_from_string(j.at("automation_status").get<std::string>());
            l.automation.automation_index = j.at("automation_index").get<double>();
            l.evidence_tweet_id = j.at("evidence_tweet_id").get<std::string>();
            for (const auto& step : j.at("verdict_trace")) {
                l.verdict_trace.push_back(step.get<std::string>());
            }
            l.labeler = j.at("labeler").get<std::string>();
            labels.push_back(std::move(l));
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return labels;
}

} // namespace spamhunt
