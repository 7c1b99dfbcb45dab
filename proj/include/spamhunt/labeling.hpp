#pragma once

#include "spamhunt/features.hpp"
#include "spamhunt/ingestion.hpp"
#include "spamhunt/types.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spamhunt {

/// Clauses of the spam-tweet definition. Spam verdicts carry the fired ones.
enum class SpamClause {
    FollowerSelling,
    TopicUnrelated,
    UrlUnrelated,
    UrlMalicious,
    AutomatedAdvertising,
};

std::string to_string(SpamClause c);
SpamClause spam_clause_from_string(const std::string& s);

struct TweetLabel {
    bool is_spam = false;
    std::vector<SpamClause> clauses; // non-empty iff is_spam
};

/// Answers labeling questions. Interactive and scripted implementations
/// ship; answers must come from the question's declared answer set.
class HumanVerdictProvider {
public:
    virtual ~HumanVerdictProvider() = default;
    /// subject is an account id or a candidate dictionary term; context is
    /// display-only material (tweet text etc.).
    virtual std::string ask(const std::string& subject, const std::string& question_id,
                            const std::string& context) = 0;
    virtual std::string labeler_id() const = 0;
};

/// Declared answer set for a question id.
const std::vector<std::string>& question_answers(const std::string& question_id);

/// Scripted answers keyed by (subject, question); missing entries and
/// out-of-set answers raise protocol errors.
class ScriptedVerdictProvider final : public HumanVerdictProvider {
public:
    void add(const std::string& subject, const std::string& question_id, const std::string& answer);
    /// Line-delimited CSV records subject,question_id,answer.
    static ScriptedVerdictProvider load(const std::filesystem::path& path);

    std::string ask(const std::string& subject, const std::string& question_id,
                    const std::string& context) override;
    std::string labeler_id() const override { return "scripted"; }

private:
    std::map<std::pair<std::string, std::string>, std::string> answers_;
};

/// Throws on any question; verifies oracle-free code paths.
class FailingVerdictProvider final : public HumanVerdictProvider {
public:
    std::string ask(const std::string& subject, const std::string& question_id,
                    const std::string& context) override;
    std::string labeler_id() const override { return "failing"; }
};

/// Serializes questions through stdin/stdout; tweet text is emitted inside
/// Unicode isolate marks so right-to-left content renders safely.
class InteractiveVerdictProvider final : public HumanVerdictProvider {
public:
    std::string ask(const std::string& subject, const std::string& question_id,
                    const std::string& context) override;
    std::string labeler_id() const override { return "interactive"; }
};

struct LabeledAccount {
    std::string account_id;
    AccountClass account_class = AccountClass::NonSpammer;
    AutomationStatus automation;
    std::string evidence_tweet_id;
    std::vector<std::string> verdict_trace;
    std::string labeler;
};

/// Share of the recent window generated by Automated or Unknown sources;
/// strictly more than the threshold marks the account Automated.
AutomationStatus automation_index(const AccountSnapshot& acc, const SourceCatalog& catalog,
                                  double threshold = kAutomationThreshold);

/// Built-in seed terms for the follower/retweet-selling clause.
const std::vector<std::string>& default_selling_terms();

/// Applies the spam-tweet definition: mechanical clauses run first, the
/// out-of-context judgments go to the oracle.
TweetLabel spam_tweet_rule(const TweetRecord& tweet,
                           const std::optional<std::string>& context_hashtag,
                           HumanVerdictProvider& oracle,
                           const std::vector<std::string>& selling_terms = default_selling_terms());

/// Account-classification workflow over (automation x evidence); consults
/// the oracle only when the two disagree.
LabeledAccount classify_account(const AccountSnapshot& acc, const TweetLabel& evidence,
                                const std::string& evidence_tweet_id,
                                const AutomationStatus& automation, HumanVerdictProvider& oracle);

/// Static workflow graph edges (from, to) for trace validation.
const std::vector<std::pair<std::string, std::string>>& workflow_edges();
bool valid_workflow_trace(const std::vector<std::string>& trace);

/// Frequency-filtered candidate terms from normalized spam texts, reviewed
/// in descending-frequency order; accepted terms form the dictionary.
SpamDictionary build_spam_dictionary(const std::vector<std::string>& spam_texts,
                                     std::size_t min_freq, HumanVerdictProvider& review);

struct EvidenceRecord {
    std::string account_id;
    std::string tweet_id;
    TweetLabel label;
};

std::vector<EvidenceRecord> read_evidence_file(const std::filesystem::path& path);
std::string evidence_lines(const std::vector<EvidenceRecord>& records);

std::string label_lines(const std::vector<LabeledAccount>& labels);
void write_labels_file(const std::filesystem::path& path, const std::vector<LabeledAccount>& labels);
std::vector<LabeledAccount> read_labels_file(const std::filesystem::path& path);

} // namespace spamhunt
