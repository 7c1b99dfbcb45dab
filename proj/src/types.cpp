#include "spamhunt/types.hpp"

#include "spamhunt/errors.hpp"

namespace spamhunt {

std::string to_string(SourceCategory c) {
    switch (c) {
        case SourceCategory::Official: return "official";
        case SourceCategory::Trusted: return "trusted";
        case SourceCategory::Automated: return "automated";
        case SourceCategory::Unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(AccountClass c) {
    switch (c) {
        case AccountClass::Spammer: return "spammer";
        case AccountClass::NonSpammer: return "non_spammer";
        case AccountClass::Compromised: return "compromised";
    }
    return "non_spammer";
}

std::string to_string(AutomationKind k) {
    return k == AutomationKind::Automated ? "automated" : "human_operated";
}

SourceCategory source_category_from_string(const std::string& s) {
    if (s == "official") return SourceCategory::Official;
    if (s == "trusted") return SourceCategory::Trusted;
    if (s == "automated") return SourceCategory::Automated;
    if (s == "unknown") return SourceCategory::Unknown;
    throw InputError("unknown source category: " + s);
}

AccountClass account_class_from_string(const std::string& s) {
    if (s == "spammer") return AccountClass::Spammer;
    if (s == "non_spammer") return AccountClass::NonSpammer;
    if (s == "compromised") return AccountClass::Compromised;
    throw InputError("unknown account class: " + s);
}

AutomationKind automation_kind_from_string(const std::string& s) {
    if (s == "automated") return AutomationKind::Automated;
    if (s == "human_operated") return AutomationKind::HumanOperated;
    throw InputError("unknown automation status: " + s);
}

} // namespace spamhunt
