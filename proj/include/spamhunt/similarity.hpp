#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace spamhunt {

/// Levenshtein edit distance over Unicode codepoints.
std::size_t levenshtein(std::string_view a, std::string_view b);

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b);

/// Banded early-exit variant: returns the exact distance when it is
/// <= limit, otherwise some value > limit.
std::size_t levenshtein_bounded(const std::vector<char32_t>& a,
                                const std::vector<char32_t>& b,
                                std::size_t limit);

std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t limit);

/// 1 - distance/max(len) over codepoints; two empty strings compare as 1.
double normalized_similarity(std::string_view a, std::string_view b);

double normalized_similarity(const std::vector<char32_t>& a, const std::vector<char32_t>& b);

/// Duplicate test "similarity > threshold" driven by the banded distance,
/// so clearly-different pairs abort early.
bool is_near_duplicate(const std::vector<char32_t>& a,
                       const std::vector<char32_t>& b,
                       double threshold);

} // namespace spamhunt
