#include "spamhunt/similarity.hpp"

#include "spamhunt/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spamhunt {

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const auto* shorter = &a;
    const auto* longer = &b;
    if (shorter->size() > longer->size()) std::swap(shorter, longer);
    const std::size_t m = shorter->size();
    const std::size_t n = longer->size();
    if (m == 0) return n;

    std::vector<std::size_t> row(m + 1);
    for (std::size_t j = 0; j <= m; ++j) row[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        const char32_t ci = (*longer)[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t up = row[j];
            const std::size_t subst = diag + (ci == (*shorter)[j - 1] ? 0 : 1);
            row[j] = std::min({row[j - 1] + 1, up + 1, subst});
            diag = up;
        }
    }
    return row[m];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(utf8_decode(a), utf8_decode(b));
}

std::size_t levenshtein_bounded(const std::vector<char32_t>& a,
                                const std::vector<char32_t>& b,
                                std::size_t limit) {
    const auto* shorter = &a;
    const auto* longer = &b;
    if (shorter->size() > longer->size()) std::swap(shorter, longer);
    const std::size_t m = shorter->size();
    const std::size_t n = longer->size();
    if (n - m > limit) return limit + 1;
    if (m == 0) return n;

    // Cells outside the band around the diagonal cannot hold a value
    // <= limit, so only the band is evaluated.
    const std::size_t big = std::numeric_limits<std::size_t>::max() / 2;
    std::vector<std::size_t> row(m + 1, big);
    for (std::size_t j = 0; j <= std::min(m, limit); ++j) row[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t lo = i > limit ? i - limit : 1;
        const std::size_t hi = std::min(m, i + limit);
        if (lo > hi) return limit + 1;
        std::size_t diag = row[lo - 1];
        if (lo == 1) {
            row[0] = i <= limit ? i : big;
        }
        std::size_t row_min = big;
        const char32_t ci = (*longer)[i - 1];
        for (std::size_t j = lo; j <= hi; ++j) {
            const std::size_t up = row[j];
            std::size_t best = diag + (ci == (*shorter)[j - 1] ? 0 : 1);
            if (j > lo || lo == 1) {
                best = std::min(best, row[j - 1] + 1);
            }
            best = std::min(best, up + 1);
            row[j] = best;
            diag = up;
            row_min = std::min(row_min, best);
        }
        if (row_min > limit) return limit + 1;
    }
    return row[m] <= limit ? row[m] : limit + 1;
}

std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t limit) {
    return levenshtein_bounded(utf8_decode(a), utf8_decode(b), limit);
}

double normalized_similarity(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    const std::size_t dist = levenshtein(a, b);
    return 1.0 - static_cast<double>(dist) / static_cast<double>(longest);
}

double normalized_similarity(std::string_view a, std::string_view b) {
    return normalized_similarity(utf8_decode(a), utf8_decode(b));
}

bool is_near_duplicate(const std::vector<char32_t>& a,
                       const std::vector<char32_t>& b,
                       double threshold) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0 > threshold;
    // similarity > threshold  <=>  distance < (1 - threshold) * longest
    const double allowed = (1.0 - threshold) * static_cast<double>(longest);
    const auto limit = static_cast<std::size_t>(std::ceil(allowed));
    if (limit == 0) return false;
    const std::size_t dist = levenshtein_bounded(a, b, limit);
    return static_cast<double>(dist) < allowed;
}

} // namespace spamhunt
