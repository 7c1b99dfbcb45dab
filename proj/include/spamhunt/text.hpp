#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spamhunt {

/// Decodes UTF-8 into codepoints. Invalid bytes decode to themselves so
/// that round-tripping never loses content.
std::vector<char32_t> utf8_decode(std::string_view text);

std::string utf8_encode(const std::vector<char32_t>& codepoints);

bool is_unicode_space(char32_t cp);

/// Splits on runs of Unicode whitespace; tokens keep their original bytes.
std::vector<std::string> whitespace_tokens(std::string_view text);

/// Number of maximal non-whitespace runs in the raw text.
std::size_t word_count(std::string_view text);

/// True for tokens that look like URLs: http://, https:// or www. prefix,
/// case-insensitive. Entity metadata stays authoritative for counting;
/// this rule only serves text normalization.
bool is_url_token(std::string_view token);

/// Strips hashtag, mention and URL tokens plus leading "RT" markers, then
/// collapses whitespace. Idempotent; surviving tokens keep their bytes.
std::string normalize_text(std::string_view text);

/// ASCII lowercase fold; non-ASCII bytes pass through untouched.
std::string case_fold(std::string_view text);

} // namespace spamhunt
