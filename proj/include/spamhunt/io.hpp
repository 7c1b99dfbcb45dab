#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace spamhunt {

std::string read_file(const std::filesystem::path& path);

std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partially written output.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string csv_escape(const std::string& field);

/// Splits one CSV line; supports RFC 4180 quoting and doubled quotes.
std::vector<std::string> csv_split(const std::string& line);

/// Runs fn(0..count-1) on up to jobs worker threads. Work is handed out by
/// index, so results keyed by index are identical for any job count.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

} // namespace spamhunt
