#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace dispatchkit::detail {

/// Splits on '\n', dropping one trailing '\r' per line. A final empty line
/// after the last '\n' is not returned.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep);

std::string_view trim(std::string_view s) noexcept;

template <class T>
bool parse_number(std::string_view s, T& out) noexcept {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_hex_double(std::string_view s, double& out) noexcept;

/// Fixed-point with `decimals` digits, locale independent, no negative zero.
void append_fixed(std::string& out, double value, int decimals);
std::string fixed(double value, int decimals);

void append_scientific(std::string& out, double value, int digits);

void append_hex(std::string& out, double value);

std::string read_file(const std::filesystem::path& path);

/// Truncates and writes; throws IoError on an empty path or any failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace dispatchkit::detail
