#include "dispatchkit/config_file.hpp"

#include <cmath>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile file;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(i + 1, "expected key=value");
    const std::string key(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(i + 1, "empty key");
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (!file.entries_.emplace(key, Entry{value, i + 1}).second) {
      throw ParseError(i + 1, "duplicate key '" + key + "'");
    }
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

bool KeyValueFile::contains(std::string_view key) const { return entries_.contains(key); }

void KeyValueFile::read(std::string_view key, double& out) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return;
  it->second.used = true;
  double v = 0.0;
  if (!detail::parse_number(it->second.value, v) || !std::isfinite(v)) {
    throw ParseError(it->second.line, "'" + std::string(key) + "' is not a number");
  }
  out = v;
}

void KeyValueFile::read(std::string_view key, int& out) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return;
  it->second.used = true;
  int v = 0;
  if (!detail::parse_number(it->second.value, v)) {
    throw ParseError(it->second.line, "'" + std::string(key) + "' is not an integer");
  }
  out = v;
}

void KeyValueFile::reject_unknown() const {
  for (const auto& [key, entry] : entries_) {
    if (!entry.used) throw ParseError(entry.line, "unknown key '" + key + "'");
  }
}

}  // namespace dispatchkit
