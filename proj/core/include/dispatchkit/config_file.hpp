#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace dispatchkit {

/// `key=value` lines. Blank lines and lines starting with '#' are ignored;
/// whitespace around keys and values is trimmed. Duplicate keys are an error.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;

  /// Overwrites `out` when the key is present; unknown keys are left for
  /// `reject_unknown`.
  void read(std::string_view key, double& out) const;
  void read(std::string_view key, int& out) const;

  /// Throws if any key was never passed to `read`.
  void reject_unknown() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    mutable bool used = false;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace dispatchkit
