#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace halloss::io {

/// Flat key=value config, one pair per line, '#' starts a comment.
/// Whitespace around keys and values is trimmed. Duplicate keys keep the
/// last occurrence. Throws std::runtime_error on unreadable files or
/// malformed lines.
class ConfigFile {
 public:
  ConfigFile() = default;
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace halloss::io
