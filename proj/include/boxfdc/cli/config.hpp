#pragma once

#include <boxfdc/errors.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxfdc::cli {

// Parse or validation failure, annotated with "source:line:" when known.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Line-oriented "key = value" file with [section] headers. '#' starts a
// comment line. Keys are unique within a section.
class Config {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;  // 0 for entries set in code
  };
  using Section = std::map<std::string, Entry>;

  std::string source = "<config>";

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, std::string value);
  const std::map<std::string, Section>& sections() const { return sections_; }

  // Typed reads; malformed values raise ConfigError naming the line.
  std::int64_t get_int(const std::string& section, const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const;

  // Canonical text: sections and keys sorted, one blank line between sections.
  std::string text() const;

 private:
  std::map<std::string, Section> sections_;
  friend Config parse_config(std::string_view text, std::string source);
};

Config parse_config(std::string_view text, std::string source = "<config>");
Config load_config(const std::string& path);

}  // namespace boxfdc::cli
