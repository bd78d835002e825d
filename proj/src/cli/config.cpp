#include <boxfdc/cli/config.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace boxfdc::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::int64_t> to_int(const std::string& s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

}  // namespace

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key);
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return std::nullopt;
  auto jt = it->second.find(key);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second.value;
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  sections_[section][key] = Entry{std::move(value), 0};
}

void Config::fail(const std::string& section, const std::string& key, const std::string& what) const {
  std::size_t line = 0;
  if (auto it = sections_.find(section); it != sections_.end())
    if (auto jt = it->second.find(key); jt != it->second.end()) line = jt->second.line;
  std::string where = source;
  if (line) where += ":" + std::to_string(line);
  throw ConfigError(where + ": [" + section + "] " + key + ": " + what);
}

std::int64_t Config::get_int(const std::string& section, const std::string& key, std::int64_t fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  auto n = to_int(*v);
  if (!n) fail(section, key, "expected an integer, got '" + *v + "'");
  return *n;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "no" || *v == "0") return false;
  fail(section, key, "expected true or false, got '" + *v + "'");
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

std::vector<std::int64_t> Config::get_int_list(const std::string& section, const std::string& key) const {
  std::vector<std::int64_t> out;
  auto v = get(section, key);
  if (!v || trim(*v).empty()) return out;
  std::stringstream ss(*v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto n = to_int(trim(item));
    if (!n) fail(section, key, "expected a comma separated integer list, got '" + *v + "'");
    out.push_back(*n);
  }
  return out;
}

std::string Config::text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, entries] : sections_) {
    if (!first) os << "\n";
    first = false;
    os << "[" << name << "]\n";
    for (const auto& [key, e] : entries) os << key << " = " << e.value << "\n";
  }
  return os.str();
}

Config parse_config(std::string_view text, std::string source) {
  Config cfg;
  cfg.source = std::move(source);
  std::string section;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++lineno;
    const std::string where = cfg.source + ":" + std::to_string(lineno) + ": ";
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + "empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    if (section.empty()) throw ConfigError(where + "entry before any [section]");
    auto key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError(where + "empty key");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) throw ConfigError(where + "duplicate key '" + key + "' in [" + section + "]");
    sec[key] = Config::Entry{trim(std::string_view(line).substr(eq + 1)), lineno};
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace boxfdc::cli
