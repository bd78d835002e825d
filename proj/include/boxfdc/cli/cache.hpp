#pragma once

#include <boxfdc/group.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace boxfdc::cli {

std::string sha256_hex(const std::string& data);

// Directory from --cache-dir, else CLI_CACHE_DIR, else ~/.cache/boxfdc.
std::filesystem::path default_cache_dir();

// Distance matrices of group windows, keyed by a digest of the group
// description and the window's element list. Files carry a checksum; a file
// that fails it is ignored and rewritten.
class DistanceCache {
 public:
  explicit DistanceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // Window over `elements` with distances from the cache when a valid entry
  // exists, computed and stored otherwise.
  GroupWindow window(const GroupModel& g, const std::string& group_key, std::vector<Element> elements);

  bool last_hit() const { return last_hit_; }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<std::vector<Dist>> load(const std::string& key, std::size_t n) const;
  void store(const std::string& key, std::size_t n, const std::vector<Dist>& matrix) const;
  std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".dist"); }

 private:
  std::filesystem::path dir_;
  bool last_hit_ = false;
};

}  // namespace boxfdc::cli
