#include <boxfdc/cli/cache.hpp>

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace boxfdc::cli {

namespace {

constexpr char kMagic[] = "BOXFDC-DIST-1\n";
constexpr std::size_t kMagicLen = sizeof(kMagic) - 1;

std::string sha256_raw(const std::string& data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out, &len, EVP_sha256(), nullptr);
  return std::string(reinterpret_cast<const char*>(out), len);
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& buf, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[at + i])) << (8 * i);
  return v;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : sha256_raw(data)) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("CLI_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "boxfdc";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "boxfdc";
  return std::filesystem::temp_directory_path() / "boxfdc-cache";
}

std::optional<std::vector<Dist>> DistanceCache::load(const std::string& key, std::size_t n) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t body = kMagicLen + 8 + n * n * 4;
  if (buf.size() != body + 32 || buf.compare(0, kMagicLen, kMagic) != 0) return std::nullopt;
  if (get_u64(buf, kMagicLen) != n) return std::nullopt;
  if (sha256_raw(buf.substr(0, body)) != buf.substr(body)) return std::nullopt;
  std::vector<Dist> matrix(n * n);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto at = kMagicLen + 8 + 4 * i;
    Dist v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<Dist>(static_cast<unsigned char>(buf[at + b])) << (8 * b);
    matrix[i] = v;
  }
  return matrix;
}

void DistanceCache::store(const std::string& key, std::size_t n, const std::vector<Dist>& matrix) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;  // caching is best effort
  std::string buf(kMagic, kMagicLen);
  put_u64(buf, n);
  buf.reserve(buf.size() + matrix.size() * 4 + 32);
  for (auto v : matrix)
    for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  buf += sha256_raw(buf);
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

GroupWindow DistanceCache::window(const GroupModel& g, const std::string& group_key, std::vector<Element> elements) {
  std::ostringstream desc;
  desc << group_key << "\n";
  for (const auto& e : elements) desc << format_element(e) << ";";
  const auto key = sha256_hex(desc.str());
  const auto n = elements.size();
  if (auto m = load(key, n)) {
    last_hit_ = true;
    return GroupWindow::with_matrix(g, std::move(elements), std::move(*m));
  }
  last_hit_ = false;
  auto w = GroupWindow::of(g, std::move(elements));
  const auto span = w.space()->matrix();
  store(key, n, std::vector<Dist>(span.begin(), span.end()));
  return w;
}

}  // namespace boxfdc::cli
