#include "permsort/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace permsort {

namespace fs = std::filesystem;

namespace {

constexpr const char* kJsonMagic = "PSWJ1";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

// Readable prefix plus a hash, so distinct keys never share a file name.
std::string file_stem(const std::string& key) {
  std::string readable;
  for (char ch : key) {
    if (readable.size() >= 32) break;
    readable += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  }
  std::ostringstream out;
  out << readable << '-' << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key);
  return out.str();
}

class FileLock {
public:
  explicit FileLock(const fs::path& p) : fd_(::open(p.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644)) {
    if (fd_ >= 0 && ::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool held() const { return fd_ >= 0; }

private:
  int fd_;
};

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::default_dir() {
  const char* env = std::getenv("PERMSORT_CACHE");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".permsort-cache");
}

fs::path ResultCache::table_path(const std::string& spec, int n) const {
  return dir_ / ("st-" + file_stem(spec) + "-n" + std::to_string(n) + ".pswb");
}

fs::path ResultCache::json_path(const std::string& kind, const std::string& key) const {
  return dir_ / (file_stem(kind) + "-" + file_stem(key) + ".json");
}

void ResultCache::discard(const fs::path& p) {
  std::error_code ec;
  fs::remove(p, ec);
  ++discarded_;
}

std::shared_ptr<const DistanceTable> ResultCache::load(const std::string& spec, int n) {
  const auto p = table_path(spec, n);
  const auto bytes = slurp(p);
  if (!bytes) {
    ++misses_;
    return nullptr;
  }
  try {
    std::istringstream in(*bytes);
    auto table = DistanceTable::read(in);
    if (table.spec() != spec || table.n() != n || in.peek() != std::char_traits<char>::eof()) {
      throw DomainError("cache entry does not match its key");
    }
    ++hits_;
    return std::make_shared<const DistanceTable>(std::move(table));
  } catch (const std::exception&) {
    discard(p);
    ++misses_;
    return nullptr;
  }
}

void ResultCache::store(const DistanceTable& table) {
  std::ostringstream out;
  table.write(out);
  write_atomically(table_path(table.spec(), table.n()), out.str());
}

std::optional<nlohmann::json> ResultCache::load_json(const std::string& kind, const std::string& key) {
  const auto p = json_path(kind, key);
  const auto bytes = slurp(p);
  if (!bytes) {
    ++misses_;
    return std::nullopt;
  }
  auto doc = nlohmann::json::parse(*bytes, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("magic", "") != kJsonMagic || doc.value("kind", "") != kind ||
      doc.value("key", "") != key || !doc.contains("value")) {
    discard(p);
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return doc["value"];
}

void ResultCache::store_json(const std::string& kind, const std::string& key, const nlohmann::json& value) {
  const nlohmann::json doc = {{"magic", kJsonMagic}, {"kind", kind}, {"key", key}, {"value", value}};
  write_atomically(json_path(kind, key), doc.dump() + "\n");
}

// Failures are swallowed: a cache that cannot be written only costs a recomputation.
void ResultCache::write_atomically(const fs::path& target, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  FileLock lock(fs::path(target).concat(".lock"));
  if (!lock.held()) return;
  auto tmp = fs::path(target).concat(".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace permsort
