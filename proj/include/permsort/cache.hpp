#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "permsort/engine.hpp"

namespace permsort {

/// On-disk store of distance tables and JSON results, keyed by canonical spec
/// and size. Each entry is written to a temporary file and renamed into place
/// under a per-entry lock file. Entries that fail to parse are deleted.
class ResultCache : public TableStore {
public:
  explicit ResultCache(std::filesystem::path dir);

  /// $PERMSORT_CACHE if set, else ".permsort-cache".
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::shared_ptr<const DistanceTable> load(const std::string& spec, int n) override;
  void store(const DistanceTable& table) override;

  /// `kind` separates result families, e.g. "classify".
  std::optional<nlohmann::json> load_json(const std::string& kind, const std::string& key);
  void store_json(const std::string& kind, const std::string& key, const nlohmann::json& value);

  int hits() const noexcept { return hits_; }
  int misses() const noexcept { return misses_; }
  int discarded() const noexcept { return discarded_; }

  /// File an entry lives in; exposed for tests that corrupt entries on purpose.
  std::filesystem::path table_path(const std::string& spec, int n) const;
  std::filesystem::path json_path(const std::string& kind, const std::string& key) const;

private:
  void write_atomically(const std::filesystem::path& target, const std::string& bytes);
  void discard(const std::filesystem::path& p);

  std::filesystem::path dir_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
  std::atomic<int> discarded_{0};
};

}  // namespace permsort
