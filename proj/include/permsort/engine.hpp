#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "permsort/class_handle.hpp"
#include "permsort/perm.hpp"

namespace permsort {

inline constexpr int kDefaultBfsCap = 10;
inline constexpr int kLargeBfsCap = 11;

struct BfsOptions {
  /// Largest n accepted. Raising it beyond kLargeBfsCap is rejected.
  int cap = kDefaultBfsCap;
  /// Worker threads for frontier expansion; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Lehmer-code ranking of S_n onto {0, ..., n!-1}; rank(identity) = 0.
class RankCodec {
public:
  explicit RankCodec(int n);

  int n() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t rank(const Perm& pi) const;
  Perm unrank(std::uint64_t r) const;

  /// Raw forms over 1-based values in a buffer of length n.
  std::uint64_t rank_values(const int* values) const;
  void unrank_values(std::uint64_t r, int* out) const;

private:
  int n_;
  std::uint64_t size_;
  std::vector<std::uint64_t> weights_;
};

/// One byte per permutation of S_n in rank order; 255 marks "unreachable".
class DistanceTable {
public:
  static constexpr std::uint8_t kUnreachable = 255;

  DistanceTable(std::string spec, int n, std::vector<std::uint8_t> distances);

  const std::string& spec() const noexcept { return spec_; }
  int n() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return distances_.size(); }
  const std::vector<std::uint8_t>& raw() const noexcept { return distances_; }

  /// Distance of the permutation with the given rank; nullopt when unreachable.
  std::optional<int> at(std::uint64_t rank) const;
  std::optional<int> at(const Perm& pi) const;

  /// Largest finite entry, or nullopt when some entry is unreachable.
  std::optional<int> max() const;
  std::uint64_t reachable() const;

  /// Binary form: "PSWB1", u32 spec length, spec bytes, u32 n, n! bytes.
  void write(std::ostream& out) const;
  static DistanceTable read(std::istream& in);

private:
  std::string spec_;
  int n_;
  std::vector<std::uint8_t> distances_;
};

/// Persistent backing for the in-process table memo. load returns nullptr on a
/// miss; implementations must not throw.
class TableStore {
public:
  virtual ~TableStore() = default;
  virtual std::shared_ptr<const DistanceTable> load(const std::string& spec, int n) = 0;
  virtual void store(const DistanceTable& table) = 0;
};

/// Installs (or, with nullptr, removes) the store consulted before any BFS.
void set_table_store(std::shared_ptr<TableStore> store);

/// Table of st(C, pi) indexed by rank(pi). Infinite sorting times are stored as
/// unreachable. Results are memoized per (canonical spec, n) for the process.
std::shared_ptr<const DistanceTable> sorting_time_table(const ClassHandle& c, int n, const BfsOptions& opts = {});

/// Sorting time of a single permutation; nullopt means infinite.
std::optional<int> sorting_time(const ClassHandle& c, const Perm& pi, const BfsOptions& opts = {});

/// Worst-case sorting time; nullopt means infinite.
std::optional<int> wst(const ClassHandle& c, int n, const BfsOptions& opts = {});

std::uint64_t generated_subgroup_order(const ClassHandle& c, int n, const BfsOptions& opts = {});
bool can_sort_at(const ClassHandle& c, int n, const BfsOptions& opts = {});

/// rin(pi) for every pi in S_n, indexed by rank; memoized per n.
std::shared_ptr<const DistanceTable> rin_table(int n, const BfsOptions& opts = {});
int rin(const Perm& pi, const BfsOptions& opts = {});
int rin_of_class(const ClassHandle& c, int n, const BfsOptions& opts = {});

/// Least k >= 1 with k * level_size^k >= n!. Exact for n <= 20.
std::uint64_t counting_lower_bound(int n, std::uint64_t level_size);

std::uint64_t factorial(int n);

}  // namespace permsort
