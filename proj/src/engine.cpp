#include "permsort/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <future>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

namespace permsort {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw DomainError("factorial argument out of range: " + std::to_string(n));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// ---------------------------------------------------------------------------
// RankCodec

RankCodec::RankCodec(int n) : n_(n), size_(factorial(n)), weights_(static_cast<std::size_t>(std::max(n, 1))) {
  // weights_[i] = (n-1-i)!
  for (int i = 0; i < n; ++i) weights_[static_cast<std::size_t>(i)] = factorial(n - 1 - i);
}

std::uint64_t RankCodec::rank_values(const int* values) const {
  std::uint64_t r = 0;
  std::uint32_t seen = 0;  // bit v set once value v has been consumed
  for (int i = 0; i < n_; ++i) {
    const int v = values[i];
    const std::uint32_t below = seen & ((1u << v) - 1u);
    const int smaller_unused = v - 1 - std::popcount(below);
    r += static_cast<std::uint64_t>(smaller_unused) * weights_[static_cast<std::size_t>(i)];
    seen |= 1u << v;
  }
  return r;
}

void RankCodec::unrank_values(std::uint64_t r, int* out) const {
  std::uint32_t unused = 0;
  for (int v = 1; v <= n_; ++v) unused |= 1u << v;
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t w = weights_[static_cast<std::size_t>(i)];
    auto digit = static_cast<int>(r / w);
    r %= w;
    std::uint32_t bits = unused;
    while (digit-- > 0) bits &= bits - 1;
    const int v = std::countr_zero(bits);
    out[i] = v;
    unused &= ~(1u << v);
  }
}

std::uint64_t RankCodec::rank(const Perm& pi) const {
  if (pi.size() != n_) throw SizeMismatch("rank: permutation size differs from codec size");
  return rank_values(pi.values().data());
}

Perm RankCodec::unrank(std::uint64_t r) const {
  if (r >= size_) throw DomainError("rank out of range");
  std::vector<int> v(static_cast<std::size_t>(n_));
  unrank_values(r, v.data());
  return make_unchecked(std::move(v));
}

// ---------------------------------------------------------------------------
// DistanceTable

DistanceTable::DistanceTable(std::string spec, int n, std::vector<std::uint8_t> distances)
    : spec_(std::move(spec)), n_(n), distances_(std::move(distances)) {
  if (distances_.size() != factorial(n)) throw SizeMismatch("distance table length is not n!");
}

std::optional<int> DistanceTable::at(std::uint64_t rank) const {
  const auto d = distances_.at(rank);
  if (d == kUnreachable) return std::nullopt;
  return d;
}

std::optional<int> DistanceTable::at(const Perm& pi) const { return at(RankCodec(n_).rank(pi)); }

std::optional<int> DistanceTable::max() const {
  int best = 0;
  for (auto d : distances_) {
    if (d == kUnreachable) return std::nullopt;
    best = std::max<int>(best, d);
  }
  return best;
}

std::uint64_t DistanceTable::reachable() const {
  return static_cast<std::uint64_t>(std::count_if(distances_.begin(), distances_.end(),
                                                  [](std::uint8_t d) { return d != kUnreachable; }));
}

namespace {

constexpr char kMagic[5] = {'P', 'S', 'W', 'B', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw DomainError("truncated distance table");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

}  // namespace

void DistanceTable::write(std::ostream& out) const {
  out.write(kMagic, sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(spec_.size()));
  out.write(spec_.data(), static_cast<std::streamsize>(spec_.size()));
  put_u32(out, static_cast<std::uint32_t>(n_));
  out.write(reinterpret_cast<const char*>(distances_.data()), static_cast<std::streamsize>(distances_.size()));
}

DistanceTable DistanceTable::read(std::istream& in) {
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw DomainError("not a distance table (bad magic)");
  }
  const auto len = get_u32(in);
  if (len > (1u << 20)) throw DomainError("distance table spec length is implausible");
  std::string spec(len, '\0');
  if (!in.read(spec.data(), len)) throw DomainError("truncated distance table");
  const auto n = get_u32(in);
  if (n > 12) throw DomainError("distance table size is implausible");
  std::vector<std::uint8_t> d(factorial(static_cast<int>(n)));
  if (!in.read(reinterpret_cast<char*>(d.data()), static_cast<std::streamsize>(d.size()))) {
    throw DomainError("truncated distance table");
  }
  return DistanceTable(std::move(spec), static_cast<int>(n), std::move(d));
}

// ---------------------------------------------------------------------------
// Breadth-first search

namespace {

void check_cap(int n, const BfsOptions& opts) {
  if (opts.cap > kLargeBfsCap) throw LimitExceeded("BFS cap may not exceed " + std::to_string(kLargeBfsCap));
  if (n < 0) throw DomainError("negative size");
  if (n > opts.cap) {
    throw LimitExceeded("BFS at n = " + std::to_string(n) + " exceeds the cap " + std::to_string(opts.cap));
  }
}

unsigned worker_count(const BfsOptions& opts) {
  if (opts.threads != 0) return opts.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Multi-source BFS expanding x -> g o x. `dist` holds the seeds at 0 and
/// kUnreachable elsewhere. Stops once every state has been visited.
void bfs(const RankCodec& codec, const std::vector<std::vector<int>>& gens, std::vector<std::uint8_t>& dist,
         std::vector<std::uint64_t> frontier, const BfsOptions& opts) {
  const int n = codec.n();
  std::uint64_t visited = frontier.size();
  const unsigned workers = worker_count(opts);

  auto expand = [&](std::size_t begin, std::size_t end, std::uint8_t next_d, std::vector<std::uint64_t>& out) {
    std::vector<int> x(static_cast<std::size_t>(n));
    std::vector<int> y(static_cast<std::size_t>(n));
    for (std::size_t f = begin; f < end; ++f) {
      codec.unrank_values(frontier[f], x.data());
      for (const auto& g : gens) {
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(x[static_cast<std::size_t>(i)] - 1)];
        const auto r = codec.rank_values(y.data());
        std::atomic_ref<std::uint8_t> slot(dist[r]);
        std::uint8_t expected = DistanceTable::kUnreachable;
        if (slot.load(std::memory_order_relaxed) == expected &&
            slot.compare_exchange_strong(expected, next_d, std::memory_order_relaxed)) {
          out.push_back(r);
        }
      }
    }
  };

  for (int level = 0; !frontier.empty() && visited < codec.size(); ++level) {
    if (level + 1 >= DistanceTable::kUnreachable) throw LimitExceeded("BFS depth exceeds the table range");
    const auto next_d = static_cast<std::uint8_t>(level + 1);
    std::vector<std::uint64_t> next;
    const std::size_t work = frontier.size() * gens.size();
    if (workers <= 1 || work < (1u << 16)) {
      expand(0, frontier.size(), next_d, next);
    } else {
      std::vector<std::vector<std::uint64_t>> parts(workers);
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t b = std::min(frontier.size(), w * chunk);
        const std::size_t e = std::min(frontier.size(), b + chunk);
        pool.emplace_back([&, b, e, w] { expand(b, e, next_d, parts[w]); });
      }
      for (auto& t : pool) t.join();
      for (auto& p : parts) next.insert(next.end(), p.begin(), p.end());
    }
    visited += next.size();
    frontier = std::move(next);
  }
}

std::vector<std::vector<int>> as_arrays(const std::vector<Perm>& perms, bool invert) {
  std::vector<std::vector<int>> out;
  out.reserve(perms.size());
  for (const auto& p : perms) {
    if (p.is_identity()) continue;  // never leads anywhere new
    const Perm q = invert ? inverse(p) : p;
    out.emplace_back(q.values().begin(), q.values().end());
  }
  return out;
}

DistanceTable build_sorting_table(const ClassHandle& c, int n, const BfsOptions& opts) {
  const RankCodec codec(n);
  std::vector<std::uint8_t> dist(codec.size(), DistanceTable::kUnreachable);
  dist[0] = 0;
  if (denotes_all(c.spec())) {
    std::fill(dist.begin() + 1, dist.end(), std::uint8_t{1});
    return DistanceTable(c.canonical(), n, std::move(dist));
  }
  const auto level = enumerate_level(c, n, opts.cap);
  if (level.empty()) throw EmptyGeneratorSet("class has no members of size " + std::to_string(n));
  // st(C, pi) is the BFS distance of pi^-1 under x -> g o x with g in C_n.
  // Expanding with inverted generators instead reaches the inverses of the
  // same products, so the distance of pi itself is st(C, pi).
  bfs(codec, as_arrays(level, true), dist, {0}, opts);
  return DistanceTable(c.canonical(), n, std::move(dist));
}

template <class Key>
class Memo {
public:
  template <class Build>
  std::shared_ptr<const DistanceTable> get(const Key& key, Build build) {
    std::shared_future<std::shared_ptr<const DistanceTable>> fut;
    std::promise<std::shared_ptr<const DistanceTable>> promise;
    bool owner = false;
    {
      std::lock_guard lock(mu_);
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        fut = promise.get_future().share();
        entries_.emplace(key, fut);
        owner = true;
      } else {
        fut = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const DistanceTable>(build()));
      } catch (...) {
        {
          std::lock_guard lock(mu_);
          entries_.erase(key);
        }
        promise.set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

private:
  std::mutex mu_;
  std::map<Key, std::shared_future<std::shared_ptr<const DistanceTable>>> entries_;
};

std::mutex store_mu;
std::shared_ptr<TableStore> table_store;

template <class Build>
DistanceTable through_store(const std::string& spec, int n, Build build) {
  std::shared_ptr<TableStore> store;
  {
    std::lock_guard lock(store_mu);
    store = table_store;
  }
  if (store) {
    if (auto hit = store->load(spec, n)) return *hit;
  }
  DistanceTable table = build();
  if (store) store->store(table);
  return table;
}

Memo<std::pair<std::string, int>>& sorting_memo() {
  static Memo<std::pair<std::string, int>> memo;
  return memo;
}

Memo<int>& rin_memo() {
  static Memo<int> memo;
  return memo;
}

}  // namespace

void set_table_store(std::shared_ptr<TableStore> store) {
  std::lock_guard lock(store_mu);
  table_store = std::move(store);
}

std::shared_ptr<const DistanceTable> sorting_time_table(const ClassHandle& c, int n, const BfsOptions& opts) {
  check_cap(n, opts);
  return sorting_memo().get({c.canonical(), n}, [&] {
    return through_store(c.canonical(), n, [&] { return build_sorting_table(c, n, opts); });
  });
}

std::optional<int> sorting_time(const ClassHandle& c, const Perm& pi, const BfsOptions& opts) {
  return sorting_time_table(c, pi.size(), opts)->at(pi);
}

std::optional<int> wst(const ClassHandle& c, int n, const BfsOptions& opts) {
  return sorting_time_table(c, n, opts)->max();
}

std::uint64_t generated_subgroup_order(const ClassHandle& c, int n, const BfsOptions& opts) {
  return sorting_time_table(c, n, opts)->reachable();
}

bool can_sort_at(const ClassHandle& c, int n, const BfsOptions& opts) {
  return generated_subgroup_order(c, n, opts) == factorial(n);
}

std::shared_ptr<const DistanceTable> rin_table(int n, const BfsOptions& opts) {
  check_cap(n, opts);
  auto build = [&] {
    const RankCodec codec(n);
    std::vector<std::uint8_t> dist(codec.size(), DistanceTable::kUnreachable);
    std::vector<std::uint64_t> seeds;
    for (const auto& rho : enumerate_level(ClassHandle(ClassSpec::named(NamedClass::RotationRev)), n, opts.cap)) {
      const auto r = codec.rank(rho);
      if (dist[r] != 0) seeds.push_back(r);
      dist[r] = 0;
    }
    const auto t = enumerate_level(ClassHandle(ClassSpec::named(NamedClass::CyclicAdj)), n, opts.cap);
    bfs(codec, as_arrays(t, false), dist, std::move(seeds), opts);
    return DistanceTable("rin", n, std::move(dist));
  };
  return rin_memo().get(n, [&] { return through_store("rin", n, build); });
}

int rin(const Perm& pi, const BfsOptions& opts) {
  const auto d = rin_table(pi.size(), opts)->at(pi);
  if (!d) throw DomainError("rin table has an unreachable entry");
  return *d;
}

int rin_of_class(const ClassHandle& c, int n, const BfsOptions& opts) {
  check_cap(n, opts);
  const auto level = enumerate_level(c, n, opts.cap);
  if (level.empty()) throw EmptyLevel("class has no members of size " + std::to_string(n));
  const auto table = rin_table(n, opts);
  const RankCodec codec(n);
  int best = 0;
  for (const auto& p : level) best = std::max(best, *table->at(codec.rank(p)));
  return best;
}

std::uint64_t counting_lower_bound(int n, std::uint64_t level_size) {
  if (level_size < 1) throw DomainError("level size must be positive");
  const std::uint64_t total = factorial(n);
  if (level_size == 1) return std::max<std::uint64_t>(1, total);
  for (std::uint64_t k = 1;; ++k) {
    // k * level_size^k with saturation at total
    unsigned __int128 value = k;
    for (std::uint64_t i = 0; i < k && value < total; ++i) value *= level_size;
    if (value >= total) return k;
  }
}

}  // namespace permsort
