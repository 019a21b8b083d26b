#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permsort/errors.hpp"

namespace permsort {

/// A permutation of {1..n} in one-line notation. Entry i (1-based) is pi(i).
/// The empty permutation (n = 0) is a valid value.
class Perm {
public:
  Perm() = default;

  /// Validates that `values` is a permutation of 1..size; throws DomainError otherwise.
  explicit Perm(std::vector<int> values);
  Perm(std::initializer_list<int> values) : Perm(std::vector<int>(values)) {}

  static Perm identity(int n);
  static Perm decreasing(int n);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  bool empty() const noexcept { return values_.empty(); }

  /// 1-based evaluation pi(i).
  int operator()(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }

  std::span<const int> values() const noexcept { return values_; }
  bool is_identity() const noexcept;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

private:
  struct Unchecked {};
  Perm(std::vector<int> values, Unchecked) : values_(std::move(values)) {}
  friend Perm standardize(std::span<const int> sequence);
  friend Perm make_unchecked(std::vector<int> values);

  std::vector<int> values_;
};

/// Builds a Perm without validation; callers guarantee the invariant.
Perm make_unchecked(std::vector<int> values);

/// The permutation order-isomorphic to an arbitrary sequence of distinct integers.
Perm standardize(std::span<const int> sequence);

/// result(i) = sigma(pi(i)).
Perm compose(const Perm& sigma, const Perm& pi);
Perm inverse(const Perm& pi);
Perm reverse(const Perm& pi);
Perm complement(const Perm& pi);
/// ((pi^r)^-1)^r, reflection over the anti-diagonal.
Perm flip(const Perm& pi);

enum class Symmetry { Reverse, Complement, Inverse, Flip };

Perm apply_symmetry(const Perm& pi, Symmetry s);
std::string_view symmetry_keyword(Symmetry s);

Perm direct_sum(const Perm& alpha, const Perm& beta);
Perm skew_sum(const Perm& alpha, const Perm& beta);

bool contains_pattern(const Perm& pi, const Perm& sigma);
long long count_inversions(const Perm& pi);

/// Finest decomposition pi = a_1 (+) ... (+) a_m into sum-indecomposable parts.
std::vector<Perm> sum_decompose(const Perm& pi);
/// Finest decomposition pi = a_1 (-) ... (-) a_m into skew-indecomposable parts.
std::vector<Perm> skew_decompose(const Perm& pi);

int cyclic_distance(int i, int j, int n);
long long total_cyclic_distance(const Perm& pi);

struct Point {
  int x;
  int y;
  auto operator<=>(const Point&) const = default;
};

/// Finite point set in general position (no shared x or y coordinate).
class PointSet {
public:
  explicit PointSet(std::vector<Point> points);
  static PointSet diagram(const Perm& pi);

  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// The permutation induced by the set.
  Perm induced() const;

private:
  std::vector<Point> points_;
};

/// Minimum number of integer intervals whose union is `xs`.
int intervalicity(std::vector<int> xs);
int intervalicity(const PointSet& p);

enum class Alternation { Horizontal, Vertical, Neither };

Alternation is_alternation(const Perm& pi);
std::string_view to_string(Alternation a);

/// Parses "2 4 1 3", "2,4,1,3" or, for n <= 9, the compact "2413".
Perm parse_perm(std::string_view text);
/// Space-separated canonical text.
std::string to_string(const Perm& pi);
/// Digit string when every value is <= 9, otherwise space-separated.
std::string to_compact_string(const Perm& pi);

}  // namespace permsort

template <>
struct std::hash<permsort::Perm> {
  std::size_t operator()(const permsort::Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.values()) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};
