#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "permsort/class_handle.hpp"

namespace permsort {

/// The five worst-case sorting-time regimes, from slowest to fastest.
enum class Band { CannotSort, Quadratic, Linear, Polylog, OneStep };

std::string_view to_string(Band b);

/// Either exact, or established only for sizes up to `up_to`.
struct Confidence {
  bool exact = true;
  int up_to = 0;

  static Confidence make_exact() { return {true, 0}; }
  static Confidence up_to_size(int n) { return {false, n}; }
  std::string to_string() const;
  bool operator==(const Confidence&) const = default;
};

struct Evidence {
  std::string check;
  std::string result;
  std::string witness;
};

struct Verdict {
  Band band = Band::Quadratic;
  Confidence confidence;
  /// Set when the rin sequence did not settle; band is then Quadratic or Linear.
  bool inconclusive = false;
  std::vector<Evidence> evidence;

  nlohmann::json to_json() const;
};

inline constexpr int kXDepth = 6;

/// The twelve separating classes: eight monotone juxtapositions, L, rev(L),
/// PBT and rev(PBT).
const std::vector<std::string>& x_class_specs();

struct XContainment {
  bool contained = false;
  /// True when `contained` is a proof rather than a check up to `depth`.
  bool exact = false;
  int depth = 0;
  /// The contained class when `contained`, otherwise one line per class
  /// naming a permutation that separates it from the input.
  std::string witness;
};

XContainment x_containment(const ClassHandle& c, int depth = kXDepth);

struct CannotSortResult {
  bool cannot_sort = false;
  /// Smallest n whose generated subgroup is proper.
  std::optional<int> witness_n;
  std::vector<Evidence> signals;
};

/// Runs can_sort_at for n = 2..n_max. A failure certifies the band exactly.
CannotSortResult cannot_sort_check(const ClassHandle& c, int n_max);

enum class RinTrend { BoundedSuspected, UnboundedSuspected, Inconclusive };

std::string_view to_string(RinTrend t);

struct RinBoundedResult {
  RinTrend trend = RinTrend::Inconclusive;
  std::vector<int> sequence;  // rin_of_class for n = 3..n_max
};

/// Last three values equal: bounded. Last three non-decreasing with a net rise:
/// unbounded. Anything else is inconclusive.
RinBoundedResult rin_bounded_check(const ClassHandle& c, int n_max);

/// Exact test whether the spec denotes a proper class.
bool is_proper(const ClassSpec& c);

Verdict classify(const ClassHandle& c, int n_max);

}  // namespace permsort
