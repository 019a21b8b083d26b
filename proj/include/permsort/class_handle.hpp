#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "permsort/class_spec.hpp"
#include "permsort/perm.hpp"

namespace permsort {

namespace detail {
class Oracle;
}

/// A compiled class specification: membership oracle plus level enumerator.
/// Immutable after construction and safe to share between threads.
class ClassHandle {
public:
  explicit ClassHandle(ClassSpec spec);

  static ClassHandle parse(std::string_view text) { return ClassHandle(parse_class_spec(text)); }

  const ClassSpec& spec() const noexcept { return spec_; }
  const std::string& canonical() const noexcept { return canonical_; }

  bool member(const Perm& pi) const;

private:
  ClassSpec spec_;
  std::string canonical_;
  std::shared_ptr<const detail::Oracle> oracle_;
};

inline constexpr int kDefaultEnumerationCap = 10;

/// Members of size n in lexicographic order. Throws LimitExceeded when n > cap.
std::vector<Perm> enumerate_level(const ClassHandle& c, int n, int cap = kDefaultEnumerationCap);

/// Membership in the sum-closure of `inner` by dynamic programming over the
/// finest sum decomposition.
bool sum_closure_member(const ClassHandle& inner, const Perm& pi);
bool skew_closure_member(const ClassHandle& inner, const Perm& pi);

/// Cut positions of an M-gridding. column_cuts[i] is the number of entries left
/// of the (i+1)-th interior vertical line; row_cuts[j] is the number of values
/// below the (j+1)-th interior horizontal line (counted bottom to top).
struct Gridding {
  std::vector<int> column_cuts;
  std::vector<int> row_cuts;
  bool operator==(const Gridding&) const = default;
};

std::optional<Gridding> gridding_search(const GriddingMatrix& m, const Perm& pi);

/// Structural membership tests for the named classes.
bool named_member(NamedClass tag, const Perm& pi);
bool fringe_member(int k, const Perm& pi);

}  // namespace permsort
