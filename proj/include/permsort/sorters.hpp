#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "permsort/perm.hpp"

namespace permsort {

/// A sorting witness: right-composing `input` by each step in order gives the
/// identity, so steps[0] o steps[1] o ... equals inverse(input).
struct SortCertificate {
  Perm input;
  std::string spec;
  std::vector<Perm> steps;
};

struct VerifyResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks sizes, class membership of every step, and the product. Never throws
/// for malformed certificates; the problem is described in `reason`.
VerifyResult verify_certificate(const SortCertificate& cert);

SortCertificate sort_bubble(const Perm& pi);
SortCertificate sort_insertion(const Perm& pi);
SortCertificate sort_odd_even(const Perm& pi);
SortCertificate sort_pancake(const Perm& pi);
SortCertificate sort_radix_juxtaposition(const Perm& pi);
SortCertificate sort_pbt(const Perm& pi);
SortCertificate sort_layered(const Perm& pi);
SortCertificate sort_peg_ca(const Perm& pi);

struct SorterInfo {
  std::string_view name;  // CLI name
  std::string_view spec;  // class the steps belong to
  SortCertificate (*run)(const Perm&);
  /// Largest number of steps the sorter may take on an input of size n.
  std::size_t (*step_bound)(const Perm&);
};

const std::vector<SorterInfo>& sorter_registry();
const SorterInfo* find_sorter(std::string_view name);

int ceil_log2(int n);

/// Text form: input line, spec line, then one step per line.
std::string certificate_to_text(const SortCertificate& cert);
/// Throws DomainError on malformed text.
SortCertificate certificate_from_text(std::string_view text);

}  // namespace permsort
