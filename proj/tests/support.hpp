#pragma once

// Brute-force oracles and generators shared by the test binaries. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "permsort/perm.hpp"

namespace permsort::testing {

inline std::vector<Perm> all_perms(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Perm> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline Perm random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

/// Pattern containment by enumerating every index subset of size |sigma|.
inline bool brute_contains(const Perm& pi, const Perm& sigma) {
  const int n = pi.size();
  const int k = sigma.size();
  if (k > n) return false;
  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<int> sub;
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) sub.push_back(pi(i + 1));
    }
    bool same = true;
    for (int a = 0; a < k && same; ++a) {
      for (int b = 0; b < k && same; ++b) {
        same = (sub[static_cast<std::size_t>(a)] < sub[static_cast<std::size_t>(b)]) == (sigma(a + 1) < sigma(b + 1));
      }
    }
    if (same) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

inline long long brute_inversions(const Perm& pi) {
  long long c = 0;
  for (int i = 1; i <= pi.size(); ++i) {
    for (int j = i + 1; j <= pi.size(); ++j) c += pi(i) > pi(j);
  }
  return c;
}

/// pi with the entry at 1-based position `pos` removed, standardized.
inline Perm delete_point(const Perm& pi, int pos) {
  std::vector<int> v;
  for (int i = 1; i <= pi.size(); ++i) {
    if (i == pos) continue;
    v.push_back(pi(i) > pi(pos) ? pi(i) - 1 : pi(i));
  }
  return Perm(v);
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// The rotation class RR_n listed directly: the n cyclic shifts and their reversals.
inline std::vector<Perm> rr_level(int n) {
  std::vector<Perm> out;
  for (int s = 0; s < n; ++s) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i) v.push_back((s + i) % n + 1);
    out.emplace_back(v);
    std::reverse(v.begin(), v.end());
    out.emplace_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Cyclic adjacent transpositions T_n listed directly, including the one-point
/// deletions of 1 (-) iota (-) 1 (the two unit rotations) and the identity.
inline std::vector<Perm> t_level(int n) {
  std::vector<Perm> out{Perm::identity(n)};
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i) + 1]);
    out.emplace_back(v);
  }
  if (n >= 2) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::swap(v.front(), v.back());
    out.emplace_back(v);
    std::vector<int> front_top{n};
    for (int i = 1; i < n; ++i) front_top.push_back(i);
    out.emplace_back(front_top);
    std::vector<int> back_bottom;
    for (int i = 2; i <= n; ++i) back_bottom.push_back(i);
    back_bottom.push_back(1);
    out.emplace_back(back_bottom);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace permsort::testing
