#include "permsort/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace permsort {

namespace {

void require_same_size(const Perm& a, const Perm& b, std::string_view op) {
  if (a.size() != b.size()) {
    throw SizeMismatch(std::string(op) + ": sizes " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()) + " differ");
  }
}

}  // namespace

Perm::Perm(std::vector<int> values) : values_(std::move(values)) {
  const auto n = values_.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Perm(std::move(v), Unchecked{});
}

Perm Perm::decreasing(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return Perm(std::move(v), Unchecked{});
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Perm make_unchecked(std::vector<int> values) { return Perm(std::move(values), Perm::Unchecked{}); }

Perm standardize(std::span<const int> sequence) {
  std::vector<std::size_t> order(sequence.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sequence[a] < sequence[b]; });
  std::vector<int> out(sequence.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    out[order[rank]] = static_cast<int>(rank) + 1;
  }
  return Perm(std::move(out), Perm::Unchecked{});
}

Perm compose(const Perm& sigma, const Perm& pi) {
  require_same_size(sigma, pi, "compose");
  std::vector<int> out(static_cast<std::size_t>(pi.size()));
  for (int i = 1; i <= pi.size(); ++i) out[static_cast<std::size_t>(i - 1)] = sigma(pi(i));
  return make_unchecked(std::move(out));
}

Perm inverse(const Perm& pi) {
  std::vector<int> out(static_cast<std::size_t>(pi.size()));
  for (int i = 1; i <= pi.size(); ++i) out[static_cast<std::size_t>(pi(i) - 1)] = i;
  return make_unchecked(std::move(out));
}

Perm reverse(const Perm& pi) {
  std::vector<int> out(pi.values().rbegin(), pi.values().rend());
  return make_unchecked(std::move(out));
}

Perm complement(const Perm& pi) {
  const int n = pi.size();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int v : pi.values()) out.push_back(n + 1 - v);
  return make_unchecked(std::move(out));
}

Perm flip(const Perm& pi) { return reverse(inverse(reverse(pi))); }

Perm apply_symmetry(const Perm& pi, Symmetry s) {
  switch (s) {
    case Symmetry::Reverse: return reverse(pi);
    case Symmetry::Complement: return complement(pi);
    case Symmetry::Inverse: return inverse(pi);
    case Symmetry::Flip: return flip(pi);
  }
  return pi;
}

std::string_view symmetry_keyword(Symmetry s) {
  switch (s) {
    case Symmetry::Reverse: return "rev";
    case Symmetry::Complement: return "comp";
    case Symmetry::Inverse: return "inv";
    case Symmetry::Flip: return "flip";
  }
  return "?";
}

Perm direct_sum(const Perm& alpha, const Perm& beta) {
  std::vector<int> out(alpha.values().begin(), alpha.values().end());
  for (int v : beta.values()) out.push_back(alpha.size() + v);
  return make_unchecked(std::move(out));
}

Perm skew_sum(const Perm& alpha, const Perm& beta) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(alpha.size() + beta.size()));
  for (int v : alpha.values()) out.push_back(beta.size() + v);
  for (int v : beta.values()) out.push_back(v);
  return make_unchecked(std::move(out));
}

namespace {

// For each pattern entry a, the earlier entries whose values bracket sigma(a)
// most tightly from below and above; -1 if none.
struct Bracket {
  int below = -1;
  int above = -1;
};

bool embed(const Perm& pi, const Perm& sigma, const std::vector<Bracket>& brackets,
           std::vector<int>& chosen, int a, int from) {
  const int k = sigma.size();
  const int n = pi.size();
  if (a == k) return true;
  const auto& br = brackets[static_cast<std::size_t>(a)];
  const int lo = br.below < 0 ? 0 : chosen[static_cast<std::size_t>(br.below)];
  const int hi = br.above < 0 ? n + 1 : chosen[static_cast<std::size_t>(br.above)];
  for (int i = from; i <= n - (k - a - 1); ++i) {
    const int v = pi(i);
    if (v <= lo || v >= hi) continue;
    chosen[static_cast<std::size_t>(a)] = v;
    if (embed(pi, sigma, brackets, chosen, a + 1, i + 1)) return true;
  }
  return false;
}

}  // namespace

bool contains_pattern(const Perm& pi, const Perm& sigma) {
  const int k = sigma.size();
  if (k == 0) return true;
  if (k > pi.size()) return false;
  std::vector<Bracket> brackets(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    const int va = sigma(a + 1);
    int best_below = 0;
    int best_above = k + 1;
    for (int b = 0; b < a; ++b) {
      const int vb = sigma(b + 1);
      if (vb < va && vb > best_below) {
        best_below = vb;
        brackets[static_cast<std::size_t>(a)].below = b;
      }
      if (vb > va && vb < best_above) {
        best_above = vb;
        brackets[static_cast<std::size_t>(a)].above = b;
      }
    }
  }
  std::vector<int> chosen(static_cast<std::size_t>(k));
  return embed(pi, sigma, brackets, chosen, 0, 1);
}

long long count_inversions(const Perm& pi) {
  // Fenwick tree over values, scanning right to left.
  const int n = pi.size();
  std::vector<int> tree(static_cast<std::size_t>(n) + 1, 0);
  long long total = 0;
  for (int i = n; i >= 1; --i) {
    for (int v = pi(i) - 1; v > 0; v -= v & -v) total += tree[static_cast<std::size_t>(v)];
    for (int v = pi(i); v <= n; v += v & -v) ++tree[static_cast<std::size_t>(v)];
  }
  return total;
}

std::vector<Perm> sum_decompose(const Perm& pi) {
  std::vector<Perm> parts;
  int start = 0;
  int running_max = 0;
  for (int i = 1; i <= pi.size(); ++i) {
    running_max = std::max(running_max, pi(i));
    if (running_max == i) {
      std::vector<int> part;
      for (int j = start + 1; j <= i; ++j) part.push_back(pi(j) - start);
      parts.push_back(make_unchecked(std::move(part)));
      start = i;
    }
  }
  return parts;
}

std::vector<Perm> skew_decompose(const Perm& pi) {
  const int n = pi.size();
  std::vector<Perm> parts;
  int start = 0;
  int running_min = n + 1;
  for (int i = 1; i <= n; ++i) {
    running_min = std::min(running_min, pi(i));
    if (running_min == n - i + 1) {
      std::vector<int> part;
      for (int j = start + 1; j <= i; ++j) part.push_back(pi(j) - (n - i));
      parts.push_back(make_unchecked(std::move(part)));
      start = i;
    }
  }
  return parts;
}

int cyclic_distance(int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n) {
    throw DomainError("cyclic_distance: arguments must lie in 1..n");
  }
  const int d = std::abs(i - j);
  return std::min(d, n - d);
}

long long total_cyclic_distance(const Perm& pi) {
  const int n = pi.size();
  if (n == 0) return 0;
  long long total = cyclic_distance(pi(1), pi(n), n);
  for (int i = 1; i < n; ++i) total += cyclic_distance(pi(i), pi(i + 1), n);
  return total;
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::vector<int> xs;
  std::vector<int> ys;
  for (const auto& p : points_) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end() ||
      std::adjacent_find(ys.begin(), ys.end()) != ys.end()) {
    throw DomainError("point set is not in general position");
  }
  std::sort(points_.begin(), points_.end());
}

PointSet PointSet::diagram(const Perm& pi) {
  std::vector<Point> pts;
  for (int i = 1; i <= pi.size(); ++i) pts.push_back({i, pi(i)});
  return PointSet(std::move(pts));
}

Perm PointSet::induced() const {
  std::vector<int> ys;
  for (const auto& p : points_) ys.push_back(p.y);
  return standardize(ys);
}

int intervalicity(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  int runs = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0 || xs[i] != xs[i - 1] + 1) ++runs;
  }
  return runs;
}

int intervalicity(const PointSet& p) {
  if (p.size() == 0) throw DomainError("intervalicity of an empty point set");
  std::vector<int> xs;
  std::vector<int> ys;
  for (const auto& pt : p.points()) {
    xs.push_back(pt.x);
    ys.push_back(pt.y);
  }
  return std::max(intervalicity(std::move(xs)), intervalicity(std::move(ys)));
}

namespace {

bool is_horizontal_alternation(const Perm& pi) {
  // Odd values all before even values, or the reverse arrangement.
  auto split = [&](int first_parity) {
    bool in_second = false;
    for (int v : pi.values()) {
      const bool first = (v % 2) == first_parity;
      if (!first) {
        in_second = true;
      } else if (in_second) {
        return false;
      }
    }
    return true;
  };
  return split(1) || split(0);
}

}  // namespace

Alternation is_alternation(const Perm& pi) {
  if (is_horizontal_alternation(pi)) return Alternation::Horizontal;
  if (is_horizontal_alternation(inverse(pi))) return Alternation::Vertical;
  return Alternation::Neither;
}

std::string_view to_string(Alternation a) {
  switch (a) {
    case Alternation::Horizontal: return "Horizontal";
    case Alternation::Vertical: return "Vertical";
    case Alternation::Neither: return "Neither";
  }
  return "?";
}

Perm parse_perm(std::string_view text) {
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (!text.empty() && is_sep(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_sep(text.back())) text.remove_suffix(1);
  if (text.empty()) return Perm{};

  std::vector<int> values;
  const bool separated = std::any_of(text.begin(), text.end(), is_sep);
  if (!separated && text.size() > 1) {
    if (text.size() > 9) throw DomainError("compact permutation form is limited to n <= 9");
    for (char c : text) {
      if (c < '1' || c > '9') throw DomainError("invalid digit in permutation '" + std::string(text) + "'");
      values.push_back(c - '0');
    }
    return Perm(std::move(values));
  }
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{} || (ptr != text.data() + text.size() && !is_sep(*ptr))) {
      throw DomainError("invalid permutation text '" + std::string(text) + "'");
    }
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return Perm(std::move(values));
}

std::string to_string(const Perm& pi) {
  std::string out;
  for (int i = 1; i <= pi.size(); ++i) {
    if (i > 1) out += ' ';
    out += std::to_string(pi(i));
  }
  return out;
}

std::string to_compact_string(const Perm& pi) {
  if (pi.size() > 9) return to_string(pi);
  std::string out;
  for (int v : pi.values()) out += static_cast<char>('0' + v);
  return out;
}

}  // namespace permsort
