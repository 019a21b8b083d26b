#include "permsort/sorters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "permsort/class_handle.hpp"

namespace permsort {

namespace {

constexpr std::string_view kBubbleSpec = "Bub";
constexpr std::string_view kInsertionSpec = "Ins";
constexpr std::string_view kOddEvenSpec = "F";
constexpr std::string_view kPancakeSpec = "Pan";
constexpr std::string_view kRadixSpec = "grid([inc,inc])";
constexpr std::string_view kPbtSpec = "PBT";
constexpr std::string_view kLayeredSpec = "L";
constexpr std::string_view kPegSpec = "grid([pt,.,.],[.,pt,.],[.,.,inc])";

using Values = std::vector<int>;

Values to_values(const Perm& p) { return {p.values().begin(), p.values().end()}; }

/// Records steps and keeps the current arrangement in sync.
class Recorder {
public:
  Recorder(const Perm& input, std::string_view spec) : cur_(to_values(input)) {
    cert_.input = input;
    cert_.spec = std::string(spec);
  }

  const Values& current() const { return cur_; }
  int n() const { return static_cast<int>(cur_.size()); }

  /// Applies current <- current o sigma, where sigma is given 1-based.
  void apply(Values sigma) {
    if (std::is_sorted(sigma.begin(), sigma.end())) return;  // identity steps are not emitted
    Values next(cur_.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) next[i] = cur_[static_cast<std::size_t>(sigma[i] - 1)];
    cur_ = std::move(next);
    cert_.steps.push_back(make_unchecked(std::move(sigma)));
  }

  SortCertificate finish() { return std::move(cert_); }

private:
  Values cur_;
  SortCertificate cert_;
};

Values identity_values(int n) {
  Values v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

/// Identity on 1..n with the adjacent pairs starting at the given 0-based
/// positions swapped.
Values swaps_step(int n, const std::vector<int>& starts) {
  Values s = identity_values(n);
  for (int i : starts) std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
  return s;
}

bool sorted(const Values& v) { return std::is_sorted(v.begin(), v.end()); }

}  // namespace

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

// ---------------------------------------------------------------------------

SortCertificate sort_bubble(const Perm& pi) {
  Recorder rec(pi, kBubbleSpec);
  const int n = rec.n();
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i + 1 < n; ++i) {
      const auto& c = rec.current();
      if (c[static_cast<std::size_t>(i)] > c[static_cast<std::size_t>(i) + 1]) {
        rec.apply(swaps_step(n, {i}));
        again = true;
      }
    }
  }
  return rec.finish();
}

SortCertificate sort_insertion(const Perm& pi) {
  Recorder rec(pi, kInsertionSpec);
  const int n = rec.n();
  // Values j..n already sit in increasing positions; 1..j-1 are moved to the
  // front, largest first.
  const Perm inv = inverse(pi);
  int j = n;
  while (j > 1 && inv(j - 1) < inv(j)) --j;
  if (n == 0) return rec.finish();
  for (int v = j - 1; v >= 1; --v) {
    const auto& c = rec.current();
    const int m = static_cast<int>(std::find(c.begin(), c.end(), v) - c.begin()) + 1;
    // (m, 1, ..., m-1, m+1, ..., n) brings position m to the front.
    Values sigma{m};
    for (int i = 1; i <= n; ++i) {
      if (i != m) sigma.push_back(i);
    }
    rec.apply(std::move(sigma));
  }
  return rec.finish();
}

SortCertificate sort_odd_even(const Perm& pi) {
  Recorder rec(pi, kOddEvenSpec);
  const int n = rec.n();
  for (int round = 0; !sorted(rec.current()); ++round) {
    std::vector<int> swaps;
    for (int i = round % 2; i + 1 < n; i += 2) {
      const auto& c = rec.current();
      if (c[static_cast<std::size_t>(i)] > c[static_cast<std::size_t>(i) + 1]) swaps.push_back(i);
    }
    if (!swaps.empty()) rec.apply(swaps_step(n, swaps));
  }
  return rec.finish();
}

SortCertificate sort_pancake(const Perm& pi) {
  Recorder rec(pi, kPancakeSpec);
  const int n = rec.n();
  auto flip = [&](int a) {
    Values s = identity_values(n);
    std::reverse(s.begin(), s.begin() + a);
    rec.apply(std::move(s));
  };
  for (int k = n; k >= 2; --k) {
    const auto& c = rec.current();
    const int p = static_cast<int>(std::find(c.begin(), c.end(), k) - c.begin()) + 1;
    if (p == k) continue;
    if (p != 1) flip(p);
    flip(k);
  }
  return rec.finish();
}

SortCertificate sort_radix_juxtaposition(const Perm& pi) {
  Recorder rec(pi, kRadixSpec);
  const int n = rec.n();
  for (int bit = 0; bit < ceil_log2(n) && !sorted(rec.current()); ++bit) {
    Values zeros;
    Values ones;
    for (int i = 1; i <= n; ++i) {
      const int v = rec.current()[static_cast<std::size_t>(i - 1)] - 1;
      ((v >> bit) & 1 ? ones : zeros).push_back(i);
    }
    zeros.insert(zeros.end(), ones.begin(), ones.end());
    rec.apply(std::move(zeros));
  }
  return rec.finish();
}

namespace {

struct Segment {
  int begin;  // 0-based position
  int length;
};

/// One merge round on a segment: writes block rotations into `sigma` and
/// returns false when small values already precede large ones.
bool pbt_round(const Values& cur, const Segment& seg, Values& sigma) {
  const int small_count = seg.length / 2;
  Values sorted_vals(cur.begin() + seg.begin, cur.begin() + seg.begin + seg.length);
  std::sort(sorted_vals.begin(), sorted_vals.end());
  const int threshold = small_count > 0 ? sorted_vals[static_cast<std::size_t>(small_count - 1)] : 0;

  // Runs as (is_small, start, length), normalized to begin with a small run.
  struct Run {
    bool small;
    int start;
    int length;
  };
  std::vector<Run> runs;
  for (int i = seg.begin; i < seg.begin + seg.length; ++i) {
    const bool small = cur[static_cast<std::size_t>(i)] <= threshold;
    if (runs.empty() || runs.back().small != small) {
      runs.push_back({small, i, 1});
    } else {
      ++runs.back().length;
    }
  }
  if (!runs.empty() && !runs.front().small) runs.insert(runs.begin(), Run{true, seg.begin, 0});
  // runs = S_1 L_1 S_2 L_2 ...; done when at most S_1 L_1 remain.
  if (runs.size() <= 2) return false;
  // For even j, exchange L_{j-1} (runs[2j-3]) with S_j (runs[2j-2]).
  for (std::size_t s = 2; s < runs.size(); s += 4) {
    const Run& large = runs[s - 1];
    const Run& small = runs[s];
    // The block L S becomes S L: a rotation of the positions it spans.
    int pos = large.start;
    for (int i = 0; i < small.length; ++i) sigma[static_cast<std::size_t>(pos++)] = small.start + i + 1;
    for (int i = 0; i < large.length; ++i) sigma[static_cast<std::size_t>(pos++)] = large.start + i + 1;
  }
  return true;
}

}  // namespace

SortCertificate sort_pbt(const Perm& pi) {
  Recorder rec(pi, kPbtSpec);
  const int n = rec.n();
  std::vector<Segment> level;
  if (n > 1) level.push_back({0, n});
  while (!level.empty()) {
    std::vector<bool> active(level.size(), true);
    for (bool any = true; any;) {
      any = false;
      Values sigma = identity_values(n);
      for (std::size_t s = 0; s < level.size(); ++s) {
        if (active[s]) active[s] = pbt_round(rec.current(), level[s], sigma);
        any = any || active[s];
      }
      rec.apply(std::move(sigma));
    }
    std::vector<Segment> next;
    for (const auto& seg : level) {
      const int half = seg.length / 2;
      if (half > 1) next.push_back({seg.begin, half});
      if (seg.length - half > 1) next.push_back({seg.begin + half, seg.length - half});
    }
    level = std::move(next);
  }
  return rec.finish();
}

SortCertificate sort_layered(const Perm& pi) {
  const auto pbt = sort_pbt(pi);
  SortCertificate out{pi, std::string(kLayeredSpec), {}};
  for (const auto& step : pbt.steps) {
    // Each component iota_b (-) iota_a factors as delta_m o (delta_b (+) delta_a).
    Values first;
    Values second;
    int offset = 0;
    for (const auto& comp : sum_decompose(step)) {
      const int m = comp.size();
      const int a = comp(1) - 1;
      const int b = m - a;
      for (int i = 0; i < m; ++i) first.push_back(offset + m - i);
      for (int i = 0; i < b; ++i) second.push_back(offset + b - i);
      for (int i = 0; i < a; ++i) second.push_back(offset + b + a - i);
      offset += m;
    }
    for (auto* f : {&first, &second}) {
      if (!std::is_sorted(f->begin(), f->end())) out.steps.push_back(make_unchecked(std::move(*f)));
    }
  }
  return out;
}

SortCertificate sort_peg_ca(const Perm& pi) {
  Recorder rec(pi, kPegSpec);
  const int n = rec.n();
  // Each odd-even round is one pass from the back: every entry travels to the
  // front once, either alone (n, 1, ..., n-1) or together with its round
  // partner and swapped (n, n-1, 1, ..., n-2).
  Values single{n};
  for (int i = 1; i < n; ++i) single.push_back(i);
  Values pair{n, n - 1};
  for (int i = 1; i + 1 < n; ++i) pair.push_back(i);

  Values cur = rec.current();
  for (int round = 0; !sorted(cur); ++round) {
    std::vector<bool> swap_at(static_cast<std::size_t>(n), false);  // pair (i, i+1), 0-based
    bool any = false;
    for (int i = round % 2; i + 1 < n; i += 2) {
      if (cur[static_cast<std::size_t>(i)] > cur[static_cast<std::size_t>(i) + 1]) {
        swap_at[static_cast<std::size_t>(i)] = true;
        any = true;
      }
    }
    if (!any) continue;
    for (int i = n - 1; i >= 0;) {
      if (i >= 1 && swap_at[static_cast<std::size_t>(i - 1)]) {
        rec.apply(pair);
        i -= 2;
      } else {
        rec.apply(single);
        i -= 1;
      }
    }
    cur = rec.current();
  }
  return rec.finish();
}

// ---------------------------------------------------------------------------

namespace {

const ClassHandle& handle_for(const std::string& spec) {
  static std::mutex mu;
  static std::map<std::string, ClassHandle> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, ClassHandle::parse(spec)).first;
  return it->second;
}

}  // namespace

VerifyResult verify_certificate(const SortCertificate& cert) {
  const ClassHandle* handle = nullptr;
  try {
    handle = &handle_for(cert.spec);
  } catch (const std::exception& e) {
    return {false, std::string("invalid spec: ") + e.what()};
  }
  const int n = cert.input.size();
  Perm cur = cert.input;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& step = cert.steps[k];
    const std::string label = "step " + std::to_string(k + 1);
    if (step.size() != n) {
      return {false, label + " has size " + std::to_string(step.size()) + ", expected " + std::to_string(n)};
    }
    if (!handle->member(step)) return {false, label + " not a member of " + cert.spec};
    cur = compose(cur, step);
  }
  if (!cur.is_identity()) {
    return {false, "composition mismatch: applying the steps yields " + to_string(cur) + " instead of the identity"};
  }
  return {};
}

const std::vector<SorterInfo>& sorter_registry() {
  static const std::vector<SorterInfo> registry = {
      {"bubble", kBubbleSpec, sort_bubble,
       [](const Perm& p) { return static_cast<std::size_t>(count_inversions(p)); }},
      {"insertion", kInsertionSpec, sort_insertion,
       [](const Perm& p) { return static_cast<std::size_t>(std::max(0, p.size() - 1)); }},
      {"oddeven", kOddEvenSpec, sort_odd_even, [](const Perm& p) { return static_cast<std::size_t>(p.size()); }},
      {"pancake", kPancakeSpec, sort_pancake,
       [](const Perm& p) { return static_cast<std::size_t>(std::max(0, 2 * p.size() - 3)); }},
      {"radix", kRadixSpec, sort_radix_juxtaposition,
       [](const Perm& p) { return static_cast<std::size_t>(ceil_log2(p.size())); }},
      {"pbt", kPbtSpec, sort_pbt,
       [](const Perm& p) {
         const auto k = static_cast<std::size_t>(ceil_log2(p.size()) + 2);
         return k * k;
       }},
      {"layered", kLayeredSpec, sort_layered, [](const Perm& p) { return 2 * sort_pbt(p).steps.size(); }},
      {"pegca", kPegSpec, sort_peg_ca,
       [](const Perm& p) { return static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(p.size()); }},
  };
  return registry;
}

const SorterInfo* find_sorter(std::string_view name) {
  for (const auto& s : sorter_registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string certificate_to_text(const SortCertificate& cert) {
  std::string out = to_string(cert.input) + "\n" + cert.spec + "\n";
  for (const auto& s : cert.steps) out += to_string(s) + "\n";
  return out;
}

SortCertificate certificate_from_text(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos && lines.size() > 2) {
    lines.pop_back();
  }
  if (lines.size() < 2) throw DomainError("certificate needs an input line and a spec line");
  SortCertificate cert;
  cert.input = parse_perm(lines[0]);
  cert.spec = lines[1];
  for (std::size_t i = 2; i < lines.size(); ++i) {
    try {
      cert.steps.push_back(parse_perm(lines[i]));
    } catch (const DomainError& e) {
      throw DomainError("certificate line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return cert;
}

}  // namespace permsort
