#include "permsort/class_handle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace permsort {

namespace {

bool is_rotation(const Perm& pi) {
  const int n = pi.size();
  if (n == 0) return true;
  const int shift = pi(1) - 1;
  for (int i = 1; i <= n; ++i) {
    if (pi(i) != (shift + i - 1) % n + 1) return false;
  }
  return true;
}

bool is_decreasing(const Perm& pi) {
  for (int i = 1; i <= pi.size(); ++i) {
    if (pi(i) != pi.size() - i + 1) return false;
  }
  return true;
}

}  // namespace

bool named_member(NamedClass tag, const Perm& pi) {
  const int n = pi.size();
  switch (tag) {
    case NamedClass::All: return true;
    case NamedClass::Inc: return pi.is_identity();
    case NamedClass::Dec: return is_decreasing(pi);
    case NamedClass::Layered: {
      const auto parts = sum_decompose(pi);
      return std::all_of(parts.begin(), parts.end(), is_decreasing);
    }
    case NamedClass::Fibonacci: {
      const auto parts = sum_decompose(pi);
      return std::all_of(parts.begin(), parts.end(), [](const Perm& p) { return p.size() <= 2; });
    }
    case NamedClass::Rotation: return is_rotation(pi);
    case NamedClass::RotationRev: return is_rotation(pi) || is_rotation(reverse(pi));
    case NamedClass::Pbt: {
      const auto parts = sum_decompose(pi);
      return std::all_of(parts.begin(), parts.end(), is_rotation);
    }
    case NamedClass::Bubble: return count_inversions(pi) <= 1;
    case NamedClass::CyclicAdj: {
      if (count_inversions(pi) <= 1) return true;
      // 1 (-) iota_c (-) 1 and its two one-point deletions.
      std::vector<int> swap_ends(static_cast<std::size_t>(n));
      std::iota(swap_ends.begin(), swap_ends.end(), 1);
      std::swap(swap_ends.front(), swap_ends.back());
      if (pi == make_unchecked(swap_ends)) return true;
      const auto values = pi.values();
      const bool top_then_inc =
          values.front() == n && std::equal(values.begin() + 1, values.end(), Perm::identity(n - 1).values().begin());
      const bool inc_then_bottom = values.back() == 1;
      if (top_then_inc) return true;
      if (inc_then_bottom) {
        for (int i = 1; i < n; ++i) {
          if (pi(i) != i + 1) return false;
        }
        return true;
      }
      return false;
    }
    case NamedClass::Pancake: {
      if (n == 0) return true;
      const int a = pi(1);
      for (int i = 1; i <= n; ++i) {
        const int expect = i <= a ? a - i + 1 : i;
        if (pi(i) != expect) return false;
      }
      return true;
    }
    case NamedClass::Insertion: {
      if (n == 0) return true;
      const int m = pi(1);
      for (int i = 2; i <= n; ++i) {
        const int expect = i <= m ? i - 1 : i;
        if (pi(i) != expect) return false;
      }
      return true;
    }
  }
  return false;
}

bool fringe_member(int k, const Perm& pi) {
  const int n = pi.size();
  for (int head = 0; head <= std::min(k, n); ++head) {
    // Prefix must hold exactly {1..head}.
    int prefix_max = 0;
    for (int i = 1; i <= head; ++i) prefix_max = std::max(prefix_max, pi(i));
    if (prefix_max != head) continue;
    for (int tail = 0; tail <= std::min(k, n - head); ++tail) {
      bool ok = true;
      for (int i = head + 1; i <= n - tail && ok; ++i) ok = pi(i) == i;
      if (ok) return true;
    }
  }
  return false;
}

namespace detail {

class Oracle {
public:
  virtual ~Oracle() = default;
  virtual bool member(const Perm& pi) const = 0;
};

}  // namespace detail

namespace {

using detail::Oracle;
using OraclePtr = std::shared_ptr<const Oracle>;

OraclePtr compile(const ClassSpec& spec);

class NamedOracle final : public Oracle {
public:
  explicit NamedOracle(NamedClass tag) : tag_(tag) {}
  bool member(const Perm& pi) const override { return named_member(tag_, pi); }

private:
  NamedClass tag_;
};

class AvoidOracle final : public Oracle {
public:
  explicit AvoidOracle(std::vector<Perm> basis) : basis_(std::move(basis)) {}
  bool member(const Perm& pi) const override {
    return std::none_of(basis_.begin(), basis_.end(), [&](const Perm& b) { return contains_pattern(pi, b); });
  }

private:
  std::vector<Perm> basis_;
};

class UnionOracle final : public Oracle {
public:
  UnionOracle(OraclePtr left, OraclePtr right) : left_(std::move(left)), right_(std::move(right)) {}
  bool member(const Perm& pi) const override { return left_->member(pi) || right_->member(pi); }

private:
  OraclePtr left_, right_;
};

class SymOracle final : public Oracle {
public:
  SymOracle(OraclePtr inner, Symmetry op) : inner_(std::move(inner)), op_(op) {}
  // Every symmetry is an involution.
  bool member(const Perm& pi) const override { return inner_->member(apply_symmetry(pi, op_)); }

private:
  OraclePtr inner_;
  Symmetry op_;
};

bool closure_dp(const Oracle& inner, const std::vector<Perm>& parts, bool skew) {
  const auto m = parts.size();
  std::vector<char> reach(m + 1, 0);
  reach[0] = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    Perm block;
    // Grow the block leftwards: parts[j..i-1].
    for (std::size_t j = i; j-- > 0;) {
      block = skew ? skew_sum(parts[j], block) : direct_sum(parts[j], block);
      if (reach[j] && inner.member(block)) {
        reach[i] = 1;
        break;
      }
    }
  }
  return reach[m] != 0;
}

class ClosureOracle final : public Oracle {
public:
  ClosureOracle(OraclePtr inner, bool skew) : inner_(std::move(inner)), skew_(skew) {}
  bool member(const Perm& pi) const override {
    return closure_dp(*inner_, skew_ ? skew_decompose(pi) : sum_decompose(pi), skew_);
  }

private:
  OraclePtr inner_;
  bool skew_;
};

class FringeOracle final : public Oracle {
public:
  FringeOracle(int k, bool with_reverse) : k_(k), with_reverse_(with_reverse) {}
  bool member(const Perm& pi) const override {
    return fringe_member(k_, pi) || (with_reverse_ && fringe_member(k_, reverse(pi)));
  }

private:
  int k_;
  bool with_reverse_;
};

struct CompiledCell {
  GridCell::Kind kind;
  OraclePtr oracle;

  bool accepts(const Perm& p) const {
    switch (kind) {
      case GridCell::Kind::Empty: return p.empty();
      case GridCell::Kind::Point: return p.size() <= 1;
      case GridCell::Kind::Class: return oracle->member(p);
    }
    return false;
  }
};

class CompiledGrid {
public:
  explicit CompiledGrid(const GriddingMatrix& m) : columns_(m.columns()), rows_(m.rows()) {
    for (int j = 1; j <= rows_; ++j) {
      for (int i = 1; i <= columns_; ++i) {
        const auto& c = m.cell(i, j);
        cells_.push_back({c.kind, c.kind == GridCell::Kind::Class ? compile(*c.spec) : nullptr});
      }
    }
    column_cell_.assign(static_cast<std::size_t>(columns_) + 1, 0);
    row_owner_.assign(static_cast<std::size_t>(rows_) + 1, 0);
    sparse_ = true;
    for (int i = 1; i <= columns_; ++i) {
      int count = 0;
      for (int j = 1; j <= rows_; ++j) {
        if (cell(i, j).kind != GridCell::Kind::Empty) {
          ++count;
          column_cell_[static_cast<std::size_t>(i)] = j;
        }
      }
      if (count != 1) column_cell_[static_cast<std::size_t>(i)] = 0;
      sparse_ = sparse_ && count <= 1;
    }
    for (int j = 1; j <= rows_; ++j) {
      int count = 0;
      for (int i = 1; i <= columns_; ++i) {
        if (cell(i, j).kind != GridCell::Kind::Empty) {
          ++count;
          row_owner_[static_cast<std::size_t>(j)] = i;
        }
      }
      sparse_ = sparse_ && count <= 1;
    }
  }

  std::optional<Gridding> search(const Perm& pi) const {
    Search s{*this, pi};
    if (!s.columns(1)) return std::nullopt;
    Gridding g;
    g.column_cuts.assign(s.col.begin() + 1, s.col.end() - 1);
    g.row_cuts.assign(s.row.begin() + 1, s.row.end() - 1);
    return g;
  }

private:
  const CompiledCell& cell(int i, int j) const {
    return cells_[static_cast<std::size_t>((j - 1) * columns_ + (i - 1))];
  }

  bool column_all_empty(int i) const {
    for (int j = 1; j <= rows_; ++j) {
      if (cell(i, j).kind != GridCell::Kind::Empty) return false;
    }
    return true;
  }

  bool row_all_empty(int j) const {
    for (int i = 1; i <= columns_; ++i) {
      if (cell(i, j).kind != GridCell::Kind::Empty) return false;
    }
    return true;
  }

  // Columns outer, rows inner; each completed row is checked cell by cell.
  struct Search {
    const CompiledGrid& g;
    const Perm& pi;
    std::vector<int> col;
    std::vector<int> row;

    Search(const CompiledGrid& grid, const Perm& p)
        : g(grid), pi(p), col(static_cast<std::size_t>(grid.columns_) + 1, 0),
          row(static_cast<std::size_t>(grid.rows_) + 1, 0) {}

    bool columns(int i) {
      const int n = pi.size();
      const int prev = col[static_cast<std::size_t>(i - 1)];
      const int lo = i == g.columns_ ? n : prev;
      const int only = g.column_cell_[static_cast<std::size_t>(i)];
      for (int cut = lo; cut <= n; ++cut) {
        if (cut > prev && g.column_all_empty(i)) break;
        col[static_cast<std::size_t>(i)] = cut;
        // A column with a single nonempty cell holds exactly that cell's
        // points. Growing the column only adds points, so by heredity a
        // rejected column stays rejected.
        if (only != 0 && !column_ok(i, only)) break;
        if (i == g.columns_ ? rows(1) : columns(i + 1)) return true;
      }
      return false;
    }

    bool column_ok(int i, int j) const {
      std::vector<int> values;
      for (int p = col[static_cast<std::size_t>(i - 1)] + 1; p <= col[static_cast<std::size_t>(i)]; ++p) {
        values.push_back(pi(p));
      }
      return g.cell(i, j).accepts(standardize(values));
    }

    bool rows(int j) {
      const int n = pi.size();
      const int prev = row[static_cast<std::size_t>(j - 1)];
      const int lo = j == g.rows_ ? n : prev;
      if (g.sparse_) {
        // At most one nonempty cell per row and column: the row holds exactly
        // the points of its owning column, so the cut is forced.
        const int owner = g.row_owner_[static_cast<std::size_t>(j)];
        const int size = owner == 0 ? 0
                                    : col[static_cast<std::size_t>(owner)] - col[static_cast<std::size_t>(owner - 1)];
        const int cut = prev + size;
        if (cut < lo) return false;
        row[static_cast<std::size_t>(j)] = cut;
        return row_ok(j) && (j == g.rows_ || rows(j + 1));
      }
      for (int cut = lo; cut <= n; ++cut) {
        if (cut > prev && g.row_all_empty(j)) break;
        row[static_cast<std::size_t>(j)] = cut;
        // Raising the cut only adds points to this row's cells, so once a
        // cell rejects its contents every higher cut is rejected too.
        if (!row_ok(j)) {
          if (j == g.rows_) return false;
          break;
        }
        if (j == g.rows_ || rows(j + 1)) return true;
      }
      return false;
    }

    bool row_ok(int j) const {
      const int vlo = row[static_cast<std::size_t>(j - 1)];
      const int vhi = row[static_cast<std::size_t>(j)];
      std::vector<int> values;
      for (int i = 1; i <= g.columns_; ++i) {
        values.clear();
        for (int p = col[static_cast<std::size_t>(i - 1)] + 1; p <= col[static_cast<std::size_t>(i)]; ++p) {
          const int v = pi(p);
          if (v > vlo && v <= vhi) values.push_back(v);
        }
        if (!g.cell(i, j).accepts(standardize(values))) return false;
      }
      return true;
    }
  };

  int columns_;
  int rows_;
  std::vector<CompiledCell> cells_;
  std::vector<int> column_cell_;  // row of the column's only nonempty cell, else 0
  std::vector<int> row_owner_;    // column of the row's nonempty cell, else 0
  bool sparse_ = false;
};

class GridOracle final : public Oracle {
public:
  explicit GridOracle(const GriddingMatrix& m) : grid_(m) {}
  bool member(const Perm& pi) const override { return grid_.search(pi).has_value(); }

private:
  CompiledGrid grid_;
};

OraclePtr compile(const ClassSpec& spec) {
  return std::visit(
      [](const auto& n) -> OraclePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::Named>) {
          return std::make_shared<NamedOracle>(n.tag);
        } else if constexpr (std::is_same_v<T, detail::Avoid>) {
          return std::make_shared<AvoidOracle>(n.basis);
        } else if constexpr (std::is_same_v<T, detail::Grid>) {
          return std::make_shared<GridOracle>(n.matrix);
        } else if constexpr (std::is_same_v<T, detail::Union>) {
          return std::make_shared<UnionOracle>(compile(n.left), compile(n.right));
        } else if constexpr (std::is_same_v<T, detail::Sym>) {
          return std::make_shared<SymOracle>(compile(n.inner), n.op);
        } else if constexpr (std::is_same_v<T, detail::SumClosure>) {
          return std::make_shared<ClosureOracle>(compile(n.inner), false);
        } else if constexpr (std::is_same_v<T, detail::SkewClosure>) {
          return std::make_shared<ClosureOracle>(compile(n.inner), true);
        } else if constexpr (std::is_same_v<T, detail::Fringe>) {
          return std::make_shared<FringeOracle>(n.k, false);
        } else {
          return std::make_shared<FringeOracle>(n.k, true);
        }
      },
      spec.node().value);
}

}  // namespace

ClassHandle::ClassHandle(ClassSpec spec)
    : spec_(std::move(spec)), canonical_(spec_.canonical()), oracle_(compile(spec_)) {}

bool ClassHandle::member(const Perm& pi) const { return oracle_->member(pi); }

bool sum_closure_member(const ClassHandle& inner, const Perm& pi) {
  struct Adapter final : Oracle {
    const ClassHandle& h;
    explicit Adapter(const ClassHandle& handle) : h(handle) {}
    bool member(const Perm& p) const override { return h.member(p); }
  } adapter(inner);
  return closure_dp(adapter, sum_decompose(pi), false);
}

bool skew_closure_member(const ClassHandle& inner, const Perm& pi) {
  struct Adapter final : Oracle {
    const ClassHandle& h;
    explicit Adapter(const ClassHandle& handle) : h(handle) {}
    bool member(const Perm& p) const override { return h.member(p); }
  } adapter(inner);
  return closure_dp(adapter, skew_decompose(pi), true);
}

std::optional<Gridding> gridding_search(const GriddingMatrix& m, const Perm& pi) {
  return CompiledGrid(m).search(pi);
}

std::vector<Perm> enumerate_level(const ClassHandle& c, int n, int cap) {
  if (n > cap) {
    throw LimitExceeded("enumeration of size " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  }
  if (n < 0) throw DomainError("negative size");
  std::vector<Perm> out;
  if (denotes_all(c.spec())) {
    Perm p = Perm::identity(n);
    std::vector<int> v(p.values().begin(), p.values().end());
    do {
      out.push_back(make_unchecked(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }
  // Prefix extension: by heredity every prefix pattern of a member is a member.
  std::vector<int> prefix;
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  std::function<void()> extend = [&]() {
    if (static_cast<int>(prefix.size()) == n) {
      out.push_back(make_unchecked(prefix));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      prefix.push_back(v);
      const bool full = static_cast<int>(prefix.size()) == n;
      if (c.member(full ? make_unchecked(prefix) : standardize(prefix))) {
        used[static_cast<std::size_t>(v)] = 1;
        extend();
        used[static_cast<std::size_t>(v)] = 0;
      }
      prefix.pop_back();
    }
  };
  if (n == 0) {
    if (c.member(Perm{})) out.emplace_back();
    return out;
  }
  extend();
  return out;
}

}  // namespace permsort
