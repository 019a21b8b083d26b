#include "permsort/class_spec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace permsort {

namespace {

constexpr std::array<std::pair<NamedClass, std::string_view>, 12> kNames{{
    {NamedClass::All, "all"},
    {NamedClass::Inc, "inc"},
    {NamedClass::Dec, "dec"},
    {NamedClass::Layered, "L"},
    {NamedClass::Fibonacci, "F"},
    {NamedClass::Rotation, "R"},
    {NamedClass::RotationRev, "RR"},
    {NamedClass::Pbt, "PBT"},
    {NamedClass::Bubble, "Bub"},
    {NamedClass::CyclicAdj, "T"},
    {NamedClass::Pancake, "Pan"},
    {NamedClass::Insertion, "Ins"},
}};

// Shortlex: shorter patterns first, then lexicographic on values.
bool shortlex_less(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                      b.values().end());
}

template <class T>
std::shared_ptr<const detail::SpecNode> make_node(T value) {
  return std::make_shared<const detail::SpecNode>(detail::SpecNode{std::move(value)});
}

}  // namespace

std::string_view to_string(NamedClass c) {
  for (const auto& [tag, name] : kNames) {
    if (tag == c) return name;
  }
  return "?";
}

std::optional<NamedClass> named_class_from_string(std::string_view name) {
  for (const auto& [tag, text] : kNames) {
    if (text == name) return tag;
  }
  return std::nullopt;
}

ClassSpec ClassSpec::named(NamedClass tag) { return ClassSpec(make_node(detail::Named{tag})); }

ClassSpec ClassSpec::avoiding(std::vector<Perm> basis) {
  if (basis.empty()) throw DomainError("Av basis must be nonempty");
  for (const auto& b : basis) {
    if (b.empty()) throw DomainError("Av basis may not contain the empty permutation");
  }
  std::sort(basis.begin(), basis.end(), shortlex_less);
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  std::vector<Perm> minimal;
  for (const auto& b : basis) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                       [&](const Perm& m) { return contains_pattern(b, m); });
    if (!redundant) minimal.push_back(b);
  }
  return ClassSpec(make_node(detail::Avoid{std::move(minimal)}));
}

ClassSpec ClassSpec::grid(GriddingMatrix matrix) {
  if (!matrix.has_nonempty_cell()) throw DomainError("gridding matrix has no nonempty cell");
  return ClassSpec(make_node(detail::Grid{std::move(matrix)}));
}

ClassSpec ClassSpec::union_of(ClassSpec left, ClassSpec right) {
  return ClassSpec(make_node(detail::Union{std::move(left), std::move(right)}));
}

ClassSpec ClassSpec::symmetry(ClassSpec inner, Symmetry op) {
  return ClassSpec(make_node(detail::Sym{std::move(inner), op}));
}

ClassSpec ClassSpec::sum_closure(ClassSpec inner) {
  return ClassSpec(make_node(detail::SumClosure{std::move(inner)}));
}

ClassSpec ClassSpec::skew_closure(ClassSpec inner) {
  return ClassSpec(make_node(detail::SkewClosure{std::move(inner)}));
}

ClassSpec ClassSpec::fringe(int k) {
  if (k < 0) throw DomainError("fringe width must be nonnegative");
  return ClassSpec(make_node(detail::Fringe{k}));
}

ClassSpec ClassSpec::rfringe(int k) {
  if (k < 0) throw DomainError("fringe width must be nonnegative");
  return ClassSpec(make_node(detail::RFringe{k}));
}

namespace {

std::string cell_text(const GridCell& c) {
  switch (c.kind) {
    case GridCell::Kind::Empty: return ".";
    case GridCell::Kind::Point: return "pt";
    case GridCell::Kind::Class: return c.spec->canonical();
  }
  return ".";
}

}  // namespace

std::string ClassSpec::canonical() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::Named>) {
          return std::string(to_string(n.tag));
        } else if constexpr (std::is_same_v<T, detail::Avoid>) {
          std::string s = "Av(";
          for (std::size_t i = 0; i < n.basis.size(); ++i) {
            if (i) s += ',';
            s += to_compact_string(n.basis[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, detail::Grid>) {
          std::string s = "grid(";
          for (int j = n.matrix.rows(); j >= 1; --j) {
            if (j != n.matrix.rows()) s += ',';
            s += '[';
            for (int i = 1; i <= n.matrix.columns(); ++i) {
              if (i > 1) s += ',';
              s += cell_text(n.matrix.cell(i, j));
            }
            s += ']';
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, detail::Union>) {
          return "union(" + n.left.canonical() + "," + n.right.canonical() + ")";
        } else if constexpr (std::is_same_v<T, detail::Sym>) {
          return std::string(symmetry_keyword(n.op)) + "(" + n.inner.canonical() + ")";
        } else if constexpr (std::is_same_v<T, detail::SumClosure>) {
          return "sumcl(" + n.inner.canonical() + ")";
        } else if constexpr (std::is_same_v<T, detail::SkewClosure>) {
          return "skewcl(" + n.inner.canonical() + ")";
        } else if constexpr (std::is_same_v<T, detail::Fringe>) {
          return "fringe(" + std::to_string(n.k) + ")";
        } else {
          return "rfringe(" + std::to_string(n.k) + ")";
        }
      },
      node_->value);
}

GriddingMatrix::GriddingMatrix(int columns, int rows)
    : columns_(columns), rows_(rows), cells_(static_cast<std::size_t>(columns * rows)) {
  if (columns < 1 || rows < 1) throw DomainError("gridding matrix must be at least 1x1");
}

GriddingMatrix GriddingMatrix::from_visual_rows(std::vector<std::vector<GridCell>> rows_top_down) {
  if (rows_top_down.empty()) throw DomainError("gridding matrix needs at least one row");
  const auto width = rows_top_down.front().size();
  GriddingMatrix m(static_cast<int>(width), static_cast<int>(rows_top_down.size()));
  for (std::size_t r = 0; r < rows_top_down.size(); ++r) {
    if (rows_top_down[r].size() != width) throw DomainError("gridding matrix rows differ in length");
    const int row = m.rows() - static_cast<int>(r);
    for (std::size_t c = 0; c < width; ++c) m.set(static_cast<int>(c) + 1, row, std::move(rows_top_down[r][c]));
  }
  return m;
}

const GridCell& GriddingMatrix::cell(int column, int row) const {
  return cells_[static_cast<std::size_t>((row - 1) * columns_ + (column - 1))];
}

void GriddingMatrix::set(int column, int row, GridCell c) {
  if (column < 1 || column > columns_ || row < 1 || row > rows_) throw DomainError("cell out of range");
  cells_[static_cast<std::size_t>((row - 1) * columns_ + (column - 1))] = std::move(c);
}

bool GriddingMatrix::has_nonempty_cell() const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [](const GridCell& c) { return c.kind != GridCell::Kind::Empty; });
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class SpecParser {
public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  ClassSpec parse() {
    ClassSpec spec = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a class expression");
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Perm perm() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
    const auto token = text_.substr(start, pos_ - start);
    try {
      Perm p = parse_perm(token);
      if (p.empty()) {
        pos_ = start;
        fail("expected a permutation");
      }
      return p;
    } catch (const DomainError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  GridCell cell() {
    skip_ws();
    if (peek('.')) {
      ++pos_;
      return GridCell::empty();
    }
    const auto save = pos_;
    const auto word = identifier();
    if (word == "pt") return GridCell::point();
    pos_ = save;
    return GridCell::of(expr());
  }

  std::vector<GridCell> row() {
    expect('[');
    std::vector<GridCell> cells{cell()};
    while (peek(',')) {
      ++pos_;
      cells.push_back(cell());
    }
    expect(']');
    return cells;
  }

  ClassSpec expr() {
    const auto start = (skip_ws(), pos_);
    const auto word = identifier();
    if (!peek('(')) {
      if (auto tag = named_class_from_string(word)) return ClassSpec::named(*tag);
      pos_ = start;
      fail("unknown class name '" + word + "'");
    }
    ++pos_;
    ClassSpec result = [&]() -> ClassSpec {
      if (word == "Av") {
        std::vector<Perm> basis{perm()};
        while (peek(',')) {
          ++pos_;
          basis.push_back(perm());
        }
        return ClassSpec::avoiding(std::move(basis));
      }
      if (word == "grid") {
        std::vector<std::vector<GridCell>> rows{row()};
        while (peek(',')) {
          ++pos_;
          rows.push_back(row());
        }
        const auto width = rows.front().size();
        for (const auto& r : rows) {
          if (r.size() != width) fail("malformed matrix: rows differ in length");
        }
        auto m = GriddingMatrix::from_visual_rows(std::move(rows));
        if (!m.has_nonempty_cell()) fail("malformed matrix: every cell is empty");
        return ClassSpec::grid(std::move(m));
      }
      if (word == "union") {
        ClassSpec left = expr();
        expect(',');
        ClassSpec right = expr();
        return ClassSpec::union_of(std::move(left), std::move(right));
      }
      if (word == "rev") return ClassSpec::symmetry(expr(), Symmetry::Reverse);
      if (word == "comp") return ClassSpec::symmetry(expr(), Symmetry::Complement);
      if (word == "inv") return ClassSpec::symmetry(expr(), Symmetry::Inverse);
      if (word == "flip") return ClassSpec::symmetry(expr(), Symmetry::Flip);
      if (word == "sumcl") return ClassSpec::sum_closure(expr());
      if (word == "skewcl") return ClassSpec::skew_closure(expr());
      if (word == "fringe") return ClassSpec::fringe(integer());
      if (word == "rfringe") return ClassSpec::rfringe(integer());
      pos_ = start;
      fail("unknown constructor '" + word + "'");
    }();
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ClassSpec parse_class_spec(std::string_view text) { return SpecParser(text).parse(); }

// ---------------------------------------------------------------------------
// Symmetries

namespace {

GridCell cell_symmetry(const GridCell& c, Symmetry op) {
  if (c.kind != GridCell::Kind::Class) return c;
  return GridCell::of(class_symmetry(*c.spec, op));
}

GriddingMatrix matrix_symmetry(const GriddingMatrix& m, Symmetry op) {
  const int k = m.columns();
  const int l = m.rows();
  const bool transposed = op == Symmetry::Inverse || op == Symmetry::Flip;
  GriddingMatrix out(transposed ? l : k, transposed ? k : l);
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= l; ++j) {
      GridCell c = cell_symmetry(m.cell(i, j), op);
      switch (op) {
        case Symmetry::Reverse: out.set(k - i + 1, j, std::move(c)); break;
        case Symmetry::Complement: out.set(i, l - j + 1, std::move(c)); break;
        case Symmetry::Inverse: out.set(j, i, std::move(c)); break;
        case Symmetry::Flip: out.set(l - j + 1, k - i + 1, std::move(c)); break;
      }
    }
  }
  return out;
}

}  // namespace

ClassSpec class_symmetry(const ClassSpec& c, Symmetry op) {
  return std::visit(
      [&](const auto& n) -> ClassSpec {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::Named>) {
          const bool swaps = op == Symmetry::Reverse || op == Symmetry::Complement;
          switch (n.tag) {
            case NamedClass::All: return c;
            case NamedClass::Inc: return swaps ? ClassSpec::named(NamedClass::Dec) : c;
            case NamedClass::Dec: return swaps ? ClassSpec::named(NamedClass::Inc) : c;
            default: return ClassSpec::symmetry(c, op);
          }
        } else if constexpr (std::is_same_v<T, detail::Avoid>) {
          std::vector<Perm> basis;
          for (const auto& b : n.basis) basis.push_back(apply_symmetry(b, op));
          return ClassSpec::avoiding(std::move(basis));
        } else if constexpr (std::is_same_v<T, detail::Grid>) {
          return ClassSpec::grid(matrix_symmetry(n.matrix, op));
        } else if constexpr (std::is_same_v<T, detail::Union>) {
          return ClassSpec::union_of(class_symmetry(n.left, op), class_symmetry(n.right, op));
        } else if constexpr (std::is_same_v<T, detail::Sym>) {
          if (n.op == op) return n.inner;
          return ClassSpec::symmetry(c, op);
        } else {
          return ClassSpec::symmetry(c, op);
        }
      },
      c.node().value);
}

bool is_peg_matrix(const GriddingMatrix& m) {
  auto monotone_or_point = [](const GridCell& c) {
    if (c.kind == GridCell::Kind::Point) return true;
    if (c.kind != GridCell::Kind::Class) return false;
    const auto* named = std::get_if<detail::Named>(&c.spec->node().value);
    return named && (named->tag == NamedClass::Inc || named->tag == NamedClass::Dec);
  };
  for (int j = 1; j <= m.rows(); ++j) {
    int count = 0;
    for (int i = 1; i <= m.columns(); ++i) {
      const auto& c = m.cell(i, j);
      if (c.kind == GridCell::Kind::Empty) continue;
      if (!monotone_or_point(c)) return false;
      ++count;
    }
    if (count != 1) return false;
  }
  for (int i = 1; i <= m.columns(); ++i) {
    int count = 0;
    for (int j = 1; j <= m.rows(); ++j) count += m.cell(i, j).kind != GridCell::Kind::Empty;
    if (count != 1) return false;
  }
  return true;
}

std::optional<ClassSpec> grid_form(NamedClass tag) {
  switch (tag) {
    case NamedClass::Rotation: return parse_class_spec("grid([inc,.],[.,inc])");
    case NamedClass::Pancake: return parse_class_spec("grid([.,inc],[dec,.])");
    case NamedClass::Insertion: return parse_class_spec("grid([.,.,inc],[pt,.,.],[.,inc,.])");
    case NamedClass::Bubble:
      return parse_class_spec("grid([.,.,.,inc],[.,pt,.,.],[.,.,pt,.],[inc,.,.,.])");
    case NamedClass::CyclicAdj:
      return parse_class_spec(
          "union(grid([.,.,.,inc],[.,pt,.,.],[.,.,pt,.],[inc,.,.,.]),grid([pt,.,.],[.,inc,.],[.,.,pt]))");
    default: return std::nullopt;
  }
}

bool denotes_all(const ClassSpec& c) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, detail::Named>) {
          return n.tag == NamedClass::All;
        } else if constexpr (std::is_same_v<T, detail::Grid>) {
          for (int i = 1; i <= n.matrix.columns(); ++i) {
            for (int j = 1; j <= n.matrix.rows(); ++j) {
              const auto& cell = n.matrix.cell(i, j);
              if (cell.kind == GridCell::Kind::Class && denotes_all(*cell.spec)) return true;
            }
          }
          return false;
        } else if constexpr (std::is_same_v<T, detail::Union>) {
          return denotes_all(n.left) || denotes_all(n.right);
        } else if constexpr (std::is_same_v<T, detail::Sym> || std::is_same_v<T, detail::SumClosure> ||
                             std::is_same_v<T, detail::SkewClosure>) {
          return denotes_all(n.inner);
        } else {
          return false;
        }
      },
      c.node().value);
}

}  // namespace permsort
