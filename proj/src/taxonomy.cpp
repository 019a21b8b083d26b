#include "permsort/taxonomy.hpp"

#include <sstream>

#include "permsort/engine.hpp"

namespace permsort {

std::string_view to_string(Band b) {
  switch (b) {
    case Band::CannotSort: return "CannotSort";
    case Band::Quadratic: return "Quadratic";
    case Band::Linear: return "Linear";
    case Band::Polylog: return "Polylog";
    case Band::OneStep: return "OneStep";
  }
  return "?";
}

std::string_view to_string(RinTrend t) {
  switch (t) {
    case RinTrend::BoundedSuspected: return "BoundedSuspected";
    case RinTrend::UnboundedSuspected: return "UnboundedSuspected";
    case RinTrend::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string Confidence::to_string() const {
  return exact ? "Exact" : "UpToSize(" + std::to_string(up_to) + ")";
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : evidence) ev.push_back({{"check", e.check}, {"result", e.result}, {"witness", e.witness}});
  return {{"band", std::string(to_string(band))},
          {"confidence", confidence.to_string()},
          {"inconclusive", inconclusive},
          {"evidence", ev}};
}

const std::vector<std::string>& x_class_specs() {
  static const std::vector<std::string> specs = {
      "grid([inc,inc])",   "grid([inc,dec])",   "grid([dec,inc])",   "grid([dec,dec])",
      "grid([inc],[inc])", "grid([inc],[dec])", "grid([dec],[inc])", "grid([dec],[dec])",
      "L",                 "rev(L)",            "PBT",               "rev(PBT)",
  };
  return specs;
}

namespace {

const std::vector<ClassHandle>& x_classes() {
  static const std::vector<ClassHandle> handles = [] {
    std::vector<ClassHandle> out;
    for (const auto& s : x_class_specs()) out.push_back(ClassHandle::parse(s));
    return out;
  }();
  return handles;
}

const std::vector<Perm>* avoid_basis(const ClassSpec& c) {
  if (const auto* av = std::get_if<detail::Avoid>(&c.node().value)) return &av->basis;
  return nullptr;
}

// Exact answer when one is available: Av bases, literal equality and unions.
std::optional<std::string> exact_contains(const ClassSpec& c, const ClassHandle& x) {
  if (denotes_all(c) || c.canonical() == x.canonical()) return x.canonical();
  if (const auto* basis = avoid_basis(c)) {
    for (const auto& beta : *basis) {
      if (x.member(beta)) return std::nullopt;
    }
    return x.canonical();
  }
  if (const auto* u = std::get_if<detail::Union>(&c.node().value)) {
    if (auto w = exact_contains(u->left, x)) return w;
    return exact_contains(u->right, x);
  }
  return std::nullopt;
}

std::string trim_separator(std::string s) {
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

bool exact_decidable(const ClassSpec& c) { return denotes_all(c) || avoid_basis(c) != nullptr; }

}  // namespace

XContainment x_containment(const ClassHandle& c, int depth) {
  XContainment out;
  out.depth = depth;
  std::ostringstream misses;
  for (const auto& x : x_classes()) {
    if (auto w = exact_contains(c.spec(), x)) {
      out.contained = true;
      out.exact = true;
      out.witness = *w;
      return out;
    }
  }
  if (exact_decidable(c.spec())) {
    for (const auto& x : x_classes()) {
      for (const auto& beta : *avoid_basis(c.spec())) {
        if (x.member(beta)) {
          misses << x.canonical() << " contains " << to_string(beta) << "; ";
          break;
        }
      }
    }
    out.exact = true;
    out.witness = trim_separator(misses.str());
    return out;
  }

  std::optional<std::string> contained_up_to_depth;
  for (const auto& x : x_classes()) {
    std::optional<Perm> miss;
    for (int m = 1; m <= depth && !miss; ++m) {
      for (const auto& p : enumerate_level(x, m)) {
        if (!c.member(p)) {
          miss = p;
          break;
        }
      }
    }
    if (!miss) {
      if (!contained_up_to_depth) contained_up_to_depth = x.canonical();
    } else {
      misses << x.canonical() << " contains " << to_string(*miss) << "; ";
    }
  }
  if (contained_up_to_depth) {
    out.contained = true;
    out.witness = *contained_up_to_depth;
  } else {
    out.witness = trim_separator(misses.str());
  }
  return out;
}

CannotSortResult cannot_sort_check(const ClassHandle& c, int n_max) {
  CannotSortResult out;
  for (int n = 2; n <= n_max; ++n) {
    if (!can_sort_at(c, n)) {
      out.cannot_sort = true;
      out.witness_n = n;
      std::ostringstream w;
      w << "n=" << n << " subgroup order " << generated_subgroup_order(c, n) << " < " << factorial(n);
      out.signals.push_back({"can_sort_at", "false", w.str()});
      return out;
    }
  }
  out.signals.push_back({"can_sort_at", "true for n=2.." + std::to_string(n_max), ""});

  auto subset_of = [&](const ClassHandle& outer, int n) {
    for (const auto& p : enumerate_level(c, n)) {
      if (!outer.member(p)) return std::optional<Perm>(p);
    }
    return std::optional<Perm>();
  };
  const ClassHandle rr = ClassHandle::parse("RR");
  for (int n = std::max(2, n_max - 2); n <= n_max; ++n) {
    const auto miss = subset_of(rr, n);
    out.signals.push_back({"subset_of_RR_n=" + std::to_string(n), miss ? "false" : "true", miss ? to_string(*miss) : ""});
  }
  for (int k = 1; k <= 3; ++k) {
    const ClassHandle fringe(ClassSpec::rfringe(k));
    const auto miss = subset_of(fringe, n_max);
    out.signals.push_back(
        {"subset_of_RFringe" + std::to_string(k), miss ? "false" : "true", miss ? to_string(*miss) : ""});
  }
  return out;
}

RinBoundedResult rin_bounded_check(const ClassHandle& c, int n_max) {
  RinBoundedResult out;
  for (int n = 3; n <= n_max; ++n) out.sequence.push_back(rin_of_class(c, n));
  const auto& s = out.sequence;
  if (s.size() < 3) return out;
  const int a = s[s.size() - 3];
  const int b = s[s.size() - 2];
  const int z = s.back();
  if (a == b && b == z) {
    out.trend = RinTrend::BoundedSuspected;
  } else if (a <= b && b <= z && a < z) {
    out.trend = RinTrend::UnboundedSuspected;
  }
  return out;
}

bool is_proper(const ClassSpec& c) { return !denotes_all(c); }

Verdict classify(const ClassHandle& c, int n_max) {
  Verdict v;
  auto add = [&v](std::string check, std::string result, std::string witness = "") {
    v.evidence.push_back({std::move(check), std::move(result), std::move(witness)});
  };

  if (denotes_all(c.spec())) {
    add("denotes_all", "true");
    v.band = Band::OneStep;
    v.confidence = Confidence::make_exact();
    return v;
  }
  add("denotes_all", "false");

  const auto cs = cannot_sort_check(c, n_max);
  for (const auto& e : cs.signals) v.evidence.push_back(e);
  if (cs.cannot_sort) {
    v.band = Band::CannotSort;
    v.confidence = Confidence::make_exact();
    return v;
  }

  const auto xc = x_containment(c);
  add("x_containment", xc.contained ? "true" : "false", xc.witness);
  if (xc.contained) {
    std::string sizes;
    for (int m = 1; m <= 5; ++m) {
      if (enumerate_level(c, m).size() != factorial(m)) {
        sizes = "level " + std::to_string(m) + " is not all of S_" + std::to_string(m);
        break;
      }
    }
    add("proper", is_proper(c.spec()) ? "true" : "false", sizes);
    if (is_proper(c.spec())) {
      v.band = Band::Polylog;
      v.confidence = xc.exact ? Confidence::make_exact() : Confidence::up_to_size(xc.depth);
      return v;
    }
  }

  const auto rb = rin_bounded_check(c, n_max);
  std::string seq;
  for (int x : rb.sequence) seq += (seq.empty() ? "" : ",") + std::to_string(x);
  add("rin_bounded", std::string(to_string(rb.trend)), seq);
  v.confidence = Confidence::up_to_size(n_max);
  switch (rb.trend) {
    case RinTrend::UnboundedSuspected: v.band = Band::Linear; break;
    case RinTrend::BoundedSuspected: v.band = Band::Quadratic; break;
    case RinTrend::Inconclusive:
      v.band = Band::Quadratic;
      v.inconclusive = true;
      break;
  }
  return v;
}

}  // namespace permsort
