#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "permsort/engine.hpp"
#include "support.hpp"

using namespace permsort;
using permsort::testing::all_perms;

namespace {

ClassHandle H(std::string_view text) { return ClassHandle::parse(text); }

// Products of k members computed as explicit sets, independent of the BFS.
std::map<Perm, int> brute_sorting_times(const std::vector<Perm>& level, int n) {
  std::map<Perm, int> power_dist;  // least k with x in C^{ok}
  std::set<Perm> current{Perm::identity(n)};
  power_dist[Perm::identity(n)] = 0;
  for (int k = 1; k <= 12 && !current.empty(); ++k) {
    std::set<Perm> next;
    for (const auto& x : current) {
      for (const auto& g : level) next.insert(compose(x, g));
    }
    bool grew = false;
    for (const auto& x : next) {
      if (power_dist.emplace(x, k).second) grew = true;
    }
    current = std::move(next);
    if (!grew && k > 2) break;
  }
  std::map<Perm, int> st;
  for (const auto& [x, k] : power_dist) st[inverse(x)] = k;
  return st;
}

std::map<Perm, int> brute_rin(int n) {
  std::map<Perm, int> out;
  std::set<Perm> current;
  for (const auto& r : testing::rr_level(n)) current.insert(r);
  for (const auto& r : current) out[r] = 0;
  const auto t = testing::t_level(n);
  for (int k = 1; out.size() < static_cast<std::size_t>(testing::factorial(n)); ++k) {
    std::set<Perm> next;
    for (const auto& x : current) {
      for (const auto& s : t) next.insert(compose(s, x));
    }
    for (const auto& x : next) out.emplace(x, k);
    current = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("RankCodec round trip") {
  for (int n = 0; n <= 7; ++n) {
    const RankCodec codec(n);
    CHECK(codec.size() == static_cast<std::uint64_t>(testing::factorial(n)));
    CHECK(codec.rank(Perm::identity(n)) == 0);
    std::uint64_t expected = 0;
    for (const auto& p : all_perms(n)) {
      REQUIRE(codec.rank(p) == expected);  // lexicographic order
      REQUIRE(codec.unrank(expected) == p);
      ++expected;
    }
  }
  const RankCodec big(11);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_perm(11, rng);
    CHECK(big.unrank(big.rank(p)) == p);
  }
}

TEST_CASE("sorting times match explicit products") {
  const std::vector<std::string> specs = {"Bub", "Ins", "F", "Pan", "L", "T", "RR", "PBT", "grid([inc,inc])",
                                          "Av(321)", "fringe(1)"};
  for (const auto& text : specs) {
    const auto c = H(text);
    for (int n = 1; n <= 5; ++n) {
      const auto brute = brute_sorting_times(enumerate_level(c, n), n);
      const auto table = sorting_time_table(c, n);
      for (const auto& p : all_perms(n)) {
        INFO(text, " ", to_string(p));
        const auto it = brute.find(p);
        const auto got = table->at(p);
        if (it == brute.end()) {
          REQUIRE_FALSE(got.has_value());
        } else {
          REQUIRE(got == it->second);
        }
      }
    }
  }
}

TEST_CASE("sorting time examples") {
  CHECK(sorting_time(H("Bub"), parse_perm("321")) == 3);
  CHECK(sorting_time(H("Ins"), parse_perm("2341")) == 1);
  CHECK(sorting_time(H("Ins"), Perm::identity(5)) == 0);
  CHECK(wst(H("Bub"), 4) == 6);
  CHECK(wst(H("Ins"), 4) == 3);
  CHECK_FALSE(wst(H("RR"), 4).has_value());
  CHECK(wst(H("all"), 6) == 1);
  CHECK(wst(H("all"), 1) == 0);
}

TEST_CASE("sorting time limits") {
  CHECK_THROWS_AS(sorting_time_table(H("Bub"), 11), LimitExceeded);
  CHECK_THROWS_AS(sorting_time_table(H("Bub"), 5, BfsOptions{12, 0}), LimitExceeded);
  CHECK_THROWS_AS(sorting_time_table(H("Av(1)"), 3), EmptyGeneratorSet);
}

TEST_CASE("bubble sorting time is the inversion count") {
  for (int n = 1; n <= 7; ++n) {
    const auto table = sorting_time_table(H("Bub"), n);
    for (const auto& p : all_perms(n)) REQUIRE(table->at(p) == testing::brute_inversions(p));
    CHECK(wst(H("Bub"), n) == n * (n - 1) / 2);
  }
}

TEST_CASE("generated subgroups") {
  CHECK(generated_subgroup_order(H("RR"), 4) == 8);
  CHECK(generated_subgroup_order(H("RR"), 3) == 6);
  CHECK(can_sort_at(H("RR"), 3));
  for (int n = 4; n <= 7; ++n) {
    CHECK(generated_subgroup_order(H("RR"), n) == static_cast<std::uint64_t>(2 * n));
    CHECK_FALSE(can_sort_at(H("RR"), n));
  }
  for (int n = 1; n <= 7; ++n) {
    CHECK(generated_subgroup_order(H("Bub"), n) == static_cast<std::uint64_t>(testing::factorial(n)));
    CHECK(can_sort_at(H("all"), n));
  }
}

TEST_CASE("wst is invariant under inverse and flip") {
  for (const auto* text : {"L", "F", "Pan", "Ins", "Bub"}) {
    for (int n = 1; n <= 6; ++n) {
      INFO(text, " n=", n);
      const auto base = wst(H(text), n);
      CHECK(wst(H(std::string("inv(") + text + ")"), n) == base);
      CHECK(wst(H(std::string("flip(") + text + ")"), n) == base);
    }
  }
}

TEST_CASE("wst of a reversed class") {
  for (const auto* text : {"Pan", "L"}) {
    for (int n = 1; n <= 6; ++n) {
      const auto forward = wst(H(text), n);
      const auto backward = wst(H(std::string("rev(") + text + ")"), n);
      REQUIRE(forward.has_value());
      REQUIRE(backward.has_value());
      CHECK(*forward <= 2 * *backward);
    }
  }
}

TEST_CASE("containment in a power bounds wst") {
  // For each pair (A, B) find the least k with A_n inside B^{ok}.
  const std::vector<std::pair<std::string, std::string>> pairs = {{"Bub", "Ins"}, {"F", "PBT"}, {"Pan", "L"},
                                                                   {"Bub", "T"}};
  for (const auto& [a, b] : pairs) {
    for (int n = 2; n <= 6; ++n) {
      // Distance under B-generators from the identity is st(B, x^-1).
      const auto table = sorting_time_table(H(b), n);
      int k = 0;
      for (const auto& x : enumerate_level(H(a), n)) {
        const auto d = table->at(inverse(x));
        REQUIRE(d.has_value());
        k = std::max(k, *d);
      }
      const auto wa = wst(H(a), n);
      const auto wb = wst(H(b), n);
      REQUIRE(wa.has_value());
      REQUIRE(wb.has_value());
      INFO(a, " in ", b, "^", k, " n=", n);
      CHECK(*wb <= k * *wa);
    }
  }
}

TEST_CASE("Fibonacci class sorts in about n rounds") {
  CHECK(wst(H("F"), 3) == 3);
  for (int n = 3; n <= 7; ++n) {
    const auto w = wst(H("F"), n);
    REQUIRE(w.has_value());
    CHECK(*w >= n - 1);
    CHECK(*w <= n);
  }
}

TEST_CASE("rin examples and brute force") {
  CHECK(rin(Perm::identity(6)) == 0);
  CHECK(rin(parse_perm("2143")) == 0);
  CHECK(rin(parse_perm("2413")) == 1);
  for (int n = 1; n <= 6; ++n) {
    const auto brute = brute_rin(n);
    for (const auto& p : all_perms(n)) REQUIRE(rin(p) == brute.at(p));
  }
  CHECK(rin_of_class(H("Bub"), 4) == 1);
  for (int n = 1; n <= 7; ++n) CHECK(rin_of_class(H("RR"), n) == 0);
  CHECK_THROWS_AS(rin_of_class(H("Av(1)"), 3), EmptyLevel);
  int best = 0;
  for (const auto& p : all_perms(4)) best = std::max(best, rin(p));
  CHECK(rin_of_class(H("all"), 4) == best);
}

TEST_CASE("rin is invariant under rotations on both sides") {
  for (int n = 1; n <= 5; ++n) {
    const auto rr = testing::rr_level(n);
    for (const auto& p : all_perms(n)) {
      const int base = rin(p);
      for (const auto& a : rr) {
        for (const auto& b : rr) REQUIRE(rin(compose(a, compose(p, b))) == base);
      }
    }
  }
}

TEST_CASE("rin is subadditive") {
  for (int n = 1; n <= 5; ++n) {
    const auto perms = all_perms(n);
    for (const auto& p : perms) {
      for (const auto& s : perms) REQUIRE(rin(compose(p, s)) <= rin(p) + rin(s));
    }
  }
}

TEST_CASE("rin bounds total cyclic distance") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& p : all_perms(n)) REQUIRE(4 * rin(p) >= total_cyclic_distance(p) - n);
  }
}

TEST_CASE("sorting time is at least rin over class rin") {
  for (const auto* text : {"Bub", "T"}) {
    for (int n = 4; n <= 6; ++n) {  // RR_3 is all of S_3, so rin vanishes at n = 3
      const auto c = H(text);
      const int rc = rin_of_class(c, n);
      REQUIRE(rc >= 1);
      const auto table = sorting_time_table(c, n);
      for (const auto& p : all_perms(n)) {
        const auto st = table->at(p);
        REQUIRE(st.has_value());
        REQUIRE(*st * rc >= rin(p));
      }
    }
  }
}

TEST_CASE("counting lower bound") {
  CHECK(counting_lower_bound(4, 24) == 1);
  CHECK(counting_lower_bound(5, 1) == 120);
  CHECK(counting_lower_bound(1, 1) == 1);
  CHECK(counting_lower_bound(20, 2) > 1);
  CHECK_THROWS_AS(counting_lower_bound(21, 2), DomainError);
  for (int n = 1; n <= 9; ++n) {
    for (std::uint64_t level : {2ull, 3ull, 5ull, 8ull, 100ull}) {
      const auto k = counting_lower_bound(n, level);
      const double total = static_cast<double>(testing::factorial(n));
      auto value = [&](std::uint64_t kk) {
        double v = static_cast<double>(kk);
        for (std::uint64_t i = 0; i < kk; ++i) v *= static_cast<double>(level);
        return v;
      };
      CHECK(value(k) >= total);
      if (k > 1) CHECK(value(k - 1) < total);
    }
  }
  const auto l8 = enumerate_level(H("L"), 8).size();
  CHECK(*wst(H("L"), 8) >= static_cast<int>(counting_lower_bound(8, l8)));
}

TEST_CASE("distance table binary round trip") {
  const auto table = sorting_time_table(H("Ins"), 5);
  std::stringstream buffer;
  table->write(buffer);
  const std::string bytes = buffer.str();
  CHECK(bytes.substr(0, 5) == "PSWB1");
  CHECK(bytes.size() == 5 + 4 + table->spec().size() + 4 + 120);
  const auto back = DistanceTable::read(buffer);
  CHECK(back.spec() == table->spec());
  CHECK(back.n() == 5);
  CHECK(back.raw() == table->raw());
  std::stringstream junk("PSWB2....");
  CHECK_THROWS_AS(DistanceTable::read(junk), DomainError);
}

TEST_CASE("parallel and serial searches agree") {
  // Different canonical text so the memo does not return the first result.
  const auto serial = sorting_time_table(H("Bub"), 8, BfsOptions{kDefaultBfsCap, 1});
  const auto parallel = sorting_time_table(H("union(Bub,Bub)"), 8, BfsOptions{kDefaultBfsCap, 4});
  CHECK(serial->raw() == parallel->raw());
}
