#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "balance/multiset.hpp"

using namespace balance;

namespace {

// Independent multiplicity oracle: expand S into individually labeled
// copies and count the subsets of positions whose multiset equals T.
long long count_occurrences(const Multiset& T, const Multiset& S) {
  std::vector<int> items = S.expanded();
  const std::size_t n = items.size();
  const int k = T.cardinality();
  long long count = 0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (__builtin_popcountl(mask) != k) continue;
    std::vector<int> picked;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) picked.push_back(items[i]);
    if (Multiset(picked) == T) ++count;
  }
  return count;
}

Multiset random_multiset(std::mt19937_64& rng, int max_card, int max_label) {
  int card = static_cast<int>(rng() % static_cast<unsigned>(max_card + 1));
  std::vector<int> labels;
  for (int i = 0; i < card; ++i)
    labels.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(max_label)));
  return Multiset(std::move(labels));
}

}  // namespace

TEST_CASE("multiplicity counts sub-multiset occurrences") {
  CHECK(multiplicity(Multiset{1}, Multiset{1, 1, 2}) == 2);
  CHECK(multiplicity(Multiset{}, Multiset{1, 1, 2}) == 1);
  CHECK(multiplicity(Multiset{}, Multiset{}) == 1);
  CHECK(multiplicity(Multiset{1, 2}, Multiset{1, 1, 2, 3}) == 2);
  CHECK(multiplicity(Multiset{4}, Multiset{1, 2}) == 0);
  CHECK(multiplicity(Multiset{1, 1, 1}, Multiset{1, 1}) == 0);
}

TEST_CASE("multiplicity matches the brute-force occurrence count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Multiset S = random_multiset(rng, 6, 4);
    Multiset T = random_multiset(rng, 4, 4);
    CHECK(multiplicity(T, S) == count_occurrences(T, S));
  }
}

TEST_CASE("multiset sum adds multiplicities") {
  CHECK(Multiset{1, 2} + Multiset{2, 3} == Multiset{1, 2, 2, 3});
  CHECK(Multiset{} + Multiset{1, 1} == Multiset{1, 1});
  CHECK((Multiset{1, 1} + Multiset{1}) == Multiset{1, 1, 1});
  Multiset s{2, 5, 5};
  CHECK((s + Multiset{}).cardinality() == 3);
}

TEST_CASE("support and counts") {
  Multiset s{1, 1, 3};
  CHECK(s.support() == std::vector<int>{1, 3});
  CHECK(s.count(1) == 2);
  CHECK(s.count(2) == 0);
  CHECK(s.cardinality() == 3);
}

TEST_CASE("facets") {
  CHECK(facets(Multiset{1, 2, 3}) ==
        std::vector<Multiset>{{2, 3}, {1, 3}, {1, 2}});
  CHECK(facets(Multiset{1, 1, 2}) == std::vector<Multiset>{{1, 2}, {1, 1}});
  CHECK(facets(Multiset{5}) == std::vector<Multiset>{Multiset{}});
  CHECK_THROWS_AS(facets(Multiset{}), domain_error);
}

TEST_CASE("facet multiplicities sum to the cardinality") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Multiset s = random_multiset(rng, 5, 5);
    if (s.empty()) continue;
    long long total = 0;
    for (const auto& f : facets(s)) total += multiplicity(f, s);
    CHECK(total == s.cardinality());
    if (s.is_nonsingular())
      CHECK(static_cast<int>(facets(s).size()) == s.cardinality());
  }
}

TEST_CASE("adding a common multiset rescales multiplicities coherently") {
  // m(T in S) m(S in S+U) == m(T in T+U) m(T+U in S+U)
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Multiset S = random_multiset(rng, 6, 5);
    Multiset T = random_multiset(rng, 6, 5);
    Multiset U = random_multiset(rng, 6, 5);
    long long lhs = multiplicity(T, S) * multiplicity(S, S + U);
    long long rhs = multiplicity(T, T + U) * multiplicity(T + U, S + U);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("ordering is lexicographic on the expanded sequence") {
  CHECK(Multiset{1, 1, 2} < Multiset{1, 2});
  CHECK(Multiset{1, 2} < Multiset{1, 3});
  CHECK(Multiset{1, 1} < Multiset{1, 1, 5});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Multiset a = random_multiset(rng, 5, 4);
    Multiset b = random_multiset(rng, 5, 4);
    CHECK((a < b) == (a.expanded() < b.expanded()));
    CHECK((a == b) == (a.expanded() == b.expanded()));
  }
}

TEST_CASE("multisets_on enumerates combinations with repetition") {
  auto all = multisets_on({1, 2}, 2);
  CHECK(all == std::vector<Multiset>{{1, 1}, {1, 2}, {2, 2}});
  CHECK(multisets_on({1, 2, 3}, 0) == std::vector<Multiset>{Multiset{}});
  CHECK(multisets_on({1, 2, 3, 4, 5, 6}, 3).size() == 56);
  CHECK(subsets_on({1, 2, 3, 4}, 2).size() == 6);
}

TEST_CASE("difference and containment") {
  CHECK(multiset_difference(Multiset{1, 1, 2}, Multiset{1}) == Multiset{1, 2});
  CHECK(Multiset{1, 2}.contained_in(Multiset{1, 1, 2, 3}));
  CHECK(!Multiset{2, 2}.contained_in(Multiset{1, 2}));
  CHECK_THROWS_AS(multiset_difference(Multiset{1}, Multiset{2}), domain_error);
}

TEST_CASE("labels are validated") {
  CHECK_THROWS_AS(Multiset{0}, domain_error);
  CHECK_THROWS_AS(Multiset{-3}, domain_error);
  CHECK_THROWS_AS(relabel(Multiset{2}, std::vector<int>{0, 1}), domain_error);
  CHECK(relabel(Multiset{1, 1, 3}, {0, 4, 0, 1}) == Multiset{1, 4, 4});
}
