#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "balance/generators.hpp"

using namespace balance;

namespace {

Complex triangle() {
  return Complex(1, {Multiset{1, 2}, Multiset{1, 3}, Multiset{2, 3}});
}

Complex hexagon_plus(const Multiset& chord) {
  std::vector<Multiset> edges = family_H(1, 2, 3, 4, 5, 6).simplices();
  edges.push_back(chord);
  return Complex(1, std::move(edges));
}

}  // namespace

TEST_CASE("multiplicity matrix on fixed examples") {
  MultiplicityMatrix m =
      multiplicity_matrix(complete(2, 1, false), multisets_on({1, 2}, 1));
  REQUIRE(m.rows == std::vector<Multiset>{{1}, {2}});
  REQUIRE(m.cols == std::vector<Multiset>{{1, 1}, {1, 2}, {2, 2}});
  CHECK(m.entries(0, 0) == 2);
  CHECK(m.entries(0, 1) == 1);
  CHECK(m.entries(0, 2) == 0);
  CHECK(m.entries(1, 0) == 0);
  CHECK(m.entries(1, 1) == 1);
  CHECK(m.entries(1, 2) == 2);

  MultiplicityMatrix single = multiplicity_matrix(
      Complex(2, {Multiset{1, 2, 3}}), {Multiset{}});
  CHECK(single.entries(0, 0) == 1);

  CHECK(multiplicity(Multiset{1}, Multiset{1, 1, 2}) == 2);
  CHECK_THROWS_AS(multiplicity_matrix(Complex::empty(1), {Multiset{1}}),
                  domain_error);
  CHECK_THROWS_AS(multiplicity_matrix(triangle(), {}), domain_error);
}

TEST_CASE("balancing space dimensions on fixed examples") {
  CHECK(balancing_space(triangle()).dimension == 0);
  CHECK(balancing_space(complete(3, 1, false)).dimension == 3);
  BalancingSpace hex = balancing_space(family_H(1, 2, 3, 4, 5, 6));
  REQUIRE(hex.dimension == 1);
  // alternating generator around the cycle 1-2-3-4-5-6
  Weighting gen = hex.basis_weighting(0);
  Rat base = gen.weight(Multiset{1, 2});
  CHECK(base != 0);
  CHECK(gen.weight(Multiset{2, 3}) == -base);
  CHECK(gen.weight(Multiset{3, 4}) == base);
  CHECK(gen.weight(Multiset{4, 5}) == -base);
  CHECK(gen.weight(Multiset{5, 6}) == base);
  CHECK(gen.weight(Multiset{1, 6}) == -base);
}

TEST_CASE("facets-only and all-degrees modes compute the same space") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % 3);
    Complex ambient = complete(n, d, false);
    std::vector<Multiset> chosen;
    for (const auto& s : ambient.simplices())
      if (rng() % 3) chosen.push_back(s);
    if (chosen.empty()) continue;
    Complex c(d, std::move(chosen));
    BalancingSpace a = balancing_space(c, BalanceCheck::facets_only);
    BalancingSpace b = balancing_space(c, BalanceCheck::all_degrees);
    CHECK(a.dimension == b.dimension);
    for (Eigen::Index k = 0; k < a.basis.cols(); ++k)
      CHECK(is_balanced(a.basis_weighting(k), BalanceCheck::all_degrees));
    // identical spaces: the reduced forms of the two bases coincide
    if (a.dimension > 0) {
      RatMatrix ra = rref_of(RatMatrix(a.basis.transpose()));
      RatMatrix rb = rref_of(RatMatrix(b.basis.transpose()));
      REQUIRE(ra.rows() == rb.rows());
      for (Eigen::Index i = 0; i < ra.rows(); ++i)
        for (Eigen::Index j = 0; j < ra.cols(); ++j)
          CHECK(ra(i, j) == rb(i, j));
    }
  }
}

TEST_CASE("is_balanced on fixed examples") {
  Weighting alternating(
      family_H(1, 2, 3, 4, 5, 6),
      {Rat(1), Rat(-1), Rat(-1), Rat(1), Rat(-1), Rat(1)});
  CHECK(is_balanced(alternating));
  CHECK(is_balanced(alternating, BalanceCheck::all_degrees));

  Weighting zero(triangle(), {Rat(0), Rat(0), Rat(0)});
  CHECK(is_balanced(zero, BalanceCheck::all_degrees));

  Weighting ones(triangle(), {Rat(1), Rat(1), Rat(1)});
  auto violation = first_unbalanced(ones);
  REQUIRE(violation.has_value());
  CHECK(*violation == Multiset{1});
}

TEST_CASE("the hypertree complex has the unique listed balancing") {
  Weighting a = family_A();
  CHECK(is_balanced(a));
  CHECK(is_balanced(a, BalanceCheck::all_degrees));
  BalancingSpace space = balancing_space(a.complex);
  REQUIRE(space.dimension == 1);
  std::size_t base = *a.complex.index_of(Multiset{1, 1, 2});
  Rat scale = space.basis(static_cast<Eigen::Index>(base), 0);
  REQUIRE(scale != 0);
  for (std::size_t i = 0; i < a.complex.size(); ++i)
    CHECK(space.basis(static_cast<Eigen::Index>(i), 0) / scale ==
          a.weights[i]);
}

TEST_CASE("find_nondegenerate") {
  auto a = find_nondegenerate(family_A().complex);
  REQUIRE(a.has_value());
  CHECK(!a->degenerate());
  CHECK(is_balanced(*a, BalanceCheck::all_degrees));

  CHECK(!find_nondegenerate(triangle()).has_value());
  CHECK(!find_nondegenerate(Complex::empty(1)).has_value());

  // The short chord of a hexagon is forced to weight zero, so no
  // nondegenerate balancing exists on hexagon + {1,3}.
  Complex short_chord = hexagon_plus(Multiset{1, 3});
  BalancingSpace s = balancing_space(short_chord);
  CHECK(s.dimension == 1);
  CHECK(s.basis(static_cast<Eigen::Index>(
                    *short_chord.index_of(Multiset{1, 3})),
                0) == 0);
  CHECK(!find_nondegenerate(short_chord).has_value());

  // The long chord {1,4} splits the hexagon into two even cycles; that
  // complex is balanceable (e.g. both 4-cycles weighted against the chord).
  Complex long_chord = hexagon_plus(Multiset{1, 4});
  CHECK(balancing_space(long_chord).dimension == 2);
  auto w = find_nondegenerate(long_chord);
  REQUIRE(w.has_value());
  CHECK(!w->degenerate());
  CHECK(is_balanced(*w, BalanceCheck::all_degrees));
}

TEST_CASE("find_nondegenerate succeeds exactly when pruning is the identity") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % 2);
    Complex ambient = complete(n, d, false);
    std::vector<Multiset> chosen;
    for (const auto& s : ambient.simplices())
      if (rng() % 3) chosen.push_back(s);
    if (chosen.empty()) continue;
    Complex c(d, std::move(chosen));
    bool witness = find_nondegenerate(c).has_value();
    CHECK(witness == (prune_degenerate(c) == c && !c.is_empty()));
  }
}

TEST_CASE("minimality") {
  CHECK(is_minimal(family_A().complex));
  CHECK(is_minimal(family_O(1, 2, 3, 4, 5, 6)));
  CHECK(is_minimal(family_C(1, 2, 3, 4, 5, 6)));
  CHECK(!is_minimal(complete(3, 1, false)));
  CHECK(!is_minimal(triangle()));
  CHECK_THROWS_AS(is_minimal(Complex::empty(1)), domain_error);
}

TEST_CASE("link weighting") {
  Weighting singular(Complex(2, {Multiset{1, 1, 2}}), {Rat(1)});
  Weighting l = link_weighting(singular, Multiset{1});
  REQUIRE(l.complex == Complex(1, {Multiset{1, 2}}));
  CHECK(l.weights[0] == 2);  // m({1,2} in {1,1,2}) = 2

  Weighting alternating(
      family_H(1, 2, 3, 4, 5, 6),
      {Rat(1), Rat(-1), Rat(-1), Rat(1), Rat(-1), Rat(1)});
  Weighting at1 = link_weighting(alternating, Multiset{1});
  REQUIRE(at1.complex == Complex(0, {Multiset{2}, Multiset{6}}));
  CHECK(at1.weight(Multiset{2}) == 1);
  CHECK(at1.weight(Multiset{6}) == -1);
  CHECK(is_balanced(at1, BalanceCheck::all_degrees));

  Weighting identity = link_weighting(alternating, Multiset{});
  CHECK(identity.complex == alternating.complex);
  CHECK(identity.weights == alternating.weights);

  CHECK_THROWS_AS(link_weighting(singular, Multiset{1, 1, 2}), domain_error);
}

TEST_CASE("product weighting") {
  Weighting a = family_B(1, 2);
  Weighting b = family_B(3, 4);
  Weighting p = product_weighting(a, b);
  CHECK(p.weight(Multiset{1, 3}) == 1);
  CHECK(p.weight(Multiset{1, 4}) == -1);
  CHECK(p.weight(Multiset{2, 3}) == -1);
  CHECK(p.weight(Multiset{2, 4}) == 1);
  CHECK(!p.degenerate());
  CHECK(is_balanced(p, BalanceCheck::all_degrees));

  Weighting zero(Complex(0, {Multiset{3}, Multiset{4}}), {Rat(0), Rat(0)});
  CHECK(product_weighting(a, zero).zero());

  // (x1 - x2)(x1 + x2) = x1^2 - x2^2: the middle simplex stays with weight 0
  Weighting plus(Complex(0, {Multiset{1}, Multiset{2}}), {Rat(1), Rat(1)});
  Weighting squares = product_weighting(a, plus);
  CHECK(squares.weight(Multiset{1, 1}) == 1);
  CHECK(squares.weight(Multiset{1, 2}) == 0);
  CHECK(squares.weight(Multiset{2, 2}) == -1);
  CHECK(squares.degenerate());
}

TEST_CASE("polynomial oracle") {
  Weighting alternating(
      family_H(1, 2, 3, 4, 5, 6),
      {Rat(1), Rat(-1), Rat(-1), Rat(1), Rat(-1), Rat(1)});
  CHECK(oracle_is_balanced(alternating));

  Weighting single(Complex(1, {Multiset{1, 2}}), {Rat(1)});
  CHECK(!oracle_is_balanced(single));

  Weighting zero(triangle(), {Rat(0), Rat(0), Rat(0)});
  CHECK(oracle_is_balanced(zero));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % 3);
    Complex ambient = complete(n, d, false);
    std::vector<Multiset> chosen;
    std::vector<Rat> weights;
    for (const auto& s : ambient.simplices())
      if (rng() % 3) {
        chosen.push_back(s);
        weights.push_back(rat(static_cast<long>(rng() % 9) - 4,
                              1 + static_cast<long>(rng() % 4)));
      }
    if (chosen.empty()) continue;
    Weighting w(Complex(d, std::move(chosen)), std::move(weights));
    CHECK(oracle_is_balanced(w) == is_balanced(w, BalanceCheck::all_degrees));
  }
}

TEST_CASE("pruning") {
  Weighting a = family_A();
  std::vector<Multiset> padded = a.complex.simplices();
  padded.push_back(Multiset{1, 2, 3});
  padded.push_back(Multiset{1, 2, 6});
  padded.push_back(Multiset{1, 3, 4});
  Complex a_tilde(2, std::move(padded), 6);
  CHECK(prune_degenerate(a_tilde) == a.complex);

  CHECK(prune_degenerate(triangle()).is_empty());
  Complex hex = family_H(1, 2, 3, 4, 5, 6);
  CHECK(prune_degenerate(hex) == hex);
  CHECK(prune_degenerate(Complex::empty(2)).is_empty());
}

TEST_CASE("rows of the full facet matrix are independent") {
  for (int n = 2; n <= 5; ++n)
    for (int d = 1; d <= 3; ++d) {
      Complex ambient = complete(n, d, false);
      std::vector<int> verts = support(ambient);
      MultiplicityMatrix m =
          multiplicity_matrix(ambient, multisets_on(verts, d));
      CHECK(rank_of(m.entries) == m.entries.rows());
      CHECK(m.entries.rows() == binomial(n + d - 1, d));
    }
}
