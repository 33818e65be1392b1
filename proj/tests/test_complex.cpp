#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "balance/complex.hpp"
#include "balance/generators.hpp"

using namespace balance;

TEST_CASE("product of complexes") {
  Complex a(0, {Multiset{1}, Multiset{2}});
  Complex b(0, {Multiset{3}, Multiset{4}});
  Complex cycle = product(a, b);
  CHECK(cycle.degree() == 1);
  CHECK(cycle == Complex(1, {Multiset{1, 3}, Multiset{1, 4}, Multiset{2, 3},
                             Multiset{2, 4}}));

  Complex o = product(product(Complex(0, {Multiset{1}, Multiset{5}}),
                              Complex(0, {Multiset{2}, Multiset{6}})),
                      Complex(0, {Multiset{3}, Multiset{4}}));
  CHECK(o == family_O(1, 2, 3, 4, 5, 6));

  CHECK(product(Complex::empty(0), a).is_empty());
  CHECK(product(Complex::empty(0), a).degree() == 1);
}

TEST_CASE("product is commutative and associative") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto randc = [&](int lo, int hi, int d) {
      std::vector<int> verts;
      for (int v = lo; v <= hi; ++v) verts.push_back(v);
      auto all = multisets_on(verts, d + 1);
      std::vector<Multiset> chosen;
      for (const auto& s : all)
        if (rng() % 2) chosen.push_back(s);
      if (chosen.empty()) chosen.push_back(all[0]);
      return Complex(d, std::move(chosen));
    };
    Complex a = randc(1, 2, static_cast<int>(rng() % 2));
    Complex b = randc(3, 4, static_cast<int>(rng() % 2));
    Complex c = randc(5, 6, 0);
    CHECK(product(a, b) == product(b, a));
    CHECK(product(product(a, b), c) == product(a, product(b, c)));
  }
}

TEST_CASE("link") {
  Complex triangle(1, {Multiset{1, 2}, Multiset{1, 3}, Multiset{2, 3}});
  CHECK(link(triangle, Multiset{1}) == Complex(0, {Multiset{2}, Multiset{3}}));
  CHECK(link(Complex(2, {Multiset{1, 1, 2}}), Multiset{1}) ==
        Complex(1, {Multiset{1, 2}}));
  CHECK(link(triangle, Multiset{}) == triangle);
  CHECK_THROWS_AS(link(triangle, Multiset{1, 2}), domain_error);
}

TEST_CASE("iterated single-vertex links agree with one multiset link") {
  std::mt19937_64 rng(29);
  Complex ambient = complete(5, 2, false);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Multiset> chosen;
    for (const auto& s : ambient.simplices())
      if (rng() % 3 == 0) chosen.push_back(s);
    if (chosen.empty()) continue;
    Complex c(2, std::move(chosen));
    auto sets = multisets_on(support(c), 2);
    if (sets.empty()) continue;
    const Multiset& s = sets[rng() % sets.size()];
    auto labels = s.expanded();
    Complex iterated = c;
    for (int v : labels) iterated = link(iterated, Multiset{v});
    CHECK(link(c, s) == iterated);
  }
}

TEST_CASE("links of nonsingular products factor") {
  Complex d1(1, {Multiset{1, 2}, Multiset{2, 3}});
  Complex d2(0, {Multiset{4}, Multiset{5}});
  Complex p = product(d1, d2);
  for (int i : support(d1))
    CHECK(link(p, Multiset{i}) == product(link(d1, Multiset{i}), d2));
}

TEST_CASE("nonsingularity") {
  CHECK(is_nonsingular(Complex(2, {Multiset{1, 2, 3}})));
  CHECK(!is_nonsingular(Complex(2, {Multiset{1, 1, 2}})));
  CHECK(is_nonsingular(Complex::empty(1)));
}

TEST_CASE("nonproduct criterion") {
  Weighting t33 = torus_complex({3, 3});
  CHECK(!nonproduct_criterion(t33.complex));  // 6 neighbors, 9 vertices
  Weighting t44 = torus_complex({4, 4});
  CHECK(nonproduct_criterion(t44.complex));  // 6 neighbors, 16 vertices
  Complex cycle(1, {Multiset{1, 3}, Multiset{1, 4}, Multiset{2, 3},
                    Multiset{2, 4}});
  CHECK(!nonproduct_criterion(cycle));
  CHECK_THROWS_AS(nonproduct_criterion(Complex::empty(1)), domain_error);
  CHECK_THROWS_AS(nonproduct_criterion(Complex(1, {Multiset{1, 1}})),
                  domain_error);
}

TEST_CASE("criterion implies non-product") {
  std::mt19937_64 rng(37);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % 2);
    Complex ambient = complete(n, d, true);
    std::vector<Multiset> chosen;
    for (const auto& s : ambient.simplices())
      if (rng() % 3 == 0) chosen.push_back(s);
    if (chosen.empty()) continue;
    Complex c(d, std::move(chosen));
    if (nonproduct_criterion(c)) {
      ++positives;
      CHECK(!is_product(c));
    }
  }
  CHECK(positives > 0);  // the property was actually exercised
}

TEST_CASE("product detection") {
  Complex o = family_O(1, 2, 3, 4, 5, 6);
  auto f = try_factor(o);
  REQUIRE(f.has_value());
  CHECK(product(f->left, f->right) == o);

  CHECK(!is_product(family_C(1, 2, 3, 4, 5, 6)));
  CHECK(!is_product(family_H(1, 2, 3, 4, 5, 6)));
  CHECK(is_product(Complex(1, {Multiset{1, 3}, Multiset{1, 4}, Multiset{2, 3},
                               Multiset{2, 4}})));
  CHECK_THROWS_AS(is_product(Complex(2, {Multiset{1, 1, 2}})), domain_error);
}

TEST_CASE("canonical form is constant on relabeling orbits and idempotent") {
  std::mt19937_64 rng(31);
  Complex t = family_T(2, 4, 6, 1, 3);
  Complex canon = canonical_form(t);
  CHECK(canonical_form(canon) == canon);
  std::vector<int> targets{1, 2, 3, 4, 5, 6};
  for (int trial = 0; trial < 50; ++trial) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      std::swap(targets[i], targets[i + rng() % (targets.size() - i)]);
    std::vector<int> image(7, 0);
    for (int v = 1; v <= 6; ++v) image[v] = targets[v - 1];
    CHECK(canonical_form(relabel(t, image)) == canon);
  }
}

TEST_CASE("the labeled octahedra share one canonical form") {
  std::set<Complex> labeled;
  std::vector<int> perm{1, 2, 3, 4, 5, 6};
  std::set<Complex> forms;
  do {
    Complex o = family_O(perm[0], perm[1], perm[2], perm[3], perm[4], perm[5]);
    labeled.insert(o);
    forms.insert(canonical_form(o));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(labeled.size() == 15);
  CHECK(forms.size() == 1);
}

TEST_CASE("canonical form compresses labels") {
  CHECK(canonical_form(Complex(1, {Multiset{2, 3}})) ==
        Complex(1, {Multiset{1, 2}}));
  CHECK(canonical_form(Complex::empty(3)) == Complex::empty(3));
}

TEST_CASE("complex validation") {
  CHECK_THROWS_AS(Complex(1, {Multiset{1, 2, 3}}), domain_error);
  CHECK_THROWS_AS(Complex(1, {Multiset{1, 5}}, 3), domain_error);
  Complex c(1, {Multiset{1, 2}, Multiset{1, 2}});
  CHECK(c.size() == 1);  // duplicates collapse
}
