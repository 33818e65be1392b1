#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <sstream>

#include "balance/io.hpp"
#include "balance/verify.hpp"

using namespace balance;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cplx parsing") {
  std::istringstream in(
      "# a triangle\n"
      "1 2\n"
      "\n"
      "1 3  # inline comment\n"
      "2 3\n");
  Complex c = parse_cplx(in, "triangle");
  CHECK(c == Complex(1, {Multiset{1, 2}, Multiset{1, 3}, Multiset{2, 3}}));
  CHECK(c.degree() == 1);
}

TEST_CASE("cplx parser reports the offending line") {
  std::istringstream bad_card("1 2\n1 2 3\n");
  try {
    parse_cplx(bad_card, "bad");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream bad_label("1 x\n");
  try {
    parse_cplx(bad_label, "bad");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 1);
  }

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_cplx(empty, "bad"), parse_error);
}

TEST_CASE("cplx round trip") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int d = static_cast<int>(rng() % 3);
    Complex ambient = complete(n, d, false);
    std::vector<Multiset> chosen;
    for (const auto& s : ambient.simplices())
      if (rng() % 3 == 0) chosen.push_back(s);
    if (chosen.empty()) chosen.push_back(ambient.simplex(0));
    Complex c(d, std::move(chosen));
    std::istringstream in(to_cplx(c));
    CHECK(parse_cplx(in, "roundtrip") == c);
  }
}

TEST_CASE("weighting round trip") {
  Weighting a = family_A();
  std::istringstream in(to_weights(a));
  Weighting back = parse_weights(in, "A");
  CHECK(back.complex == a.complex);
  CHECK(back.weights == a.weights);

  std::istringstream fractional("1 2 : -1/2\n1 3 : 1/2\n");
  Weighting w = parse_weights(fractional, "w");
  CHECK(w.weight(Multiset{1, 2}) == rat(-1, 2));
  CHECK(w.weight(Multiset{1, 3}) == rat(1, 2));

  std::istringstream dup("1 2 : 1\n1 2 : 2\n");
  CHECK_THROWS_AS(parse_weights(dup, "dup"), parse_error);
  std::istringstream no_colon("1 2 1\n");
  CHECK_THROWS_AS(parse_weights(no_colon, "w"), parse_error);
}

TEST_CASE("rational strings") {
  CHECK(rat_string(rat(-1, 2)) == "-1/2");
  CHECK(rat_string(rat(4, 2)) == "2");
  CHECK(parse_rat("6/8") == rat(3, 4));
  CHECK(parse_rat("-5") == rat(-5));
  CHECK_THROWS_AS(parse_rat("x"), domain_error);
  CHECK_THROWS_AS(parse_rat("1/0"), domain_error);
}

TEST_CASE("divisor json round trip") {
  DivisorClass d = divisor_of_complex(family_A().complex, 7);
  json j = divisor_to_json(d);
  CHECK(j["n"] == 7);
  CHECK(j["H"] == 3);
  CHECK(j["E"]["1"] == -1);
  CHECK(j["E"]["4,6"] == -2);
  CHECK(j["E"]["4,5,6"] == -1);
  CHECK(divisor_from_json(j) == d);
}

TEST_CASE("divisor text notation") {
  DivisorClass d = divisor_of_complex(family_A().complex, 7);
  std::string text = divisor_to_text(d);
  CHECK(text.substr(0, 2) == "3H");
  CHECK(text.find("- 2E46") != std::string::npos);
  CHECK(text.find("- E146") != std::string::npos);
  CHECK(text.find("E12") == std::string::npos);
}

TEST_CASE("balancing space json") {
  BalancingSpace space = balancing_space(family_H(1, 2, 3, 4, 5, 6));
  json j = space_to_json(space);
  CHECK(j["dimension"] == 1);
  CHECK(j["complex"].size() == 6);
  CHECK(j["basis"].size() == 1);
  CHECK(j["basis"][0].size() == 6);
}

TEST_CASE("fixtures match the built-in constructions") {
  CHECK(parse_cplx_file(fixture("A.cplx")) == family_A().complex);
  Weighting aw = parse_weights_file(fixture("A.weights"));
  CHECK(aw.complex == family_A().complex);
  CHECK(aw.weights == family_A().weights);

  CHECK(parse_cplx_file(fixture("C.cplx")) == family_C(1, 2, 3, 4, 5, 6));
  CHECK(parse_cplx_file(fixture("O.cplx")) == family_O(1, 2, 3, 4, 5, 6));
  CHECK(parse_cplx_file(fixture("hexagon.cplx")) ==
        family_H(1, 2, 3, 4, 5, 6));
  CHECK(parse_cplx_file(fixture("triangle.cplx")) ==
        Complex(1, {Multiset{1, 2}, Multiset{1, 3}, Multiset{2, 3}}));
  CHECK(parse_cplx_file(fixture("RP2-6.cplx")) == verify_detail::rp2_six());

  Weighting torus = torus_complex({3, 3});
  CHECK(parse_cplx_file(fixture("torus-3-3.cplx")) == torus.complex);
  Weighting tw = parse_weights_file(fixture("torus-3-3.weights"));
  CHECK(tw.complex == torus.complex);
  CHECK(tw.weights == torus.weights);
}

TEST_CASE("the projective-plane fixture is the unique closed 6-vertex "
          "surface with Euler characteristic one") {
  // Enumerate all 10-triangle subcomplexes of the complete nonsingular
  // 2-complex on 6 vertices in which every edge lies in exactly two
  // triangles. V - E + F = 6 - 15 + 10 = 1 for all of them, so each is a
  // projective plane; they must all be relabelings of the fixture.
  Complex ambient = complete(6, 2, true);
  std::vector<std::array<int, 3>> edge_ids(ambient.size());
  std::map<Multiset, int> edge_index;
  for (std::size_t t = 0; t < ambient.size(); ++t) {
    auto fs = facets(ambient.simplex(t));
    for (int k = 0; k < 3; ++k) {
      auto [it, inserted] =
          edge_index.try_emplace(fs[static_cast<std::size_t>(k)],
                                 static_cast<int>(edge_index.size()));
      edge_ids[t][static_cast<std::size_t>(k)] = it->second;
    }
  }
  REQUIRE(edge_index.size() == 15);

  std::vector<Complex> surfaces;
  std::vector<int> edge_count(15, 0);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == 10) {
      for (int e = 0; e < 15; ++e)
        if (edge_count[static_cast<std::size_t>(e)] != 2) return;
      std::vector<Multiset> simplices;
      for (std::size_t t : chosen) simplices.push_back(ambient.simplex(t));
      surfaces.push_back(Complex(2, std::move(simplices), 6));
      return;
    }
    for (std::size_t t = from; t + (10 - chosen.size()) <= ambient.size();
         ++t) {
      bool ok = true;
      for (int k = 0; k < 3; ++k)
        if (edge_count[static_cast<std::size_t>(edge_ids[t][static_cast<std::size_t>(k)])] >= 2)
          ok = false;
      if (!ok) continue;
      for (int k = 0; k < 3; ++k)
        ++edge_count[static_cast<std::size_t>(edge_ids[t][static_cast<std::size_t>(k)])];
      chosen.push_back(t);
      self(self, t + 1);
      chosen.pop_back();
      for (int k = 0; k < 3; ++k)
        --edge_count[static_cast<std::size_t>(edge_ids[t][static_cast<std::size_t>(k)])];
    }
  };
  rec(rec, 0);

  CHECK(!surfaces.empty());
  Complex expected = canonical_form(verify_detail::rp2_six());
  for (const auto& s : surfaces) CHECK(canonical_form(s) == expected);
  CHECK(balancing_space(verify_detail::rp2_six()).dimension == 0);
}
