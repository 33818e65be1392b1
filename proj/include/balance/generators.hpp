#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "balance/balancing.hpp"

namespace balance {

/// The complete d-complex on {1..n}: all d-simplices, or all nonsingular
/// ones. Sizes binom(n+d, d+1) and binom(n, d+1).
inline Complex complete(int n, int d, bool nonsingular) {
  if (n < 1 || d < 0) throw domain_error("complete complex needs n>=1, d>=0");
  std::vector<int> verts(static_cast<std::size_t>(n));
  std::iota(verts.begin(), verts.end(), 1);
  auto simplices =
      nonsingular ? subsets_on(verts, d + 1) : multisets_on(verts, d + 1);
  return Complex(d, std::move(simplices), n);
}

inline Weighting weighting_from_map(Complex c,
                                    const std::map<Multiset, Rat>& w) {
  std::vector<Rat> weights;
  weights.reserve(c.size());
  for (const auto& s : c.simplices()) {
    auto it = w.find(s);
    weights.push_back(it == w.end() ? Rat(0) : it->second);
  }
  return Weighting(std::move(c), std::move(weights));
}

namespace detail {

inline void require_distinct(const std::vector<int>& labels,
                             const std::string& family) {
  std::vector<int> copy = labels;
  std::sort(copy.begin(), copy.end());
  if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
    throw domain_error(family + " labels must be distinct");
  if (!copy.empty() && copy.front() < 1)
    throw domain_error(family + " labels must be positive");
}

}  // namespace detail

/// B_ij = {{i},{j}} with its canonical balancing w({i})=1, w({j})=-1.
inline Weighting family_B(int i, int j) {
  detail::require_distinct({i, j}, "B");
  Complex c(0, {Multiset{i}, Multiset{j}});
  return weighting_from_map(std::move(c),
                            {{Multiset{i}, Rat(1)}, {Multiset{j}, Rat(-1)}});
}

/// The 6-cycle i-j-k-p-q-r.
inline Complex family_H(int i, int j, int k, int p, int q, int r) {
  detail::require_distinct({i, j, k, p, q, r}, "H");
  return Complex(1, {Multiset{i, j}, Multiset{j, k}, Multiset{k, p},
                     Multiset{p, q}, Multiset{q, r}, Multiset{r, i}});
}

/// Two triangles {i,j,k} and {i,p,q} glued at i.
inline Complex family_T(int i, int j, int k, int p, int q) {
  detail::require_distinct({i, j, k, p, q}, "T");
  return Complex(1, {Multiset{i, j}, Multiset{i, k}, Multiset{j, k},
                     Multiset{i, p}, Multiset{i, q}, Multiset{p, q}});
}

/// Two disjoint triangles {i,j,k} and {r,p,q} joined by the edge {i,r}.
inline Complex family_P(int i, int j, int k, int r, int p, int q) {
  detail::require_distinct({i, j, k, r, p, q}, "P");
  return Complex(1, {Multiset{i, j}, Multiset{i, k}, Multiset{j, k},
                     Multiset{r, p}, Multiset{r, q}, Multiset{p, q},
                     Multiset{i, r}});
}

/// Octahedron boundary: the product {i1,i5} . {i2,i6} . {i3,i4}.
inline Complex family_O(int i1, int i2, int i3, int i4, int i5, int i6) {
  detail::require_distinct({i1, i2, i3, i4, i5, i6}, "O");
  return Complex(2, {Multiset{i1, i2, i3}, Multiset{i1, i2, i4},
                     Multiset{i1, i3, i6}, Multiset{i1, i4, i6},
                     Multiset{i2, i3, i5}, Multiset{i2, i4, i5},
                     Multiset{i3, i5, i6}, Multiset{i4, i5, i6}});
}

/// Cycle of three tetrahedra.
inline Complex family_C(int i1, int i2, int i3, int i4, int i5, int i6) {
  detail::require_distinct({i1, i2, i3, i4, i5, i6}, "C");
  return Complex(2, {Multiset{i1, i2, i3}, Multiset{i1, i2, i4},
                     Multiset{i1, i3, i4}, Multiset{i1, i4, i5},
                     Multiset{i1, i4, i6}, Multiset{i1, i5, i6},
                     Multiset{i2, i3, i4}, Multiset{i2, i3, i5},
                     Multiset{i2, i3, i6}, Multiset{i2, i5, i6},
                     Multiset{i3, i5, i6}, Multiset{i4, i5, i6}});
}

/// The singular hypertree 2-complex on {1..6} with its unique (up to
/// scalar) balancing, normalized at w({1,1,2}) = 1.
inline Weighting family_A() {
  Complex c(2, {Multiset{1, 1, 2}, Multiset{1, 1, 3}, Multiset{1, 2, 4},
                Multiset{1, 2, 5}, Multiset{1, 3, 5}, Multiset{1, 3, 6},
                Multiset{1, 4, 5}, Multiset{1, 5, 6}, Multiset{2, 3, 4},
                Multiset{2, 3, 6}, Multiset{2, 5, 6}, Multiset{3, 4, 5}});
  std::map<Multiset, Rat> w{
      {Multiset{1, 1, 2}, Rat(1)},  {Multiset{1, 1, 3}, Rat(-1)},
      {Multiset{1, 2, 4}, Rat(-1)}, {Multiset{1, 2, 5}, Rat(-1)},
      {Multiset{1, 3, 5}, Rat(1)},  {Multiset{1, 3, 6}, Rat(1)},
      {Multiset{1, 4, 5}, Rat(1)},  {Multiset{1, 5, 6}, Rat(-1)},
      {Multiset{2, 3, 4}, Rat(1)},  {Multiset{2, 3, 6}, Rat(-1)},
      {Multiset{2, 5, 6}, Rat(1)},  {Multiset{3, 4, 5}, Rat(-1)}};
  return weighting_from_map(std::move(c), w);
}

/// Staircase triangulation Q_d of the unit d-cube: one d-simplex per
/// permutation (the chain of 0/1 points it sorts), weighted by the sign of
/// the permutation. Vertices are the 2^d cube corners labeled row-major.
inline Weighting cube_complex(int d) {
  if (d < 1) throw domain_error("cube triangulation needs d >= 1");
  auto label = [d](const std::vector<int>& x) {
    int l = 0;
    for (int i = 0; i < d; ++i) l = 2 * l + x[static_cast<std::size_t>(i)];
    return l + 1;
  };
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<Multiset, Rat> w;
  std::vector<Multiset> simplices;
  do {
    int inversions = 0;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        if (perm[static_cast<std::size_t>(a)] >
            perm[static_cast<std::size_t>(b)])
          ++inversions;
    std::vector<int> labels;
    for (int r = 0; r <= d; ++r) {
      std::vector<int> x(static_cast<std::size_t>(d), 0);
      for (int idx = d - r; idx < d; ++idx)
        x[static_cast<std::size_t>(perm[static_cast<std::size_t>(idx)])] = 1;
      labels.push_back(label(x));
    }
    Multiset s(std::move(labels));
    w[s] = (inversions % 2 == 0) ? Rat(1) : Rat(-1);
    simplices.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return weighting_from_map(Complex(d, std::move(simplices), 1 << d), w);
}

/// Staircase-triangulated d-torus on the lattice box n_1 x ... x n_d with
/// opposite faces identified. Vertices are labeled 1..n_1*...*n_d row-major;
/// the cell at base (a_1..a_d) carries the sign twist (-1)^((a_1+...+a_d)d).
/// Balanced, nonsingular, minimal for the admissible parameters.
inline Weighting torus_complex(const std::vector<int>& dims) {
  const int d = static_cast<int>(dims.size());
  if (d < 2) throw domain_error("torus needs dimension >= 2");
  long total = 1;
  for (int ni : dims) {
    if (ni < 3) throw domain_error("torus needs every n_i >= 3");
    if ((static_cast<long>(d) * ni) % 2 != 0)
      throw domain_error("torus needs every d*n_i even");
    total *= ni;
  }
  std::vector<long> stride(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i)
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] * dims[static_cast<std::size_t>(i + 1)];
  auto label = [&](const std::vector<int>& coords) {
    long l = 0;
    for (int i = 0; i < d; ++i)
      l += coords[static_cast<std::size_t>(i)] % dims[static_cast<std::size_t>(i)] *
           stride[static_cast<std::size_t>(i)];
    return static_cast<int>(l + 1);
  };

  std::vector<int> perm(static_cast<std::size_t>(d));
  std::map<Multiset, Rat> w;
  std::vector<int> base(static_cast<std::size_t>(d), 0);
  long cells = 0;
  for (bool more = true; more; ++cells) {
    int base_sum = std::accumulate(base.begin(), base.end(), 0);
    int cell_sign = ((base_sum * d) % 2 == 0) ? 1 : -1;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
          if (perm[static_cast<std::size_t>(a)] >
              perm[static_cast<std::size_t>(b)])
            ++inversions;
      std::vector<int> labels;
      for (int r = 0; r <= d; ++r) {
        std::vector<int> x = base;
        for (int idx = d - r; idx < d; ++idx)
          ++x[static_cast<std::size_t>(perm[static_cast<std::size_t>(idx)])];
        labels.push_back(label(x));
      }
      Multiset s(std::move(labels));
      Rat weight = Rat(cell_sign * (inversions % 2 == 0 ? 1 : -1));
      auto [it, inserted] = w.try_emplace(std::move(s), weight);
      if (!inserted)
        throw std::logic_error("torus staircase produced a duplicate simplex");
    } while (std::next_permutation(perm.begin(), perm.end()));
    // advance the base cell, row-major
    more = false;
    for (int i = d - 1; i >= 0; --i) {
      if (++base[static_cast<std::size_t>(i)] < dims[static_cast<std::size_t>(i)]) {
        more = true;
        break;
      }
      base[static_cast<std::size_t>(i)] = 0;
    }
  }

  std::vector<Multiset> simplices;
  simplices.reserve(w.size());
  for (const auto& [s, weight] : w) simplices.push_back(s);
  return weighting_from_map(
      Complex(d, std::move(simplices), static_cast<int>(total)), w);
}

/// One balanced weighted complex per composition (k_2..k_n) of d+1: the
/// product of the pairs {{1},{j}}^(k_j) with weights (1, -1). A basis of
/// the balancing space of the complete d-complex on n vertices.
inline std::vector<Weighting> singular_basis(int n, int d) {
  if (n < 2 || d < 0) throw domain_error("singular basis needs n>=2, d>=0");
  std::vector<Weighting> out;
  std::vector<int> k(static_cast<std::size_t>(n + 1), 0);  // k[j] for j=2..n
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == n) {
      k[static_cast<std::size_t>(j)] = left;
      std::optional<Weighting> acc;
      for (int v = 2; v <= n; ++v)
        for (int copies = 0; copies < k[static_cast<std::size_t>(v)]; ++copies) {
          Weighting factor = family_B(1, v);
          acc = acc ? product_weighting(*acc, factor) : std::move(factor);
        }
      out.push_back(std::move(*acc));
      return;
    }
    for (int take = 0; take <= left; ++take) {
      k[static_cast<std::size_t>(j)] = take;
      self(self, j + 1, left - take);
    }
  };
  rec(rec, 2, d + 1);
  return out;
}

/// One balanced weighted complex per choice a_1 < ... < a_(d+1) with
/// a_j >= 2j: the product of the pairs {{a_j},{b_j}} where the b's are the
/// d+1 smallest leftover labels. A basis of the balancing space of the
/// complete nonsingular d-complex; empty iff d+1 > n/2.
inline std::vector<Weighting> nonsingular_basis(int n, int d) {
  if (n < 1 || d < 0) throw domain_error("nonsingular basis needs n>=1, d>=0");
  std::vector<Weighting> out;
  std::vector<int> a;
  auto emit = [&]() {
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    for (int x : a) used[static_cast<std::size_t>(x)] = 1;
    std::vector<int> b;
    for (int x = 1; x <= n && static_cast<int>(b.size()) <= d; ++x)
      if (!used[static_cast<std::size_t>(x)]) b.push_back(x);
    std::optional<Weighting> acc;
    for (std::size_t j = 0; j < a.size(); ++j) {
      Weighting factor = family_B(a[j], b[j]);
      acc = acc ? product_weighting(*acc, factor) : std::move(factor);
    }
    out.push_back(std::move(*acc));
  };
  auto rec = [&](auto&& self, int j, int from) -> void {
    if (j > d + 1) {
      emit();
      return;
    }
    for (int x = std::max(from, 2 * j); x <= n; ++x) {
      a.push_back(x);
      self(self, j + 1, x + 1);
      a.pop_back();
    }
  };
  rec(rec, 1, 1);
  return out;
}

/// Named-family front end used by the CLI.
struct FamilySpec {
  std::string name;          // B H T P O C A complete torus cube
  std::vector<int> params;   // labels, or (n, d) / dims / (d)
  bool nonsingular = false;  // for complete
};

struct Family {
  Complex complex;
  std::optional<Weighting> weighting;
};

inline Family family(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw domain_error("family " + spec.name + " takes " +
                         std::to_string(k) + " parameters");
  };
  if (spec.name == "B") {
    need(2);
    Weighting w = family_B(p[0], p[1]);
    return {w.complex, std::move(w)};
  }
  if (spec.name == "H") {
    need(6);
    return {family_H(p[0], p[1], p[2], p[3], p[4], p[5]), std::nullopt};
  }
  if (spec.name == "T") {
    need(5);
    return {family_T(p[0], p[1], p[2], p[3], p[4]), std::nullopt};
  }
  if (spec.name == "P") {
    need(6);
    return {family_P(p[0], p[1], p[2], p[3], p[4], p[5]), std::nullopt};
  }
  if (spec.name == "O") {
    need(6);
    return {family_O(p[0], p[1], p[2], p[3], p[4], p[5]), std::nullopt};
  }
  if (spec.name == "C") {
    need(6);
    return {family_C(p[0], p[1], p[2], p[3], p[4], p[5]), std::nullopt};
  }
  if (spec.name == "A") {
    need(0);
    Weighting w = family_A();
    return {w.complex, std::move(w)};
  }
  if (spec.name == "complete") {
    need(2);
    return {complete(p[0], p[1], spec.nonsingular), std::nullopt};
  }
  if (spec.name == "torus") {
    Weighting w = torus_complex(p);
    return {w.complex, std::move(w)};
  }
  if (spec.name == "cube") {
    need(1);
    Weighting w = cube_complex(p[0]);
    return {w.complex, std::move(w)};
  }
  throw domain_error("unknown family '" + spec.name + "'");
}

}  // namespace balance
