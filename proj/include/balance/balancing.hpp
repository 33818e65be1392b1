#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "balance/complex.hpp"
#include "balance/linalg.hpp"

namespace balance {

/// A weighting on a complex: one exact rational per simplex, aligned with
/// the complex's sorted simplex order.
struct Weighting {
  Complex complex;
  std::vector<Rat> weights;

  Weighting(Complex c, std::vector<Rat> w)
      : complex(std::move(c)), weights(std::move(w)) {
    if (weights.size() != complex.size())
      throw domain_error("weighting domain must match the simplex set");
  }

  const Rat& weight(const Multiset& s) const {
    auto idx = complex.index_of(s);
    if (!idx) throw domain_error("weight of a simplex not in the complex");
    return weights[*idx];
  }

  bool degenerate() const {
    for (const Rat& w : weights)
      if (w == 0) return true;
    return false;
  }

  bool zero() const {
    for (const Rat& w : weights)
      if (w != 0) return false;
    return true;
  }
};

/// The matrix with entry (i, j) = m(rows[i] contained-in cols[j]).
struct MultiplicityMatrix {
  std::vector<Multiset> rows;
  std::vector<Multiset> cols;
  IntMatrix entries;
};

inline MultiplicityMatrix multiplicity_matrix(const Complex& c,
                                              std::vector<Multiset> rows) {
  if (c.is_empty() || rows.empty())
    throw domain_error("multiplicity matrix requires nonempty complex and "
                       "row collection");
  MultiplicityMatrix m;
  m.rows = std::move(rows);
  m.cols = c.simplices();
  m.entries.resize(static_cast<Eigen::Index>(m.rows.size()),
                   static_cast<Eigen::Index>(m.cols.size()));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols.size(); ++j)
      m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Int(static_cast<long>(multiplicity(m.rows[i], m.cols[j])));
  return m;
}

enum class BalanceCheck { facets_only, all_degrees };

/// The balancing conditions for a d-complex in the given mode, as the list
/// of condition multisets: cardinality d only (facet conditions), or every
/// cardinality 0..d.
inline std::vector<Multiset> balancing_conditions(const Complex& c,
                                                  BalanceCheck mode) {
  std::vector<int> verts = support(c);
  if (mode == BalanceCheck::facets_only) return multisets_on(verts, c.degree());
  std::vector<Multiset> rows;
  for (int j = 0; j <= c.degree(); ++j) {
    auto part = multisets_on(verts, j);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

/// First multiset whose balancing condition fails, if any; checking degree d
/// only (facets) or all degrees 0..d. The two modes agree over Q.
inline std::optional<Multiset> first_unbalanced(
    const Weighting& w, BalanceCheck mode = BalanceCheck::facets_only) {
  for (const Multiset& s : balancing_conditions(w.complex, mode)) {
    Rat sum = 0;
    for (std::size_t j = 0; j < w.weights.size(); ++j) {
      long long m = multiplicity(s, w.complex.simplex(j));
      if (m != 0) sum += w.weights[j] * Int(static_cast<long>(m));
    }
    if (sum != 0) return s;
  }
  return std::nullopt;
}

inline bool is_balanced(const Weighting& w,
                        BalanceCheck mode = BalanceCheck::facets_only) {
  return !first_unbalanced(w, mode).has_value();
}

/// The space of balancings: a kernel basis of the multiplicity matrix over
/// the condition multisets (one basis vector per column of `basis`).
struct BalancingSpace {
  Complex complex;
  RatMatrix basis;
  int dimension;

  Weighting basis_weighting(Eigen::Index k) const {
    std::vector<Rat> w(basis.rows());
    for (Eigen::Index i = 0; i < basis.rows(); ++i) w[i] = basis(i, k);
    return Weighting(complex, std::move(w));
  }
};

inline BalancingSpace balancing_space(
    const Complex& c, BalanceCheck mode = BalanceCheck::facets_only) {
  if (c.is_empty())
    throw domain_error("balancing space of the empty complex");
  MultiplicityMatrix m = multiplicity_matrix(c, balancing_conditions(c, mode));
  RatMatrix basis = kernel_basis(m.entries);
  int dim = static_cast<int>(basis.cols());
  return BalancingSpace{c, std::move(basis), dim};
}

/// A nondegenerate balancing if one exists. Existence holds iff no simplex
/// coordinate vanishes identically on the kernel; the witness is the
/// deterministic combination sum_k t^(k-1) basis_k for the smallest positive
/// integer t avoiding every coordinate zero.
inline std::optional<Weighting> find_nondegenerate(const Complex& c) {
  if (c.is_empty()) return std::nullopt;
  BalancingSpace space = balancing_space(c);
  if (space.dimension == 0) return std::nullopt;
  const RatMatrix& b = space.basis;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    bool nonzero = false;
    for (Eigen::Index k = 0; k < b.cols(); ++k)
      if (b(i, k) != 0) {
        nonzero = true;
        break;
      }
    if (!nonzero) return std::nullopt;
  }
  // Each coordinate is a nonzero polynomial in t of degree < dim, so some
  // t in 1..rows*(dim-1)+1 works.
  for (long t = 1;; ++t) {
    std::vector<Rat> w(b.rows());
    bool ok = true;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      Rat acc = 0;
      Rat power = 1;
      for (Eigen::Index k = 0; k < b.cols(); ++k) {
        acc += power * b(i, k);
        power *= t;
      }
      if (acc == 0) {
        ok = false;
        break;
      }
      w[i] = acc;
    }
    if (ok) return Weighting(c, std::move(w));
  }
}

/// Minimal: nondegenerately balanceable with one-dimensional balancing
/// space; equivalently the kernel is spanned by a nowhere-zero vector.
inline bool is_minimal(const Complex& c) {
  if (c.is_empty()) throw domain_error("minimality of the empty complex");
  BalancingSpace space = balancing_space(c);
  if (space.dimension != 1) return false;
  for (Eigen::Index i = 0; i < space.basis.rows(); ++i)
    if (space.basis(i, 0) == 0) return false;
  return true;
}

/// Induced weighting on the link: w*(sigma) = w(sigma + S) m(sigma, sigma+S).
inline Weighting link_weighting(const Weighting& w, const Multiset& s) {
  Complex l = link(w.complex, s);
  std::vector<Rat> lw;
  lw.reserve(l.size());
  for (const auto& sigma : l.simplices()) {
    Multiset tau = sigma + s;
    lw.push_back(w.weight(tau) *
                 Int(static_cast<long>(multiplicity(sigma, tau))));
  }
  return Weighting(std::move(l), std::move(lw));
}

/// Product weighting: w(sigma) = sum over splittings sigma = s1 + s2 of
/// w1(s1) w2(s2). Zero-weight simplices are retained (the product of
/// nondegenerate weightings can be degenerate); callers can ask the result
/// via Weighting::degenerate().
inline Weighting product_weighting(const Weighting& a, const Weighting& b) {
  Complex p = product(a.complex, b.complex);
  std::vector<Rat> w(p.size(), Rat(0));
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    for (std::size_t j = 0; j < b.weights.size(); ++j) {
      Multiset sum = a.complex.simplex(i) + b.complex.simplex(j);
      w[*p.index_of(sum)] += a.weights[i] * b.weights[j];
    }
  return Weighting(std::move(p), std::move(w));
}

namespace detail {

// Sparse polynomial in x_1..x_n and one extra variable y: monomial keys are
// (multiset of x-exponents, y-power).
using Poly = std::map<std::pair<Multiset, int>, Rat>;

inline void poly_add(Poly& p, const std::pair<Multiset, int>& key,
                     const Rat& coeff) {
  auto [it, inserted] = p.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) p.erase(it);
  }
}

// Multiplies by (x_v + y)^mult using an additively built Pascal row.
inline Poly poly_mul_binomial_power(const Poly& p, int v, int mult) {
  std::vector<long> pascal{1};
  for (int step = 0; step < mult; ++step) {
    std::vector<long> next(pascal.size() + 1, 1);
    for (std::size_t k = 1; k < pascal.size(); ++k)
      next[k] = pascal[k - 1] + pascal[k];
    pascal = std::move(next);
  }
  Poly out;
  for (const auto& [key, coeff] : p) {
    for (int k = 0; k <= mult; ++k) {
      Multiset x = key.first;
      if (k > 0) x = x + Multiset::from_runs({{v, k}});
      poly_add(out, {std::move(x), key.second + (mult - k)},
               coeff * pascal[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

}  // namespace detail

/// Independent balance oracle: builds P = sum w(sigma) x^sigma, applies the
/// substitution x_i -> x_i + y by exact polynomial arithmetic, and compares
/// with P. Balanced weightings are exactly the invariant ones.
inline bool oracle_is_balanced(const Weighting& w) {
  detail::Poly original, shifted;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    if (w.weights[i] == 0) continue;
    const Multiset& sigma = w.complex.simplex(i);
    detail::poly_add(original, {sigma, 0}, w.weights[i]);
    detail::Poly term{{{Multiset{}, 0}, w.weights[i]}};
    for (auto [v, mult] : sigma.runs())
      term = detail::poly_mul_binomial_power(term, v, mult);
    for (const auto& [key, coeff] : term) detail::poly_add(shifted, key, coeff);
  }
  return shifted == original;
}

/// Repeatedly removes every simplex whose coordinate vanishes on all
/// balancings until a fixed point; the largest subcomplex that can support
/// a nondegenerate balancing, or the empty complex if none survives.
inline Complex prune_degenerate(Complex c) {
  while (!c.is_empty()) {
    BalancingSpace space = balancing_space(c);
    std::vector<Multiset> keep;
    for (Eigen::Index i = 0; i < space.basis.rows(); ++i) {
      bool nonzero = false;
      for (Eigen::Index k = 0; k < space.basis.cols(); ++k)
        if (space.basis(i, k) != 0) {
          nonzero = true;
          break;
        }
      if (nonzero) keep.push_back(c.simplex(static_cast<std::size_t>(i)));
    }
    if (keep.size() == c.size()) break;
    c = Complex(c.degree(), std::move(keep), c.vertex_bound());
  }
  return c;
}

}  // namespace balance
