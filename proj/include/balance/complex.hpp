#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <vector>

#include "balance/multiset.hpp"

namespace balance {

/// A d-complex: a finite set of d-simplices (multisets of cardinality d+1)
/// on vertex labels {1..n}. Simplices are kept sorted and distinct; there
/// is no downward closure. Values are immutable after construction.
class Complex {
 public:
  /// vertex_bound 0 means "deduce from the largest label present".
  Complex(int degree, std::vector<Multiset> simplices, int vertex_bound = 0)
      : degree_(degree), simplices_(std::move(simplices)) {
    if (degree_ < 0) throw domain_error("complex degree must be >= 0");
    std::sort(simplices_.begin(), simplices_.end());
    simplices_.erase(std::unique(simplices_.begin(), simplices_.end()),
                     simplices_.end());
    int max_label = 0;
    for (const auto& s : simplices_) {
      if (s.cardinality() != degree_ + 1)
        throw domain_error("simplex cardinality does not match degree");
      max_label = std::max(max_label, s.max_vertex());
    }
    vertex_bound_ = vertex_bound == 0 ? max_label : vertex_bound;
    if (vertex_bound_ < max_label)
      throw domain_error("vertex label exceeds vertex bound");
  }

  static Complex empty(int degree) { return Complex(degree, {}); }

  int degree() const { return degree_; }
  int vertex_bound() const { return vertex_bound_; }
  std::size_t size() const { return simplices_.size(); }
  bool is_empty() const { return simplices_.empty(); }
  const std::vector<Multiset>& simplices() const { return simplices_; }
  const Multiset& simplex(std::size_t i) const { return simplices_[i]; }

  bool contains(const Multiset& s) const {
    return std::binary_search(simplices_.begin(), simplices_.end(), s);
  }

  /// Index of a simplex in the sorted order, if present.
  std::optional<std::size_t> index_of(const Multiset& s) const {
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
    if (it == simplices_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - simplices_.begin());
  }

  Complex with_vertex_bound(int n) const {
    return Complex(degree_, simplices_, n);
  }

  // Equality ignores the vertex bound: a complex is its simplex set.
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.degree_ == b.degree_ && a.simplices_ == b.simplices_;
  }
  friend bool operator<(const Complex& a, const Complex& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.simplices_ < b.simplices_;
  }

 private:
  int degree_;
  int vertex_bound_;
  std::vector<Multiset> simplices_;
};

inline std::vector<int> support(const Multiset& m) { return m.support(); }

inline std::vector<int> support(const Complex& c) {
  std::set<int> verts;
  for (const auto& s : c.simplices())
    for (int v : s.support()) verts.insert(v);
  return {verts.begin(), verts.end()};
}

inline bool is_nonsingular(const Complex& c) {
  return std::all_of(c.simplices().begin(), c.simplices().end(),
                     [](const Multiset& s) { return s.is_nonsingular(); });
}

/// Product of complexes: all pairwise multiset sums, as a set.
inline Complex product(const Complex& a, const Complex& b) {
  std::vector<Multiset> out;
  out.reserve(a.size() * b.size());
  for (const auto& s : a.simplices())
    for (const auto& t : b.simplices()) out.push_back(s + t);
  return Complex(a.degree() + b.degree() + 1, std::move(out),
                 std::max(a.vertex_bound(), b.vertex_bound()));
}

inline Complex operator*(const Complex& a, const Complex& b) {
  return product(a, b);
}

/// Link of a complex with respect to a multiset S: all sigma with
/// sigma + S in the complex; degree drops by |S|.
inline Complex link(const Complex& c, const Multiset& s) {
  if (s.cardinality() > c.degree())
    throw domain_error("link degree underflow");
  std::vector<Multiset> out;
  for (const auto& t : c.simplices())
    if (s.contained_in(t)) out.push_back(multiset_difference(t, s));
  return Complex(c.degree() - s.cardinality(), std::move(out),
                 c.vertex_bound());
}

/// Sufficient criterion for a nonsingular complex not to be a product:
/// every vertex shares a simplex with fewer than |Supp|/2 other vertices.
inline bool nonproduct_criterion(const Complex& c) {
  if (c.is_empty() || !is_nonsingular(c))
    throw domain_error("criterion requires nonempty nonsingular complex");
  std::vector<int> verts = support(c);
  for (int i : verts) {
    std::set<int> neighbors;
    for (const auto& s : c.simplices()) {
      if (s.count(i) == 0) continue;
      for (int j : s.support())
        if (j != i) neighbors.insert(j);
    }
    if (2 * neighbors.size() >= verts.size()) return false;
  }
  return true;
}

struct Factorization {
  Complex left;
  Complex right;
};

/// Decides whether a nonempty nonsingular complex is a product and returns
/// one witness bipartition. Exponential in |Supp| but tiny at desk scale.
inline std::optional<Factorization> try_factor(const Complex& c) {
  if (c.is_empty() || !is_nonsingular(c))
    throw domain_error("product detection requires nonempty nonsingular "
                       "complex");
  std::vector<int> verts = support(c);
  std::size_t k = verts.size();
  if (k < 2) return std::nullopt;
  // verts[0] goes to the left part; masks enumerate the rest.
  for (unsigned long mask = 0; mask + 1 < (1ul << (k - 1)); ++mask) {
    std::vector<char> left_of(c.vertex_bound() + 1, 0);
    left_of[verts[0]] = 1;
    for (std::size_t i = 1; i < k; ++i)
      if (mask & (1ul << (i - 1))) left_of[verts[i]] = 1;

    std::set<Multiset> lefts, rights;
    int left_card = -1;
    bool ok = true;
    for (const auto& s : c.simplices()) {
      std::vector<int> l, r;
      for (int v : s.expanded()) (left_of[v] ? l : r).push_back(v);
      if (l.empty() || r.empty() ||
          (left_card >= 0 && static_cast<int>(l.size()) != left_card)) {
        ok = false;
        break;
      }
      left_card = static_cast<int>(l.size());
      lefts.insert(Multiset(std::move(l)));
      rights.insert(Multiset(std::move(r)));
    }
    if (!ok || lefts.empty()) continue;
    if (lefts.size() * rights.size() != c.size()) continue;
    // Every pairwise sum must land in the complex (sums are distinct here
    // because the supports are disjoint).
    for (const auto& l : lefts) {
      for (const auto& r : rights) {
        if (!c.contains(l + r)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;
    Complex l(left_card - 1, {lefts.begin(), lefts.end()}, c.vertex_bound());
    Complex r(c.degree() - left_card,
              {rights.begin(), rights.end()}, c.vertex_bound());
    return Factorization{std::move(l), std::move(r)};
  }
  return std::nullopt;
}

inline bool is_product(const Complex& c) { return try_factor(c).has_value(); }

inline Complex relabel(const Complex& c, const std::vector<int>& image) {
  std::vector<Multiset> out;
  out.reserve(c.size());
  for (const auto& s : c.simplices()) out.push_back(relabel(s, image));
  return Complex(c.degree(), std::move(out));
}

/// Lexicographically least image of the complex under bijections from its
/// support onto {1..|Supp|}, together with one optimal image map (indexed
/// by old label). Brute force over |Supp|! relabelings.
inline std::pair<Complex, std::vector<int>> canonical_form_with_map(
    const Complex& c) {
  std::vector<int> verts = support(c);
  std::size_t k = verts.size();
  int bound = c.vertex_bound();
  std::vector<int> image(bound + 1, 0);
  if (k == 0) return {Complex::empty(c.degree()), std::move(image)};

  std::vector<int> targets(k);
  std::iota(targets.begin(), targets.end(), 1);
  std::optional<Complex> best;
  std::vector<int> best_targets;
  do {
    for (std::size_t i = 0; i < k; ++i) image[verts[i]] = targets[i];
    Complex candidate = relabel(c, image);
    if (!best || candidate < *best) {
      best = std::move(candidate);
      best_targets = targets;
    }
  } while (std::next_permutation(targets.begin(), targets.end()));

  std::fill(image.begin(), image.end(), 0);
  for (std::size_t i = 0; i < k; ++i) image[verts[i]] = best_targets[i];
  return {std::move(*best), std::move(image)};
}

inline Complex canonical_form(const Complex& c) {
  return canonical_form_with_map(c).first;
}

inline std::ostream& operator<<(std::ostream& os, const Complex& c) {
  os << '{';
  bool first = true;
  for (const auto& s : c.simplices()) {
    if (!first) os << ',';
    os << s;
    first = false;
  }
  return os << '}';
}

}  // namespace balance
