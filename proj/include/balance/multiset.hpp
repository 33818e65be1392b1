#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "balance/numeric.hpp"

namespace balance {

/// A multiset of positive integer vertex labels, stored run-length as
/// (vertex, multiplicity) pairs with strictly increasing vertices.
/// Immutable after construction; ordering is lexicographic on the
/// expanded label sequence, so e.g. {1,1,2} < {1,2} < {1,3}.
class Multiset {
 public:
  using Run = std::pair<int, int>;  // (vertex, multiplicity)

  Multiset() = default;

  Multiset(std::initializer_list<int> labels)
      : Multiset(std::vector<int>(labels)) {}

  explicit Multiset(std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    for (int v : labels) {
      if (v < 1) throw domain_error("vertex labels must be positive");
      if (!runs_.empty() && runs_.back().first == v)
        ++runs_.back().second;
      else
        runs_.push_back({v, 1});
      ++cardinality_;
    }
  }

  static Multiset from_runs(std::vector<Run> runs) {
    Multiset m;
    int prev = 0;
    for (auto [v, k] : runs) {
      if (v < 1) throw domain_error("vertex labels must be positive");
      if (k < 1) throw domain_error("multiplicities must be positive");
      if (v <= prev) throw domain_error("runs must have increasing vertices");
      prev = v;
      m.cardinality_ += k;
    }
    m.runs_ = std::move(runs);
    return m;
  }

  int cardinality() const { return cardinality_; }
  bool empty() const { return runs_.empty(); }
  const std::vector<Run>& runs() const { return runs_; }

  /// m(i in S): the multiplicity of a vertex, 0 if absent.
  int count(int vertex) const {
    auto it = std::lower_bound(runs_.begin(), runs_.end(), vertex,
                               [](const Run& r, int v) { return r.first < v; });
    return (it != runs_.end() && it->first == vertex) ? it->second : 0;
  }

  /// Containment as multisets: m(i in this) <= m(i in other) for all i.
  bool contained_in(const Multiset& other) const {
    for (auto [v, k] : runs_)
      if (other.count(v) < k) return false;
    return true;
  }

  bool is_nonsingular() const {
    for (auto [v, k] : runs_)
      if (k > 1) return false;
    return true;
  }

  int max_vertex() const { return runs_.empty() ? 0 : runs_.back().first; }

  std::vector<int> expanded() const {
    std::vector<int> out;
    out.reserve(cardinality_);
    for (auto [v, k] : runs_) out.insert(out.end(), k, v);
    return out;
  }

  std::vector<int> support() const {
    std::vector<int> out;
    out.reserve(runs_.size());
    for (auto [v, k] : runs_) out.push_back(v);
    return out;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) = default;

  // Lexicographic on expanded sequences, computed run-wise.
  friend std::strong_ordering operator<=>(const Multiset& a,
                                          const Multiset& b) {
    std::size_t i = 0, j = 0;
    int ra = 0, rb = 0;  // copies of the current run already consumed
    while (i < a.runs_.size() && j < b.runs_.size()) {
      auto [va, ka] = a.runs_[i];
      auto [vb, kb] = b.runs_[j];
      if (va != vb) return va <=> vb;
      int take = std::min(ka - ra, kb - rb);
      ra += take;
      rb += take;
      if (ra == ka) ++i, ra = 0;
      if (rb == kb) ++j, rb = 0;
    }
    bool a_done = (i == a.runs_.size());
    bool b_done = (j == b.runs_.size());
    if (a_done && b_done) return std::strong_ordering::equal;
    return a_done ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::vector<Run> runs_;
  int cardinality_ = 0;
};

/// Multiset sum: per-vertex multiplicities add.
inline Multiset multiset_sum(const Multiset& a, const Multiset& b) {
  std::vector<Multiset::Run> runs;
  std::size_t i = 0, j = 0;
  const auto& ra = a.runs();
  const auto& rb = b.runs();
  while (i < ra.size() || j < rb.size()) {
    if (j == rb.size() || (i < ra.size() && ra[i].first < rb[j].first))
      runs.push_back(ra[i++]);
    else if (i == ra.size() || rb[j].first < ra[i].first)
      runs.push_back(rb[j++]);
    else {
      runs.push_back({ra[i].first, ra[i].second + rb[j].second});
      ++i, ++j;
    }
  }
  return Multiset::from_runs(std::move(runs));
}

inline Multiset operator+(const Multiset& a, const Multiset& b) {
  return multiset_sum(a, b);
}

/// Pointwise difference a - b; requires b contained in a.
inline Multiset multiset_difference(const Multiset& a, const Multiset& b) {
  if (!b.contained_in(a))
    throw domain_error("multiset difference requires containment");
  std::vector<Multiset::Run> runs;
  for (auto [v, k] : a.runs()) {
    int rest = k - b.count(v);
    if (rest > 0) runs.push_back({v, rest});
  }
  return Multiset::from_runs(std::move(runs));
}

/// m(T subset-of S) = prod_i binom(m(i in S), m(i in T)); zero iff T is not
/// contained in S.
inline long long multiplicity(const Multiset& T, const Multiset& S) {
  long long prod = 1;
  for (auto [v, k] : T.runs()) {
    prod *= binomial(S.count(v), k);
    if (prod == 0) return 0;
  }
  return prod;
}

/// All distinct sub-multisets of cardinality |s|-1. A 0-simplex has the
/// empty multiset as its only facet; the empty multiset itself has none.
inline std::vector<Multiset> facets(const Multiset& s) {
  if (s.empty()) throw domain_error("no facets of the empty simplex");
  std::vector<Multiset> out;
  const auto& runs = s.runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<Multiset::Run> copy = runs;
    if (--copy[i].second == 0) copy.erase(copy.begin() + i);
    out.push_back(Multiset::from_runs(std::move(copy)));
  }
  return out;
}

/// Applies a vertex relabeling; image[v] is the new label of v (1-based,
/// entries for vertices outside the multiset's support are ignored).
inline Multiset relabel(const Multiset& m, const std::vector<int>& image) {
  std::vector<int> labels;
  labels.reserve(m.cardinality());
  for (auto [v, k] : m.runs()) {
    if (v >= static_cast<int>(image.size()) || image[v] < 1)
      throw domain_error("relabeling undefined on vertex " +
                         std::to_string(v));
    labels.insert(labels.end(), k, image[v]);
  }
  return Multiset(std::move(labels));
}

/// All multisets of the given cardinality drawn from `labels`
/// (combinations with repetition), in lexicographic order. The labels
/// must be sorted and distinct.
inline std::vector<Multiset> multisets_on(const std::vector<int>& labels,
                                          int cardinality) {
  std::vector<Multiset> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(Multiset(current));
      return;
    }
    for (std::size_t i = from; i < labels.size(); ++i) {
      current.push_back(labels[i]);
      self(self, i, left - 1);
      current.pop_back();
    }
  };
  if (cardinality == 0) return {Multiset{}};
  rec(rec, 0, cardinality);
  return out;
}

/// Subsets of the given cardinality (combinations), lexicographic.
inline std::vector<Multiset> subsets_on(const std::vector<int>& labels,
                                        int cardinality) {
  std::vector<Multiset> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(Multiset(current));
      return;
    }
    for (std::size_t i = from; i + left <= labels.size(); ++i) {
      current.push_back(labels[i]);
      self(self, i + 1, left - 1);
      current.pop_back();
    }
  };
  if (cardinality == 0) return {Multiset{}};
  rec(rec, 0, cardinality);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Multiset& m) {
  os << '{';
  bool first = true;
  for (int v : m.expanded()) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os << '}';
}

}  // namespace balance
