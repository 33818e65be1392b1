#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "balance/complex.hpp"

namespace balance {

/// An integer divisor class on the moduli space of n-pointed stable rational
/// curves, written in a Kapranov basis: h * H + sum_I e_I * E_I where I runs
/// over subsets of {1..n-1} with 1 <= |I| <= n-4. Coefficients are stored
/// signed and zeros are omitted.
class DivisorClass {
 public:
  using Index = std::vector<int>;  // sorted distinct labels

  explicit DivisorClass(int n, long long h = 0) : n_(n), h_(h) {
    if (n < 5) throw domain_error("divisor classes need n >= 5");
  }

  /// The exceptional class E_I itself (h = 0, coefficient 1).
  static DivisorClass exceptional(int n, Index I) {
    DivisorClass d(n);
    d.set_coefficient(std::move(I), 1);
    return d;
  }

  int n() const { return n_; }
  long long h() const { return h_; }
  void set_h(long long h) { h_ = h; }

  long long coefficient(const Index& I) const {
    auto it = e_.find(I);
    return it == e_.end() ? 0 : it->second;
  }

  void set_coefficient(Index I, long long value) {
    validate_index(I);
    if (value == 0)
      e_.erase(I);
    else
      e_[std::move(I)] = value;
  }

  void add_coefficient(const Index& I, long long delta) {
    set_coefficient(I, coefficient(I) + delta);
  }

  const std::map<Index, long long>& exceptional_part() const { return e_; }

  bool is_zero() const { return h_ == 0 && e_.empty(); }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.n_ == b.n_ && a.h_ == b.h_ && a.e_ == b.e_;
  }

 private:
  void validate_index(const Index& I) const {
    if (I.empty() || static_cast<int>(I.size()) > n_ - 4)
      throw domain_error("index set size out of range 1..n-4");
    int prev = 0;
    for (int v : I) {
      if (v <= prev || v > n_ - 1)
        throw domain_error("index sets are sorted subsets of {1..n-1}");
      prev = v;
    }
  }

  int n_;
  long long h_;
  std::map<Index, long long> e_;
};

/// All index sets I with 1 <= |I| <= n-4, grouped in (size, lex) order.
inline std::vector<DivisorClass::Index> divisor_index_sets(int n) {
  std::vector<DivisorClass::Index> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (int v = from; v <= n - 1; ++v) {
      current.push_back(v);
      self(self, v + 1, left - 1);
      current.pop_back();
    }
  };
  for (int size = 1; size <= n - 4; ++size) rec(rec, 1, size);
  return out;
}

/// The divisor class of a nonempty balanceable d-complex on {1..n-1}:
/// (d+1)H - sum_I (d+1 - max_sigma sum_{i in I} m(i in sigma)) E_I.
inline DivisorClass divisor_of_complex(const Complex& c, int n) {
  if (c.is_empty())
    throw domain_error("divisor of the empty complex");
  if (n < 5) throw domain_error("divisor classes need n >= 5");
  for (int v : support(c))
    if (v > n - 1)
      throw domain_error("complex support must lie in {1..n-1}");
  const long long h = c.degree() + 1;
  DivisorClass d(n, h);
  for (auto& I : divisor_index_sets(n)) {
    long long best = 0;
    for (const auto& s : c.simplices()) {
      long long sum = 0;
      for (int i : I) sum += s.count(i);
      best = std::max(best, sum);
    }
    d.set_coefficient(std::move(I), -(h - best));
  }
  return d;
}

/// Coefficient-wise a*D1 + b*D2.
inline DivisorClass combine(long long a, const DivisorClass& d1, long long b,
                            const DivisorClass& d2) {
  if (d1.n() != d2.n())
    throw domain_error("combining divisor classes with different n");
  DivisorClass out(d1.n(), a * d1.h() + b * d2.h());
  for (const auto& [I, v] : d1.exceptional_part())
    out.add_coefficient(I, a * v);
  for (const auto& [I, v] : d2.exceptional_part())
    out.add_coefficient(I, b * v);
  return out;
}

/// Sum of the E_I coefficients over all |I| = k.
inline long long signature(const DivisorClass& d, int k) {
  if (k < 1 || k > d.n() - 4)
    throw domain_error("signature size out of range 1..n-4");
  long long sum = 0;
  for (const auto& [I, v] : d.exceptional_part())
    if (static_cast<int>(I.size()) == k) sum += v;
  return sum;
}

/// All d-simplices on {1..n-1} satisfying sum_{i in I} m(i in sigma) <=
/// (d+1) - a_I for every I, where a_I is the magnitude of the E_I
/// coefficient. The ambient complex any complex with this class must sit in.
inline Complex admissible_simplices(const DivisorClass& d, int degree) {
  if (d.h() != degree + 1) throw domain_error("degree mismatch");
  std::vector<int> verts(static_cast<std::size_t>(d.n() - 1));
  std::iota(verts.begin(), verts.end(), 1);
  std::vector<Multiset> keep;
  for (auto& s : multisets_on(verts, degree + 1)) {
    bool ok = true;
    for (const auto& [I, v] : d.exceptional_part()) {
      long long sum = 0;
      for (int i : I) sum += s.count(i);
      if (sum > d.h() - std::llabs(v)) {
        ok = false;
        break;
      }
    }
    if (ok) keep.push_back(std::move(s));
  }
  return Complex(degree, std::move(keep), d.n() - 1);
}

/// All multisets of candidate indices whose sum equals the target,
/// by depth-first search over candidates sorted by descending h. An empty
/// result certifies that no decomposition over the candidates exists.
/// Candidates must have h >= 1 so the h-budget bounds the multiset size;
/// coefficient pruning kicks in when every candidate has e <= 0 throughout.
inline std::vector<std::vector<std::size_t>> decompose(
    const DivisorClass& target, const std::vector<DivisorClass>& candidates) {
  for (const auto& c : candidates) {
    if (c.n() != target.n())
      throw domain_error("candidate n differs from target");
    if (c.h() <= 0) throw domain_error("unbounded search");
  }
  bool monotone = true;
  for (const auto& c : candidates)
    for (const auto& [I, v] : c.exceptional_part())
      if (v > 0) monotone = false;

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].h() > candidates[b].h();
  });

  std::vector<std::vector<std::size_t>> results;
  std::vector<std::size_t> chosen;
  DivisorClass acc(target.n(), 0);

  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (acc.h() == target.h()) {
      if (acc == target) {
        std::vector<std::size_t> witness = chosen;
        std::sort(witness.begin(), witness.end());
        results.push_back(std::move(witness));
      }
      return;
    }
    for (std::size_t oi = from; oi < order.size(); ++oi) {
      const DivisorClass& c = candidates[order[oi]];
      if (acc.h() + c.h() > target.h()) continue;
      DivisorClass next = combine(1, acc, 1, c);
      if (monotone) {
        bool feasible = true;
        for (const auto& [I, v] : next.exceptional_part())
          if (v < target.coefficient(I)) {
            feasible = false;
            break;
          }
        if (!feasible) continue;
      }
      chosen.push_back(order[oi]);
      std::swap(acc, next);
      self(self, oi);
      std::swap(acc, next);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(results.begin(), results.end());
  results.erase(std::unique(results.begin(), results.end()), results.end());
  return results;
}

/// Closed form for the divisor class of the staircase-triangulated d-torus
/// with side lengths n_1..n_d, evaluated directly over the lattice box:
/// the E_I coefficient counts, over all base cells b and permutations, the
/// most points of I lying on one staircase chain. Labels are row-major, so
/// the class agrees with divisor_of_complex of the torus complex.
inline DivisorClass torus_divisor(const std::vector<int>& dims) {
  const int d = static_cast<int>(dims.size());
  if (d < 2) throw domain_error("torus needs dimension >= 2");
  long total = 1;
  for (int ni : dims) {
    if (ni < 3) throw domain_error("torus needs every n_i >= 3");
    if ((static_cast<long>(d) * ni) % 2 != 0)
      throw domain_error("torus needs every d*n_i even");
    total *= ni;
  }
  const int n = static_cast<int>(total) + 1;
  const long long h = d + 1;

  auto coords_of = [&](int label) {
    std::vector<int> c(static_cast<std::size_t>(d));
    long rest = label - 1;
    for (int i = d - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] =
          static_cast<int>(rest % dims[static_cast<std::size_t>(i)]);
      rest /= dims[static_cast<std::size_t>(i)];
    }
    return c;
  };
  std::vector<std::vector<int>> point(static_cast<std::size_t>(total) + 1);
  for (int v = 1; v <= static_cast<int>(total); ++v)
    point[static_cast<std::size_t>(v)] = coords_of(v);

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    do
      perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  DivisorClass out(n, h);
  for (auto& I : divisor_index_sets(n)) {
    long long best = 0;
    std::vector<int> b(static_cast<std::size_t>(d), 0);
    for (bool more = true; more;) {
      for (const auto& p : perms) {
        long long count = 0;
        for (int a : I) {
          const auto& pc = point[static_cast<std::size_t>(a)];
          int prev = 0;
          bool on_chain = true;
          for (int j = 0; j < d && on_chain; ++j) {
            int axis = p[static_cast<std::size_t>(j)];
            int diff = pc[static_cast<std::size_t>(axis)] -
                       b[static_cast<std::size_t>(axis)];
            diff %= dims[static_cast<std::size_t>(axis)];
            if (diff < 0) diff += dims[static_cast<std::size_t>(axis)];
            if (diff > 1 || diff < prev) on_chain = false;
            prev = diff;
          }
          if (on_chain) ++count;
        }
        best = std::max(best, count);
      }
      more = false;
      for (int i = d - 1; i >= 0; --i) {
        if (++b[static_cast<std::size_t>(i)] < dims[static_cast<std::size_t>(i)]) {
          more = true;
          break;
        }
        b[static_cast<std::size_t>(i)] = 0;
      }
    }
    out.set_coefficient(std::move(I), -(h - best));
  }
  return out;
}

}  // namespace balance
