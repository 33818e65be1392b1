#pragma once

#include <atomic>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "balance/balancing.hpp"
#include "balance/divisor.hpp"
#include "balance/generators.hpp"

namespace balance {

/// One isomorphism class of minimal balanceable subcomplexes of an ambient
/// complete complex: its canonical representative, the number of labeled
/// instances inside the ambient vertex set, the (recomputed) balancing-space
/// dimension, and a primitive integer sample balancing.
struct CanonicalClass {
  Complex representative;
  long long labeled_count;
  int dimension_check;
  Weighting sample_balancing;
  int ambient_vertices;
};

struct SearchOptions {
  int max_support = 0;  // cap on circuit size; 0 = rank+1 (lossless)
  int jobs = 1;
};

namespace detail {

// The symmetric group on {1..n} acting on ambient column indices.
struct ColumnAction {
  std::vector<std::vector<int>> perm_col;  // [g][col] -> col

  ColumnAction(const Complex& ambient, int n) {
    std::vector<int> image(static_cast<std::size_t>(n) + 1);
    std::vector<int> targets(static_cast<std::size_t>(n));
    std::iota(targets.begin(), targets.end(), 1);
    do {
      for (int v = 1; v <= n; ++v)
        image[static_cast<std::size_t>(v)] = targets[static_cast<std::size_t>(v - 1)];
      std::vector<int> row(ambient.size());
      for (std::size_t c = 0; c < ambient.size(); ++c) {
        auto idx = ambient.index_of(relabel(ambient.simplex(c), image));
        row[c] = static_cast<int>(*idx);  // ambient is relabeling-invariant
      }
      perm_col.push_back(std::move(row));
    } while (std::next_permutation(targets.begin(), targets.end()));
  }

  // True iff no permutation maps the sorted index set `a` to a
  // lexicographically smaller one.
  bool is_orbit_min(const std::vector<int>& a, std::vector<int>& scratch) const {
    const std::size_t k = a.size();
    scratch.resize(k);
    for (const auto& g : perm_col) {
      for (std::size_t i = 0; i < k; ++i) {
        int mapped = g[static_cast<std::size_t>(a[i])];
        std::size_t j = i;
        while (j > 0 && scratch[j - 1] > mapped) {
          scratch[j] = scratch[j - 1];
          --j;
        }
        scratch[j] = mapped;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (scratch[i] != a[i]) {
          if (scratch[i] < a[i]) return false;
          break;
        }
      }
    }
    return true;
  }

  std::vector<int> orbit_min(const std::vector<int>& a) const {
    std::vector<int> best = a;
    std::vector<int> img(a.size());
    for (const auto& g : perm_col) {
      for (std::size_t i = 0; i < a.size(); ++i)
        img[i] = g[static_cast<std::size_t>(a[i])];
      std::sort(img.begin(), img.end());
      if (img < best) best = img;
    }
    return best;
  }

  long long orbit_size(const std::vector<int>& a) const {
    std::set<std::vector<int>> images;
    std::vector<int> img(a.size());
    for (const auto& g : perm_col) {
      for (std::size_t i = 0; i < a.size(); ++i)
        img[i] = g[static_cast<std::size_t>(a[i])];
      std::sort(img.begin(), img.end());
      images.insert(img);
    }
    return static_cast<long long>(images.size());
  }
};

struct FoundCircuit {
  std::vector<int> columns;  // ascending
  std::vector<Rat> relation;  // aligned with columns
};

struct CircuitSearch {
  const std::vector<RatVector>* cols;
  int ncols;
  int max_circuit;
  const ColumnAction* action;  // null = no symmetry pruning

  void dfs(IncrementalSpan& span, std::vector<int>& current, int from,
           std::vector<int>& scratch, std::vector<FoundCircuit>& out) const {
    for (int c = from; c < ncols; ++c) {
      auto relation = span.push((*cols)[static_cast<std::size_t>(c)]);
      if (relation) {
        bool full = true;
        for (const Rat& x : *relation)
          if (x == 0) {
            full = false;
            break;
          }
        if (full) {
          std::vector<int> circuit = current;
          circuit.push_back(c);
          out.push_back({std::move(circuit), std::move(*relation)});
        }
        continue;
      }
      current.push_back(c);
      if (static_cast<int>(current.size()) + 1 <= max_circuit &&
          (!action || action->is_orbit_min(current, scratch)))
        dfs(span, current, c + 1, scratch, out);
      current.pop_back();
      span.pop();
    }
  }
};

// Primitive integer rescaling, first nonzero entry positive.
inline std::vector<Rat> normalize_relation(const std::vector<Rat>& v) {
  Int lcm_den = 1, gcd_num = 0;
  for (const Rat& x : v)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
            x.get_den().get_mpz_t());
  for (const Rat& x : v) {
    Int scaled = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
  }
  if (gcd_num == 0) gcd_num = 1;
  int lead = 0;
  for (const Rat& x : v) {
    if (x != 0) {
      lead = sgn(x);
      break;
    }
  }
  if (lead < 0) gcd_num = -gcd_num;
  std::vector<Rat> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(x * lcm_den / gcd_num);
  return out;
}

}  // namespace detail

/// Enumerates the minimal balanceable subcomplexes of complete(n, d,
/// nonsingular) up to vertex relabeling: exactly the circuits of the column
/// matroid of the ambient multiplicity matrix, each carrying its unique
/// kernel vector. Deterministic for any job count.
inline std::vector<CanonicalClass> enumerate_minimal(int n, int d,
                                                     bool nonsingular,
                                                     SearchOptions opts = {}) {
  Complex ambient = complete(n, d, nonsingular);
  if (ambient.is_empty()) return {};
  if (!is_nonsingular(ambient) && opts.max_support == 0)
    throw domain_error(
        "singular ambient search requires an explicit max_support cap");

  std::vector<int> verts(static_cast<std::size_t>(n));
  std::iota(verts.begin(), verts.end(), 1);
  std::vector<Multiset> rows = multisets_on(verts, d);
  MultiplicityMatrix m = multiplicity_matrix(ambient, rows);
  const int rank = static_cast<int>(rank_of(m.entries));
  const int ncols = static_cast<int>(ambient.size());

  int max_circuit = rank + 1;
  if (opts.max_support > 0) max_circuit = std::min(max_circuit, opts.max_support);

  std::vector<RatVector> cols(static_cast<std::size_t>(ncols));
  for (int c = 0; c < ncols; ++c) {
    RatVector v(m.entries.rows());
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r)
      v(r) = Rat(m.entries(r, c));
    cols[static_cast<std::size_t>(c)] = std::move(v);
  }

  // The orbit tables grow as n! * ncols; beyond 8 vertices fall back to the
  // unpruned (still exact) search.
  std::optional<detail::ColumnAction> action;
  if (n <= 8) action.emplace(ambient, n);

  detail::CircuitSearch search{&cols, ncols, max_circuit,
                               action ? &*action : nullptr};

  // Grow a frontier breadth-first until it is wide enough to feed the
  // worker pool; circuits discovered while expanding are kept separately.
  const int jobs = std::max(1, opts.jobs);
  std::vector<detail::FoundCircuit> prefix_found;
  std::vector<std::vector<int>> frontier{{}};
  {
    std::vector<int> scratch;
    while (static_cast<int>(frontier.size()) < 4 * jobs) {
      std::vector<std::vector<int>> next;
      bool expandable = false;
      for (const auto& prefix : frontier) {
        if (static_cast<int>(prefix.size()) + 1 > max_circuit) continue;
        expandable = true;
        IncrementalSpan span(m.entries.rows());
        for (int c : prefix) span.push(cols[static_cast<std::size_t>(c)]);
        int from = prefix.empty() ? 0 : prefix.back() + 1;
        for (int c = from; c < ncols; ++c) {
          auto relation = span.push(cols[static_cast<std::size_t>(c)]);
          if (relation) {
            bool full = true;
            for (const Rat& x : *relation)
              if (x == 0) {
                full = false;
                break;
              }
            if (full) {
              std::vector<int> circuit = prefix;
              circuit.push_back(c);
              prefix_found.push_back({std::move(circuit),
                                      std::move(*relation)});
            }
            continue;
          }
          span.pop();
          std::vector<int> child = prefix;
          child.push_back(c);
          if (static_cast<int>(child.size()) + 1 <= max_circuit &&
              (!action || action->is_orbit_min(child, scratch)))
            next.push_back(std::move(child));
        }
      }
      if (!expandable) break;
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
  }

  std::vector<std::vector<detail::FoundCircuit>> per_prefix(frontier.size());
  auto run_subtree = [&](std::size_t fi, std::vector<int>& scratch) {
    const std::vector<int>& prefix = frontier[fi];
    IncrementalSpan span(m.entries.rows());
    for (int c : prefix) span.push(cols[static_cast<std::size_t>(c)]);
    std::vector<int> current = prefix;
    search.dfs(span, current, prefix.empty() ? 0 : prefix.back() + 1, scratch,
               per_prefix[fi]);
  };
  if (jobs == 1) {
    std::vector<int> scratch;
    for (std::size_t fi = 0; fi < frontier.size(); ++fi)
      run_subtree(fi, scratch);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      std::vector<int> scratch;
      for (;;) {
        std::size_t fi = next.fetch_add(1);
        if (fi >= frontier.size()) return;
        run_subtree(fi, scratch);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Deduplicate by orbit, in deterministic traversal order. Class data only
  // depends on the orbit, so the kept representative does not matter.
  std::map<std::vector<int>, detail::FoundCircuit> classes_by_orbit;
  std::vector<const std::vector<detail::FoundCircuit>*> chunks{&prefix_found};
  for (const auto& chunk : per_prefix) chunks.push_back(&chunk);
  for (const auto* chunk_ptr : chunks)
    for (const auto& found : *chunk_ptr) {
      std::vector<int> key =
          action ? action->orbit_min(found.columns) : found.columns;
      classes_by_orbit.try_emplace(std::move(key), found);
    }
  if (!action) {
    // No tables: fold labeled circuits by canonical form instead.
    std::map<Complex, detail::FoundCircuit> by_form;
    for (auto& [key, found] : classes_by_orbit) {
      std::vector<Multiset> simplices;
      for (int c : found.columns)
        simplices.push_back(ambient.simplex(static_cast<std::size_t>(c)));
      by_form.try_emplace(canonical_form(Complex(d, std::move(simplices), n)),
                          found);
    }
    classes_by_orbit.clear();
    for (auto& [form, found] : by_form)
      classes_by_orbit.try_emplace(found.columns, found);
  }

  std::vector<CanonicalClass> out;
  for (const auto& [key, found] : classes_by_orbit) {
    std::vector<Multiset> simplices;
    for (int c : found.columns)
      simplices.push_back(ambient.simplex(static_cast<std::size_t>(c)));
    Complex labeled(d, simplices, n);
    auto [rep, image] = canonical_form_with_map(labeled);

    std::map<Multiset, Rat> weights;
    std::vector<Rat> normalized = detail::normalize_relation(found.relation);
    for (std::size_t k = 0; k < simplices.size(); ++k)
      weights[relabel(simplices[k], image)] = normalized[k];
    // Sign convention: the canonical representative's first simplex gets a
    // positive weight.
    if (weights.begin()->second < 0)
      for (auto& [s, w] : weights) w = -w;
    Weighting sample = weighting_from_map(rep, weights);

    long long count;
    if (action) {
      count = action->orbit_size(found.columns);
    } else {
      std::set<Complex> images;
      std::vector<int> img(static_cast<std::size_t>(n) + 1);
      std::vector<int> targets(static_cast<std::size_t>(n));
      std::iota(targets.begin(), targets.end(), 1);
      do {
        for (int v = 1; v <= n; ++v)
          img[static_cast<std::size_t>(v)] = targets[static_cast<std::size_t>(v - 1)];
        images.insert(relabel(labeled, img));
      } while (std::next_permutation(targets.begin(), targets.end()));
      count = static_cast<long long>(images.size());
    }

    int dim = balancing_space(rep).dimension;
    out.push_back(CanonicalClass{rep, count, dim, std::move(sample), n});
  }

  std::sort(out.begin(), out.end(), [](const CanonicalClass& a,
                                       const CanonicalClass& b) {
    auto ka = std::tuple(support(a.representative).size(),
                         a.representative.size(), a.representative);
    auto kb = std::tuple(support(b.representative).size(),
                         b.representative.size(), b.representative);
    return ka < kb;
  });
  return out;
}

/// One class's report against the irreducibility hypotheses: nonsingular,
/// minimal, not a product, degree <= n_points - 5. Product detection is
/// left unset for singular representatives (those take the divisor-side
/// pipeline instead). Tracks distinct divisor classes over the orbit so a
/// complex-count vs divisor-count mismatch is visible rather than assumed
/// away.
struct ClassificationEntry {
  CanonicalClass cls;
  bool nonsingular_flag;
  bool minimal_flag;
  std::optional<bool> product_flag;
  bool degree_ok;
  bool certified;
  DivisorClass divisor;
  long long distinct_divisors;
};

inline std::vector<ClassificationEntry> classify_irreducible_candidates(
    const std::vector<CanonicalClass>& classes, int n_points) {
  std::vector<ClassificationEntry> out;
  for (const auto& cls : classes) {
    const Complex& rep = cls.representative;
    bool ns = is_nonsingular(rep);
    bool minimal = is_minimal(rep);
    std::optional<bool> prod;
    if (ns && !rep.is_empty()) prod = is_product(rep);
    bool degree_ok = rep.degree() <= n_points - 5;
    bool certified = ns && minimal && prod.has_value() && !*prod && degree_ok;
    DivisorClass divisor = divisor_of_complex(rep, n_points);

    std::set<std::string> divisors;
    {
      int n = cls.ambient_vertices;
      std::vector<int> img(static_cast<std::size_t>(n) + 1);
      std::vector<int> targets(static_cast<std::size_t>(n));
      std::iota(targets.begin(), targets.end(), 1);
      std::set<Complex> seen;
      do {
        for (int v = 1; v <= n; ++v)
          img[static_cast<std::size_t>(v)] = targets[static_cast<std::size_t>(v - 1)];
        Complex instance = relabel(rep, img);
        if (!seen.insert(instance).second) continue;
        DivisorClass d = divisor_of_complex(instance, n_points);
        std::string key = std::to_string(d.h());
        for (const auto& [I, v] : d.exceptional_part()) {
          key += '|';
          for (int i : I) key += std::to_string(i) + ',';
          key += '=' + std::to_string(v);
        }
        divisors.insert(std::move(key));
      } while (std::next_permutation(targets.begin(), targets.end()));
      out.push_back(ClassificationEntry{cls, ns, minimal, prod, degree_ok,
                                        certified, std::move(divisor),
                                        static_cast<long long>(divisors.size())});
    }
  }
  return out;
}

}  // namespace balance
