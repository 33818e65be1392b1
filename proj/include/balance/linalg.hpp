#pragma once

#include <optional>
#include <vector>

#include "balance/numeric.hpp"

namespace balance {

namespace detail {

/// Divides a row by the gcd of its entries and makes the first nonzero
/// entry positive. Kernel-preserving row scaling; keeps entries small.
inline void normalize_row(IntMatrix& m, Eigen::Index row) {
  Int g = 0;
  Eigen::Index first = -1;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Int& x = m(row, c);
    if (x != 0) {
      if (first < 0) first = c;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
  }
  if (first < 0) return;
  if (sgn(m(row, first)) < 0) g = -g;
  if (g != 1)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(row, c) /= g;
}

}  // namespace detail

struct Echelon {
  IntMatrix mat;                // rows 0..pivot_cols.size()-1 are the echelon
  std::vector<Eigen::Index> pivot_cols;  // strictly increasing
};

/// Fraction-free integer row echelon form. Deterministic: columns are
/// processed left to right and the pivot is the first remaining row with a
/// nonzero entry. Cross-multiplication keeps everything integral; rows are
/// gcd-normalized after each step.
inline Echelon integer_echelon(IntMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    detail::normalize_row(m, r);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      Int a = m(r, c), b = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        m(i, j) = a * m(i, j) - b * m(r, j);
      detail::normalize_row(m, i);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline Eigen::Index rank_of(const IntMatrix& m) {
  return static_cast<Eigen::Index>(integer_echelon(m).pivot_cols.size());
}

/// Basis of the right kernel over Q, one column per basis vector. The
/// echelon form is back-substituted to a reduced echelon over Q and each
/// free column contributes the standard kernel vector (free coordinate 1).
inline RatMatrix kernel_basis(const IntMatrix& m) {
  Echelon e = integer_echelon(m);
  const Eigen::Index cols = m.cols();
  const Eigen::Index nump = static_cast<Eigen::Index>(e.pivot_cols.size());

  RatMatrix red(nump, cols);
  for (Eigen::Index i = 0; i < nump; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) red(i, j) = Rat(e.mat(i, j));
  for (Eigen::Index i = nump - 1; i >= 0; --i) {
    Rat inv = red(i, e.pivot_cols[i]);
    for (Eigen::Index j = 0; j < cols; ++j) red(i, j) /= inv;
    for (Eigen::Index k = 0; k < i; ++k) {
      Rat f = red(k, e.pivot_cols[i]);
      if (f == 0) continue;
      for (Eigen::Index j = 0; j < cols; ++j)
        red(k, j) -= f * red(i, j);
    }
  }

  std::vector<Eigen::Index> free_cols;
  {
    std::size_t next = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (next < e.pivot_cols.size() && e.pivot_cols[next] == c)
        ++next;
      else
        free_cols.push_back(c);
    }
  }

  RatMatrix basis(cols, static_cast<Eigen::Index>(free_cols.size()));
  basis.setZero();
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], static_cast<Eigen::Index>(k)) = 1;
    for (Eigen::Index i = 0; i < nump; ++i)
      basis(e.pivot_cols[i], static_cast<Eigen::Index>(k)) =
          -red(i, free_cols[k]);
  }
  return basis;
}

/// Reduced row echelon form over Q; the canonical representative of a row
/// span, so two bases span the same space iff their rref matrices with
/// zero rows dropped coincide.
inline RatMatrix rref_of(RatMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Rat inv = m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) /= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return m.topRows(r);
}

/// Incrementally tracks the span of a sequence of columns, supporting
/// push (with exact dependence detection) and pop in LIFO order. When a
/// pushed column is dependent, the relation expressing zero over the columns
/// pushed so far (coefficient of the new column = 1) is returned and the
/// state stays unchanged.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(Eigen::Index length) : length_(length) {}

  std::optional<std::vector<Rat>> push(const RatVector& col) {
    RatVector residue = col;
    std::vector<Rat> combo(count_ + 1, Rat(0));
    combo[count_] = 1;
    for (std::size_t i = 0; i < reduced_.size(); ++i) {
      const Rat& lead = residue(pivot_[i]);
      if (lead == 0) continue;
      Rat f = lead / reduced_[i](pivot_[i]);
      residue -= f * reduced_[i];
      for (std::size_t k = 0; k < combo_[i].size(); ++k)
        combo[k] -= f * combo_[i][k];
    }
    Eigen::Index p = -1;
    for (Eigen::Index j = 0; j < length_; ++j) {
      if (residue(j) != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) return combo;  // dependent relation; state untouched
    reduced_.push_back(std::move(residue));
    combo_.push_back(std::move(combo));
    pivot_.push_back(p);
    ++count_;
    return std::nullopt;
  }

  void pop() {
    reduced_.pop_back();
    combo_.pop_back();
    pivot_.pop_back();
    --count_;
  }

  std::size_t rank() const { return reduced_.size(); }

 private:
  Eigen::Index length_;
  std::size_t count_ = 0;
  std::vector<RatVector> reduced_;
  std::vector<std::vector<Rat>> combo_;  // reduced_[i] as combo of pushed cols
  std::vector<Eigen::Index> pivot_;
};

}  // namespace balance
