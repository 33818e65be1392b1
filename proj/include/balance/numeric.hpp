#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace balance {

using Int = mpz_class;
using Rat = mpq_class;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Raised when a documented precondition is violated.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by parsers; carries a human-readable location.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& where, int line, const std::string& what)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// mpq_class(num, den) does not canonicalize; this does.
inline Rat rat(long num, long den = 1) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Exact binomial coefficient; small arguments only (fits desk scale).
inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at each step
  }
  return r;
}

/// "p/q" for non-integers, plain "p" otherwise.
inline std::string rat_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& text) {
  Rat q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw domain_error("malformed rational '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace balance
