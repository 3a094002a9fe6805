#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace energia {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = RowVector<std::int64_t>;

// Raised when an input lies outside an operation's domain (H > m, w = 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by cost guards before an enumeration exceeds its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exact value no longer fits the fixed-width storage a routine uses.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Parses "p/q", "p" or a decimal such as "0.29" into an exact rational.
Rational parse_rational(const std::string& text);

inline std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("integer does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace energia
