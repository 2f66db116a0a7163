#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gabinv {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector column(std::size_t c) const;
  RationalMatrix transposed() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalVector operator*(const RationalVector& v) const;

  bool operator==(const RationalMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact inverse by Gauss-Jordan elimination. Throws Error on a singular input.
RationalMatrix inverse(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

/// Parses "p/q" or an integer; throws Error on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Row-major matrix text: rows separated by ';', entries by ','. Example: "1/2,0;0,1/4".
RationalMatrix parse_matrix(std::string_view text);
std::string format_matrix(const RationalMatrix& m);
RationalVector parse_vector(std::string_view text);
std::string format_vector(const RationalVector& v);

/// Fractional part in [0,1).
Rational frac(const Rational& q);
Integer floor_of(const Rational& q);
bool is_integer(const Rational& q);

/// e^{2 pi i q}; the argument is reduced exactly mod 1 before conversion to double.
std::complex<double> unit_phase(const Rational& q);
/// e^{2 pi i num/den} for integers, reduced mod den first.
std::complex<double> unit_phase(std::int64_t num, std::int64_t den);

std::int64_t to_int64(const Rational& q);

}  // namespace gabinv
