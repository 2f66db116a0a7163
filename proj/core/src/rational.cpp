#include "gabinv/rational.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gabinv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& columns, std::size_t rows) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("column dimension mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product dimension mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      Rational acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(r, k) * rhs(k, c);
      out(r, c) = acc;
    }
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (cols_ != v.size()) throw Error("matrix-vector dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(r, k) * v[k];
    out[r] = acc;
  }
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("inverse of a non-square matrix");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error("degenerate lattice");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  RationalMatrix a = m;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  num = trim(num);
  den = trim(den);
  if (!valid_integer_text(num) || !valid_integer_text(den)) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer d(std::string(den[0] == '+' ? den.substr(1) : den), 10);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

RationalMatrix parse_matrix(std::string_view text) {
  const auto rows = split(trim(text), ';');
  std::vector<RationalVector> parsed;
  for (auto row : rows) parsed.push_back(parse_vector(row));
  if (parsed.empty() || parsed.front().empty()) throw Error("empty matrix");
  const std::size_t cols = parsed.front().size();
  RationalMatrix m(parsed.size(), cols);
  for (std::size_t r = 0; r < parsed.size(); ++r) {
    if (parsed[r].size() != cols) throw Error("ragged matrix rows in '" + std::string(text) + "'");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parsed[r][c];
  }
  return m;
}

std::string format_matrix(const RationalMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << format_rational(m(r, c));
    }
  }
  return os.str();
}

RationalVector parse_vector(std::string_view text) {
  RationalVector v;
  for (auto entry : split(trim(text), ',')) v.push_back(parse_rational(entry));
  return v;
}

std::string format_vector(const RationalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_rational(v[i]);
  }
  return out;
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::complex<double> unit_phase(const Rational& q) {
  const Rational f = frac(q);
  if (f == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * f.get_d());
}

std::complex<double> unit_phase(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw Error("expected an integer, got " + format_rational(q));
  if (!q.get_num().fits_slong_p()) throw Error("integer out of range");
  return q.get_num().get_si();
}

}  // namespace gabinv
