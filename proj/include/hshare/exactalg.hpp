#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hshare {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

// Accepts "p", "-p" and "p/q"; the result is canonical. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(const QVector& diag);
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  const std::vector<Rational>& entries() const { return entries_; }

  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols);
  static ZMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& m, const QVector& v);
// Row vector times matrix.
QVector operator*(const QVector& v, const QMatrix& m);
QMatrix transpose(const QMatrix& m);

Rational determinant(const QMatrix& m);
QMatrix inverse(const QMatrix& m);
QVector solve(const QMatrix& m, const QVector& rhs);
// Right null space; each basis vector has first nonzero entry 1.
std::vector<QVector> kernel_basis(const QMatrix& m);
std::size_t rank(const QMatrix& m);
std::size_t integer_row_rank(const ZMatrix& m);

bool is_zero(const QVector& v);
// Scales so the first nonzero entry is 1. Zero vectors are returned unchanged.
QVector normalize_leading(QVector v);
// Same rule applied to the row-major entry list of a matrix.
QMatrix normalize_leading(QMatrix m);
// If b = factor * a for a nonzero factor, returns the factor.
std::optional<Rational> proportionality(const QVector& a, const QVector& b);

std::string to_string(const QVector& v);

}  // namespace hshare
