#pragma once

// Arithmetic over formal units eta_1..eta_t. The units are multiplicatively
// independent by construction, so an exponential sum vanishes exactly when
// every coefficient in its canonical form vanishes. That is the whole model:
// nothing here checks independence of concrete functions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hshare/exactalg.hpp"

namespace hshare {

using ExponentVector = std::vector<std::int64_t>;

struct UnitMonomial {
  Rational coeff = 1;
  ExponentVector expo;

  friend bool operator==(const UnitMonomial&, const UnitMonomial&) = default;
};

UnitMonomial operator*(const UnitMonomial& a, const UnitMonomial& b);
UnitMonomial operator/(const UnitMonomial& a, const UnitMonomial& b);
std::string to_string(const UnitMonomial& u);

class ExpSum {
 public:
  using Terms = std::map<ExponentVector, Rational>;

  explicit ExpSum(std::size_t unitCount = 0) : unitCount_(unitCount) {}

  static ExpSum constant(std::size_t unitCount, const Rational& c);
  // c * eta_which^power
  static ExpSum unit(std::size_t unitCount, std::size_t which, std::int64_t power = 1, const Rational& c = 1);
  static ExpSum monomial(const UnitMonomial& u);

  std::size_t unit_count() const { return unitCount_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const ExponentVector& e) const;

  // Accumulates into the existing coefficient; a resulting zero is dropped.
  void add_term(const ExponentVector& e, const Rational& c);

  ExpSum& operator+=(const ExpSum& other);
  ExpSum& operator-=(const ExpSum& other);

  friend bool operator==(const ExpSum&, const ExpSum&) = default;

 private:
  std::size_t unitCount_ = 0;
  Terms terms_;
};

ExpSum operator+(ExpSum a, const ExpSum& b);
ExpSum operator-(ExpSum a, const ExpSum& b);
ExpSum operator-(const ExpSum& a);
ExpSum operator*(const ExpSum& a, const ExpSum& b);
ExpSum operator*(const Rational& c, const ExpSum& a);
ExpSum operator*(const UnitMonomial& u, const ExpSum& a);
ExpSum power(const ExpSum& a, unsigned exponent);

std::string to_string(const ExpSum& s);

// Returns u with num = u * den. Throws ZeroDenominator or NotAUnitQuotient.
UnitMonomial unit_quotient(const ExpSum& num, const ExpSum& den);

struct BorelPartition {
  bool isZero = false;
  std::vector<std::vector<std::size_t>> groups;  // term indices sharing an exponent
  std::vector<Rational> groupSums;
};

BorelPartition borel_zero_partition(const std::vector<UnitMonomial>& terms);

}  // namespace hshare
