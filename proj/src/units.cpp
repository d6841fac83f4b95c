#include "hshare/units.hpp"

#include "hshare/errors.hpp"

namespace hshare {

namespace {

void require_same_units(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": unit counts differ");
}

ExponentVector add(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ExponentVector sub(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::string monomial_text(const ExponentVector& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "e" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

UnitMonomial operator*(const UnitMonomial& a, const UnitMonomial& b) { return {a.coeff * b.coeff, add(a.expo, b.expo)}; }

UnitMonomial operator/(const UnitMonomial& a, const UnitMonomial& b) {
  if (b.coeff == 0) throw ZeroDenominator("division by a zero monomial");
  return {a.coeff / b.coeff, sub(a.expo, b.expo)};
}

std::string to_string(const UnitMonomial& u) {
  std::string m = monomial_text(u.expo);
  if (m.empty()) return to_string(u.coeff);
  if (u.coeff == 1) return m;
  return to_string(u.coeff) + "*" + m;
}

ExpSum ExpSum::constant(std::size_t unitCount, const Rational& c) {
  ExpSum s(unitCount);
  s.add_term(ExponentVector(unitCount, 0), c);
  return s;
}

ExpSum ExpSum::unit(std::size_t unitCount, std::size_t which, std::int64_t power, const Rational& c) {
  if (which >= unitCount) throw DimensionError("ExpSum::unit: unit index out of range");
  ExponentVector e(unitCount, 0);
  e[which] = power;
  ExpSum s(unitCount);
  s.add_term(e, c);
  return s;
}

ExpSum ExpSum::monomial(const UnitMonomial& u) {
  ExpSum s(u.expo.size());
  s.add_term(u.expo, u.coeff);
  return s;
}

Rational ExpSum::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExpSum::add_term(const ExponentVector& e, const Rational& c) {
  if (e.size() != unitCount_) throw DimensionError("ExpSum::add_term: exponent length differs from unit count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
  require_same_units(unitCount_, other.unitCount_, "ExpSum addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& other) {
  require_same_units(unitCount_, other.unitCount_, "ExpSum subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }

ExpSum operator-(const ExpSum& a) { return Rational(-1) * a; }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  require_same_units(a.unit_count(), b.unit_count(), "ExpSum product");
  ExpSum out(a.unit_count());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out.add_term(add(ea, eb), ca * cb);
  return out;
}

ExpSum operator*(const Rational& c, const ExpSum& a) {
  ExpSum out(a.unit_count());
  if (c == 0) return out;
  for (const auto& [e, v] : a.terms()) out.add_term(e, c * v);
  return out;
}

ExpSum operator*(const UnitMonomial& u, const ExpSum& a) {
  require_same_units(u.expo.size(), a.unit_count(), "monomial times ExpSum");
  ExpSum out(a.unit_count());
  for (const auto& [e, v] : a.terms()) out.add_term(add(u.expo, e), u.coeff * v);
  return out;
}

ExpSum power(const ExpSum& a, unsigned exponent) {
  ExpSum out = ExpSum::constant(a.unit_count(), 1);
  for (unsigned i = 0; i < exponent; ++i) out = out * a;
  return out;
}

std::string to_string(const ExpSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : s.terms()) {
    std::string m = monomial_text(e);
    Rational mag = abs(c);
    std::string term;
    if (m.empty()) {
      term = to_string(mag);
    } else {
      term = mag == 1 ? m : to_string(mag) + "*" + m;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

UnitMonomial unit_quotient(const ExpSum& num, const ExpSum& den) {
  require_same_units(num.unit_count(), den.unit_count(), "unit_quotient");
  if (den.is_zero()) throw ZeroDenominator("unit_quotient: denominator is the zero function");
  if (num.term_count() != den.term_count())
    throw NotAUnitQuotient("unit_quotient: term counts differ (" + std::to_string(num.term_count()) + " vs " +
                           std::to_string(den.term_count()) + ")");
  const auto& [en, cn] = *num.terms().rbegin();
  const auto& [ed, cd] = *den.terms().rbegin();
  UnitMonomial u{cn / cd, sub(en, ed)};
  if (u * den != num) throw NotAUnitQuotient("unit_quotient: quotient is not a single unit monomial");
  return u;
}

BorelPartition borel_zero_partition(const std::vector<UnitMonomial>& terms) {
  std::map<ExponentVector, std::size_t> slot;
  BorelPartition out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto [it, inserted] = slot.try_emplace(terms[i].expo, out.groups.size());
    if (inserted) {
      out.groups.emplace_back();
      out.groupSums.emplace_back(0);
    }
    out.groups[it->second].push_back(i);
    out.groupSums[it->second] += terms[i].coeff;
  }
  out.isZero = true;
  for (const auto& s : out.groupSums)
    if (s != 0) out.isZero = false;
  return out;
}

}  // namespace hshare
