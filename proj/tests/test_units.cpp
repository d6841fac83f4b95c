#include <doctest.h>

#include <random>

#include "hshare/errors.hpp"
#include "hshare/units.hpp"

using namespace hshare;

namespace {

ExpSum eta(std::size_t t, std::size_t i, std::int64_t p = 1, Rational c = 1) { return ExpSum::unit(t, i, p, c); }
ExpSum one(std::size_t t, Rational c = 1) { return ExpSum::constant(t, c); }

ExpSum random_sum(std::mt19937_64& rng, std::size_t t) {
  ExpSum s(t);
  std::size_t terms = rng() % 4;
  for (std::size_t k = 0; k < terms; ++k) {
    ExponentVector e(t);
    for (auto& x : e) x = static_cast<std::int64_t>(rng() % 5) - 2;
    s.add_term(e, Rational(static_cast<long>(rng() % 7) - 3));
  }
  return s;
}

}  // namespace

TEST_CASE("addition examples") {
  CHECK((eta(1, 0) + eta(1, 0, 1, -1)).is_zero());
  CHECK((one(2) + eta(2, 0)) + eta(2, 1) == one(2) + eta(2, 0) + eta(2, 1));
  ExpSum a = one(1) + eta(1, 0, 1, 2);
  ExpSum b = one(1, 3) + eta(1, 0);
  CHECK(a + b == one(1, 4) + eta(1, 0, 1, 3));
  CHECK_THROWS_AS(one(1) + one(2), DimensionError);
}

TEST_CASE("product examples") {
  CHECK((one(2) * ExpSum(2)).is_zero());
  CHECK((one(1) + eta(1, 0)) * (one(1) - eta(1, 0)) == one(1) - eta(1, 0, 2));
  ExpSum f0 = one(2) + eta(2, 0) + eta(2, 1);
  ExpSum f1 = one(2) + eta(2, 0, 1, 2) + eta(2, 1, 1, 3);
  ExpSum expect = -eta(2, 0);
  expect.add_term({1, 1}, 1);
  CHECK(eta(2, 0) * (f1 - Rational(2) * f0) == expect);
  CHECK_THROWS_AS(one(1) * one(2), DimensionError);
}

TEST_CASE("unit quotient examples") {
  ExpSum f0 = one(2) + eta(2, 0) + eta(2, 1);
  ExpSum f1 = one(2) + eta(2, 0, 1, 2) + eta(2, 1, 1, 3);
  ExpSum x = f1 - Rational(2) * f0;
  UnitMonomial u = unit_quotient(x, eta(2, 0) * x);
  CHECK(u.coeff == 1);
  CHECK(u.expo == ExponentVector{-1, 0});
  CHECK(unit_quotient(f0, f0) == UnitMonomial{1, {0, 0}});
  CHECK_THROWS_AS(unit_quotient(one(2) + eta(2, 0), one(2) + eta(2, 1)), NotAUnitQuotient);
  CHECK_THROWS_AS(unit_quotient(f0, ExpSum(2)), ZeroDenominator);
  CHECK_THROWS_AS(unit_quotient(f0, one(2)), NotAUnitQuotient);
}

TEST_CASE("Borel partition examples") {
  auto r = borel_zero_partition({{2, {1, 0}}, {-2, {1, 0}}, {3, {0, 1}}, {-3, {0, 1}}});
  CHECK(r.isZero);
  CHECK(r.groups == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});
  r = borel_zero_partition({{1, {1, 0}}, {1, {0, 1}}});
  CHECK_FALSE(r.isZero);
  CHECK(r.groups == std::vector<std::vector<std::size_t>>{{0}, {1}});
  r = borel_zero_partition({{1, {0, 0}}, {-1, {0, 0}}, {1, {1, 0}}});
  CHECK_FALSE(r.isZero);
  CHECK(r.groupSums == std::vector<Rational>{0, 1});
}

TEST_CASE("ring axioms on random sums") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    ExpSum a = random_sum(rng, 2), b = random_sum(rng, 2), c = random_sum(rng, 2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("unit quotient recovers the multiplier") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    ExpSum x = random_sum(rng, 3);
    if (x.is_zero()) continue;
    UnitMonomial u{Rational(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 3) + 1), ExponentVector(3)};
    u.coeff.canonicalize();
    for (auto& e : u.expo) e = static_cast<std::int64_t>(rng() % 7) - 3;
    CHECK(unit_quotient(u * x, x) == u);
  }
}

TEST_CASE("Borel partition agrees with summation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<UnitMonomial> terms;
    ExpSum total(1);
    std::size_t n = rng() % 5;
    for (std::size_t k = 0; k < n; ++k) {
      UnitMonomial u{Rational(static_cast<long>(rng() % 3) + 1) * (rng() % 2 ? 1 : -1), {static_cast<std::int64_t>(rng() % 2)}};
      terms.push_back(u);
      total += ExpSum::monomial(u);
    }
    CHECK(borel_zero_partition(terms).isZero == total.is_zero());
  }
}

TEST_CASE("text rendering") {
  CHECK(to_string(ExpSum(2)) == "0");
  CHECK(to_string(one(2) - eta(2, 1, -1, 2)) == "-2*e2^-1 + 1");
  CHECK(to_string(UnitMonomial{Rational(1, 2), {0, 1}}) == "1/2*e2");
}
