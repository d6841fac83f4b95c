#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hshare/exactalg.hpp"
#include "hshare/units.hpp"

namespace hshare {

// Linear form on P^d, stored with first nonzero coefficient 1 so that equal
// hyperplanes compare equal.
class Hyperplane {
 public:
  Hyperplane() = default;
  explicit Hyperplane(QVector coeffs);

  std::size_t dim() const { return coeffs_.size() - 1; }
  const QVector& coeffs() const { return coeffs_; }
  bool contains(const QVector& point) const;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;

 private:
  QVector coeffs_;
};

struct HyperplaneFamily {
  std::size_t dim = 0;
  std::vector<Hyperplane> members;

  std::size_t size() const { return members.size(); }
  const Hyperplane& operator[](std::size_t i) const { return members[i]; }
  void validate() const;

  friend bool operator==(const HyperplaneFamily&, const HyperplaneFamily&) = default;
};

// Coordinates (x_0 : ... : x_d) of a map into P^d, one exponential sum each.
class MapModel {
 public:
  MapModel() = default;
  explicit MapModel(std::vector<ExpSum> components);

  std::size_t dim() const { return components_.size() - 1; }
  std::size_t unit_count() const { return components_.front().unit_count(); }
  const std::vector<ExpSum>& components() const { return components_; }
  const ExpSum& operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const MapModel&, const MapModel&) = default;

 private:
  std::vector<ExpSum> components_;
};

struct GeneralPositionReport {
  bool inGeneralPosition = true;
  std::vector<std::size_t> witness;  // a smallest dependent subset, lex-least
};

GeneralPositionReport general_position_check(const HyperplaneFamily& fam);

// Coefficients x with target = sum x_i basis_i as coefficient vectors.
QVector express_in_basis(const HyperplaneFamily& fam, std::size_t target, const std::vector<std::size_t>& basis);

// <map, h>. Throws ZeroPullback when the result vanishes identically.
ExpSum pullback_form(const MapModel& map, const Hyperplane& h);
// <map, v> for an arbitrary coefficient vector; zero is a legal result.
ExpSum linear_form_value(const MapModel& map, const QVector& v);

// Image of h under the point map x -> Lx, i.e. coefficients h * L^{-1}.
Hyperplane transform_hyperplane(const QMatrix& L, const Hyperplane& h);
MapModel apply_transform(const QMatrix& L, const MapModel& map);

struct LinearNondegeneracy {
  bool nondegenerate = true;
  QVector witness;  // hyperplane containing the image, when degenerate
};

LinearNondegeneracy linear_nondegeneracy(const MapModel& map);

struct HomogeneousPolynomial {
  std::size_t variables = 0;
  std::size_t degree = 0;
  std::vector<std::pair<std::vector<unsigned>, Rational>> terms;

  ExpSum evaluate(const MapModel& map) const;
  std::string to_string() const;
};

// Degree-d exponent tuples in n variables, X_0^d first.
std::vector<std::vector<unsigned>> monomials_of_degree(std::size_t variables, std::size_t degree);

struct AlgebraicNondegeneracy {
  bool nondegenerate = true;
  std::size_t checkedDegree = 0;  // dmax when no relation was found
  std::optional<HomogeneousPolynomial> witness;
};

// Searches for a homogeneous relation among the components of degree
// 1..dmax. A true result says nothing about degrees above dmax.
AlgebraicNondegeneracy algebraic_nondegeneracy_up_to(const MapModel& map, std::size_t dmax);

}  // namespace hshare
