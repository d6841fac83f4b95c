#include "hshare/geometry.hpp"

#include <algorithm>
#include <map>

#include "hshare/combinatorics.hpp"
#include "hshare/errors.hpp"

namespace hshare {

namespace {

bool dependent(const HyperplaneFamily& fam, const std::vector<std::size_t>& subset) {
  std::vector<QVector> rows;
  for (auto i : subset) rows.push_back(fam[i].coeffs());
  QMatrix m = QMatrix::from_rows(rows);
  if (m.square()) return determinant(m) == 0;
  return rank(m) < subset.size();
}

// Columns are the components, rows the distinct unit monomials.
QMatrix coefficient_matrix(const std::vector<ExpSum>& sums) {
  std::map<ExponentVector, std::size_t> rowOf;
  for (const auto& s : sums)
    for (const auto& [e, c] : s.terms()) rowOf.try_emplace(e, 0);
  std::size_t next = 0;
  for (auto& [e, r] : rowOf) r = next++;
  QMatrix m(rowOf.size(), sums.size());
  for (std::size_t j = 0; j < sums.size(); ++j)
    for (const auto& [e, c] : sums[j].terms()) m(rowOf.at(e), j) = c;
  return m;
}

void fill_monomials(std::size_t var, std::size_t left, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = static_cast<unsigned>(left);
    out.push_back(cur);
    return;
  }
  for (std::size_t e = left + 1; e-- > 0;) {
    cur[var] = static_cast<unsigned>(e);
    fill_monomials(var + 1, left - e, cur, out);
  }
}

ExpSum evaluate_monomial(const MapModel& map, const std::vector<unsigned>& expo) {
  ExpSum v = ExpSum::constant(map.unit_count(), 1);
  for (std::size_t k = 0; k < expo.size(); ++k)
    for (unsigned e = 0; e < expo[k]; ++e) v = v * map[k];
  return v;
}

}  // namespace

Hyperplane::Hyperplane(QVector coeffs) {
  if (coeffs.size() < 2) throw DimensionError("Hyperplane: need at least two coefficients");
  if (is_zero(coeffs)) throw PreconditionError("Hyperplane: all coefficients are zero");
  coeffs_ = normalize_leading(std::move(coeffs));
}

bool Hyperplane::contains(const QVector& point) const {
  if (point.size() != coeffs_.size()) throw DimensionError("Hyperplane::contains: point has wrong length");
  Rational acc = 0;
  for (std::size_t i = 0; i < point.size(); ++i) acc += coeffs_[i] * point[i];
  return acc == 0;
}

void HyperplaneFamily::validate() const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].dim() != dim)
      throw DimensionError("HyperplaneFamily: member " + std::to_string(i) + " has the wrong dimension");
}

MapModel::MapModel(std::vector<ExpSum> components) : components_(std::move(components)) {
  if (components_.size() < 2) throw DimensionError("MapModel: need at least two components");
  for (const auto& c : components_)
    if (c.unit_count() != components_.front().unit_count())
      throw DimensionError("MapModel: components use different unit counts");
  if (std::all_of(components_.begin(), components_.end(), [](const ExpSum& c) { return c.is_zero(); }))
    throw PreconditionError("MapModel: all components are zero");
}

GeneralPositionReport general_position_check(const HyperplaneFamily& fam) {
  fam.validate();
  const std::size_t k = std::min(fam.size(), fam.dim + 1);
  GeneralPositionReport out;
  if (k == 0) return out;
  auto c = first_combination(k);
  bool failed = false;
  do {
    if (dependent(fam, c)) {
      failed = true;
      break;
    }
  } while (next_combination(c, fam.size()));
  if (!failed) return out;

  out.inGeneralPosition = false;
  for (std::size_t size = 2; size <= k; ++size) {
    auto sub = first_combination(size);
    do {
      if (dependent(fam, sub)) {
        out.witness = sub;
        return out;
      }
    } while (next_combination(sub, fam.size()));
  }
  out.witness = c;
  return out;
}

QVector express_in_basis(const HyperplaneFamily& fam, std::size_t target, const std::vector<std::size_t>& basis) {
  fam.validate();
  if (basis.size() != fam.dim + 1) throw DimensionError("express_in_basis: basis must have dim+1 members");
  if (target >= fam.size()) throw DimensionError("express_in_basis: target index out of range");
  QMatrix bt(fam.dim + 1, fam.dim + 1);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j] >= fam.size()) throw DimensionError("express_in_basis: basis index out of range");
    for (std::size_t c = 0; c <= fam.dim; ++c) bt(c, j) = fam[basis[j]].coeffs()[c];
  }
  QVector x;
  try {
    x = solve(bt, fam[target].coeffs());
  } catch (const SingularMatrixError&) {
    throw PreconditionError("express_in_basis: basis members are dependent", basis);
  }
  if (std::find(basis.begin(), basis.end(), target) == basis.end()) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] != 0) continue;
      std::vector<std::size_t> witness;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (i != j) witness.push_back(basis[i]);
      witness.push_back(target);
      std::sort(witness.begin(), witness.end());
      throw PreconditionError("express_in_basis: family is not in general position", witness);
    }
  }
  return x;
}

ExpSum linear_form_value(const MapModel& map, const QVector& v) {
  if (v.size() != map.dim() + 1) throw DimensionError("linear form and map have different dimensions");
  ExpSum out(map.unit_count());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) out += v[k] * map[k];
  return out;
}

ExpSum pullback_form(const MapModel& map, const Hyperplane& h) {
  ExpSum out = linear_form_value(map, h.coeffs());
  if (out.is_zero()) throw ZeroPullback("pullback form vanishes: the image lies in the hyperplane " + to_string(h.coeffs()));
  return out;
}

Hyperplane transform_hyperplane(const QMatrix& L, const Hyperplane& h) {
  if (L.rows() != h.coeffs().size() || !L.square()) throw DimensionError("transform_hyperplane: size mismatch");
  return Hyperplane(h.coeffs() * inverse(L));
}

MapModel apply_transform(const QMatrix& L, const MapModel& map) {
  if (!L.square() || L.rows() != map.dim() + 1) throw DimensionError("apply_transform: size mismatch");
  if (determinant(L) == 0) throw SingularMatrixError("apply_transform: matrix is singular");
  std::vector<ExpSum> out;
  for (std::size_t i = 0; i < L.rows(); ++i) out.push_back(linear_form_value(map, L.row(i)));
  return MapModel(std::move(out));
}

LinearNondegeneracy linear_nondegeneracy(const MapModel& map) {
  auto kernel = kernel_basis(coefficient_matrix(map.components()));
  if (kernel.empty()) return {};
  return {false, kernel.front()};
}

std::vector<std::vector<unsigned>> monomials_of_degree(std::size_t variables, std::size_t degree) {
  std::vector<std::vector<unsigned>> out;
  if (variables == 0) return out;
  std::vector<unsigned> cur(variables, 0);
  fill_monomials(0, degree, cur, out);
  return out;
}

ExpSum HomogeneousPolynomial::evaluate(const MapModel& map) const {
  if (map.dim() + 1 != variables) throw DimensionError("polynomial and map have different variable counts");
  ExpSum out(map.unit_count());
  for (const auto& [expo, c] : terms) out += c * evaluate_monomial(map, expo);
  return out;
}

std::string HomogeneousPolynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [expo, c] : terms) {
    std::string mono;
    for (std::size_t k = 0; k < expo.size(); ++k) {
      if (expo[k] == 0) continue;
      mono += "X" + std::to_string(k);
      if (expo[k] > 1) mono += "^" + std::to_string(expo[k]);
    }
    Rational mag = abs(c);
    std::string term = mono.empty() ? hshare::to_string(mag) : (mag == 1 ? mono : hshare::to_string(mag) + "*" + mono);
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

AlgebraicNondegeneracy algebraic_nondegeneracy_up_to(const MapModel& map, std::size_t dmax) {
  if (dmax < 1) throw PreconditionError("algebraic_nondegeneracy_up_to: dmax must be >= 1");
  const std::size_t vars = map.dim() + 1;
  for (std::size_t d = 1; d <= dmax; ++d) {
    auto monos = monomials_of_degree(vars, d);
    std::vector<ExpSum> values;
    values.reserve(monos.size());
    for (const auto& m : monos) values.push_back(evaluate_monomial(map, m));
    auto kernel = kernel_basis(coefficient_matrix(values));
    if (kernel.empty()) continue;
    HomogeneousPolynomial w;
    w.variables = vars;
    w.degree = d;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (kernel.front()[i] != 0) w.terms.push_back({monos[i], kernel.front()[i]});
    return {false, d, std::move(w)};
  }
  return {true, dmax, std::nullopt};
}

}  // namespace hshare
