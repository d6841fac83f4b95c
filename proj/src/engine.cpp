#include "hshare/engine.hpp"

#include <algorithm>
#include <sstream>

#include "hshare/combinatorics.hpp"
#include "hshare/errors.hpp"

namespace hshare {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Recovered: return "Recovered";
    case Outcome::DimensionMismatchProven: return "DimensionMismatchProven";
    case Outcome::HypothesisInconsistent: return "HypothesisInconsistent";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(RecoveryCase c) { return c == RecoveryCase::Swap ? "Swap" : "EqualClass"; }

void DiagnosisReport::add(std::string step, std::string anchor, Json data) {
  trace.push_back({std::move(step), std::move(anchor), std::move(data)});
}

void DiagnosisReport::append_trace(const DiagnosisReport& other) {
  trace.insert(trace.end(), other.trace.begin(), other.trace.end());
}

Json to_json(const RecoveryResult& r) {
  Json corr = Json::array();
  for (auto [a, b] : r.correspondences) corr.push_back({{"Hp", a}, {"H", b}});
  return {{"dimsEqual", r.dimsEqual},
          {"L", to_json(r.L)},
          {"case", to_string(r.caseTag)},
          {"matchedIndices", r.matchedIndices},
          {"correspondences", corr},
          {"factor", to_string(r.factor)},
          {"verified", r.verified}};
}

Json to_json(const DiagnosisReport& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace) trace.push_back({{"step", s.step}, {"anchor", s.anchor}, {"data", s.data}});
  Json out{{"outcome", to_string(r.outcome)}, {"summary", r.summary}, {"trace", trace}};
  if (r.recovery) out["recovery"] = to_json(*r.recovery);
  if (r.bound) out["bound"] = *r.bound;
  if (r.dimsEqual) out["dimsEqual"] = *r.dimsEqual;
  return out;
}

std::string render_text(const DiagnosisReport& r) {
  std::ostringstream os;
  os << "outcome: " << to_string(r.outcome) << "\n";
  if (!r.summary.empty()) os << "summary: " << r.summary << "\n";
  if (r.bound) os << "bound: " << *r.bound << "\n";
  if (r.recovery) {
    const auto& rec = *r.recovery;
    os << "case: " << to_string(rec.caseTag) << "\nL:\n";
    for (std::size_t i = 0; i < rec.L.rows(); ++i) os << "  " << to_string(rec.L.row(i)) << "\n";
    os << "f = (" << to_string(rec.factor) << ") * L(g)\n";
    for (auto [a, b] : rec.correspondences) os << "  L(Hp[" << a << "]) = H[" << b << "]\n";
  }
  os << "trace:\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    os << "  " << i + 1 << ". " << r.trace[i].step << "  [" << r.trace[i].anchor << "]\n";
  return os.str();
}

void SharedInstance::validate_shape() const {
  if (f.components().empty() || g.components().empty()) throw DimensionError("instance: maps are missing");
  if (f.dim() < 1) throw DimensionError("instance: n must be at least 1");
  if (g.dim() < f.dim()) throw DimensionError("instance: need N >= n");
  if (f.unit_count() != g.unit_count()) throw DimensionError("instance: f and g use different unit counts");
  if (H.dim != f.dim() || Hp.dim != g.dim()) throw DimensionError("instance: family dimensions do not match the maps");
  if (H.size() != Hp.size()) throw DimensionError("instance: H and Hp have different sizes");
  H.validate();
  Hp.validate();
}

Json to_json(const InstanceReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures) fails.push_back({{"check", f.check}, {"detail", f.detail}, {"witness", f.witness}});
  return {{"ok", r.ok()}, {"failures", fails}};
}

InstanceReport verify_instance(const SharedInstance& inst) {
  InstanceReport rep;
  try {
    inst.validate_shape();
  } catch (const Error& e) {
    rep.failures.push_back({"shape", e.what(), {}});
    return rep;
  }
  for (const auto* fam : {&inst.H, &inst.Hp}) {
    auto gp = general_position_check(*fam);
    if (!gp.inGeneralPosition)
      rep.failures.push_back({"general position", fam == &inst.H ? "H" : "Hp", gp.witness});
  }
  for (std::size_t i = 0; i < inst.q(); ++i) {
    ExpSum num = linear_form_value(inst.f, inst.H[i].coeffs());
    ExpSum den = linear_form_value(inst.g, inst.Hp[i].coeffs());
    if (num.is_zero()) rep.failures.push_back({"nonzero pullback", "f lies in H[" + std::to_string(i) + "]", {i}});
    if (den.is_zero()) rep.failures.push_back({"nonzero pullback", "g lies in Hp[" + std::to_string(i) + "]", {i}});
    if (num.is_zero() || den.is_zero()) continue;
    try {
      unit_quotient(num, den);
    } catch (const NotAUnitQuotient&) {
      rep.failures.push_back({"unit quotient", "NotAUnitQuotient at index " + std::to_string(i), {i}});
    }
  }
  return rep;
}

GroupTuple compute_raw_h_tuple(const SharedInstance& inst) {
  inst.validate_shape();
  GroupTuple out;
  out.t = inst.f.unit_count();
  for (std::size_t i = 0; i < inst.q(); ++i) {
    ExpSum num = pullback_form(inst.f, inst.H[i]);
    ExpSum den = pullback_form(inst.g, inst.Hp[i]);
    UnitMonomial u;
    try {
      u = unit_quotient(num, den);
    } catch (const NotAUnitQuotient& e) {
      throw NotAUnitQuotient("NotAUnitQuotient at index " + std::to_string(i) + ": " + e.what());
    }
    out.rows.push_back(u.expo);
    out.consts.push_back(u.coeff);
  }
  return out;
}

GroupTuple compute_h_tuple(const SharedInstance& inst) {
  GroupTuple raw = compute_raw_h_tuple(inst);
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::all_of(raw.rows[i].begin(), raw.rows[i].end(), [](std::int64_t x) { return x == 0; })) {
      pivot = i;
      break;
    }
  }
  return normalize_tuple(raw, pivot);
}

std::vector<LaplaceTerm> laplace_coefficients(const std::vector<QVector>& aRows, const std::vector<QVector>& bRows) {
  if (aRows.size() != bRows.size() || aRows.empty()) throw DimensionError("laplace_coefficients: row counts differ");
  const std::size_t m = aRows.size();
  const std::size_t na = aRows.front().size(), nb = bRows.front().size();
  if (na + nb != m) throw DimensionError("laplace_coefficients: need (n+1)+(N+1) rows");
  for (const auto& r : aRows)
    if (r.size() != na) throw DimensionError("laplace_coefficients: ragged a rows");
  for (const auto& r : bRows)
    if (r.size() != nb) throw DimensionError("laplace_coefficients: ragged b rows");

  // Columns na+1 .. m (one-based) carry the b block.
  std::size_t colSum = 0;
  for (std::size_t c = na + 1; c <= m; ++c) colSum += c;

  std::vector<LaplaceTerm> out;
  auto I = first_combination(nb);
  do {
    std::vector<QVector> bSub, aSub;
    std::size_t rowSum = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (next < I.size() && I[next] == i) {
        bSub.push_back(bRows[i]);
        rowSum += i + 1;
        ++next;
      } else {
        aSub.push_back(aRows[i]);
      }
    }
    Rational c = determinant(QMatrix::from_rows(aSub)) * determinant(QMatrix::from_rows(bSub));
    if ((rowSum + colSum) % 2 == 1) c = -c;
    if (c == 0) throw PreconditionError("laplace_coefficients: general position violated (vanishing minor)", I);
    out.push_back({I, c});
  } while (next_combination(I, m));
  return out;
}

bool verify_master_identity(const SharedInstance& inst, const std::vector<std::size_t>& subset) {
  const std::size_t n = inst.n(), N = inst.N();
  if (subset.size() != N + n + 2) throw PreconditionError("verify_master_identity: need N+n+2 indices");
  GroupTuple h = compute_h_tuple(inst);
  std::vector<QVector> a, b;
  for (auto i : subset) {
    if (i >= inst.q()) throw DimensionError("verify_master_identity: index out of range");
    a.push_back(inst.H[i].coeffs());
    b.push_back(inst.Hp[i].coeffs());
  }
  std::vector<UnitMonomial> terms;
  for (const auto& term : laplace_coefficients(a, b)) {
    UnitMonomial u{term.coefficient, ExponentVector(h.t, 0)};
    for (auto pos : term.subset) u = u * UnitMonomial{h.consts[subset[pos]], h.rows[subset[pos]]};
    terms.push_back(u);
  }
  return borel_zero_partition(terms).isZero;
}

PropertyWitness derive_property(const SharedInstance& inst) {
  const std::size_t r = inst.N() + inst.n() + 2;
  if (inst.q() < r) throw PreconditionError("derive_property: need q >= N+n+2");
  return property_check(compute_h_tuple(inst), r, inst.N() + 1);
}

FactorMatching match_linear_factors(const std::vector<QVector>& lhs, const std::vector<QVector>& rhs,
                                    const MapModel& g, std::size_t dmaxCheck) {
  if (lhs.size() != rhs.size()) throw PreconditionError("match_linear_factors: factor counts differ");
  if (lhs.size() > dmaxCheck) throw PreconditionError("match_linear_factors: more factors than the checked degree");
  for (const auto* side : {&lhs, &rhs})
    for (const auto& v : *side) {
      if (v.size() != g.dim() + 1) throw DimensionError("match_linear_factors: form size does not match g");
      if (is_zero(v)) throw PreconditionError("match_linear_factors: zero linear form");
    }
  auto nd = algebraic_nondegeneracy_up_to(g, dmaxCheck);
  if (!nd.nondegenerate)
    throw PreconditionError("match_linear_factors: g satisfies a relation of degree " + std::to_string(nd.checkedDegree));

  FactorMatching out;
  std::vector<bool> used(rhs.size(), false);
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    bool found = false;
    for (std::size_t k = 0; k < rhs.size() && !found; ++k) {
      if (used[k]) continue;
      if (auto c = proportionality(rhs[k], lhs[j])) {
        used[k] = true;
        out.sigma.push_back(k);
        out.constants.push_back(*c);
        found = true;
      }
    }
    if (!found) throw NoFactorMatching("no right-hand factor is proportional to " + to_string(lhs[j]));
  }
  return out;
}

QVector combine_rows(const HyperplaneFamily& fam, const std::vector<std::size_t>& idx, const QVector& coeffs) {
  QVector out(fam.dim + 1, Rational(0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c <= fam.dim; ++c) out[c] += coeffs[i] * fam[idx[i]].coeffs()[c];
  return out;
}

}  // namespace hshare
