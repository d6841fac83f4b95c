#include <algorithm>

#include "hshare/engine.hpp"
#include "hshare/errors.hpp"

namespace hshare {

namespace {

Json rows_json(const GroupTuple& a) {
  Json rows = Json::array();
  for (const auto& r : a.rows) rows.push_back(to_json(r));
  return rows;
}

// u with f = u * Lg componentwise, if one exists.
std::optional<UnitMonomial> unit_factor(const MapModel& f, const MapModel& Lg) {
  std::optional<UnitMonomial> u;
  for (std::size_t k = 0; k < f.components().size(); ++k) {
    if (f[k].is_zero() != Lg[k].is_zero()) return std::nullopt;
    if (f[k].is_zero()) continue;
    if (!u) {
      try {
        u = unit_quotient(f[k], Lg[k]);
      } catch (const NotAUnitQuotient&) {
        return std::nullopt;
      }
    }
    if (!(*u * Lg[k] == f[k])) return std::nullopt;
  }
  return u;
}

// L~ = A^{-1} C B from the basis rows of H (A) and Hp (B).
QMatrix build_transform(const SharedInstance& inst, const std::vector<std::size_t>& basis, const QVector& c) {
  std::vector<QVector> a, b;
  for (auto k : basis) {
    a.push_back(inst.H[k].coeffs());
    b.push_back(inst.Hp[k].coeffs());
  }
  return inverse(QMatrix::from_rows(a)) * QMatrix::diagonal(c) * QMatrix::from_rows(b);
}

RecoveryResult finish_recovery(const SharedInstance& inst, const QMatrix& rawL,
                               std::vector<std::pair<std::size_t, std::size_t>> corr,
                               std::vector<std::size_t> matched, RecoveryCase tag) {
  RecoveryResult out;
  out.L = normalize_leading(rawL);
  out.caseTag = tag;
  out.matchedIndices = std::move(matched);
  out.correspondences = std::move(corr);
  auto u = unit_factor(inst.f, apply_transform(out.L, inst.g));
  if (!u) throw InconsistencyError("recovered transformation does not carry g to f");
  out.factor = *u;
  for (auto [a, b] : out.correspondences)
    if (!(transform_hyperplane(out.L, inst.Hp[a]) == inst.H[b]))
      throw InconsistencyError("recovered transformation misses L(Hp[" + std::to_string(a) + "]) = H[" +
                               std::to_string(b) + "]");
  out.verified = true;
  return out;
}

std::vector<std::size_t> sorted_prefix(std::vector<std::size_t> v, std::size_t len) {
  std::sort(v.begin(), v.end());
  v.resize(std::min(len, v.size()));
  return v;
}

// Basis of n+1 equal-class indices together with their constants.
struct ClassBasis {
  std::vector<std::size_t> idx;
  QVector c;
};

ClassBasis class_basis(const GroupTuple& h, const std::vector<std::size_t>& run, std::size_t n) {
  ClassBasis b;
  b.idx = sorted_prefix(run, n + 1);
  if (b.idx.size() != n + 1) throw InconsistencyError("equal run shorter than n+1");
  for (auto k : b.idx) b.c.push_back(h.consts[k]);
  return b;
}

// Hp-combination w with (f', H_e) = (g, w) where f' removes the basis class from f.
QVector pulled_combination(const SharedInstance& inst, const ClassBasis& b, std::size_t e) {
  QVector x = express_in_basis(inst.H, e, b.idx);
  QVector coeffs;
  for (std::size_t i = 0; i < x.size(); ++i) coeffs.push_back(x[i] * b.c[i]);
  return combine_rows(inst.Hp, b.idx, coeffs);
}

void adopt(DiagnosisReport& into, const DiagnosisReport& from) {
  into.append_trace(from);
  into.outcome = from.outcome;
  into.summary = from.summary;
  into.recovery = from.recovery;
  into.dimsEqual = from.dimsEqual;
}

bool instance_gate(const SharedInstance& inst, DiagnosisReport& rep) {
  InstanceReport vr = verify_instance(inst);
  rep.add("verify instance", "general position, (f,H_i) != 0, (g,H'_i) != 0, h_i unit", to_json(vr));
  if (vr.ok()) return true;
  rep.outcome = Outcome::Inconclusive;
  rep.summary = "instance fails " + vr.failures.front().check + ": " + vr.failures.front().detail;
  return false;
}

GroupTuple traced_tuple(const SharedInstance& inst, DiagnosisReport& rep) {
  GroupTuple h = compute_h_tuple(inst);
  rep.add("h-tuple", "h_i = (f,H_i)/(g,H'_i)",
          {{"rows", rows_json(h)}, {"consts", to_json(h.consts)}, {"t", tuple_rank(h)}});
  return h;
}

void traced_property(const SharedInstance& inst, const GroupTuple& h, DiagnosisReport& rep) {
  const std::size_t r = inst.N() + inst.n() + 2, s = inst.N() + 1;
  PropertyWitness w = property_check(h, r, s);
  rep.add("derive property", "sum A_I h_I = 0 and Borel => (P_{N+n+2,N+1})",
          {{"r", r}, {"s", s}, {"witness", to_json(w)}});
  if (!w.holds) throw InconsistencyError("h-tuple of a verified instance lacks (P_{N+n+2,N+1})");
}

// Two runs of equal classes when q < 2N+1: the degree-two identity forces a
// dependence among Hp rows that general position forbids.
DiagnosisReport two_run_branch(const SharedInstance& inst, const GroupTuple& h, const std::vector<std::size_t>& runI,
                               const std::vector<std::size_t>& runJ) {
  DiagnosisReport rep;
  const std::size_t n = inst.n();
  const std::size_t l = (n + 1) / 2, lt = n + 1 - l;
  auto I = sorted_prefix(runI, l + 1), J = sorted_prefix(runJ, lt + 1);
  if (I.size() != l + 1 || J.size() != lt + 1) throw InconsistencyError("two-run extraction produced short runs");
  std::vector<std::size_t> basis(I.begin() + 1, I.end());
  basis.insert(basis.end(), J.begin() + 1, J.end());
  QVector x = express_in_basis(inst.H, I[0], basis);
  QVector y = express_in_basis(inst.H, J[0], basis);

  auto side = [&](const QVector& coef, std::size_t from, std::size_t to) {
    std::vector<std::size_t> idx(basis.begin() + from, basis.begin() + to);
    QVector cs;
    for (std::size_t k = from; k < to; ++k) cs.push_back(coef[k] * h.consts[basis[k]]);
    return combine_rows(inst.Hp, idx, cs);
  };
  auto scaled_row = [&](std::size_t i) {
    QVector v = inst.Hp[i].coeffs();
    for (auto& e : v) e *= h.consts[i];
    return v;
  };
  QVector u1 = scaled_row(I[0]), u2 = scaled_row(J[0]);
  QVector a1 = side(x, 0, l), a2 = side(y, l, l + lt);
  for (std::size_t c = 0; c < u1.size(); ++c) {
    u1[c] -= a1[c];
    u2[c] -= a2[c];
  }
  QVector w1 = side(x, l, l + lt), w2 = side(y, 0, l);
  ExpSum lhs = linear_form_value(inst.g, u1) * linear_form_value(inst.g, u2);
  ExpSum rhs = linear_form_value(inst.g, w1) * linear_form_value(inst.g, w2);
  rep.add("two-run identity", "(g,U1)(g,U2) = (g,W1)(g,W2)",
          {{"l", l}, {"lTilde", lt}, {"I", I}, {"J", J}, {"U1", to_json(u1)}, {"U2", to_json(u2)},
           {"W1", to_json(w1)}, {"W2", to_json(w2)}});
  if (!(lhs == rhs)) throw InconsistencyError("two-run identity fails on a verified instance");

  FactorMatching m;
  try {
    m = match_linear_factors({u1, u2}, {w1, w2}, inst.g, 2);
  } catch (const NoFactorMatching& e) {
    throw InconsistencyError(std::string("two-run factors do not match: ") + e.what());
  }
  std::vector<std::size_t> dependent(I.begin(), I.end());
  if (m.sigma[0] == 0) dependent.insert(dependent.end(), J.begin() + 1, J.end());
  std::sort(dependent.begin(), dependent.end());
  rep.add("factor matching", "U1 ~ W_sigma(1)", {{"sigma", m.sigma}, {"dependentHp", dependent}});
  rep.outcome = Outcome::HypothesisInconsistent;
  rep.summary = "Hp rows at the listed indices would be dependent, forcing N = n, which contradicts q < 2N+1";
  rep.dimsEqual = false;
  return rep;
}

DiagnosisReport after_runs(const SharedInstance& inst, const GroupTuple& h, DiagnosisReport rep, bool allowTwoRun) {
  const std::size_t n = inst.n(), N = inst.N(), q = inst.q();
  EqualRuns runs = extract_equal_run(h, N + n + 2, N + 1);
  rep.add("equal run", "l_s = ... = l_{q-r+s+1}", {{"runs", runs.runs}, {"chain", runs.chain}});
  std::optional<std::vector<std::size_t>> best;
  for (const auto& run : runs.runs) {
    if (run.size() < n + 2) continue;
    auto k = sorted_prefix(run, n + 2);
    if (!best || k < *best) best = k;
  }
  if (best) {
    adopt(rep, recover_equal_class(inst, *best));
    return rep;
  }
  if (allowTwoRun && q < 2 * N + 1 && runs.runs.size() == 2) {
    adopt(rep, two_run_branch(inst, h, runs.runs[0], runs.runs[1]));
    return rep;
  }
  throw InconsistencyError("no run of n+2 equal classes where one is guaranteed");
}

DiagnosisReport inconclusive(DiagnosisReport rep, std::string why) {
  rep.outcome = Outcome::Inconclusive;
  rep.summary = std::move(why);
  return rep;
}

}  // namespace

DiagnosisReport recover_equal_class(const SharedInstance& inst, const std::vector<std::size_t>& k) {
  const std::size_t n = inst.n(), N = inst.N();
  if (k.size() != n + 2) throw PreconditionError("recover_equal_class: need n+2 indices");
  for (auto i : k)
    if (i >= inst.q()) throw DimensionError("recover_equal_class: index out of range");
  GroupTuple h = compute_h_tuple(inst);
  for (auto i : k)
    if (h.rows[i] != h.rows[k.front()])
      throw PreconditionError("recover_equal_class: h-classes differ at the given indices", k);

  DiagnosisReport rep;
  ClassBasis b{std::vector<std::size_t>(k.begin(), k.end() - 1), {}};
  for (auto i : b.idx) b.c.push_back(h.consts[i]);
  const std::size_t last = k.back();
  QVector x = express_in_basis(inst.H, last, b.idx);
  QVector v = inst.Hp[last].coeffs();
  for (auto& e : v) e *= h.consts[last];
  QVector w = pulled_combination(inst, b, last);
  for (std::size_t c = 0; c < v.size(); ++c) v[c] -= w[c];
  rep.add("class relation", "c_{n+2} H'_{k_{n+2}} - sum x_i c_i H'_{k_i}",
          {{"k", k}, {"x", to_json(x)}, {"c", to_json(b.c)}, {"cLast", to_json(h.consts[last])}, {"v", to_json(v)}});
  if (!linear_form_value(inst.g, v).is_zero()) throw InconsistencyError("(g, v) does not vanish on an equal class");

  if (N > n) {
    if (is_zero(v)) throw PreconditionError("recover_equal_class: Hp is not in general position", k);
    rep.outcome = Outcome::DimensionMismatchProven;
    rep.dimsEqual = false;
    rep.summary = "N > n: the n+2 Hp rows are independent, so (g, v) = 0 puts g inside the hyperplane " + to_string(v);
    return rep;
  }
  if (!is_zero(v)) {
    rep.outcome = Outcome::HypothesisInconsistent;
    rep.summary = "g is linearly degenerate: (g, v) = 0 for v = " + to_string(v);
    return rep;
  }
  QMatrix L = build_transform(inst, b.idx, b.c);
  std::vector<std::pair<std::size_t, std::size_t>> corr;
  for (auto i : k) corr.push_back({i, i});
  RecoveryResult rec = finish_recovery(inst, L, corr, k, RecoveryCase::EqualClass);
  rep.add("build transform", "L = A^{-1} C B", {{"L", to_json(rec.L)}, {"factor", to_string(rec.factor)}});
  rep.outcome = Outcome::Recovered;
  rep.dimsEqual = true;
  rep.summary = "f = u * L(g) with L(H'_k) = H_k on the equal class";
  rep.recovery = rec;
  return rep;
}

DiagnosisReport pipeline_theorem_A(const SharedInstance& inst) {
  inst.validate_shape();
  const std::size_t n = inst.n(), N = inst.N(), q = inst.q();
  DiagnosisReport rep;
  const std::size_t linearThreshold = std::min(N + 2 * n + 2, std::max(2 * N + 1, 3 * n + 2));
  const bool meetsLinear = q >= linearThreshold;
  const bool meetsQuadratic = q >= 3 * n + 2 && 2 * q >= 2 * N + 3 * n + 3;
  const Rational quadraticThreshold = std::max(Rational(3 * n + 2), Rational(2 * N + 3 * n + 3, 2));
  LinearNondegeneracy lin = linear_nondegeneracy(inst.g);
  Json gate{{"q", q}, {"n", n}, {"N", N}, {"linearThreshold", linearThreshold},
            {"quadraticThreshold", to_json(quadraticThreshold)}, {"gLinearlyNondegenerate", lin.nondegenerate}};

  bool quadratic = false;
  if (!(meetsLinear && lin.nondegenerate)) {
    if (!meetsQuadratic) {
      rep.add("threshold gate", "q >= min{N+2n+2, max{2N+1,3n+2}} or q >= max{3n+2, N+3n/2+3/2}", gate);
      if (meetsLinear) return inconclusive(rep, "g is linearly degenerate: it lies in " + to_string(lin.witness));
      return inconclusive(rep, "q is below both thresholds");
    }
    auto alg = algebraic_nondegeneracy_up_to(inst.g, 2);
    gate["gQuadraticallyNondegenerate"] = alg.nondegenerate;
    rep.add("threshold gate", "q >= max{3n+2, N+3n/2+3/2} with g non-degenerate in degree 2", gate);
    if (!alg.nondegenerate)
      return inconclusive(rep, "g satisfies the relation " + alg.witness->to_string() + " = 0");
    quadratic = true;
  } else {
    rep.add("threshold gate", "q >= min{N+2n+2, max{2N+1,3n+2}} with g linearly non-degenerate", gate);
  }

  if (!instance_gate(inst, rep)) return rep;
  GroupTuple h = traced_tuple(inst, rep);
  traced_property(inst, h, rep);
  return after_runs(inst, h, std::move(rep), quadratic);
}

DiagnosisReport pipeline_theorem_B(const SharedInstance& inst, std::optional<std::size_t> dmax) {
  inst.validate_shape();
  const std::size_t n = inst.n(), N = inst.N(), q = inst.q();
  DiagnosisReport rep;
  const bool meets = q >= 3 * n + 1 && 2 * q >= std::min(2 * (2 * N + 1), 2 * N + 3 * n + 3);
  const std::size_t required = std::min(n + 1, N - n + 2);
  const std::size_t degree = dmax.value_or(required);
  const Rational threshold =
      std::max(Rational(3 * n + 1), std::min(Rational(2 * N + 1), Rational(2 * N + 3 * n + 3, 2)));
  Json gate{{"q", q}, {"n", n}, {"N", N}, {"threshold", to_json(threshold)}, {"requiredDegree", required},
            {"dmax", degree}};
  const char* anchor = "q >= max{3n+1, min{2N+1, N+3n/2+3/2}}, g non-degenerate up to min{n+1, N-n+2}";
  if (!meets) {
    rep.add("threshold gate", anchor, gate);
    return inconclusive(rep, "q is below the threshold");
  }
  if (degree < required) {
    rep.add("threshold gate", anchor, gate);
    return inconclusive(rep, "dmax is below the required degree " + std::to_string(required));
  }
  auto alg = algebraic_nondegeneracy_up_to(inst.g, degree);
  gate["gNondegenerate"] = alg.nondegenerate;
  rep.add("threshold gate", anchor, gate);
  if (!alg.nondegenerate) return inconclusive(rep, "g satisfies the relation " + alg.witness->to_string() + " = 0");

  if (!instance_gate(inst, rep)) return rep;
  GroupTuple h = traced_tuple(inst, rep);
  traced_property(inst, h, rep);
  if (q < 2 * N + 1) return after_runs(inst, h, std::move(rep), true);

  LemmaExtraction ext = extract_cases(h, N + n + 2, N + 1);
  const char* tags[] = {"alpha", "beta", "gamma"};
  Json ej{{"case", tags[static_cast<int>(ext.caseTag)]}, {"equal", ext.equalIndices}, {"extra", ext.extraIndices}};
  if (ext.gammaK) ej["k"] = *ext.gammaK;
  rep.add("case extraction", "(alpha) run of n+2, (beta) pair, (gamma) product relation", ej);

  if (ext.caseTag == CaseTag::EqualRun) {
    adopt(rep, recover_equal_class(inst, sorted_prefix(ext.equalIndices, n + 2)));
    return rep;
  }

  ClassBasis b = class_basis(h, ext.equalIndices, n);
  if (ext.caseTag == CaseTag::Beta) {
    const std::size_t p1 = ext.extraIndices.at(0), p2 = ext.extraIndices.at(1);
    QVector a = pulled_combination(inst, b, p1), bb = pulled_combination(inst, b, p2);
    const Rational c = h.consts[p1] / h.consts[p2];
    ExpSum lhs = linear_form_value(inst.g, a) * pullback_form(inst.g, inst.Hp[p2]);
    ExpSum rhs = c * (linear_form_value(inst.g, bb) * pullback_form(inst.g, inst.Hp[p1]));
    rep.add("quadratic identity", "(g,a)(g,H'_{n+3}) = c (g,b)(g,H'_{n+2})",
            {{"basis", b.idx}, {"pair", {p1, p2}}, {"a", to_json(a)}, {"b", to_json(bb)}, {"c", to_json(c)}});
    if (!(lhs == rhs)) throw InconsistencyError("quadratic identity fails on a verified instance");
    FactorMatching m;
    try {
      m = match_linear_factors({a, inst.Hp[p2].coeffs()}, {bb, inst.Hp[p1].coeffs()}, inst.g, 2);
    } catch (const NoFactorMatching& e) {
      throw InconsistencyError(std::string("quadratic identity factors do not match: ") + e.what());
    }
    rep.add("factor matching", "a ~ H'_{n+2}", {{"sigma", m.sigma}});
    if (m.sigma[0] == 0) throw InconsistencyError("Hp rows at a shared pair are proportional");
    if (N > n) {
      rep.outcome = Outcome::HypothesisInconsistent;
      rep.dimsEqual = false;
      rep.summary = "Hp rows at the basis and the pair head are dependent, impossible for N > n";
      return rep;
    }
    std::vector<std::size_t> matched = b.idx;
    matched.push_back(p1);
    std::vector<std::pair<std::size_t, std::size_t>> corr;
    for (auto i : matched) corr.push_back({i, i});
    RecoveryResult rec = finish_recovery(inst, build_transform(inst, b.idx, b.c), corr, matched, RecoveryCase::EqualClass);
    rep.add("build transform", "L = A^{-1} C B", {{"L", to_json(rec.L)}});
    rep.outcome = Outcome::Recovered;
    rep.dimsEqual = true;
    rep.summary = "pair case resolved to an equal class";
    rep.recovery = rec;
    return rep;
  }

  // Gamma: prod (g, sum x_{j,i} c_i H'_i) = c prod (g, H'_j) over the extras.
  const auto& extras = ext.extraIndices;
  if (extras.size() > degree) throw InconsistencyError("gamma relation longer than the checked degree");
  std::vector<QVector> ws, hs;
  Rational c = 1;
  ExpSum lhs = ExpSum::constant(inst.g.unit_count(), 1), rhs = ExpSum::constant(inst.g.unit_count(), 1);
  for (auto e : extras) {
    ws.push_back(pulled_combination(inst, b, e));
    hs.push_back(inst.Hp[e].coeffs());
    c *= h.consts[e];
    lhs = lhs * linear_form_value(inst.g, ws.back());
    rhs = rhs * pullback_form(inst.g, inst.Hp[e]);
  }
  rhs = c * rhs;
  Json wj = Json::array();
  for (const auto& w : ws) wj.push_back(to_json(w));
  rep.add("product identity", "prod_j (g, sum_i x_{j,i} c_i H'_i) = c prod_j (g, H'_j)",
          {{"basis", b.idx}, {"extras", extras}, {"w", wj}, {"c", to_json(c)}});
  if (!(lhs == rhs)) throw InconsistencyError("product identity fails on a verified instance");
  FactorMatching m;
  try {
    m = match_linear_factors(ws, hs, inst.g, degree);
  } catch (const NoFactorMatching& e) {
    throw InconsistencyError(std::string("product identity factors do not match: ") + e.what());
  }
  rep.add("factor matching", "sum_i x_{j,i} c_i H'_i ~ H'_sigma(j)", {{"sigma", m.sigma}});
  if (N > n) {
    rep.outcome = Outcome::HypothesisInconsistent;
    rep.dimsEqual = false;
    rep.summary = "Hp rows at the basis and a matched extra are dependent, impossible for N > n";
    return rep;
  }
  if (extras.size() != 2) throw InconsistencyError("gamma relation with N = n must have k = 2");
  std::vector<std::size_t> matched = b.idx;
  std::vector<std::pair<std::size_t, std::size_t>> corr;
  for (auto i : b.idx) corr.push_back({i, i});
  for (std::size_t j = 0; j < extras.size(); ++j) {
    matched.push_back(extras[j]);
    corr.push_back({extras[m.sigma[j]], extras[j]});
  }
  const bool swapped = m.sigma[0] != 0;
  RecoveryResult rec = finish_recovery(inst, build_transform(inst, b.idx, b.c), corr, matched,
                                       swapped ? RecoveryCase::Swap : RecoveryCase::EqualClass);
  rep.add("build transform", "L = A^{-1} C B, L(H'_sigma(j)) = H_j", {{"L", to_json(rec.L)}});
  rep.outcome = Outcome::Recovered;
  rep.dimsEqual = true;
  rep.summary = swapped ? "L exchanges the two extra hyperplanes" : "product case resolved to an equal class";
  rep.recovery = rec;
  return rep;
}

DimensionBound dimension_bound_for_tuple(const GroupTuple& tuple, std::size_t N, std::size_t n) {
  if (n < 1 || N < n) throw PreconditionError("dimension_bound: need N >= n >= 1");
  if (tuple.size() < N + n + 2) throw PreconditionError("dimension_bound: need q >= N+n+2");
  DimensionBound out;
  out.t = tuple_rank(tuple);
  out.bound = static_cast<std::int64_t>(N);
  for (std::size_t s = N + 1; s >= N - n + 1 && s >= 1; --s) {
    const std::size_t r = 2 * s - (N - n);
    const bool holds = property_check(tuple, r, s).holds;
    out.scanned.push_back({s, holds});
    if (!holds)
      out.bound = std::min(out.bound, static_cast<std::int64_t>(N) - static_cast<std::int64_t>(s) +
                                          static_cast<std::int64_t>(out.t));
    if (s == 1) break;
  }
  return out;
}

DimensionBound dimension_bound(const SharedInstance& inst) {
  DimensionBound b = dimension_bound_for_tuple(compute_h_tuple(inst), inst.N(), inst.n());
  if (b.bound > static_cast<std::int64_t>(inst.N())) throw InconsistencyError("dimension bound exceeds N");
  return b;
}

Json to_json(const DimensionBound& b) {
  Json scanned = Json::array();
  for (auto [s, holds] : b.scanned) scanned.push_back({{"s", s}, {"holds", holds}});
  return {{"t", b.t}, {"bound", b.bound}, {"scanned", scanned}};
}

DiagnosisReport equal_dimension_decision(const SharedInstance& inst, std::size_t dmax, bool assumeNondegenerate) {
  inst.validate_shape();
  const std::size_t n = inst.n(), N = inst.N(), q = inst.q();
  DiagnosisReport rep;
  rep.add("threshold gate", "q >= N+n+2", {{"q", q}, {"n", n}, {"N", N}, {"required", N + n + 2}});
  if (q < N + n + 2) return inconclusive(rep, "q = " + std::to_string(q) + " is below N+n+2");
  if (!instance_gate(inst, rep)) return rep;
  if (assumeNondegenerate) {
    rep.add("non-degeneracy", "g algebraically non-degenerate (assumed)", {{"assumed", true}});
  } else {
    auto alg = algebraic_nondegeneracy_up_to(inst.g, dmax);
    Json data{{"dmax", dmax}, {"nondegenerate", alg.nondegenerate}};
    if (alg.witness) data["witness"] = to_json(*alg.witness);
    rep.add("non-degeneracy", "no homogeneous relation P(g) = 0 up to dmax", data);
    if (!alg.nondegenerate)
      return inconclusive(rep, "g satisfies the relation " + alg.witness->to_string() + " = 0");
  }
  GroupTuple h = traced_tuple(inst, rep);
  traced_property(inst, h, rep);
  const std::size_t t = tuple_rank(h);
  if (t > N) throw InconsistencyError("rank of the h-tuple exceeds N");

  if (t < N - n) {
    const std::size_t s = N - n + 1, r = s + 1;
    PropertyWitness w = property_check(h, r, s);
    rep.add("small rank split", "t < N-n: test (P_{N-n+2,N-n+1})",
            {{"t", t}, {"r", r}, {"s", s}, {"witness", to_json(w)}});
    if (!w.holds) {
      rep.outcome = Outcome::HypothesisInconsistent;
      rep.bound = static_cast<std::int64_t>(N) - 1;
      rep.summary = "dim V <= N-1, so g cannot be algebraically non-degenerate";
      return rep;
    }
    EqualRuns runs = extract_equal_run(h, r, s);
    rep.add("equal run", "q-r+2 equal classes", {{"runs", runs.runs}});
    std::optional<std::vector<std::size_t>> k;
    for (const auto& run : runs.runs)
      if (run.size() >= n + 2 && (!k || sorted_prefix(run, n + 2) < *k)) k = sorted_prefix(run, n + 2);
    if (!k) throw InconsistencyError("no run of n+2 equal classes where one is guaranteed");
    DiagnosisReport sub = recover_equal_class(inst, *k);
    if (sub.outcome == Outcome::DimensionMismatchProven && !assumeNondegenerate)
      throw InconsistencyError("a verified non-degenerate g lies in a hyperplane");
    adopt(rep, sub);
    return rep;
  }

  const std::size_t s = t + 1, r = 2 * s - (N - n);
  PropertyWitness w = property_check(h, r, s);
  rep.add("large rank split", "t >= N-n: test (P_{2(t+1)-(N-n),t+1})",
          {{"t", t}, {"r", r}, {"s", s}, {"witness", to_json(w)}});
  if (!w.holds) {
    rep.outcome = Outcome::HypothesisInconsistent;
    rep.bound = static_cast<std::int64_t>(N) - 1;
    rep.summary = "dim V <= N-1, so g cannot be algebraically non-degenerate";
    return rep;
  }
  RankBound rb = rank_and_bound(h, r, s);
  rep.add("rank bound", "t <= s-1, and t = s-1 forces r = 2s",
          {{"rank", rb.rank}, {"withinBound", rb.withinBound}, {"equalityForcesR2s", rb.equalityForcesR2s}});
  if (!rb.ok()) throw InconsistencyError("rank bound violated by a tuple with the property");
  rep.outcome = Outcome::Recovered;
  rep.dimsEqual = true;
  rep.summary = "N = n";
  return rep;
}

}  // namespace hshare
