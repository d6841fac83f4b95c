#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hshare/geometry.hpp"
#include "hshare/json_io.hpp"
#include "hshare/tuples.hpp"

namespace hshare {

// f into P^n and g into P^N with f^*(H_i) = g^*(Hp_i) for every i, modeled as
// (f,H_i)/(g,Hp_i) being a unit monomial.
struct SharedInstance {
  MapModel f;
  MapModel g;
  HyperplaneFamily H;
  HyperplaneFamily Hp;

  std::size_t n() const { return f.dim(); }
  std::size_t N() const { return g.dim(); }
  std::size_t q() const { return H.size(); }
  // Shape only: dimensions, sizes, N >= n >= 1, equal unit counts.
  void validate_shape() const;

  friend bool operator==(const SharedInstance&, const SharedInstance&) = default;
};

enum class RecoveryCase { EqualClass, Swap };

struct RecoveryResult {
  bool dimsEqual = true;
  QMatrix L;  // normalized so the first nonzero entry is 1
  RecoveryCase caseTag = RecoveryCase::EqualClass;
  std::vector<std::size_t> matchedIndices;
  std::vector<std::pair<std::size_t, std::size_t>> correspondences;  // (a, b) with L(Hp_a) = H_b
  UnitMonomial factor;  // f = factor * L(g)
  bool verified = false;
};

enum class Outcome { Recovered, DimensionMismatchProven, HypothesisInconsistent, Inconclusive };

std::string to_string(Outcome o);
std::string to_string(RecoveryCase c);

struct TraceStep {
  std::string step;
  std::string anchor;
  Json data;
};

struct DiagnosisReport {
  Outcome outcome = Outcome::Inconclusive;
  std::string summary;
  std::vector<TraceStep> trace;
  std::optional<RecoveryResult> recovery;
  std::optional<std::int64_t> bound;
  std::optional<bool> dimsEqual;

  void add(std::string step, std::string anchor, Json data = Json::object());
  void append_trace(const DiagnosisReport& other);
};

Json to_json(const RecoveryResult& r);
Json to_json(const DiagnosisReport& r);
std::string render_text(const DiagnosisReport& r);

struct InstanceFailure {
  std::string check;
  std::string detail;
  std::vector<std::size_t> witness;
};

struct InstanceReport {
  std::vector<InstanceFailure> failures;
  bool ok() const { return failures.empty(); }
};

InstanceReport verify_instance(const SharedInstance& inst);
Json to_json(const InstanceReport& r);

// Quotients before any normalization.
GroupTuple compute_raw_h_tuple(const SharedInstance& inst);
// Normalized at the first index whose quotient is constant, else at index 0.
GroupTuple compute_h_tuple(const SharedInstance& inst);

struct LaplaceTerm {
  std::vector<std::size_t> subset;  // positions within the chosen rows
  Rational coefficient;
};

// aRows: m rows of length n+1, bRows: m rows of length N+1, m = n+N+2.
// Expands det[a | b*h] along its last N+1 columns.
std::vector<LaplaceTerm> laplace_coefficients(const std::vector<QVector>& aRows, const std::vector<QVector>& bRows);

bool verify_master_identity(const SharedInstance& inst, const std::vector<std::size_t>& subset);

PropertyWitness derive_property(const SharedInstance& inst);

struct FactorMatching {
  std::vector<std::size_t> sigma;   // lhs[j] = constants[j] * rhs[sigma[j]]
  std::vector<Rational> constants;
};

FactorMatching match_linear_factors(const std::vector<QVector>& lhs, const std::vector<QVector>& rhs,
                                    const MapModel& g, std::size_t dmaxCheck);

DiagnosisReport recover_equal_class(const SharedInstance& inst, const std::vector<std::size_t>& k);

DiagnosisReport pipeline_theorem_A(const SharedInstance& inst);
DiagnosisReport pipeline_theorem_B(const SharedInstance& inst, std::optional<std::size_t> dmax = std::nullopt);

struct DimensionBound {
  std::size_t t = 0;
  std::int64_t bound = 0;
  std::vector<std::pair<std::size_t, bool>> scanned;  // (s, property holds)
};

DimensionBound dimension_bound_for_tuple(const GroupTuple& tuple, std::size_t N, std::size_t n);
DimensionBound dimension_bound(const SharedInstance& inst);
Json to_json(const DimensionBound& b);

DiagnosisReport equal_dimension_decision(const SharedInstance& inst, std::size_t dmax = 3,
                                         bool assumeNondegenerate = false);

// Row-level helper shared by the pipelines: sum_i coeffs[i] * Hp[idx[i]].
QVector combine_rows(const HyperplaneFamily& fam, const std::vector<std::size_t>& idx, const QVector& coeffs);

}  // namespace hshare
