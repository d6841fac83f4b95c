#pragma once

// Combinatorics of q-tuples in a free abelian group. An element is stored as
// its exponent row over a fixed basis, so the group law is row addition and
// the unit element is the zero row.

#include <cstddef>
#include <optional>
#include <vector>

#include "hshare/exactalg.hpp"
#include "hshare/units.hpp"

namespace hshare {

struct GroupTuple {
  std::size_t t = 0;                 // length of every row
  std::vector<ExponentVector> rows;  // class of h_i
  std::vector<Rational> consts;      // h_i = consts[i] * eta^rows[i]

  std::size_t size() const { return rows.size(); }
  // Throws DimensionError / PreconditionError on malformed data.
  void validate() const;
  // Unit constants for every row.
  static GroupTuple from_rows(std::size_t t, std::vector<ExponentVector> rows);

  friend bool operator==(const GroupTuple&, const GroupTuple&) = default;
};

struct PropertyCounterexample {
  std::vector<std::size_t> rSubset;  // the chosen r indices
  std::vector<std::size_t> sSubset;  // s of them whose product no other s-subset matches
};

struct PropertyWitness {
  bool holds = true;
  std::optional<PropertyCounterexample> counterexample;
};

// Requires q >= r > s >= 1. Enumerates r-subsets and then s-subsets in lex
// order and returns the first s-subset whose product is unmatched.
PropertyWitness property_check(const GroupTuple& a, std::size_t r, std::size_t s);

struct WeightData {
  std::vector<Integer> p;  // one weight per basis unit
  std::vector<Integer> l;  // l_i = sum_tau rows[i][tau] * p_tau
  std::size_t s = 0;       // valid for index multisets of size <= s
};

WeightData fujimoto_weights(const GroupTuple& a, std::size_t s);

struct EqualRuns {
  // Maximal blocks of equal classes containing the guaranteed intervals of
  // the sorted chain, in chain order. Each block lists indices ascending.
  std::vector<std::vector<std::size_t>> runs;
  // Chain of indices sorted by weight, ties by index.
  std::vector<std::size_t> chain;
};

// Throws PreconditionError (witness = counterexample indices) when the
// property fails.
EqualRuns extract_equal_run(const GroupTuple& a, std::size_t r, std::size_t s);

enum class CaseTag { EqualRun, Beta, Gamma };

struct LemmaExtraction {
  CaseTag caseTag = CaseTag::EqualRun;
  std::vector<std::size_t> equalIndices;
  std::vector<std::size_t> extraIndices;
  std::optional<std::size_t> gammaK;
};

// Requires 2 <= r - s <= s, q >= 2s - 1 and the property.
LemmaExtraction extract_cases(const GroupTuple& a, std::size_t r, std::size_t s);

struct RankBound {
  std::size_t rank = 0;
  bool withinBound = true;        // rank <= s - 1
  bool equalityForcesR2s = true;  // rank == s - 1 implies r == 2s
  bool ok() const { return withinBound && equalityForcesR2s; }
};

// Requires r <= 2s, the property and a zero row.
RankBound rank_and_bound(const GroupTuple& a, std::size_t r, std::size_t s);

enum class MaxRankType { A, B };

struct MaxRankPattern {
  MaxRankType type = MaxRankType::A;
  ExponentVector shift;                // common factor removed from every row
  std::vector<std::size_t> order;      // tuple indices in pattern order
  std::vector<ExponentVector> basis;   // beta_1 .. beta_{s-1}
  std::vector<std::size_t> blockEnds;  // a_1 < ... < a_k (type B only)
};

// Requires q = 2s, the property, a zero row and rank s - 1.
MaxRankPattern classify_max_rank(const GroupTuple& a, std::size_t s);

GroupTuple normalize_tuple(const GroupTuple& a, std::size_t pivot);
std::size_t tuple_rank(const GroupTuple& a);

// Exponent arithmetic shared by the extractors and their checks.
ExponentVector row_sum(const GroupTuple& a, const std::vector<std::size_t>& indices);
ExponentVector scaled(const ExponentVector& v, std::int64_t k);

}  // namespace hshare
