#include "hshare/tuples.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "hshare/combinatorics.hpp"
#include "hshare/errors.hpp"

namespace hshare {

namespace {

void require_rs(const GroupTuple& a, std::size_t r, std::size_t s, const char* op) {
  if (!(a.size() >= r && r > s && s >= 1))
    throw PreconditionError(std::string(op) + ": need q >= r > s >= 1 (q=" + std::to_string(a.size()) +
                            ", r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
}

// Integer weights l_i valid for multisets of size <= bound, when they and all
// bounded sums fit in 64 bits.
std::optional<std::vector<std::int64_t>> small_weights(const GroupTuple& a, std::size_t bound) {
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 4;
  const auto b = static_cast<std::int64_t>(bound);
  std::vector<std::int64_t> l(a.size(), 0);
  std::int64_t acc = 0;  // sum over earlier units of max|l(i,tau)| * p_tau
  for (std::size_t u = 0; u < a.t; ++u) {
    std::int64_t p = 0;
    if (u == 0) {
      p = 1;
    } else if (__builtin_mul_overflow(2 * b, acc, &p) || __builtin_add_overflow(p, 1, &p)) {
      return std::nullopt;
    }
    std::int64_t maxAbs = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t e = a.rows[i][u];
      if (e == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
      maxAbs = std::max(maxAbs, e < 0 ? -e : e);
      std::int64_t term = 0;
      if (__builtin_mul_overflow(e, p, &term) || __builtin_add_overflow(l[i], term, &l[i])) return std::nullopt;
    }
    std::int64_t contrib = 0;
    if (__builtin_mul_overflow(maxAbs, p, &contrib) || __builtin_add_overflow(acc, contrib, &acc)) return std::nullopt;
    if (acc > kLimit / std::max<std::int64_t>(b, 1)) return std::nullopt;
  }
  return l;
}

template <class Key, class Add>
PropertyWitness check_impl(const std::vector<Key>& items, std::size_t r, std::size_t s, const Key& zero, Add add) {
  const std::size_t q = items.size();
  const std::size_t count = binomial(r, s);
  std::vector<std::pair<Key, std::size_t>> sums;
  sums.reserve(count);
  std::vector<bool> matched(count);

  auto rset = first_combination(r);
  do {
    sums.clear();
    auto sset = first_combination(s);
    std::size_t rankIdx = 0;
    do {
      Key acc = zero;
      for (auto pos : sset) add(acc, items[rset[pos]]);
      sums.emplace_back(std::move(acc), rankIdx++);
    } while (next_combination(sset, r));

    std::sort(sums.begin(), sums.end());
    std::fill(matched.begin(), matched.end(), false);
    for (std::size_t i = 0; i < count;) {
      std::size_t j = i + 1;
      while (j < count && sums[j].first == sums[i].first) ++j;
      if (j - i > 1)
        for (std::size_t k = i; k < j; ++k) matched[sums[k].second] = true;
      i = j;
    }
    auto first = std::find(matched.begin(), matched.end(), false);
    if (first != matched.end()) {
      std::size_t target = static_cast<std::size_t>(first - matched.begin());
      auto sset2 = first_combination(s);
      for (std::size_t k = 0; k < target; ++k) next_combination(sset2, r);
      PropertyCounterexample ce;
      ce.rSubset = rset;
      for (auto pos : sset2) ce.sSubset.push_back(rset[pos]);
      return {false, std::move(ce)};
    }
  } while (next_combination(rset, q));
  return {true, std::nullopt};
}

std::vector<std::size_t> positions_to_indices(const std::vector<std::size_t>& chain, std::size_t from, std::size_t to) {
  std::vector<std::size_t> out(chain.begin() + static_cast<std::ptrdiff_t>(from),
                               chain.begin() + static_cast<std::ptrdiff_t>(to + 1));
  std::sort(out.begin(), out.end());
  return out;
}

struct Chain {
  std::vector<Integer> l;
  std::vector<std::size_t> order;  // order[pos] = tuple index
};

Chain sorted_chain(const GroupTuple& a, std::size_t bound) {
  Chain c;
  c.l = fujimoto_weights(a, bound).l;
  c.order.resize(a.size());
  std::iota(c.order.begin(), c.order.end(), std::size_t{0});
  std::stable_sort(c.order.begin(), c.order.end(), [&](std::size_t x, std::size_t y) { return c.l[x] < c.l[y]; });
  return c;
}

void require_property(const GroupTuple& a, std::size_t r, std::size_t s, const char* op) {
  auto w = property_check(a, r, s);
  if (!w.holds) {
    std::vector<std::size_t> witness = w.counterexample->sSubset;
    throw PreconditionError(std::string(op) + ": tuple lacks the property for (r,s)=(" + std::to_string(r) + "," +
                                std::to_string(s) + ")",
                            witness);
  }
}

// Zero-based chain positions [lo, hi] must carry one class.
void assert_constant_block(const GroupTuple& a, const Chain& c, std::size_t lo, std::size_t hi) {
  for (std::size_t pos = lo + 1; pos <= hi; ++pos)
    if (a.rows[c.order[pos]] != a.rows[c.order[lo]])
      throw InconsistencyError("sorted chain: guaranteed block [" + std::to_string(lo) + "," + std::to_string(hi) +
                               "] is not constant");
}

bool independent(const std::vector<ExponentVector>& vs, std::size_t t) {
  if (vs.empty()) return true;
  if (vs.size() > t) return false;
  return integer_row_rank(ZMatrix::from_rows(vs)) == vs.size();
}

}  // namespace

void GroupTuple::validate() const {
  if (rows.size() != consts.size()) throw DimensionError("GroupTuple: rows and consts differ in length");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != t) throw DimensionError("GroupTuple: row " + std::to_string(i) + " has wrong length");
    if (consts[i] == 0) throw PreconditionError("GroupTuple: constant " + std::to_string(i) + " is zero", {i});
  }
}

GroupTuple GroupTuple::from_rows(std::size_t t, std::vector<ExponentVector> rows) {
  GroupTuple g;
  g.t = t;
  g.consts.assign(rows.size(), Rational(1));
  g.rows = std::move(rows);
  g.validate();
  return g;
}

ExponentVector row_sum(const GroupTuple& a, const std::vector<std::size_t>& indices) {
  ExponentVector out(a.t, 0);
  for (auto i : indices)
    for (std::size_t c = 0; c < a.t; ++c) out[c] += a.rows[i][c];
  return out;
}

ExponentVector scaled(const ExponentVector& v, std::int64_t k) {
  ExponentVector out(v);
  for (auto& x : out) x *= k;
  return out;
}

PropertyWitness property_check(const GroupTuple& a, std::size_t r, std::size_t s) {
  a.validate();
  require_rs(a, r, s, "property_check");
  if (auto keys = small_weights(a, s)) {
    return check_impl<std::int64_t>(*keys, r, s, 0, [](std::int64_t& acc, std::int64_t v) { acc += v; });
  }
  return check_impl<ExponentVector>(a.rows, r, s, ExponentVector(a.t, 0), [](ExponentVector& acc, const ExponentVector& v) {
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += v[c];
  });
}

WeightData fujimoto_weights(const GroupTuple& a, std::size_t s) {
  a.validate();
  if (s < 1) throw PreconditionError("fujimoto_weights: s must be >= 1");
  WeightData w;
  w.s = s;
  w.l.assign(a.size(), Integer(0));
  Integer acc = 0;
  for (std::size_t u = 0; u < a.t; ++u) {
    Integer p = u == 0 ? Integer(1) : Integer(2 * static_cast<long>(s) * acc + 1);
    Integer maxAbs = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      Integer e(static_cast<long>(a.rows[i][u]));
      if (abs(e) > maxAbs) maxAbs = abs(e);
      w.l[i] += e * p;
    }
    acc += maxAbs * p;
    w.p.push_back(p);
  }
  return w;
}

EqualRuns extract_equal_run(const GroupTuple& a, std::size_t r, std::size_t s) {
  require_rs(a, r, s, "extract_equal_run");
  require_property(a, r, s, "extract_equal_run");
  const std::size_t q = a.size();
  const std::size_t m = r - s;
  Chain c = sorted_chain(a, std::max(s, m));

  // One-based chain intervals [s, q-m+1] and [m, q-s+1], shifted to zero-based.
  std::pair<std::size_t, std::size_t> first{s - 1, q - m};
  std::pair<std::size_t, std::size_t> second{m - 1, q - s};
  assert_constant_block(a, c, first.first, first.second);
  assert_constant_block(a, c, second.first, second.second);

  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  if (first.first > second.first) std::swap(first, second);
  if (second.first <= first.second) {
    blocks.push_back({first.first, std::max(first.second, second.second)});
  } else {
    blocks.push_back(first);
    blocks.push_back(second);
  }
  for (auto& [lo, hi] : blocks) {
    while (lo > 0 && c.l[c.order[lo - 1]] == c.l[c.order[lo]]) --lo;
    while (hi + 1 < q && c.l[c.order[hi + 1]] == c.l[c.order[hi]]) ++hi;
  }
  if (blocks.size() == 2 && blocks[0] == blocks[1]) blocks.pop_back();

  EqualRuns out;
  out.chain = c.order;
  for (auto [lo, hi] : blocks) {
    assert_constant_block(a, c, lo, hi);
    out.runs.push_back(positions_to_indices(c.order, lo, hi));
  }
  return out;
}

LemmaExtraction extract_cases(const GroupTuple& a, std::size_t r, std::size_t s) {
  require_rs(a, r, s, "extract_cases");
  const std::size_t q = a.size();
  const std::size_t m = r - s;
  if (!(m >= 2 && m <= s && q + 1 >= 2 * s))
    throw PreconditionError("extract_cases: need 2 <= r-s <= s and q >= 2s-1");
  require_property(a, r, s, "extract_cases");
  Chain c = sorted_chain(a, s);
  auto at = [&](std::size_t onePos) { return c.order[onePos - 1]; };
  auto lw = [&](std::size_t onePos) -> const Integer& { return c.l[at(onePos)]; };

  // Positions m .. q-m+1 (one-based) form the guaranteed run.
  assert_constant_block(a, c, m - 1, q - m);

  LemmaExtraction out;
  if (lw(m - 1) == lw(m) || lw(q - m + 1) == lw(q - m + 2)) {
    std::size_t lo = m - 1, hi = q - m;
    while (lo > 0 && c.l[c.order[lo - 1]] == c.l[c.order[lo]]) --lo;
    while (hi + 1 < q && c.l[c.order[hi + 1]] == c.l[c.order[hi]]) ++hi;
    assert_constant_block(a, c, lo, hi);
    out.caseTag = CaseTag::EqualRun;
    out.equalIndices = positions_to_indices(c.order, lo, hi);
    return out;
  }

  // Chosen r positions: 1..s and q-m+1..q. Reference s-set I skips m-1.
  std::vector<std::size_t> pool;
  for (std::size_t p = 1; p <= s; ++p) pool.push_back(p);
  for (std::size_t p = q - m + 1; p <= q; ++p) pool.push_back(p);
  std::vector<std::size_t> ipos;
  for (std::size_t p = 1; p <= s; ++p)
    if (p != m - 1) ipos.push_back(p);
  ipos.push_back(q - m + 1);

  auto indices_of = [&](const std::vector<std::size_t>& positions) {
    std::vector<std::size_t> idx;
    for (auto p : positions) idx.push_back(at(p));
    return idx;
  };
  const ExponentVector target = row_sum(a, indices_of(ipos));

  std::optional<std::vector<std::size_t>> jpos;
  auto comb = first_combination(s);
  do {
    std::vector<std::size_t> cand;
    for (auto k : comb) cand.push_back(pool[k]);
    if (cand != ipos && row_sum(a, indices_of(cand)) == target) {
      jpos = cand;
      break;
    }
  } while (next_combination(comb, pool.size()));
  if (!jpos) throw InconsistencyError("extract_cases: no matching s-subset for the reference set");

  auto kappaIt = std::find(jpos->begin(), jpos->end(), m - 1);
  if (kappaIt == jpos->end()) throw InconsistencyError("extract_cases: matching set misses chain position r-s-1");
  const std::size_t kappa = static_cast<std::size_t>(kappaIt - jpos->begin()) + 1;

  std::vector<std::size_t> run = positions_to_indices(c.order, m - 1, q - m);
  if (kappa < m - 1) {
    if (a.rows[at(m - 2)] != a.rows[at(m - 1)]) throw InconsistencyError("extract_cases: beta pair is not equal");
    out.caseTag = CaseTag::Beta;
    out.equalIndices = run;
    out.extraIndices = {at(m - 2), at(m - 1)};
    return out;
  }

  std::vector<std::size_t> extra{at(m - 1)};
  for (auto p : *jpos)
    if (p >= q - m + 2) extra.push_back(at(p));
  const std::size_t d = extra.size() - 1;
  const std::size_t k = d + 1;
  if (d < 1 || d > std::min(2 * s - r + 1, m - 1))
    throw InconsistencyError("extract_cases: gamma size d=" + std::to_string(d) + " outside its bound");
  if (row_sum(a, extra) != scaled(a.rows[run.front()], static_cast<std::int64_t>(k)))
    throw InconsistencyError("extract_cases: gamma product relation fails");
  out.caseTag = CaseTag::Gamma;
  out.equalIndices = run;
  out.extraIndices = extra;
  out.gammaK = k;
  return out;
}

RankBound rank_and_bound(const GroupTuple& a, std::size_t r, std::size_t s) {
  require_rs(a, r, s, "rank_and_bound");
  if (r > 2 * s) throw PreconditionError("rank_and_bound: need r <= 2s");
  const ExponentVector zero(a.t, 0);
  if (std::find(a.rows.begin(), a.rows.end(), zero) == a.rows.end()) throw PreconditionError("rank_and_bound: no unit element in the tuple");
  require_property(a, r, s, "rank_and_bound");
  RankBound out;
  out.rank = tuple_rank(a);
  out.withinBound = out.rank + 1 <= s;
  out.equalityForcesR2s = out.rank + 1 != s || r == 2 * s;
  return out;
}

namespace {

std::optional<MaxRankPattern> match_type_a(const std::vector<ExponentVector>& shifted, std::size_t s) {
  if (s % 2 == 0) return std::nullopt;
  const ExponentVector zero(shifted.front().size(), 0);
  std::vector<std::pair<ExponentVector, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == shifted[i]; });
    if (it == groups.end()) {
      groups.push_back({shifted[i], {i}});
    } else {
      it->second.push_back(i);
    }
  }
  if (groups.size() != s) return std::nullopt;
  for (const auto& g : groups)
    if (g.second.size() != 2) return std::nullopt;
  auto zg = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == zero; });
  if (zg == groups.end()) return std::nullopt;

  MaxRankPattern p;
  p.type = MaxRankType::A;
  p.order = zg->second;
  for (const auto& g : groups) {
    if (g.first == zero) continue;
    p.basis.push_back(g.first);
    p.order.insert(p.order.end(), g.second.begin(), g.second.end());
  }
  if (!independent(p.basis, zero.size())) return std::nullopt;
  return p;
}

std::optional<MaxRankPattern> match_type_b(const std::vector<ExponentVector>& shifted, std::size_t s) {
  const std::size_t t = shifted.front().size();
  const ExponentVector zero(t, 0);
  std::vector<std::size_t> zeros, nonzero;
  for (std::size_t i = 0; i < shifted.size(); ++i) (shifted[i] == zero ? zeros : nonzero).push_back(i);
  if (zeros.size() < 2 || zeros.size() > s + 1) return std::nullopt;
  const std::size_t k = s + 1 - zeros.size();
  if (nonzero.size() != s - 1 + k) return std::nullopt;

  auto pick = first_combination(s - 1);
  do {
    std::vector<std::size_t> basisIdx;
    std::vector<bool> used(nonzero.size(), false);
    for (auto j : pick) {
      basisIdx.push_back(nonzero[j]);
      used[j] = true;
    }
    std::vector<ExponentVector> basis;
    for (auto i : basisIdx) basis.push_back(shifted[i]);
    if (!independent(basis, t)) continue;

    // Coordinates of each leftover value in the chosen basis.
    QMatrix bt(t, s - 1);
    for (std::size_t j = 0; j < s - 1; ++j)
      for (std::size_t c = 0; c < t; ++c) bt(c, j) = Rational(static_cast<long>(basis[j][c]));
    const QMatrix btt = transpose(bt);
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> blocks;  // (tuple index, support)
    std::vector<bool> taken(s - 1, false);
    bool ok = true;
    for (std::size_t j = 0; j < nonzero.size() && ok; ++j) {
      if (used[j]) continue;
      // The basis is independent, so the normal equations are nonsingular;
      // the exact back-check rejects values outside the span.
      QVector rhs(t);
      for (std::size_t c = 0; c < t; ++c) rhs[c] = Rational(static_cast<long>(shifted[nonzero[j]][c]));
      QVector coords;
      try {
        coords = solve(btt * bt, btt * rhs);
      } catch (const SingularMatrixError&) {
        ok = false;
        break;
      }
      if (bt * coords != rhs) {
        ok = false;
        break;
      }
      std::vector<std::size_t> support;
      for (std::size_t b = 0; b < s - 1 && ok; ++b) {
        if (coords[b] == 0) continue;
        if (coords[b] != -1 || taken[b]) ok = false;
        support.push_back(b);
      }
      if (!ok || support.empty()) {
        ok = false;
        break;
      }
      for (auto b : support) taken[b] = true;
      blocks.push_back({nonzero[j], support});
    }
    if (!ok) continue;

    MaxRankPattern p;
    p.type = MaxRankType::B;
    p.order = zeros;
    std::vector<std::size_t> betaOrder;
    std::size_t end = 0;
    for (const auto& [idx, support] : blocks) {
      betaOrder.insert(betaOrder.end(), support.begin(), support.end());
      end += support.size();
      p.blockEnds.push_back(end);
    }
    for (std::size_t b = 0; b < s - 1; ++b)
      if (!taken[b]) betaOrder.push_back(b);
    for (auto b : betaOrder) {
      p.basis.push_back(basis[b]);
      p.order.push_back(basisIdx[b]);
    }
    for (const auto& blk : blocks) p.order.push_back(blk.first);
    return p;
  } while (next_combination(pick, nonzero.size()));
  return std::nullopt;
}

// Rebuilds the pattern's values and compares them with the shifted rows.
bool pattern_reproduces(const MaxRankPattern& p, const std::vector<ExponentVector>& shifted, std::size_t s) {
  const std::size_t t = shifted.front().size();
  std::vector<ExponentVector> expect;
  if (p.type == MaxRankType::A) {
    expect.assign(2, ExponentVector(t, 0));
    for (const auto& b : p.basis) {
      expect.push_back(b);
      expect.push_back(b);
    }
  } else {
    const std::size_t k = p.blockEnds.size();
    expect.assign(s + 1 - k, ExponentVector(t, 0));
    expect.insert(expect.end(), p.basis.begin(), p.basis.end());
    std::size_t start = 0;
    for (auto end : p.blockEnds) {
      ExponentVector v(t, 0);
      for (std::size_t b = start; b < end; ++b)
        for (std::size_t c = 0; c < t; ++c) v[c] -= p.basis[b][c];
      expect.push_back(v);
      start = end;
    }
  }
  if (expect.size() != p.order.size()) return false;
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (shifted[p.order[i]] != expect[i]) return false;
  return true;
}

}  // namespace

MaxRankPattern classify_max_rank(const GroupTuple& a, std::size_t s) {
  a.validate();
  if (s < 2 || a.size() != 2 * s) throw PreconditionError("classify_max_rank: need s >= 2 and q = 2s");
  const ExponentVector zero(a.t, 0);
  if (std::find(a.rows.begin(), a.rows.end(), zero) == a.rows.end())
    throw PreconditionError("classify_max_rank: no unit element in the tuple");
  require_property(a, 2 * s, s, "classify_max_rank");
  if (tuple_rank(a) + 1 != s) throw PreconditionError("classify_max_rank: rank is not s-1");

  std::vector<ExponentVector> shifts;
  for (const auto& row : a.rows)
    if (std::find(shifts.begin(), shifts.end(), row) == shifts.end()) shifts.push_back(row);

  for (const auto& shift : shifts) {
    std::vector<ExponentVector> shifted(a.rows);
    for (auto& row : shifted)
      for (std::size_t c = 0; c < a.t; ++c) row[c] -= shift[c];
    for (auto matcher : {match_type_a, match_type_b}) {
      auto p = matcher(shifted, s);
      if (!p) continue;
      p->shift = shift;
      if (!pattern_reproduces(*p, shifted, s)) throw InconsistencyError("classify_max_rank: pattern rebuild mismatch");
      return *p;
    }
  }
  throw NoPatternFound("classify_max_rank: no type A or type B pattern fits the tuple");
}

GroupTuple normalize_tuple(const GroupTuple& a, std::size_t pivot) {
  a.validate();
  if (pivot >= a.size()) throw PreconditionError("normalize_tuple: pivot out of range");
  GroupTuple out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t c = 0; c < a.t; ++c) out.rows[i][c] = a.rows[i][c] - a.rows[pivot][c];
    out.consts[i] = a.consts[i] / a.consts[pivot];
  }
  return out;
}

std::size_t tuple_rank(const GroupTuple& a) {
  if (a.size() == 0 || a.t == 0) return 0;
  return integer_row_rank(ZMatrix::from_rows(a.rows));
}

}  // namespace hshare
