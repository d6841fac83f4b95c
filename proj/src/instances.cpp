#include "hshare/instances.hpp"

#include <set>

#include "hshare/errors.hpp"

namespace hshare {

SharedInstance gen_remark13(const MapModel& g, const HyperplaneFamily& Hp, const QMatrix& L) {
  if (!L.square() || L.rows() != g.dim() + 1) throw DimensionError("gen_remark13: L must be (N+1)x(N+1)");
  if (Hp.dim != g.dim()) throw DimensionError("gen_remark13: Hp and g have different dimensions");
  if (determinant(L) == 0) throw SingularMatrixError("gen_remark13: L is singular");
  auto gp = general_position_check(Hp);
  if (!gp.inGeneralPosition) throw PreconditionError("gen_remark13: Hp is not in general position", gp.witness);
  SharedInstance out;
  out.g = g;
  out.Hp = Hp;
  out.f = apply_transform(L, g);
  out.H.dim = Hp.dim;
  for (const auto& h : Hp.members) out.H.members.push_back(transform_hyperplane(L, h));
  return out;
}

SharedInstance gen_identity_pair(const MapModel& g, const HyperplaneFamily& Hp) {
  return gen_remark13(g, Hp, QMatrix::identity(g.dim() + 1));
}

SharedInstance gen_example61(std::size_t N, const std::vector<Rational>& a) {
  if (N < 2) throw PreconditionError("gen_example61: need N >= 2");
  if (a.size() != N) throw DimensionError("gen_example61: need N values a_j");
  std::set<Rational> seen;
  for (const auto& v : a) {
    if (v == 0) throw PreconditionError("gen_example61: a-values must be nonzero");
    if (!seen.insert(v).second) throw PreconditionError("gen_example61: a-values must be distinct");
  }
  const std::size_t t = N;
  ExpSum f0 = ExpSum::constant(t, 1), f1 = ExpSum::constant(t, 1);
  for (std::size_t i = 0; i < N; ++i) {
    f0 += ExpSum::unit(t, i);
    f1 += ExpSum::unit(t, i, 1, a[i]);
  }
  std::vector<ExpSum> g{-f0};
  for (std::size_t j = 0; j < N; ++j) g.push_back(ExpSum::unit(t, j) * (f1 - a[j] * f0));

  SharedInstance out;
  out.f = MapModel({f0, f1});
  out.g = MapModel(g);
  out.H.dim = 1;
  for (std::size_t j = 0; j < N; ++j) out.H.members.push_back(Hyperplane({-a[j], Rational(1)}));
  out.H.members.push_back(Hyperplane({Rational(1), Rational(0)}));
  out.H.members.push_back(Hyperplane({Rational(0), Rational(1)}));
  out.Hp.dim = N;
  for (std::size_t j = 1; j <= N; ++j) {
    QVector e(N + 1, Rational(0));
    e[j] = 1;
    out.Hp.members.push_back(Hyperplane(e));
  }
  QVector e0(N + 1, Rational(0));
  e0[0] = 1;
  out.Hp.members.push_back(Hyperplane(e0));
  out.Hp.members.push_back(Hyperplane(QVector(N + 1, Rational(1))));
  return out;
}

std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

HyperplaneFamily random_general_position_family(Rng& rng, std::size_t dim, std::size_t q) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    HyperplaneFamily fam;
    fam.dim = dim;
    while (fam.size() < q) {
      QVector v(dim + 1);
      for (auto& x : v) x = random_int(rng, -4, 4);
      if (!is_zero(v)) fam.members.push_back(Hyperplane(v));
    }
    if (general_position_check(fam).inGeneralPosition) return fam;
  }
  throw Error("random_general_position_family: no family found");
}

QMatrix random_invertible(Rng& rng, std::size_t size) {
  for (;;) {
    QMatrix m(size, size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) {
        m(r, c) = Rational(random_int(rng, -3, 3), random_int(rng, 1, 2));
        m(r, c).canonicalize();
      }
    if (determinant(m) != 0) return m;
  }
}

MapModel random_nondegenerate_map(Rng& rng, std::size_t dim, std::size_t units, std::size_t maxTerms) {
  for (;;) {
    std::vector<ExpSum> comps;
    for (std::size_t k = 0; k <= dim; ++k) {
      ExpSum c(units);
      const auto terms = static_cast<std::size_t>(random_int(rng, 1, static_cast<std::int64_t>(maxTerms)));
      for (std::size_t i = 0; i < terms; ++i) {
        ExponentVector e(units);
        for (auto& x : e) x = random_int(rng, -1, 2);
        auto coeff = random_int(rng, -3, 3);
        if (coeff != 0) c.add_term(e, Rational(coeff));
      }
      comps.push_back(c);
    }
    bool anyZero = false;
    for (const auto& c : comps) anyZero = anyZero || c.is_zero();
    if (anyZero) continue;
    MapModel m(comps);
    if (linear_nondegeneracy(m).nondegenerate) return m;
  }
}

SharedInstance random_remark13(Rng& rng, std::size_t n, std::size_t q, std::size_t units) {
  MapModel g = random_nondegenerate_map(rng, n, units);
  HyperplaneFamily Hp = random_general_position_family(rng, n, q);
  return gen_remark13(g, Hp, random_invertible(rng, n + 1));
}

Json instance_to_json(const SharedInstance& inst) {
  return {{"schemaVersion", 1}, {"f", to_json(inst.f)}, {"g", to_json(inst.g)}, {"H", to_json(inst.H)},
          {"Hp", to_json(inst.Hp)}};
}

std::string serialize_instance(const SharedInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

SharedInstance parse_instance(const std::string& text) {
  Json j = parse_json_text(text);
  require_fields(j, "", {"schemaVersion", "f", "g", "H", "Hp"});
  if (!j["schemaVersion"].is_number_integer() || j["schemaVersion"].get<int>() != 1)
    throw ParseError("schemaVersion: only version 1 is supported");
  SharedInstance inst;
  inst.f = map_from_json(j["f"], "f");
  inst.g = map_from_json(j["g"], "g");
  inst.H = family_from_json(j["H"], "H");
  inst.Hp = family_from_json(j["Hp"], "Hp");
  return inst;
}

}  // namespace hshare
