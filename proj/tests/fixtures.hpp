#pragma once

// Hand-built instances shared by the engine, CLI and acceptance tests.

#include <utility>
#include <vector>

#include "hshare/instances.hpp"

namespace fixture {

using namespace hshare;

inline HyperplaneFamily family(std::size_t dim, std::vector<QVector> rows) {
  HyperplaneFamily f{dim, {}};
  for (auto& r : rows) f.members.emplace_back(std::move(r));
  return f;
}

// g = (1, eta_1) into P^1.
inline MapModel line_map() { return MapModel({ExpSum::constant(1, 1), ExpSum::unit(1, 0)}); }

// g = (1, eta_1, ..., eta_n).
inline MapModel coordinate_map(std::size_t n) {
  std::vector<ExpSum> c{ExpSum::constant(n, 1)};
  for (std::size_t i = 0; i < n; ++i) c.push_back(ExpSum::unit(n, i));
  return MapModel(c);
}

inline QMatrix shear() { return QMatrix::from_rows({{1, 1}, {0, 1}}); }

// L0 = shear; H_1 = L0(Hp_1), H_2 = L0(Hp_2), H_3 = L0(Hp_4), H_4 = L0(Hp_3).
inline SharedInstance swap_instance() {
  HyperplaneFamily Hp = family(1, {{1, -1}, {1, -2}, {0, 1}, {1, 0}});
  SharedInstance inst = gen_remark13(line_map(), Hp, shear());
  std::swap(inst.H.members[2], inst.H.members[3]);
  return inst;
}

// N = 2 > n = 1 with every quotient equal to 1; g lies in the hyperplane Y1 = Y2.
inline SharedInstance mismatch_instance() {
  SharedInstance inst;
  inst.f = line_map();
  inst.g = MapModel({ExpSum::constant(1, 1), ExpSum::unit(1, 0), ExpSum::unit(1, 0)});
  inst.H = family(1, {{1, 0}, {0, 1}, {1, -1}, {1, -2}, {1, 1}});
  inst.Hp = family(2, {{1, -3, 3}, {0, -3, 4}, {1, -3, 2}, {1, -2, 0}, {1, -2, 3}});
  return inst;
}

inline HyperplaneFamily five_points() { return family(1, {{1, 0}, {0, 1}, {1, -1}, {1, 2}, {2, 3}}); }

}  // namespace fixture
