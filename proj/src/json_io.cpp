#include "hshare/json_io.hpp"

#include <algorithm>

#include "hshare/errors.hpp"

namespace hshare {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

std::int64_t int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

std::size_t count_from_json(const Json& j, const std::string& path) {
  std::int64_t v = int_from_json(j, path);
  if (v < 0) throw ParseError(path + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

void require_fields(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional) {
  const std::string where = path.empty() ? "document" : path;
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto known = [&](const char* k) { return it.key() == k; };
    if (std::none_of(required.begin(), required.end(), known) && std::none_of(optional.begin(), optional.end(), known))
      throw ParseError(where + ": unknown field \"" + it.key() + "\"");
  }
  for (const char* k : required)
    if (!j.contains(k)) throw ParseError(where + ": missing field \"" + std::string(k) + "\"");
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Json to_json(const ExponentVector& e) {
  Json out = Json::array();
  for (auto x : e) out.push_back(x);
  return out;
}

Json to_json(const ExpSum& s) {
  Json out = Json::array();
  for (const auto& [e, c] : s.terms()) out.push_back({{"coeff", to_json(c)}, {"expo", to_json(e)}});
  return out;
}

Json to_json(const Hyperplane& h) { return {{"dim", h.dim()}, {"coeffs", to_json(h.coeffs())}}; }

Json to_json(const HyperplaneFamily& f) {
  Json members = Json::array();
  for (const auto& h : f.members) members.push_back(to_json(h));
  return {{"dim", f.dim}, {"members", members}};
}

Json to_json(const MapModel& m) {
  Json comps = Json::array();
  for (const auto& c : m.components()) comps.push_back(to_json(c));
  return {{"dim", m.dim()}, {"units", m.unit_count()}, {"components", comps}};
}

Json to_json(const GroupTuple& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  return {{"t", t.t}, {"rows", rows}, {"consts", to_json(t.consts)}};
}

Json to_json(const PropertyWitness& w) {
  Json out{{"holds", w.holds}};
  if (w.counterexample)
    out["counterexample"] = {{"rSubset", w.counterexample->rSubset}, {"sSubset", w.counterexample->sSubset}};
  return out;
}

Json to_json(const HomogeneousPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [expo, c] : p.terms) terms.push_back({{"coeff", to_json(c)}, {"expo", expo}});
  return {{"degree", p.degree}, {"variables", p.variables}, {"terms", terms}, {"text", p.to_string()}};
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw ParseError(path + ": expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ExpSum expsum_from_json(const Json& j, std::size_t units, const std::string& path) {
  ExpSum out(units);
  const Json& terms = array_at(j, path);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = at(path, i);
    require_fields(terms[i], p, {"coeff", "expo"});
    const Json& ej = array_at(terms[i]["expo"], at(p, "expo"));
    if (ej.size() != units) throw ParseError(at(p, "expo") + ": expected " + std::to_string(units) + " exponents");
    ExponentVector e;
    for (std::size_t k = 0; k < ej.size(); ++k) e.push_back(int_from_json(ej[k], at(at(p, "expo"), k)));
    Rational c = rational_from_json(terms[i]["coeff"], at(p, "coeff"));
    if (c == 0) throw ParseError(at(p, "coeff") + ": zero coefficients are not stored");
    if (out.terms().count(e)) throw ParseError(at(p, "expo") + ": repeated exponent");
    out.add_term(e, c);
  }
  return out;
}

Hyperplane hyperplane_from_json(const Json& j, const std::string& path) {
  require_fields(j, path, {"dim", "coeffs"});
  const std::size_t dim = count_from_json(j["dim"], at(path, "dim"));
  const Json& cj = array_at(j["coeffs"], at(path, "coeffs"));
  if (cj.size() != dim + 1) throw ParseError(at(path, "coeffs") + ": expected dim+1 coefficients");
  QVector c;
  for (std::size_t k = 0; k < cj.size(); ++k) c.push_back(rational_from_json(cj[k], at(at(path, "coeffs"), k)));
  if (is_zero(c)) throw ParseError(at(path, "coeffs") + ": all coefficients are zero");
  return Hyperplane(c);
}

HyperplaneFamily family_from_json(const Json& j, const std::string& path) {
  require_fields(j, path, {"dim", "members"});
  HyperplaneFamily f;
  f.dim = count_from_json(j["dim"], at(path, "dim"));
  const Json& mj = array_at(j["members"], at(path, "members"));
  for (std::size_t i = 0; i < mj.size(); ++i) {
    Hyperplane h = hyperplane_from_json(mj[i], at(at(path, "members"), i));
    if (h.dim() != f.dim) throw ParseError(at(at(path, "members"), i) + ": dimension differs from the family");
    f.members.push_back(h);
  }
  return f;
}

MapModel map_from_json(const Json& j, const std::string& path) {
  require_fields(j, path, {"dim", "units", "components"});
  const std::size_t dim = count_from_json(j["dim"], at(path, "dim"));
  const std::size_t units = count_from_json(j["units"], at(path, "units"));
  const Json& cj = array_at(j["components"], at(path, "components"));
  if (cj.size() != dim + 1) throw ParseError(at(path, "components") + ": expected dim+1 components");
  std::vector<ExpSum> comps;
  for (std::size_t k = 0; k < cj.size(); ++k) comps.push_back(expsum_from_json(cj[k], units, at(at(path, "components"), k)));
  try {
    return MapModel(comps);
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GroupTuple tuple_from_json(const Json& j, const std::string& path) {
  require_fields(j, path, {"t", "rows"}, {"consts"});
  GroupTuple g;
  g.t = count_from_json(j["t"], at(path, "t"));
  const Json& rj = array_at(j["rows"], at(path, "rows"));
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const std::string p = at(at(path, "rows"), i);
    const Json& row = array_at(rj[i], p);
    if (row.size() != g.t) throw ParseError(p + ": expected " + std::to_string(g.t) + " entries");
    ExponentVector e;
    for (std::size_t k = 0; k < row.size(); ++k) e.push_back(int_from_json(row[k], at(p, k)));
    g.rows.push_back(e);
  }
  if (j.contains("consts")) {
    const Json& cj = array_at(j["consts"], at(path, "consts"));
    if (cj.size() != g.rows.size()) throw ParseError(at(path, "consts") + ": expected one constant per row");
    for (std::size_t i = 0; i < cj.size(); ++i) {
      Rational c = rational_from_json(cj[i], at(at(path, "consts"), i));
      if (c == 0) throw ParseError(at(at(path, "consts"), i) + ": constants must be nonzero");
      g.consts.push_back(c);
    }
  } else {
    g.consts.assign(g.rows.size(), Rational(1));
  }
  return g;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace hshare
