#include "hshare/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "hshare/errors.hpp"
#include "hshare/instances.hpp"

namespace hshare::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int outcome_code(Outcome o) { return o == Outcome::Recovered ? Ok : HypothesisFailure; }

struct Options {
  std::string file;
  std::string output;
  bool json = false;
  std::string theorem = "A";
  std::optional<std::size_t> dmax;
  std::size_t r = 0, s = 0;
  std::string map = "g";
  std::string kind;
  std::size_t N = 2, n = 1, units = 2;
  std::optional<std::size_t> q;
  std::string a = "2,3";
  std::uint64_t seed = 1;
};

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

struct Result {
  int code = Ok;
  Json json;
  std::string text;
};

Result do_verify(const Options& o) {
  InstanceReport rep = verify_instance(parse_instance(read_file(o.file)));
  std::ostringstream os;
  if (rep.ok()) os << "ok: all instance checks pass\n";
  for (const auto& f : rep.failures) {
    os << "FAIL " << f.check << ": " << f.detail;
    if (!f.witness.empty()) {
      os << " (indices";
      for (auto i : f.witness) os << " " << i;
      os << ")";
    }
    os << "\n";
  }
  return {rep.ok() ? Ok : HypothesisFailure, to_json(rep), os.str()};
}

Result do_analyze(const Options& o) {
  SharedInstance inst = parse_instance(read_file(o.file));
  GroupTuple h = compute_h_tuple(inst);
  const std::size_t t = tuple_rank(h);
  Json j{{"n", inst.n()}, {"N", inst.N()}, {"q", inst.q()}, {"t", t}, {"tuple", to_json(h)}};
  std::ostringstream os;
  os << "n = " << inst.n() << ", N = " << inst.N() << ", q = " << inst.q() << ", t = " << t << "\n";
  for (std::size_t i = 0; i < h.size(); ++i) {
    UnitMonomial u{h.consts[i], h.rows[i]};
    os << "  h[" << i << "] = " << to_string(u) << "\n";
  }
  if (inst.q() >= inst.N() + inst.n() + 2) {
    PropertyWitness w = derive_property(inst);
    j["property"] = to_json(w);
    os << "(P_{" << inst.N() + inst.n() + 2 << "," << inst.N() + 1 << "}) " << (w.holds ? "holds" : "fails") << "\n";
    if (!w.holds) return {Inconsistency, j, os.str()};
  } else {
    os << "q < N+n+2: no property is derived\n";
  }
  return {Ok, j, os.str()};
}

Result report_result(const DiagnosisReport& rep) {
  return {outcome_code(rep.outcome), to_json(rep), render_text(rep)};
}

Result do_recover(const Options& o) {
  SharedInstance inst = parse_instance(read_file(o.file));
  if (o.theorem == "A") return report_result(pipeline_theorem_A(inst));
  return report_result(pipeline_theorem_B(inst, o.dmax));
}

Result do_decide(const Options& o) {
  return report_result(equal_dimension_decision(parse_instance(read_file(o.file)), o.dmax.value_or(3)));
}

Result do_tuple(const Options& o) {
  GroupTuple a = tuple_from_json(parse_json_text(read_file(o.file)), "");
  PropertyWitness w = property_check(a, o.r, o.s);
  Json j{{"r", o.r}, {"s", o.s}, {"rank", tuple_rank(a)}, {"property", to_json(w)}};
  std::ostringstream os;
  os << "(P_{" << o.r << "," << o.s << "}) " << (w.holds ? "holds" : "fails") << "\n";
  if (!w.holds) {
    os << "  r-subset:";
    for (auto i : w.counterexample->rSubset) os << " " << i;
    os << "\n  unmatched s-subset:";
    for (auto i : w.counterexample->sSubset) os << " " << i;
    os << "\n";
    return {HypothesisFailure, j, os.str()};
  }
  EqualRuns runs = extract_equal_run(a, o.r, o.s);
  j["runs"] = runs.runs;
  for (const auto& run : runs.runs) {
    os << "  equal run:";
    for (auto i : run) os << " " << i;
    os << "\n";
  }
  const std::size_t m = o.r - o.s;
  if (m >= 2 && m <= o.s && a.size() + 1 >= 2 * o.s) {
    LemmaExtraction ext = extract_cases(a, o.r, o.s);
    const char* tags[] = {"alpha", "beta", "gamma"};
    Json ej{{"case", tags[static_cast<int>(ext.caseTag)]}, {"equal", ext.equalIndices}, {"extra", ext.extraIndices}};
    if (ext.gammaK) ej["k"] = *ext.gammaK;
    j["cases"] = ej;
    os << "  case " << tags[static_cast<int>(ext.caseTag)] << "\n";
  }
  bool hasZero = false;
  for (const auto& row : a.rows)
    hasZero = hasZero || std::all_of(row.begin(), row.end(), [](std::int64_t x) { return x == 0; });
  if (hasZero && o.r <= 2 * o.s) {
    RankBound rb = rank_and_bound(a, o.r, o.s);
    j["rankBound"] = {{"rank", rb.rank}, {"withinBound", rb.withinBound}, {"equalityForcesR2s", rb.equalityForcesR2s}};
    os << "  rank " << rb.rank << " <= s-1: " << (rb.withinBound ? "yes" : "no") << "\n";
    if (!rb.ok()) return {Inconsistency, j, os.str()};
  }
  return {Ok, j, os.str()};
}

Result do_bound(const Options& o) {
  DimensionBound b = dimension_bound(parse_instance(read_file(o.file)));
  std::ostringstream os;
  os << "t = " << b.t << ", bound = " << b.bound << "\n";
  for (auto [s, holds] : b.scanned) os << "  s = " << s << ": " << (holds ? "holds" : "fails") << "\n";
  return {Ok, to_json(b), os.str()};
}

Result do_nondeg(const Options& o) {
  SharedInstance inst = parse_instance(read_file(o.file));
  const MapModel& m = o.map == "f" ? inst.f : inst.g;
  const std::size_t dmax = o.dmax.value_or(3);
  LinearNondegeneracy lin = linear_nondegeneracy(m);
  AlgebraicNondegeneracy alg = algebraic_nondegeneracy_up_to(m, dmax);
  Json j{{"map", o.map}, {"linear", lin.nondegenerate}, {"dmax", dmax}, {"algebraic", alg.nondegenerate},
         {"checkedDegree", alg.checkedDegree}};
  std::ostringstream os;
  os << "linear: " << (lin.nondegenerate ? "non-degenerate" : "degenerate, lies in " + to_string(lin.witness)) << "\n";
  if (alg.nondegenerate) {
    os << "algebraic: no relation up to degree " << dmax << "\n";
  } else {
    j["witness"] = to_json(*alg.witness);
    os << "algebraic: " << alg.witness->to_string() << " = 0 at degree " << alg.checkedDegree << "\n";
  }
  return {alg.nondegenerate ? Ok : HypothesisFailure, j, os.str()};
}

Result do_gen(const Options& o) {
  SharedInstance inst;
  if (o.kind == "example61") {
    inst = gen_example61(o.N, parse_list(o.a));
  } else {
    Rng rng(o.seed);
    const std::size_t q = o.q.value_or(3 * o.n + 2);
    MapModel g = random_nondegenerate_map(rng, o.n, o.units);
    HyperplaneFamily Hp = random_general_position_family(rng, o.n, q);
    inst = o.kind == "identity" ? gen_identity_pair(g, Hp) : gen_remark13(g, Hp, random_invertible(rng, o.n + 1));
  }
  Json j = instance_to_json(inst);
  return {Ok, j, j.dump(2) + "\n"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniqueness engine for maps sharing hyperplane preimages", "hshare"};
  app.require_subcommand(1);
  Options o;
  std::function<Result(const Options&)> action;

  auto common = [&](CLI::App* sub, bool needsFile = true) {
    if (needsFile) sub->add_option("file", o.file, "input JSON file")->required();
    sub->add_flag("--json", o.json, "emit the JSON report");
    sub->add_option("-o,--output", o.output, "write to this file instead of standard output");
  };

  auto* verify = app.add_subcommand("verify", "check general position and divisor sharing");
  common(verify);
  verify->callback([&] { action = do_verify; });

  auto* analyze = app.add_subcommand("analyze", "h-tuple, its rank and the derived property");
  common(analyze);
  analyze->callback([&] { action = do_analyze; });

  auto* recover = app.add_subcommand("recover", "run a uniqueness pipeline and recover L");
  common(recover);
  recover->add_option("--theorem", o.theorem, "A or B")->check(CLI::IsMember({"A", "B"}));
  recover->add_option("--dmax", o.dmax, "degree for the non-degeneracy check");
  recover->callback([&] { action = do_recover; });

  auto* tuple = app.add_subcommand("tuple", "property check and extraction on a raw tuple");
  common(tuple);
  tuple->add_option("--r", o.r)->required()->check(CLI::PositiveNumber);
  tuple->add_option("--s", o.s)->required()->check(CLI::PositiveNumber);
  tuple->callback([&] { action = do_tuple; });

  auto* bound = app.add_subcommand("bound", "upper bound for max{t, dim V}");
  common(bound);
  bound->callback([&] { action = do_bound; });

  auto* nondeg = app.add_subcommand("nondeg", "linear and algebraic non-degeneracy up to --dmax");
  common(nondeg);
  nondeg->add_option("--dmax", o.dmax);
  nondeg->add_option("--map", o.map)->check(CLI::IsMember({"f", "g"}));
  nondeg->callback([&] { action = do_nondeg; });

  auto* decide = app.add_subcommand("decide", "decide N = n for algebraically non-degenerate g");
  common(decide);
  decide->add_option("--dmax", o.dmax);
  decide->callback([&] { action = do_decide; });

  auto* gen = app.add_subcommand("gen", "write a generated instance");
  common(gen, false);
  gen->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"remark13", "example61", "identity"}));
  gen->add_option("--N", o.N, "target dimension for example61");
  gen->add_option("--a", o.a, "comma-separated values a_j for example61");
  gen->add_option("--n", o.n, "dimension for remark13 and identity");
  gen->add_option("--q", o.q, "number of hyperplanes (default 3n+2)");
  gen->add_option("--units", o.units, "number of formal units");
  gen->add_option("--seed", o.seed);
  gen->callback([&] { action = do_gen; });

  std::vector<std::string> argvStore{"hshare"};
  argvStore.insert(argvStore.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argvStore) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    Result res = action(o);
    std::string body = o.json ? res.json.dump(2) + "\n" : res.text;
    if (!o.output.empty()) {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << o.output << "\n";
        return Usage;
      }
      f << body;
    } else {
      out << body;
    }
    return res.code;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return Usage;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return Inconsistency;
  } catch (const Error& e) {
    err << "hypothesis failure: " << e.what() << "\n";
    return HypothesisFailure;
  }
}

}  // namespace hshare::cli
