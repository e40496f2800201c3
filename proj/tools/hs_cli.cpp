// Command-line front end: seeded verification suites, norm queries, Fourier
// extraction, derivation decomposition, K0 classes, and a combined report.
// Machine-readable JSON goes to stdout (or --output), human summaries to
// stderr.  Exit code 0 means every requested check passed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hs/analytic.hpp"
#include "hs/inequalities.hpp"
#include "hs/json_io.hpp"
#include "hs/relations.hpp"

namespace {

using hs::Json;

struct Options {
  int s = 2;
  unsigned long long seed = 1;
  int count = 100;
  int depth_d = 3;
  int depth_e = 2;
  int support = 4;
  int m_cut = 64;
  double tol = 1e-9;
  double big_s = 4.0;
  std::string scalar_mode = "exact";
  std::string input;
  std::string output;
  int flag_n = 0;
  int flag_big_n = 0;
  int flag_big_m = 0;
  int depth = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--s", opt.s, "base of the digit system")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "PRNG seed");
  cmd->add_option("--count", opt.count, "number of random instances")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.tol, "comparison tolerance");
  cmd->add_option("--m-cut", opt.m_cut, "level truncation for interval norms")->check(CLI::PositiveNumber);
  cmd->add_option("--depth-d", opt.depth_d, "max level depth of random symbols");
  cmd->add_option("--depth-e", opt.depth_e, "max residue depth of random symbols")->check(CLI::PositiveNumber);
  cmd->add_option("--support", opt.support, "max Fourier mode of random elements");
  cmd->add_option("--scalar-mode", opt.scalar_mode, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--S", opt.big_s, "constant in the quotient-aware norm");
  cmd->add_option("--output", opt.output, "write JSON here instead of stdout");
}

hs::RandomOptions random_options(const Options& opt) {
  hs::RandomOptions r;
  r.depth_d = opt.depth_d;
  r.depth_e = opt.depth_e;
  r.support = opt.support;
  return r;
}

Json read_json(const std::string& path) {
  if (path.empty()) throw std::runtime_error("missing --input file");
  if (path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return Json::parse(in);
}

void emit(const Json& j, const Options& opt) {
  const std::string text = hs::dump_stable(j);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.output);
    out << text;
  }
}

Json relations_to_json(const hs::RelationReport& rep, const std::string& mode) {
  Json results = Json::array();
  for (const auto& r : rep.results)
    results.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"failures", r.failures}});
  return Json{{"s", rep.s},      {"seed", rep.seed},          {"count", rep.count},
              {"mode", mode},    {"results", std::move(results)}, {"all_pass", rep.all_pass()}};
}

Json inequalities_to_json(const std::vector<hs::InequalityReport>& reports) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(Json{{"inequality", r.inequality},
                       {"instances", r.instances},
                       {"status", r.status},
                       {"worst_margin", r.worst_margin},
                       {"seed", r.seed}});
    all = all && r.status == "pass";
  }
  return Json{{"reports", std::move(arr)}, {"all_pass", all}};
}

int cmd_verify_relations(const Options& opt) {
  const hs::RandomOptions rand = random_options(opt);
  const hs::RelationReport rep =
      opt.scalar_mode == "float"
          ? hs::verify_relations<hs::Cx>(opt.s, opt.seed, opt.count, rand, nullptr)
          : hs::verify_relations<hs::GaussianRational>(opt.s, opt.seed, opt.count, rand, nullptr);
  emit(relations_to_json(rep, opt.scalar_mode), opt);
  std::cerr << "relations: s=" << opt.s << " count=" << opt.count << " "
            << (rep.all_pass() ? "all identities hold" : "FAILURES") << "\n";
  return rep.all_pass() ? 0 : 1;
}

hs::HarnessConfig harness_config(const Options& opt) {
  hs::HarnessConfig cfg;
  cfg.s = opt.s;
  cfg.seed = opt.seed;
  cfg.count = opt.count;
  cfg.rand = random_options(opt);
  cfg.m_cut = opt.m_cut;
  cfg.tol = opt.tol;
  cfg.defect_constant = hs::default_defect_constant();
  return cfg;
}

int cmd_inequalities(const Options& opt) {
  const auto reports = hs::verify_inequalities(harness_config(opt));
  const Json j = inequalities_to_json(reports);
  emit(j, opt);
  int passed = 0;
  for (const auto& r : reports) passed += r.status == "pass";
  std::cerr << "inequalities: " << passed << "/" << reports.size() << " families pass\n";
  return j.at("all_pass").get<bool>() ? 0 : 1;
}

int cmd_norm(const Options& opt) {
  const auto a = hs::element_from_json<hs::Cx>(read_json(opt.input));
  hs::NormOptions nopt;
  nopt.m_cut = opt.m_cut;
  const hs::NormValue nv = hs::mn_norm(a, opt.flag_big_m, opt.flag_big_n, nopt);
  const char* kind = nv.kind == hs::NormValue::Kind::Exact      ? "exact"
                     : nv.kind == hs::NormValue::Kind::Interval ? "interval"
                                                                : "infinite";
  Json j{{"M", opt.flag_big_m}, {"N", opt.flag_big_n}, {"kind", kind},
         {"lower", nv.lower},   {"upper", nv.upper}};
  if (nv.finite()) j["value"] = nv.value;
  emit(j, opt);
  std::cerr << "norm: kind=" << kind << " lower=" << nv.lower << " upper=" << nv.upper << "\n";
  return 0;
}

template <class S>
Json fourier_json(const Json& input, int mode) {
  const auto a = hs::element_from_json<S>(input);
  return Json{{"n", mode}, {"symbol", hs::to_json(hs::fourier_coefficient(a, mode))}};
}

int cmd_fourier(const Options& opt) {
  const Json input = read_json(opt.input);
  const Json j = opt.scalar_mode == "float" ? fourier_json<hs::Cx>(input, opt.flag_n)
                                            : fourier_json<hs::GaussianRational>(input, opt.flag_n);
  emit(j, opt);
  std::cerr << "fourier: extracted mode " << opt.flag_n << "\n";
  return 0;
}

template <class S>
std::pair<Json, double> decompose_json(const Json& input, double tol, int m_cut) {
  const auto d = hs::derivation_from_json<S>(input);
  hs::NormOptions nopt;
  nopt.m_cut = m_cut;
  const hs::Decomposition<S> dec = hs::decompose(d, tol, nopt);
  Json j = hs::to_json(dec);
  j["is_inner"] = hs::is_inner_certificate(dec);
  return {std::move(j), dec.residual.upper};
}

int cmd_decompose(const Options& opt) {
  const Json input = read_json(opt.input);
  const auto [j, residual] = opt.scalar_mode == "float"
                                 ? decompose_json<hs::Cx>(input, opt.tol, opt.m_cut)
                                 : decompose_json<hs::GaussianRational>(input, opt.tol, opt.m_cut);
  emit(j, opt);
  std::cerr << "decompose: residual " << residual << (residual <= opt.tol ? " (certified)" : " (EXCEEDS tol)")
            << "\n";
  return residual <= opt.tol ? 0 : 1;
}

int cmd_k0(const Options& opt) {
  const auto p = hs::element_from_json<hs::Cx>(read_json(opt.input));
  hs::NormOptions nopt;
  nopt.m_cut = opt.m_cut;
  const hs::K0Class cls = hs::k0_class(p, opt.tol, opt.depth, nopt);
  emit(hs::to_json(cls), opt);
  std::cerr << "k0: depth " << cls.e << ", " << cls.values.size() << " residue values\n";
  return 0;
}

int cmd_report(const Options& opt) {
  const hs::RandomOptions rand = random_options(opt);
  const hs::RelationReport rel = hs::verify_relations<hs::GaussianRational>(opt.s, opt.seed, opt.count, rand, nullptr);
  const auto ineq = hs::verify_inequalities(harness_config(opt));
  const hs::K0Class defect = hs::k0_class(hs::range_defect(opt.s), opt.tol);
  const hs::K0Class pairing = hs::index_pairing(opt.s, hs::TrigPoly<hs::Cx>::mode(1, hs::Cx(1.0, 0.0)), opt.tol);
  const Json jineq = inequalities_to_json(ineq);
  const bool all = rel.all_pass() && jineq.at("all_pass").get<bool>();
  Json j{{"relations", relations_to_json(rel, "exact")},
         {"inequalities", jineq},
         {"k0", Json{{"range_defect", hs::to_json(defect)}, {"winding_one_pairing", hs::to_json(pairing)}}},
         {"all_pass", all}};
  emit(j, opt);
  std::cerr << "report: " << (all ? "all checks pass" : "FAILURES PRESENT") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact model of the digit-shift crossed product with certified norm bounds"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* rel = app.add_subcommand("verify-relations", "check the defining operator identities on random data");
  add_common(rel, opt);

  CLI::App* ineq = app.add_subcommand("inequalities", "certify the norm-estimate suite on random data");
  add_common(ineq, opt);

  CLI::App* norm = app.add_subcommand("norm", "certified weighted norm of an element read from JSON");
  add_common(norm, opt);
  norm->add_option("--input", opt.input, "element JSON file (- for stdin)")->required();
  norm->add_option("--N", opt.flag_big_n, "weight exponent");
  norm->add_option("--M", opt.flag_big_m, "commutator order");

  CLI::App* fourier = app.add_subcommand("fourier", "extract a Fourier coefficient of an element");
  add_common(fourier, opt);
  fourier->add_option("--input", opt.input, "element JSON file (- for stdin)")->required();
  fourier->add_option("--n", opt.flag_n, "mode to extract");

  CLI::App* dec = app.add_subcommand("decompose", "split a derivation into boundary, Toeplitz, and inner parts");
  add_common(dec, opt);
  dec->add_option("--input", opt.input, "derivation JSON file (- for stdin)")->required();

  CLI::App* k0 = app.add_subcommand("k0", "class of a projection in the ideal");
  add_common(k0, opt);
  k0->add_option("--input", opt.input, "element JSON file (- for stdin)")->required();
  k0->add_option("--depth", opt.depth, "residue depth of the reported class (0 = natural)");

  CLI::App* rep = app.add_subcommand("report", "combined verification report");
  add_common(rep, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rel->parsed()) return cmd_verify_relations(opt);
    if (ineq->parsed()) return cmd_inequalities(opt);
    if (norm->parsed()) return cmd_norm(opt);
    if (fourier->parsed()) return cmd_fourier(opt);
    if (dec->parsed()) return cmd_decompose(opt);
    if (k0->parsed()) return cmd_k0(opt);
    if (rep->parsed()) return cmd_report(opt);
  } catch (const Json::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
