// Command-line surface: every subcommand reads a measure (JSON file or inline
// text), runs one library entry point, and writes CSV or JSON. Exit codes:
// 0 success / statement confirmed, 2 signals contradict the statement,
// 1 usage or numeric error.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hilop/carleson.hpp"
#include "hilop/errors.hpp"
#include "hilop/gamma_ratio.hpp"
#include "hilop/harness.hpp"
#include "hilop/hilbert_op.hpp"
#include "hilop/measure.hpp"
#include "hilop/measure_json.hpp"
#include "hilop/norms.hpp"
#include "hilop/series.hpp"

using namespace hilop;
using cplx = std::complex<double>;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_error("cannot open output file: " + path);
  out << text;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error(std::string(what) + " not readable: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MeasureSpec load_measure(const std::string& file, const std::string& inline_json) {
  if (file.empty() == inline_json.empty())
    throw domain_error("provide exactly one of --measure FILE or --measure-json TEXT");
  if (!inline_json.empty()) return measure_from_string(inline_json);
  return measure_from_string(read_file(file, "measure file"));
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw domain_error(what + ": bad number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Coefficients as a JSON array of [re, im] pairs (bare numbers are accepted as
// real coefficients); an object is unwrapped through its "coefficients" key so
// the apply subcommand's JSON output can be fed straight back in.
CoefficientSeries series_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw domain_error("series JSON: parse failure");
  if (j.is_object() && j.contains("coefficients")) j = j["coefficients"];
  if (!j.is_array()) throw domain_error("series JSON: expected an array of [re, im] pairs");
  CoefficientSeries f;
  for (const auto& e : j) {
    if (e.is_number()) {
      f.coeff.emplace_back(e.get<double>(), 0.0);
      continue;
    }
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw domain_error("series JSON: entries must be [re, im] pairs");
    f.coeff.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  if (f.coeff.empty()) throw domain_error("series JSON: no coefficients");
  return f;
}

struct FunctionInput {
  CoefficientSeries series;
  PointEvaluator eval;  // exact (families, polynomials) or caller-certified (series files)
};

constexpr const char* kFunctionGrammar =
    "one | power:L,B | log:A | logsq:A | peak:A | poly:c0,c1,... | series:FILE";

FunctionInput parse_function(const std::string& desc, std::size_t n_terms) {
  const std::size_t colon = desc.find(':');
  const std::string head = desc.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : desc.substr(colon + 1);

  auto family_input = [&](Family fam, double parameter, double order) {
    TestFamilyMember m = make_family(fam, parameter, order, n_terms);
    FunctionInput in;
    in.series = m.series;
    in.eval = [m](cplx z) { return m.closed_form(z); };
    return in;
  };
  auto one_param = [&](Family fam) {
    const auto a = parse_numbers(rest, "function descriptor " + head);
    if (a.size() != 1)
      throw domain_error("function descriptor " + head + ": expected one parameter");
    return family_input(fam, a[0], 0.0);
  };

  if (desc == "one") return family_input(Family::constant_one, 0.0, 0.0);
  if (head == "log") return one_param(Family::log_e);
  if (head == "logsq") return one_param(Family::log_sq);
  if (head == "peak") return one_param(Family::bergman_peak);
  if (head == "power") {
    const auto a = parse_numbers(rest, "function descriptor power");
    if (a.size() != 2)
      throw domain_error("function descriptor power: expected two parameters L,B");
    return family_input(Family::power_beta, a[0], a[1]);
  }
  if (head == "poly") {
    FunctionInput in;
    for (double x : parse_numbers(rest, "function descriptor poly"))
      in.series.coeff.emplace_back(x, 0.0);
    const CoefficientSeries s = in.series;
    in.eval = [s](cplx z) { return evaluate_unchecked(s, z); };
    return in;
  }
  if (head == "series") {
    FunctionInput in;
    in.series = series_from_json_text(read_file(rest, "series file"));
    const CoefficientSeries s = in.series;
    in.eval = [s](cplx z) { return evaluate_unchecked(s, z); };
    return in;
  }
  throw domain_error("unknown function descriptor '" + desc + "' (expected " +
                     kFunctionGrammar + ")");
}

nlohmann::json complex_json(cplx z) { return {z.real(), z.imag()}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Hilbert operator laboratory for measures on [0,1)"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string measure_file, measure_json, out_path, format = "json";
  std::string f_desc = "one", g_desc = "one";
  double alpha = 0.0, beta = 0.5, gamma = 0.0;
  std::size_t truncation = kDefaultTruncation;

  // entries: the (N+1) x (K+1) matrix block of c_n(alpha) * moment(n+k)
  auto* entries = app.add_subcommand("entries", "print a block of operator matrix entries");
  std::size_t ent_n = 5, ent_k = 5;
  entries->add_option("--measure", measure_file, "measure spec JSON file");
  entries->add_option("--measure-json", measure_json, "inline measure spec JSON");
  entries->add_option("--alpha", alpha, "operator order")->required();
  entries->add_option("--n", ent_n, "max row index (default 5)");
  entries->add_option("--k", ent_k, "max column index (default 5)");
  entries->add_option("--format", format, "csv | json (default csv here)")->check(CLI::IsMember({"csv", "json"}));
  entries->add_option("--out", out_path, "output file (default stdout)");
  entries->callback([&] {
    if (!entries->count("--format")) format = "csv";
    HankelOperator op(load_measure(measure_file, measure_json), alpha);
    op.ensure(ent_n, ent_k);
    std::ostringstream text;
    if (format == "csv") {
      for (std::size_t n = 0; n <= ent_n; ++n) {
        for (std::size_t k = 0; k <= ent_k; ++k)
          text << (k ? "," : "") << fmt17(op.entry(n, k));
        text << "\n";
      }
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t n = 0; n <= ent_n; ++n) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k <= ent_k; ++k) row.push_back(op.entry(n, k));
        rows.push_back(row);
      }
      text << nlohmann::json{{"alpha", alpha}, {"n", ent_n}, {"k", ent_k}, {"entries", rows}}
                  .dump(2)
           << "\n";
    }
    write_output(out_path, text.str());
  });

  // apply: image coefficients of H acting on a described input
  auto* apply = app.add_subcommand("apply", "apply the operator to a function");
  std::size_t ap_n_out = 64, ap_k_in = 0;
  double ap_tol = 1e-10;
  bool ap_serial = false;
  apply->add_option("--measure", measure_file, "measure spec JSON file");
  apply->add_option("--measure-json", measure_json, "inline measure spec JSON");
  apply->add_option("--alpha", alpha, "operator order")->required();
  apply->add_option("--f", f_desc, std::string("input function: ") + kFunctionGrammar);
  apply->add_option("--n-out", ap_n_out, "output coefficients to keep (default 64)");
  apply->add_option("--k-in", ap_k_in, "pin the input truncation (default automatic)");
  apply->add_option("--tolerance", ap_tol, "input truncation residual gate (default 1e-10)");
  apply->add_option("--truncation", truncation, "stored input coefficients (default 4096)");
  apply->add_flag("--serial", ap_serial, "use the serial kernel");
  apply->add_option("--format", format, "json | csv (default json)")->check(CLI::IsMember({"csv", "json"}));
  apply->add_option("--out", out_path, "output file (default stdout)");
  apply->callback([&] {
    HankelOperator op(load_measure(measure_file, measure_json), alpha);
    const FunctionInput f = parse_function(f_desc, truncation);
    HankelOperator::ApplyOptions opt;
    opt.n_out = ap_n_out;
    opt.k_in = ap_k_in;
    opt.tolerance = ap_tol;
    opt.serial = ap_serial;
    const OperatorApplication res = op.apply(f.series, opt);
    std::ostringstream text;
    if (format == "csv") {
      text << "n,re,im\n";
      for (std::size_t n = 0; n < res.output.coeff.size(); ++n)
        text << n << "," << fmt17(res.output.coeff[n].real()) << ","
             << fmt17(res.output.coeff[n].imag()) << "\n";
    } else {
      nlohmann::json coeffs = nlohmann::json::array();
      for (const auto& c : res.output.coeff) coeffs.push_back(complex_json(c));
      text << nlohmann::json{{"n_out", res.n_out},
                             {"k_in", res.k_in},
                             {"residual_bound", res.residual_bound},
                             {"coefficients", coeffs}}
                  .dump(2)
           << "\n";
    }
    write_output(out_path, text.str());
  });

  // integral: pointwise comparison of the matrix route against the kernel route
  auto* integral = app.add_subcommand("integral",
                                      "compare series and integral operator values on a grid");
  std::size_t ig_n_out = 1024, ig_depth = 4, ig_angles = 16;
  double ig_r_cap = 0.9, ig_tol = 1e-8;
  integral->add_option("--measure", measure_file, "measure spec JSON file");
  integral->add_option("--measure-json", measure_json, "inline measure spec JSON");
  integral->add_option("--alpha", alpha, "operator order")->required();
  integral->add_option("--f", f_desc, std::string("input function: ") + kFunctionGrammar);
  integral->add_option("--n-out", ig_n_out, "series truncation for the matrix side");
  integral->add_option("--depth", ig_depth, "dyadic radius ladder depth (default 4)");
  integral->add_option("--angles", ig_angles, "angular samples per circle (default 16)");
  integral->add_option("--r-cap", ig_r_cap, "largest radius compared (default 0.9)");
  integral->add_option("--tolerance", ig_tol, "input truncation gate (default 1e-8)");
  integral->add_option("--truncation", truncation, "stored input coefficients (default 4096)");
  integral->add_option("--format", format, "csv table | json summary (default csv here)")->check(CLI::IsMember({"csv", "json"}));
  integral->add_option("--out", out_path, "output file (default stdout)");
  integral->callback([&] {
    if (!integral->count("--format")) format = "csv";
    const MeasureSpec mu = load_measure(measure_file, measure_json);
    HankelOperator op(mu, alpha);
    const FunctionInput f = parse_function(f_desc, truncation);
    HankelOperator::ApplyOptions opt;
    opt.n_out = ig_n_out;
    opt.tolerance = ig_tol;
    const OperatorApplication res = op.apply(f.series, opt);
    const DiskGrid grid = DiskGrid::dyadic(ig_depth, ig_angles);
    constexpr double kIntegralTol = 1e-9;
    std::ostringstream text;
    if (format == "csv") text << "z_re,z_im,H_re,H_im,I_re,I_im,gap\n";
    double max_gap = 0.0, max_abs = 0.0;
    std::size_t points = 0;
    for (double rho : grid.radii) {
      if (rho > ig_r_cap + 1e-15) continue;
      for (std::size_t m = 0; m < grid.angles; ++m) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(grid.angles);
        const cplx z = std::polar(rho, theta);
        const cplx h = evaluate(res.output, z);
        const cplx i = integral_apply(mu, alpha, f.eval, z, kIntegralTol);
        const double gap = std::abs(h - i);
        max_gap = std::max(max_gap, gap);
        max_abs = std::max(max_abs, std::abs(i));
        ++points;
        if (format == "csv")
          text << fmt17(z.real()) << "," << fmt17(z.imag()) << "," << fmt17(h.real()) << ","
               << fmt17(h.imag()) << "," << fmt17(i.real()) << "," << fmt17(i.imag()) << ","
               << fmt17(gap) << "\n";
      }
    }
    if (format != "csv")
      text << nlohmann::json{{"points", points},
                             {"max_gap", max_gap},
                             {"error_budget", res.residual_bound + 10.0 * kIntegralTol * max_abs}}
                  .dump(2)
           << "\n";
    write_output(out_path, text.str());
  });

  // pairing: weighted disk integral against the measure-side integral
  auto* pairing = app.add_subcommand("pairing", "evaluate both sides of the disk pairing");
  double pr_r = 0.5, pr_weight = PairingOptions::kPairingNaturalWeight, pr_tol = 1e-10;
  std::size_t pr_angles = 256;
  pairing->add_option("--measure", measure_file, "measure spec JSON file");
  pairing->add_option("--measure-json", measure_json, "inline measure spec JSON");
  pairing->add_option("--alpha", alpha, "operator order")->required();
  pairing->add_option("--f", f_desc, std::string("left function: ") + kFunctionGrammar);
  pairing->add_option("--g", g_desc, std::string("right function: ") + kFunctionGrammar);
  pairing->add_option("--r", pr_r, "dilation radius in [0,1) (default 0.5)");
  pairing->add_option("--weight-exponent", pr_weight,
                      "area weight exponent (default: alpha - 2)");
  pairing->add_option("--angles", pr_angles, "angular samples (default 256)");
  pairing->add_option("--rel-tol", pr_tol, "radial quadrature tolerance (default 1e-10)");
  pairing->add_option("--format", format, "json | csv (default json)")->check(CLI::IsMember({"csv", "json"}));
  pairing->add_option("--out", out_path, "output file (default stdout)");
  pairing->callback([&] {
    const MeasureSpec mu = load_measure(measure_file, measure_json);
    const FunctionInput f = parse_function(f_desc, truncation);
    const FunctionInput g = parse_function(g_desc, truncation);
    PairingOptions opt;
    opt.weight_exponent = pr_weight;
    opt.angles = pr_angles;
    opt.rel_tol = pr_tol;
    const cplx lhs = pairing_lhs(mu, alpha, f.eval, g.eval, pr_r, opt);
    const cplx rhs = pairing_rhs(mu, f.eval, g.eval, pr_r);
    const double gap = std::abs(lhs - rhs);
    std::ostringstream text;
    if (format == "csv")
      text << "lhs_re,lhs_im,rhs_re,rhs_im,gap\n"
           << fmt17(lhs.real()) << "," << fmt17(lhs.imag()) << "," << fmt17(rhs.real()) << ","
           << fmt17(rhs.imag()) << "," << fmt17(gap) << "\n";
    else
      text << nlohmann::json{
                  {"lhs", complex_json(lhs)}, {"rhs", complex_json(rhs)}, {"gap", gap}}
                  .dump(2)
           << "\n";
    write_output(out_path, text.str());
  });

  // norms: weighted-derivative, growth, block, and area norms of a function
  auto* norms = app.add_subcommand("norms", "norm estimates of a described function");
  std::size_t nm_depth = 10, nm_angles = 256;
  double nm_block = -1.0;
  bool nm_bergman = false;
  norms->add_option("--f", f_desc, std::string("function: ") + kFunctionGrammar);
  norms->add_option("--alpha", alpha, "derivative weight order")->required();
  norms->add_option("--depth", nm_depth, "dyadic radius ladder depth (default 10)");
  norms->add_option("--angles", nm_angles, "angular samples per circle (default 256)");
  norms->add_option("--block-exponent", nm_block,
                    "dyadic block weight exponent (default: alpha)");
  norms->add_flag("--bergman", nm_bergman, "also compute the area-integral norm");
  norms->add_option("--truncation", truncation, "stored coefficients (default 4096)");
  norms->add_option("--out", out_path, "output file (default stdout)");
  norms->callback([&] {
    const FunctionInput f = parse_function(f_desc, truncation);
    const DiskGrid grid = DiskGrid::dyadic(nm_depth, nm_angles);
    nlohmann::json j;
    j["bloch_seminorm"] = bloch_seminorm(f.series, alpha, grid);
    j["bloch_norm"] = bloch_norm(f.series, alpha, grid);
    j["growth_bound"] = growth_bound_check(f.series, alpha, grid);
    try {
      j["dyadic_block"] = dyadic_block_seminorm(f.series, nm_block > 0.0 ? nm_block : alpha);
    } catch (const truncation_error&) {
      j["dyadic_block"] = nullptr;  // fewer than two complete blocks stored
    }
    if (nm_bergman) j["bergman"] = bergman_a1_norm(f.series);
    write_output(out_path, j.dump(2) + "\n");
  });

  // classify: tail ladder report for a target condition
  auto* classify_cmd = app.add_subcommand("classify", "tail classification of a measure");
  double cl_s = 1.0, cl_log = 0.0;
  bool cl_csv = false;
  classify_cmd->add_option("--measure", measure_file, "measure spec JSON file");
  classify_cmd->add_option("--measure-json", measure_json, "inline measure spec JSON");
  classify_cmd->add_option("--s", cl_s, "tail exponent")->required();
  classify_cmd->add_option("--log-exponent", cl_log, "logarithmic refinement (default 0)");
  classify_cmd->add_flag("--csv", cl_csv, "print the probe table as CSV");
  classify_cmd->add_option("--format", format, "json report | csv probe table")->check(CLI::IsMember({"csv", "json"}));
  classify_cmd->add_option("--out", out_path, "output file (default stdout)");
  classify_cmd->callback([&] {
    const CarlesonReport rep = classify(load_measure(measure_file, measure_json), cl_s, cl_log);
    std::ostringstream text;
    if (cl_csv || format == "csv") {
      text << "t,tail_mass,ratio\n";
      for (const auto& p : rep.probes)
        text << fmt17(p.t) << "," << fmt17(p.tail_mass) << "," << fmt17(p.ratio) << "\n";
    } else {
      text << to_json(rep).dump(2) << "\n";
    }
    write_output(out_path, text.str());
  });

  // verify: run one statement's harness; exit 0 when the signals agree with
  // the statement, 2 when they contradict it
  auto* verify = app.add_subcommand("verify", "check one statement against a measure");
  std::string verify_id;
  std::size_t vf_n_max = 100000;
  double vf_threshold = 0.05;
  bool vf_compact = false;
  verify->add_option("id", verify_id,
                     "statement id: T2.1 T2.2 T2.3 T3.1 T3.2 T3.3 T3.4 Cor3.2 Qp")
      ->required();
  verify->add_option("--measure", measure_file, "measure spec JSON file");
  verify->add_option("--measure-json", measure_json, "inline measure spec JSON");
  verify->add_option("--alpha", alpha, "operator order")->required();
  verify->add_option("--beta", beta, "source-space exponent (default 0.5)");
  verify->add_option("--gamma", gamma, "target weight order (T3.1 only)");
  verify->add_flag("--compactness", vf_compact, "run the compactness proxy instead");
  verify->add_option("--n-max", vf_n_max, "first-column length for Qp (default 100000)");
  verify->add_option("--growth-threshold", vf_threshold,
                     "bounded-verdict slope threshold (default 0.05)");
  verify->add_option("--out", out_path, "output file (default stdout)");
  verify->callback([&] {
    const TheoremId id = theorem_from_name(verify_id);
    const MeasureSpec mu = load_measure(measure_file, measure_json);
    nlohmann::json report;
    bool consistent = false;
    if (id == TheoremId::T3_1 || id == TheoremId::Cor3_2) {
      double g = gamma;
      if (id == TheoremId::Cor3_2) {
        if (!(alpha > 1.0))
          throw domain_error("verify Cor3.2 needs alpha > 1 (its target order is alpha - 1)");
        g = alpha - 1.0;  // the corollary reads the image in its natural weight
      } else if (!(g > 0.0)) {
        throw domain_error("verify T3.1 needs --gamma > 0");
      }
      NecessityOptions opt;
      opt.growth_threshold = vf_threshold;
      NecessityReport rep = run_necessity_harness(mu, alpha, beta, g, opt);
      if (id == TheoremId::Cor3_2) {
        rep.theorem = theorem_name(TheoremId::Cor3_2);
        rep.predicted.theorem = TheoremId::Cor3_2;
      }
      consistent = rep.consistent;
      report = to_json(rep);
    } else if (id == TheoremId::Qp) {
      const QpReport rep = run_qp_harness(mu, alpha, beta, vf_n_max);
      consistent = rep.consistent;
      report = to_json(rep);
    } else if (vf_compact) {
      const CompactnessReport rep = run_compactness_proxy(id, mu, alpha, beta);
      consistent = rep.consistent;
      report = to_json(rep);
    } else {
      HarnessOptions opt;
      opt.growth_threshold = vf_threshold;
      const HarnessReport rep = run_boundedness_harness(id, mu, alpha, beta, opt);
      consistent = rep.consistent;
      report = to_json(rep);
    }
    write_output(out_path, report.dump(2) + "\n");
    exit_code = consistent ? 0 : 2;
  });

  // gamma-table: the coefficient ladder c_0..c_N as one CSV line
  auto* gt = app.add_subcommand("gamma-table", "print the coefficient table c_0..c_N");
  std::size_t gt_n = 10;
  gt->add_option("--alpha", alpha, "order")->required();
  gt->add_option("--n", gt_n, "last index (default 10)");
  gt->add_option("--out", out_path, "output file (default stdout)");
  gt->callback([&] {
    GammaRatioTable table(alpha, gt_n);
    std::ostringstream text;
    for (std::size_t n = 0; n <= gt_n; ++n) text << (n ? "," : "") << fmt17(table.value(n));
    text << "\n";
    write_output(out_path, text.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const invalid_measure& e) {
    std::fprintf(stderr, "invalid measure: %s\n", e.what());
    return 1;
  } catch (const truncation_error& e) {
    std::fprintf(stderr, "truncation error: %s (suggested size %zu)\n", e.what(), e.suggested);
    return 1;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 1;
  } catch (const domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
