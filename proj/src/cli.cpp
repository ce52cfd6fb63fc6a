#include "hlskit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlskit/consistency.hpp"
#include "hlskit/errors.hpp"
#include "hlskit/gamma.hpp"
#include "hlskit/kfunctional.hpp"
#include "hlskit/omega.hpp"
#include "hlskit/suites.hpp"

namespace hlskit {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  for (const auto& token : split_commas(text)) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() || n < 1) throw input_error("invalid dimension '" + token + "'");
    dims.push_back(n);
  }
  if (dims.empty()) throw input_error("--dims is empty");
  return dims;
}

std::vector<Exponent> parse_exponents(const std::string& text) {
  std::vector<Exponent> out;
  for (const auto& token : split_commas(text)) out.push_back(Exponent::parse(token));
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& token : split_commas(text)) out.push_back(parse_rational(token));
  return out;
}

double parse_positive_real(const std::string& token, const char* what) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !(x > 0) || !std::isfinite(x))
    throw input_error(std::string(what) + ": invalid positive number '" + token + "'");
  return x;
}

IndexSpec make_spec(const std::string& dims, const std::string& p, const std::string& q) {
  IndexSpec spec{parse_dims(dims), parse_exponents(p), parse_exponents(q), std::nullopt};
  spec.validate();
  return spec;
}

struct DecideArgs {
  std::string dims, p, q, lambda;
  bool reverse = false;
};

int run_decide(const DecideArgs& args, std::ostream& out) {
  IndexSpec spec = make_spec(args.dims, args.p, args.q);
  spec.lambda = parse_rational(args.lambda);
  const auto report = gamma_member(spec, GammaOptions{args.reverse});
  auto j = to_json(report, "gamma");
  j["spec"] = spec.str();
  j["homogeneity_defect"] = to_string(homogeneity_defect(spec));
  j["lambda_in_range"] = sgn(*spec.lambda) > 0 && *spec.lambda < spec.total_dim();
  out << j.dump(2) << "\n";
  return 0;
}

int run_decide_hls(const DecideArgs& args, std::ostream& out) {
  IndexSpec spec = make_spec(args.dims, args.p, args.q);
  const auto report = omega_member(spec);
  auto j = to_json(report, "omega");
  j["spec"] = spec.str();
  try {
    j["lambda"] = to_string(hls_exponent(spec));
  } catch (const domain_error&) {
    j["lambda"] = nullptr;  // some exponent below 1
  }
  out << j.dump(2) << "\n";
  return 0;
}

struct ScanArgs {
  std::string dims;
  std::string grid = "0,1/6,1/4,1/3,1/2,2/3,3/4,5/6,1";
  std::vector<std::string> fix;
  std::string lambdas;
};

// "q1=inf" -> slot m, reciprocal 0
void apply_fix(LatticeSpec& lattice, const std::string& assignment) {
  const std::size_t m = lattice.dims.size();
  const auto eq = assignment.find('=');
  const auto bad = [&] { return input_error("malformed --fix '" + assignment + "' (expected e.g. q1=inf)"); };
  if (eq == std::string::npos || eq < 2 || (assignment[0] != 'p' && assignment[0] != 'q')) throw bad();
  const std::string index = assignment.substr(1, eq - 1);
  if (index.find_first_not_of("0123456789") != std::string::npos) throw bad();
  const unsigned long i = std::stoul(index);
  if (i < 1 || i > m) throw input_error("--fix index out of range in '" + assignment + "'");
  const Exponent value = Exponent::parse(assignment.substr(eq + 1));
  lattice.fixed.resize(2 * m);
  lattice.fixed[(assignment[0] == 'p' ? 0 : m) + i - 1] = value.reciprocal();
}

int run_scan(const ScanArgs& args, std::ostream& out) {
  LatticeSpec lattice;
  lattice.dims = parse_dims(args.dims);
  if (args.grid.empty()) throw input_error("--grid is empty");
  lattice.reciprocal_grid = parse_rationals(args.grid);
  for (const auto& entry : args.fix)
    for (const auto& assignment : split_commas(entry)) apply_fix(lattice, assignment);
  if (!args.lambdas.empty()) {
    lattice.lambda_rule = LambdaRule::Explicit;
    lattice.lambdas = parse_rationals(args.lambdas);
  }
  lattice.validate();

  const std::size_t m = lattice.dims.size();
  out << "index";
  for (std::size_t i = 1; i <= m; ++i) out << ",inv_p" << i;
  for (std::size_t i = 1; i <= m; ++i) out << ",inv_q" << i;
  out << ",lambda,flagged,member,rules\n";
  const std::size_t n = lattice.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto point = lattice_point(lattice, idx);
    const auto report = gamma_member(point.spec);
    out << idx;
    for (const auto& e : point.spec.p) out << ',' << to_string(e.reciprocal());
    for (const auto& e : point.spec.q) out << ',' << to_string(e.reciprocal());
    out << ',' << to_string(*point.spec.lambda) << ',' << (point.flagged ? "true" : "false") << ','
        << (report.member ? "true" : "false") << ',' << report.rule_chain('>') << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::string out_path;
  bool no_timestamp = false;
  int max_m = 3;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
  std::vector<std::string> names;
  if (args.suite == "all") {
    names = suite_names();
  } else {
    if (std::find(suite_names().begin(), suite_names().end(), args.suite) == suite_names().end())
      throw input_error("unknown suite '" + args.suite + "'");
    names.push_back(args.suite);
  }
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw input_error("cannot write '" + args.out_path + "'");
  }

  SuiteOptions options;
  options.max_m = args.max_m;
  bool all_passed = true;
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& name : names) {
    const auto outcome = run_suite(name, options);
    all_passed = all_passed && outcome.passed;
    out << "[" << (outcome.passed ? "PASS" : "FAIL") << "] " << outcome.name << "\n";
    for (const auto& line : outcome.summary) out << "  " << line << "\n";
    suites.push_back(
        {{"name", outcome.name}, {"passed", outcome.passed}, {"summary", outcome.summary}, {"detail", outcome.detail}});
  }
  if (file) {
    nlohmann::json doc{{"passed", all_passed}, {"suites", suites}};
    if (!args.no_timestamp) doc["timestamp"] = utc_timestamp();
    file << doc.dump(2) << "\n";
  }
  return all_passed ? 0 : 2;
}

struct KfunArgs {
  std::string input;
  std::string u = "1", v = "inf";
  std::string t_min = "0.001", t_max = "1000";
  std::size_t points = 25;
};

int run_kfun(const KfunArgs& args, std::ostream& out) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (args.input != "-") {
    file.open(args.input);
    if (!file) throw input_error("cannot read '" + args.input + "'");
    in = &file;
  }
  const auto f = SimpleFunction::parse(*in);
  const Couple couple{Exponent::parse(args.u), Exponent::parse(args.v)};
  const auto curve = k_curve(f, couple, parse_positive_real(args.t_min, "--tmin"),
                             parse_positive_real(args.t_max, "--tmax"), args.points);
  out << "t,K\n";
  for (const auto& [t, k] : curve) out << format_real(t) << ',' << format_real(k) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact deciders and numerical checks for Riesz potentials on mixed-norm spaces", "hlskit"};
  app.require_subcommand(1);

  DecideArgs decide;
  auto* decide_cmd = app.add_subcommand("decide", "Decide boundedness of I_lambda from L^p to L^q");
  decide_cmd->add_option("--dims", decide.dims, "Block dimensions, e.g. 1,2")->required();
  decide_cmd->add_option("--p", decide.p, "Exponents p_i (rationals or inf)")->required();
  decide_cmd->add_option("--q", decide.q, "Exponents q_i (rationals or inf)")->required();
  decide_cmd->add_option("--lambda", decide.lambda, "Order lambda as a rational")->required();
  decide_cmd->add_flag("--reverse-precedence", decide.reverse, "Try rules in reverse order (trace only)");

  DecideArgs hls;
  auto* hls_cmd = app.add_subcommand("decide-hls", "Decide the mixed-norm HLS inequality for (p, q)");
  hls_cmd->add_option("--dims", hls.dims, "Block dimensions")->required();
  hls_cmd->add_option("--p", hls.p, "Exponents p_i")->required();
  hls_cmd->add_option("--q", hls.q, "Exponents q_i")->required();

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Decide every point of a reciprocal lattice (CSV)");
  scan_cmd->add_option("--dims", scan.dims, "Block dimensions")->required();
  scan_cmd->add_option("--grid", scan.grid, "Reciprocal grid in [0, 1]")->capture_default_str();
  scan_cmd->add_option("--fix", scan.fix, "Fixed slots, e.g. q1=inf (repeatable)");
  scan_cmd->add_option("--lambda", scan.lambdas, "Explicit lambda values instead of solving homogeneity");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", verify.suite, "duality, omega-gamma, regions, dilation, drift, blowup, kfun-oracle or all")
      ->required();
  verify_cmd->add_option("--out", verify.out_path, "Write a JSON report");
  verify_cmd->add_flag("--no-timestamp", verify.no_timestamp, "Omit the timestamp from the JSON report");
  verify_cmd->add_option("--max-m", verify.max_m, "Largest lattice rank for duality and omega-gamma")
      ->capture_default_str();

  KfunArgs kfun;
  auto* kfun_cmd = app.add_subcommand("kfun", "K-functional curve of a simple function (CSV)");
  kfun_cmd->add_option("--input", kfun.input, "File of 'value,measure' lines, or - for stdin")->required();
  kfun_cmd->add_option("--u", kfun.u, "First exponent of the couple")->capture_default_str();
  kfun_cmd->add_option("--v", kfun.v, "Second exponent of the couple")->capture_default_str();
  kfun_cmd->add_option("--tmin", kfun.t_min, "Smallest t")->capture_default_str();
  kfun_cmd->add_option("--tmax", kfun.t_max, "Largest t")->capture_default_str();
  kfun_cmd->add_option("--points", kfun.points, "Number of log-spaced t values")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*decide_cmd) return run_decide(decide, out);
    if (*hls_cmd) return run_decide_hls(hls, out);
    if (*scan_cmd) return run_scan(scan, out);
    if (*verify_cmd) return run_verify(verify, out);
    if (*kfun_cmd) return run_kfun(kfun, out);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace hlskit
