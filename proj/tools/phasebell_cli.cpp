// phasebell: Bell tests with discrete phase measurements on correlated
// photon-number pair states. Every subcommand writes CSV.
//
//   phasebell dist --state equal --s 3 --psi0 0
//   phasebell bell --state equal --s 1 --scheme equal --optimize
//   phasebell sweep-s --state equal --s 1:201:2 --scheme single
//   phasebell sweep-lambda --s 3,7 --scheme single
//   phasebell lhv-check
//
// Exit status: 0 success, 2 bad flags or input files, 1 numeric failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "phasebell/numeric.hpp"
#include "phasebell/sweep.hpp"

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string state = "equal";
  std::string s_text;
  std::optional<double> psi0;
  bool optimize = false;
  std::string functional = "ch";
  std::string scheme = "equal";
  std::optional<double> lambda;
  std::optional<double> r;
  std::string coeffs;
  std::string mode = "raw";
  std::string out;
  int psi_grid = 0;
  int lambda_grid = 200;
};

phasebell::StateSpec state_from(const Options& opt) {
  phasebell::StateSpec spec;
  spec.family = phasebell::parse_state_family(opt.state);
  spec.lambda = opt.lambda;
  spec.r = opt.r;
  if (!opt.coeffs.empty()) spec.custom = phasebell::read_coefficient_file(opt.coeffs);
  return spec;
}

int single_s(const Options& opt) {
  const auto values = phasebell::parse_s_values(opt.s_text);
  if (values.size() != 1) throw std::invalid_argument("this command takes a single --s value");
  return values.front();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + opt.out);
  file << text;
}

void add_state_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--state", opt.state, "equal | tms | circle | custom")->capture_default_str();
  cmd->add_option("--lambda", opt.lambda, "tms parameter in [0,1)");
  cmd->add_option("--r", opt.r, "circle-state amplitude (>= 0)");
  cmd->add_option("--coeffs", opt.coeffs, "custom coefficient file");
  cmd->add_option("--mode", opt.mode, "raw | renorm")->capture_default_str();
  cmd->add_option("--out", opt.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete phase measurement Bell tests on correlated photon-number pair states"};
  app.require_subcommand(1);
  Options opt;

  auto* dist = app.add_subcommand("dist", "joint phase distribution for one state");
  add_state_flags(dist, opt);
  dist->add_option("--s", opt.s_text, "phase resolution")->required();
  dist->add_option("--psi0", opt.psi0, "sum of reference phases (radians)");

  auto* bell = app.add_subcommand("bell", "B_CH and B_S at one psi0 or optimized");
  add_state_flags(bell, opt);
  bell->add_option("--s", opt.s_text, "phase resolution")->required();
  auto* psi_flag = bell->add_option("--psi0", opt.psi0, "sum of reference phases (radians)");
  auto* opt_flag = bell->add_flag("--optimize", opt.optimize, "maximize over psi0 in [0, 2pi/3]");
  psi_flag->excludes(opt_flag);
  bell->add_option("--functional", opt.functional, "ch | s (objective for --optimize)")
      ->capture_default_str();
  bell->add_option("--scheme", opt.scheme, "equal | single | custom:i,j,...")
      ->capture_default_str();
  bell->add_option("--psi-grid", opt.psi_grid, "optimizer grid points (default 2000)");

  auto* sweep_s = app.add_subcommand("sweep-s", "max-over-psi0 B_CH versus s");
  add_state_flags(sweep_s, opt);
  sweep_s->add_option("--s", opt.s_text, "s values, e.g. 1:201:2 or 1,3,5 (default 1:201:2)");
  sweep_s->add_option("--scheme", opt.scheme, "equal | single | custom:i,j,...")
      ->default_val("single");
  sweep_s->add_option("--psi-grid", opt.psi_grid, "optimizer grid points (default 2000)");

  auto* sweep_lambda = app.add_subcommand("sweep-lambda", "B_CH over (lambda, psi0) for tms states");
  sweep_lambda->add_option("--s", opt.s_text, "s values (default 3,7)");
  sweep_lambda->add_option("--scheme", opt.scheme, "equal | single | custom:i,j,...")
      ->default_val("single");
  sweep_lambda->add_option("--lambda-grid", opt.lambda_grid, "lambda points over [0,1)")
      ->capture_default_str();
  sweep_lambda->add_option("--psi-grid", opt.psi_grid, "psi0 points over [0, 2pi/3] (default 200)");
  sweep_lambda->add_option("--mode", opt.mode, "raw | renorm")->capture_default_str();
  sweep_lambda->add_option("--out", opt.out, "output path (default stdout)");

  auto* lhv = app.add_subcommand("lhv-check", "enumerate deterministic local strategies");
  lhv->add_option("--out", opt.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto mode = phasebell::parse_mode(opt.mode);
    std::ostringstream out;
    int status = 0;

    if (*dist) {
      phasebell::write_dist(out, state_from(opt), single_s(opt), opt.psi0.value_or(0.0), mode);
    } else if (*bell) {
      if (!opt.psi0 && !opt.optimize) throw std::invalid_argument("bell needs --psi0 or --optimize");
      const auto functional = opt.functional == "ch" ? phasebell::Functional::CH
                              : opt.functional == "s"
                                  ? phasebell::Functional::S
                                  : throw std::invalid_argument("--functional must be ch or s");
      const auto row = phasebell::bell_point(state_from(opt), single_s(opt), opt.scheme, opt.psi0,
                                             mode, functional, opt.psi_grid ? opt.psi_grid : 2000);
      phasebell::write_bell_csv(out, std::span(&row, 1));
    } else if (*sweep_s) {
      const auto s_values = phasebell::parse_s_values(opt.s_text.empty() ? "1:201:2" : opt.s_text);
      const auto rows = phasebell::sweep_s(state_from(opt), s_values, opt.scheme, mode,
                                           opt.psi_grid ? opt.psi_grid : 2000);
      phasebell::write_sweep_s_csv(out, rows);
    } else if (*sweep_lambda) {
      const auto s_values = phasebell::parse_s_values(opt.s_text.empty() ? "3,7" : opt.s_text);
      const auto rows = phasebell::sweep_lambda(s_values, opt.scheme, opt.lambda_grid,
                                                opt.psi_grid ? opt.psi_grid : 200, mode);
      phasebell::write_sweep_lambda_csv(out, rows);
    } else if (*lhv) {
      status = phasebell::write_lhv_report(out) ? 0 : kExitNumeric;
    }

    emit(opt, out.str());
    return status;
  } catch (const std::invalid_argument& e) {
    std::cerr << "phasebell: " << e.what() << '\n';
    return kExitUsage;
  } catch (const phasebell::NumericError& e) {
    std::cerr << "phasebell: numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "phasebell: " << e.what() << '\n';
    return kExitNumeric;
  }
}
