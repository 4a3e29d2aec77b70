// pwmlp command-line tool. Talks to the library only through the C API.
//
// Exit codes: 0 success or verification pass, 1 verification failure,
// 2 usage error, 3 I/O or malformed input, 4 numerical failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <system_error>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwmlp/pwmlp.h"

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3, kNumerical = 4 };

/// Carries a status out of a subcommand so main can map it to an exit code.
struct Failure {
  pwmlp_status status;
  std::string message;
};

int exit_code(pwmlp_status s) {
  switch (s) {
    case PWMLP_OK: return kOk;
    case PWMLP_ERR_DOMAIN:
    case PWMLP_ERR_USAGE: return kUsage;
    case PWMLP_ERR_FORMAT:
    case PWMLP_ERR_IO: return kIo;
    case PWMLP_ERR_NUMERICAL:
    case PWMLP_ERR_INTERNAL: return kNumerical;
  }
  return kNumerical;
}

void check(pwmlp_status s) {
  if (s != PWMLP_OK) throw Failure{s, pwmlp_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{PWMLP_ERR_USAGE, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};
using SamplesPtr = std::unique_ptr<pwmlp_samples, Deleter<pwmlp_samples, pwmlp_samples_free>>;
using NetworkPtr = std::unique_ptr<pwmlp_network, Deleter<pwmlp_network, pwmlp_network_free>>;
using ReportPtr = std::unique_ptr<pwmlp_report, Deleter<pwmlp_report, pwmlp_report_free>>;
using FitPtr = std::unique_ptr<pwmlp_kernel_fit, Deleter<pwmlp_kernel_fit, pwmlp_kernel_fit_free>>;

std::string fmt(double v) {
  char buf[32];
  pwmlp_format_double(v, buf, sizeof buf);
  return buf;
}

double parse_number(const std::string& field) {
  double v = 0.0;
  const char* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) usage("not a number: '" + field + "'");
  return v;
}

template <class T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) usage("empty entry in list '" + text + "'");
    if constexpr (std::is_same_v<T, int>) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        usage("not an integer: '" + item + "'");
      }
      if (used != item.size()) usage("not an integer: '" + item + "'");
      out.push_back(v);
    } else {
      out.push_back(parse_number(item));
    }
  }
  return out;
}

struct TargetOptions {
  std::string method;
  std::optional<int> n;
  std::string target;
  std::string csv;
  double slope = pwmlp_default_inflection_slope();
};

void add_target_options(CLI::App* cmd, TargetOptions& o, bool need_method = true) {
  if (need_method) {
    cmd->add_option("--method", o.method, "constant | linear-relu | linear-ramp | cubic | cubic-spaced")
        ->required();
  }
  cmd->add_option("--n", o.n, "number of knot subintervals N");
  cmd->add_option("--target", o.target, "builtin target (see 'info')");
  cmd->add_option("--csv", o.csv, "knot samples CSV x,f1..fq with N+1 rows");
  cmd->add_option("--slope", o.slope, "cubic inflection slope in [0, 0.75]");
}

SamplesPtr load_samples(const TargetOptions& o) {
  if (o.target.empty() == o.csv.empty()) usage("give exactly one of --target or --csv");
  pwmlp_samples* s = nullptr;
  if (!o.target.empty()) {
    if (!o.n) usage("--n is required with --target");
    check(pwmlp_samples_from_target(o.target.c_str(), *o.n, &s));
  } else {
    if (o.n && *o.n < 1) usage("--n must be at least 1");
    check(pwmlp_samples_read_csv(o.csv.c_str(), o.n.value_or(0), &s));
  }
  return SamplesPtr(s);
}

int cmd_build(const TargetOptions& o, const std::string& out_path) {
  const auto samples = load_samples(o);
  pwmlp_network* raw = nullptr;
  check(pwmlp_build(o.method.c_str(), samples.get(), o.slope, &raw));
  const NetworkPtr net(raw);
  check(pwmlp_network_save(net.get(), out_path.c_str()));
  std::cout << "method: " << pwmlp_network_method(net.get()) << "\n"
            << "n: " << pwmlp_network_n(net.get()) << "\n"
            << "neurons: " << pwmlp_network_hidden_size(net.get()) << "\n"
            << "outputs: " << pwmlp_network_output_dim(net.get()) << "\n"
            << "model: " << out_path << "\n";
  return kOk;
}

int cmd_eval(const std::string& model_path, const std::optional<long long>& grid, const std::string& x_list) {
  if (grid.has_value() == !x_list.empty()) usage("give exactly one of --grid or --x");
  std::vector<double> xs;
  if (grid) {
    if (*grid < 1) usage("--grid needs at least one point");
    const auto count = static_cast<std::size_t>(*grid);
    xs.resize(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  } else {
    xs = split_list<double>(x_list);
  }
  pwmlp_network* raw = nullptr;
  check(pwmlp_network_load(model_path.c_str(), &raw));
  const NetworkPtr net(raw);
  const std::size_t q = pwmlp_network_output_dim(net.get());
  std::vector<double> ys(xs.size() * q);
  check(pwmlp_network_forward_grid(net.get(), xs.data(), xs.size(), ys.data(), ys.size()));

  std::string out = "x";
  for (std::size_t k = 0; k < q; ++k) out += ",y" + std::to_string(k + 1);
  out += "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += fmt(xs[i]);
    for (std::size_t k = 0; k < q; ++k) out += "," + fmt(ys[i * q + k]);
    out += "\n";
  }
  std::cout << out;
  return kOk;
}

int cmd_verify(const TargetOptions& o, std::optional<double> tol, long long grid, const std::string& debug_oracle) {
  if (grid < 2) usage("--grid needs at least 2 points");
  const auto samples = load_samples(o);
  const double tolerance = tol.value_or(1e-9 * std::max(1.0, pwmlp_samples_max_abs(samples.get())));
  pwmlp_equivalence r{};
  check(pwmlp_verify(o.method.c_str(), samples.get(), o.slope, static_cast<std::size_t>(grid), tolerance,
                     debug_oracle.empty() ? nullptr : debug_oracle.c_str(), &r));
  std::cout << (r.passed ? "PASS" : "FAIL") << " method=" << o.method << " n=" << pwmlp_samples_n(samples.get())
            << " grid=" << grid << "\n"
            << "max_deviation: " << fmt(r.max_deviation) << "\n"
            << "at_x: " << fmt(r.worst_x) << "\n"
            << "output: " << r.worst_output + 1 << "\n"
            << "tolerance: " << fmt(tolerance) << "\n";
  return r.passed ? kOk : kVerifyFailed;
}

int cmd_convergence(const TargetOptions& o, const std::string& n_list, long long grid, const std::string& out_path) {
  if (o.target.empty()) usage("--target is required");
  if (grid < 2) usage("--grid needs at least 2 points");
  const auto ns = split_list<int>(n_list);
  pwmlp_report* raw = nullptr;
  check(pwmlp_convergence(o.method.c_str(), o.target.c_str(), ns.data(), ns.size(),
                          static_cast<std::size_t>(grid), o.slope, &raw));
  const ReportPtr report(raw);
  const std::string json_path = std::filesystem::path(out_path).replace_extension(".json").string();
  if (json_path == out_path) usage("--out must not end in .json; the summary is written next to it");
  check(pwmlp_report_write_csv(report.get(), out_path.c_str()));
  check(pwmlp_report_write_json(report.get(), json_path.c_str()));
  for (std::size_t i = 0; i < pwmlp_report_size(report.get()); ++i) {
    std::cout << "n=" << pwmlp_report_n(report.get(), i) << " sup_error=" << fmt(pwmlp_report_sup_error(report.get(), i))
              << " l2_error=" << fmt(pwmlp_report_l2_error(report.get(), i)) << "\n";
  }
  if (pwmlp_report_order_applicable(report.get())) {
    std::cout << "fitted_order: " << fmt(pwmlp_report_fitted_order(report.get())) << "\n"
              << "r_squared: " << fmt(pwmlp_report_r_squared(report.get())) << "\n";
  } else {
    std::cout << "fitted_order: n/a (target reproduced exactly)\n";
  }
  std::cout << "csv: " << out_path << "\nsummary: " << json_path << "\n";
  return kOk;
}

int cmd_fit_kernel(const std::string& kernel, int n, double slope, const std::string& csv, const std::string& out) {
  pwmlp_kernel_fit* raw = nullptr;
  check(pwmlp_fit_kernel_csv(kernel.c_str(), slope, n, csv.c_str(), &raw));
  const FitPtr fit(raw);
  check(pwmlp_kernel_fit_write_json(fit.get(), out.c_str()));
  std::cout << "kernel: " << kernel << "\nweights: " << pwmlp_kernel_fit_size(fit.get())
            << "\nrms_residual: " << fmt(pwmlp_kernel_fit_rms_residual(fit.get())) << "\nfit: " << out << "\n";
  return kOk;
}

int cmd_info() {
  std::cerr << "pwmlp " << pwmlp_version() << "\n";
  std::cout << "methods:";
  for (std::size_t i = 0; i < pwmlp_method_count(); ++i) std::cout << " " << pwmlp_method_name(i);
  std::cout << "\ntargets:\n";
  for (std::size_t i = 0; i < pwmlp_target_count(); ++i) {
    std::cout << "  " << pwmlp_target_name(i) << ": " << pwmlp_target_formula(i) << "\n";
  }
  std::cout << "kernels: box triangle bump\n"
            << "default_slope: " << fmt(pwmlp_default_inflection_slope()) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct perceptrons that reproduce piecewise polynomial approximants"};
  app.require_subcommand(1);

  TargetOptions build_opts;
  std::string build_out;
  auto* build = app.add_subcommand("build", "construct a network and write its model document");
  add_target_options(build, build_opts);
  build->add_option("--out", build_out, "model JSON path")->required();

  std::string model_path;
  std::optional<long long> eval_grid;
  std::string eval_x;
  auto* eval = app.add_subcommand("eval", "evaluate a model, CSV to standard output");
  eval->add_option("model", model_path, "model JSON path")->required();
  eval->add_option("--grid", eval_grid, "number of uniform points on [0, 1]");
  eval->add_option("--x", eval_x, "explicit comma-separated x values");

  TargetOptions verify_opts;
  std::optional<double> verify_tol;
  long long verify_grid = 10001;
  std::string debug_oracle;
  auto* verify = app.add_subcommand("verify", "check a constructed network against its reference model");
  add_target_options(verify, verify_opts);
  verify->add_option("--tol", verify_tol, "absolute tolerance (default 1e-9 * max(1, |f|))");
  verify->add_option("--grid", verify_grid, "evaluation grid size");
  verify->add_option("--debug-oracle", debug_oracle)->group("");

  TargetOptions conv_opts;
  std::string n_list;
  long long conv_grid = 10001;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "sweep N and fit the empirical convergence order");
  add_target_options(conv, conv_opts);
  conv->add_option("--n-list", n_list, "comma-separated increasing N values")->required();
  conv->add_option("--grid", conv_grid, "evaluation grid size");
  conv->add_option("--out", conv_out, "CSV path; the JSON summary goes next to it")->required();

  std::string fit_kernel_name = "triangle";
  int fit_n = 0;
  double fit_slope = pwmlp_default_inflection_slope();
  std::string fit_csv, fit_out;
  auto* fit = app.add_subcommand("fit-kernel", "least-squares kernel weights from dense samples");
  fit->add_option("--kernel", fit_kernel_name, "box | triangle | bump");
  fit->add_option("--n", fit_n, "number of knot subintervals N")->required();
  fit->add_option("--slope", fit_slope, "bump inflection slope in [0, 0.75]");
  fit->add_option("--csv", fit_csv, "dense samples CSV x,y")->required();
  fit->add_option("--out", fit_out, "output JSON path")->required();

  auto* info = app.add_subcommand("info", "list methods, targets and kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (build->parsed()) return cmd_build(build_opts, build_out);
    if (eval->parsed()) return cmd_eval(model_path, eval_grid, eval_x);
    if (verify->parsed()) return cmd_verify(verify_opts, verify_tol, verify_grid, debug_oracle);
    if (conv->parsed()) return cmd_convergence(conv_opts, n_list, conv_grid, conv_out);
    if (fit->parsed()) return cmd_fit_kernel(fit_kernel_name, fit_n, fit_slope, fit_csv, fit_out);
    if (info->parsed()) return cmd_info();
  } catch (const Failure& f) {
    std::cerr << "pwmlp: " << pwmlp_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  }
  return kUsage;
}
