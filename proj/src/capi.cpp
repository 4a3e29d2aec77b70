#include "pwmlp/pwmlp.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include <json.hpp>

#include "pwmlp/analysis.hpp"
#include "pwmlp/builders.hpp"
#include "pwmlp/csv_io.hpp"
#include "pwmlp/errors.hpp"
#include "pwmlp/format.hpp"
#include "pwmlp/model_io.hpp"
#include "pwmlp/oracle.hpp"
#include "pwmlp/targets.hpp"

struct pwmlp_samples {
  pwmlp::TargetSamples value;
};

struct pwmlp_network {
  pwmlp::Network value;
};

struct pwmlp_report {
  pwmlp::ConvergenceReport value;
};

struct pwmlp_kernel_fit {
  pwmlp::KernelFit value;
};

namespace {

thread_local std::string g_last_error;

pwmlp_status status_of(pwmlp::ErrorKind kind) {
  switch (kind) {
    case pwmlp::ErrorKind::Domain: return PWMLP_ERR_DOMAIN;
    case pwmlp::ErrorKind::Usage: return PWMLP_ERR_USAGE;
    case pwmlp::ErrorKind::Format: return PWMLP_ERR_FORMAT;
    case pwmlp::ErrorKind::Numerical: return PWMLP_ERR_NUMERICAL;
    case pwmlp::ErrorKind::Io: return PWMLP_ERR_IO;
  }
  return PWMLP_ERR_INTERNAL;
}

pwmlp_status fail(pwmlp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
pwmlp_status guarded(Body&& body) noexcept {
  try {
    body();
    return PWMLP_OK;
  } catch (const pwmlp::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PWMLP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PWMLP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PWMLP_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw pwmlp::UsageError(std::string(what) + " is NULL");
}

pwmlp::Method method_of(const char* name) {
  require(name, "method");
  const auto m = pwmlp::parse_method(name);
  if (!m) throw pwmlp::UsageError(std::string("unknown method '") + name + "'");
  return *m;
}

const pwmlp::Target& target_of(const char* name) {
  require(name, "target");
  const auto* t = pwmlp::find_target(name);
  if (t == nullptr) throw pwmlp::UsageError(std::string("unknown target '") + name + "'");
  return *t;
}

pwmlp::Kernel kernel_of(const char* name, double slope) {
  require(name, "kernel");
  const std::string_view k(name);
  if (k == "box") return pwmlp::Kernel::box();
  if (k == "triangle") return pwmlp::Kernel::triangle();
  if (k == "bump") return pwmlp::Kernel::cubic_bump(slope);
  throw pwmlp::UsageError(std::string("unknown kernel '") + name + "'");
}

void write_text(const char* path, const std::string& text) {
  require(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pwmlp::IoError(std::string("cannot open '") + path + "' for writing");
  out << text;
  if (!out) throw pwmlp::IoError(std::string("failed writing '") + path + "'");
}

}  // namespace

extern "C" {

const char* pwmlp_version(void) { return PWMLP_VERSION_STRING; }

const char* pwmlp_last_error(void) { return g_last_error.c_str(); }

const char* pwmlp_status_name(pwmlp_status status) {
  switch (status) {
    case PWMLP_OK: return "ok";
    case PWMLP_ERR_DOMAIN: return "domain error";
    case PWMLP_ERR_USAGE: return "usage error";
    case PWMLP_ERR_FORMAT: return "format error";
    case PWMLP_ERR_NUMERICAL: return "numerical error";
    case PWMLP_ERR_IO: return "I/O error";
    case PWMLP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t pwmlp_method_count(void) { return std::size(pwmlp::kAllMethods); }

const char* pwmlp_method_name(size_t index) {
  return index < std::size(pwmlp::kAllMethods) ? pwmlp::method_name(pwmlp::kAllMethods[index]) : nullptr;
}

size_t pwmlp_target_count(void) { return pwmlp::builtin_targets().size(); }

const char* pwmlp_target_name(size_t index) {
  const auto targets = pwmlp::builtin_targets();
  return index < targets.size() ? targets[index].name.data() : nullptr;
}

const char* pwmlp_target_formula(size_t index) {
  const auto targets = pwmlp::builtin_targets();
  return index < targets.size() ? targets[index].formula.data() : nullptr;
}

double pwmlp_default_inflection_slope(void) { return pwmlp::kDefaultInflectionSlope; }

pwmlp_status pwmlp_samples_from_target(const char* target, int n, pwmlp_samples** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto& t = target_of(target);
    *out = new pwmlp_samples{pwmlp::sample_function(pwmlp::KnotGrid(n), t.value)};
  });
}

pwmlp_status pwmlp_samples_from_values(int n, size_t q, const double* values, pwmlp_samples** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(values, "values");
    const pwmlp::KnotGrid grid(n);
    pwmlp::Matrix m(grid.knot_count(), q);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < q; ++c) m(r, c) = values[r * q + c];
    }
    *out = new pwmlp_samples{pwmlp::TargetSamples(grid, std::move(m))};
  });
}

pwmlp_status pwmlp_samples_read_csv(const char* path, int expected_n, pwmlp_samples** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    std::optional<int> n;
    if (expected_n > 0) n = expected_n;
    *out = new pwmlp_samples{pwmlp::read_samples_csv(path, n)};
  });
}

int pwmlp_samples_n(const pwmlp_samples* samples) { return samples ? samples->value.grid().n() : 0; }

size_t pwmlp_samples_output_dim(const pwmlp_samples* samples) {
  return samples ? samples->value.output_dim() : 0;
}

double pwmlp_samples_max_abs(const pwmlp_samples* samples) {
  return samples ? samples->value.max_abs() : std::numeric_limits<double>::quiet_NaN();
}

void pwmlp_samples_free(pwmlp_samples* samples) { delete samples; }

pwmlp_status pwmlp_build(const char* method, const pwmlp_samples* samples, double slope, pwmlp_network** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(samples, "samples");
    *out = new pwmlp_network{pwmlp::build_network(method_of(method), samples->value, slope)};
  });
}

pwmlp_status pwmlp_network_load(const char* path, pwmlp_network** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    *out = new pwmlp_network{pwmlp::read_model_file(path)};
  });
}

pwmlp_status pwmlp_network_load_string(const char* document, size_t length, pwmlp_network** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(document, "document");
    *out = new pwmlp_network{pwmlp::load_model(std::string_view(document, length))};
  });
}

pwmlp_status pwmlp_network_save(const pwmlp_network* net, const char* path) {
  return guarded([&] {
    require(net, "network");
    require(path, "path");
    pwmlp::write_model_file(net->value, path);
  });
}

size_t pwmlp_network_hidden_size(const pwmlp_network* net) { return net ? net->value.hidden_size() : 0; }

size_t pwmlp_network_output_dim(const pwmlp_network* net) { return net ? net->value.output_dim() : 0; }

int pwmlp_network_n(const pwmlp_network* net) { return net ? net->value.info().n : 0; }

const char* pwmlp_network_method(const pwmlp_network* net) {
  return net ? net->value.info().method.c_str() : nullptr;
}

const double* pwmlp_network_tap_weights(const pwmlp_network* net, size_t k) {
  if (net == nullptr || k >= net->value.output_dim()) return nullptr;
  return net->value.outputs()[k].weights.data();
}

double pwmlp_network_tap_bias(const pwmlp_network* net, size_t k) {
  if (net == nullptr || k >= net->value.output_dim()) return std::numeric_limits<double>::quiet_NaN();
  return net->value.outputs()[k].bias;
}

pwmlp_status pwmlp_network_forward(const pwmlp_network* net, double x, double* out, size_t out_len) {
  return guarded([&] {
    require(net, "network");
    require(out, "out");
    if (out_len < net->value.output_dim()) throw pwmlp::UsageError("output buffer too small");
    const auto y = net->value.forward(x);
    std::memcpy(out, y.data(), y.size() * sizeof(double));
  });
}

pwmlp_status pwmlp_network_forward_grid(const pwmlp_network* net, const double* xs, size_t count, double* out,
                                        size_t out_len) {
  return guarded([&] {
    require(net, "network");
    if (count == 0) throw pwmlp::UsageError("evaluation grid is empty");
    require(xs, "xs");
    require(out, "out");
    if (out_len < count * net->value.output_dim()) throw pwmlp::UsageError("output buffer too small");
    const auto m = net->value.forward_grid(std::span<const double>(xs, count));
    std::memcpy(out, m.data().data(), m.data().size() * sizeof(double));
  });
}

void pwmlp_network_free(pwmlp_network* net) { delete net; }

pwmlp_status pwmlp_verify(const char* method, const pwmlp_samples* samples, double slope, size_t grid_size,
                          double tol, const char* oracle_method, pwmlp_equivalence* out) {
  return guarded([&] {
    require(samples, "samples");
    require(out, "out");
    const auto m = method_of(method);
    const auto om = oracle_method ? method_of(oracle_method) : m;
    const auto net = pwmlp::build_network(m, samples->value, slope);
    const auto model = pwmlp::matching_oracle(om, samples->value, slope);
    const auto r = pwmlp::verify_equivalence(net, model, grid_size, tol);
    *out = pwmlp_equivalence{r.passed ? 1 : 0, r.max_deviation, r.worst_x, r.worst_output};
  });
}

pwmlp_status pwmlp_convergence(const char* method, const char* target, const int* n_values, size_t count,
                               size_t grid_size, double slope, pwmlp_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (count > 0) require(n_values, "n_values");
    const auto report = pwmlp::estimate_order(method_of(method), target_of(target),
                                              std::span<const int>(n_values, count), grid_size, slope);
    *out = new pwmlp_report{report};
  });
}

size_t pwmlp_report_size(const pwmlp_report* report) { return report ? report->value.n_values.size() : 0; }

int pwmlp_report_n(const pwmlp_report* report, size_t i) {
  return report && i < report->value.n_values.size() ? report->value.n_values[i] : 0;
}

double pwmlp_report_sup_error(const pwmlp_report* report, size_t i) {
  return report && i < report->value.sup_errors.size() ? report->value.sup_errors[i]
                                                       : std::numeric_limits<double>::quiet_NaN();
}

double pwmlp_report_l2_error(const pwmlp_report* report, size_t i) {
  return report && i < report->value.l2_errors.size() ? report->value.l2_errors[i]
                                                      : std::numeric_limits<double>::quiet_NaN();
}

int pwmlp_report_order_applicable(const pwmlp_report* report) {
  return report && report->value.fitted_order.has_value() ? 1 : 0;
}

double pwmlp_report_fitted_order(const pwmlp_report* report) {
  return report && report->value.fitted_order ? *report->value.fitted_order
                                              : std::numeric_limits<double>::quiet_NaN();
}

double pwmlp_report_r_squared(const pwmlp_report* report) {
  return report && report->value.fitted_order ? report->value.r_squared : std::numeric_limits<double>::quiet_NaN();
}

pwmlp_status pwmlp_report_write_csv(const pwmlp_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    write_text(path, pwmlp::convergence_csv(report->value));
  });
}

pwmlp_status pwmlp_report_write_json(const pwmlp_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    write_text(path, pwmlp::convergence_json(report->value));
  });
}

void pwmlp_report_free(pwmlp_report* report) { delete report; }

pwmlp_status pwmlp_fit_kernel(const char* kernel, double slope, int n, const double* xs, const double* ys,
                              size_t count, pwmlp_kernel_fit** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (count > 0) {
      require(xs, "xs");
      require(ys, "ys");
    }
    const auto k = kernel_of(kernel, slope);
    *out = new pwmlp_kernel_fit{pwmlp::fit_kernel_weights(std::span<const double>(xs, count),
                                                          std::span<const double>(ys, count), k,
                                                          pwmlp::KnotGrid(n))};
  });
}

pwmlp_status pwmlp_fit_kernel_csv(const char* kernel, double slope, int n, const char* csv_path,
                                  pwmlp_kernel_fit** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(csv_path, "csv_path");
    const auto k = kernel_of(kernel, slope);
    const pwmlp::KnotGrid grid(n);
    const auto dense = pwmlp::read_dense_csv(csv_path);
    *out = new pwmlp_kernel_fit{pwmlp::fit_kernel_weights(dense.xs, dense.ys, k, grid)};
  });
}

size_t pwmlp_kernel_fit_size(const pwmlp_kernel_fit* fit) { return fit ? fit->value.omega.size() : 0; }

const double* pwmlp_kernel_fit_omega(const pwmlp_kernel_fit* fit) {
  return fit ? fit->value.omega.data() : nullptr;
}

double pwmlp_kernel_fit_rms_residual(const pwmlp_kernel_fit* fit) {
  return fit ? fit->value.rms_residual : std::numeric_limits<double>::quiet_NaN();
}

pwmlp_status pwmlp_kernel_fit_write_json(const pwmlp_kernel_fit* fit, const char* path) {
  return guarded([&] {
    require(fit, "fit");
    const auto& f = fit->value;
    nlohmann::ordered_json j;
    switch (f.kernel.shape) {
      case pwmlp::KernelShape::Box: j["kernel"] = "box"; break;
      case pwmlp::KernelShape::Triangle: j["kernel"] = "triangle"; break;
      case pwmlp::KernelShape::CubicBump:
        j["kernel"] = "bump";
        j["inflection_slope"] = f.kernel.inflection_slope;
        break;
    }
    j["n"] = f.grid.n();
    j["omega"] = f.omega;
    j["rms_residual"] = f.rms_residual;
    write_text(path, j.dump(2) + "\n");
  });
}

void pwmlp_kernel_fit_free(pwmlp_kernel_fit* fit) { delete fit; }

size_t pwmlp_format_double(double v, char* buf, size_t len) {
  if (buf == nullptr) return 0;
  const std::string s = pwmlp::format_double(v);
  if (s.size() + 1 > len) return 0;
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return s.size();
}

}  // extern "C"
