// Command-line interface: evaluation, coefficients, actions, exact chains,
// classification and the self-verification suite. One JSON document per
// invocation on stdout; diagnostics on stderr. Exit codes: 0 success, 1
// domain error, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskdist/acceptance.hpp"
#include "diskdist/classify.hpp"
#include "diskdist/distributions.hpp"
#include "diskdist/json_io.hpp"
#include "diskdist/kernels.hpp"
#include "diskdist/piecewise.hpp"
#include "diskdist/series.hpp"

namespace {

using nlohmann::json;
using namespace diskdist;

// Input errors (malformed JSON, schema violations) exit with code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw InputError(what + ": unknown field \"" + it.key() + "\"");
  }
}

Rational parse_rational(const json& j, const std::string& what) {
  if (j.is_number()) {
    auto r = snap_rational(j.get<double>());
    if (!r) throw InputError(what + ": number is not close to a small rational");
    return *r;
  }
  if (j.is_object()) {
    require_keys(j, {"num", "den"}, what);
    if (!j.contains("num") || !j.contains("den"))
      throw InputError(what + ": rational needs \"num\" and \"den\"");
    return Rational(j.at("num").get<long long>(), j.at("den").get<long long>());
  }
  throw InputError(what + ": expected a number or {\"num\",\"den\"}");
}

PiScalar parse_exact(const json& j, const std::string& what) {
  if (j.is_array()) {
    PiScalar s;
    for (const auto& term : j) s += parse_exact(term, what);
    return s;
  }
  if (j.is_object() && j.contains("pi_power")) {
    require_keys(j, {"num", "den", "pi_power"}, what);
    return PiScalar(Rational(j.at("num").get<long long>(), j.at("den").get<long long>()),
                    j.at("pi_power").get<int>());
  }
  return PiScalar(parse_rational(j, what));
}

Angle parse_theta(const json& j, const std::string& what) {
  if (j.is_number()) {
    auto a = snap_angle(j.get<double>());
    if (!a)
      throw InputError(what +
                       ": theta must be (numerically) a rational multiple of pi for the "
                       "exact calculus");
    return *a;
  }
  return Angle(parse_rational(j, what));
}

FourierSpectrum parse_spectrum(const json& j) {
  require_keys(j, {"alpha0", "alphas", "betas"}, "fourier");
  FourierSpectrum f;
  f.alpha0 = j.value("alpha0", 0.0);
  if (j.contains("alphas")) f.alphas = j.at("alphas").get<std::vector<double>>();
  if (j.contains("betas")) f.betas = j.at("betas").get<std::vector<double>>();
  if (f.alphas.size() != f.betas.size())
    throw InputError("fourier: alphas and betas must have equal length");
  return f;
}

PiecewisePolyCircle parse_smooth(const json& j) {
  require_keys(j, {"points", "sections", "order"}, "smooth");
  if (!j.contains("points") || !j.contains("sections"))
    throw InputError("smooth: needs \"points\" and \"sections\"");
  std::vector<Angle> points;
  for (const auto& p : j.at("points")) points.push_back(parse_theta(p, "smooth.points"));
  std::vector<Polynomial<PiScalar>> sections;
  for (const auto& sec : j.at("sections")) {
    if (!sec.is_array()) throw InputError("smooth.sections: each section is a coefficient array");
    std::vector<PiScalar> coeffs;
    for (const auto& c : sec) coeffs.push_back(parse_exact(c, "smooth.sections"));
    sections.push_back(Polynomial<PiScalar>(std::move(coeffs)));
  }
  return PiecewisePolyCircle(std::move(points), std::move(sections));
}

DistributionalObject parse_descriptor(const std::string& text, bool allow_fourier) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("descriptor: malformed JSON (") + e.what() + ")");
  }
  require_keys(j, {"atoms", "smooth", "fourier"}, "descriptor");
  if (j.contains("fourier") && !allow_fourier)
    throw InputError("descriptor: \"fourier\" parts have no exact chain representation");
  DistributionalObject d;
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) {
      require_keys(a, {"theta", "order", "coeff"}, "atom");
      if (!a.contains("theta") || !a.contains("order") || !a.contains("coeff"))
        throw InputError("atom: needs \"theta\", \"order\" and \"coeff\"");
      const int order = a.at("order").get<int>();
      if (order < 0) throw InputError("atom: order must be >= 0");
      d.atoms.push_back(
          {parse_theta(a.at("theta"), "atom"), order, parse_exact(a.at("coeff"), "atom")});
    }
  }
  if (j.contains("smooth") && !j.at("smooth").is_null()) d.smooth = parse_smooth(j.at("smooth"));
  d.normalize();
  return d;
}

double env_tolerance() {
  if (const char* s = std::getenv("DISKDIST_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v > 0) return v;
  }
  return QuadratureConfig().tolerance;
}

void emit(const JsonWriter& w) { std::printf("%s\n", w.str().c_str()); }

int cmd_eval(int kernel, double theta1, double rho, double theta, bool proper) {
  const PolarPoint p(rho, theta);
  const std::complex<double> w =
      (kernel == 0 && !proper)
          ? delta_kernel_eval(p, theta1)
          : delta_derivative_kernel_eval(DeltaKernelSpec(theta1, kernel), p);
  JsonWriter out;
  out.begin_object();
  out.key("kernel").value(kernel);
  out.key("proper").value(proper || kernel > 0);
  out.key("theta1").value(normalize_angle(theta1));
  out.key("rho").value(rho);
  out.key("theta").value(normalize_angle(theta));
  out.key("w").begin_object();
  out.key("re").value(w.real());
  out.key("im").value(w.imag());
  out.end_object();
  out.key("u").value(w.real());
  out.key("v").value(w.imag());
  out.end_object();
  emit(out);
  return 0;
}

int cmd_coeffs(int kernel, double theta1, int order) {
  TaylorSeries s = delta_taylor_coefficients(theta1, kernel, order);
  FourierSpectrum f = taylor_to_fourier(s);
  JsonWriter out;
  out.begin_object();
  out.key("kernel").value(kernel);
  out.key("theta1").value(normalize_angle(theta1));
  out.key("K").value(order);
  out.key("taylor").begin_array();
  for (const auto& c : s.coefficients()) {
    out.begin_object();
    out.key("re").value(c.real());
    out.key("im").value(c.imag());
    out.end_object();
  }
  out.end_array();
  out.key("fourier").begin_object();
  out.key("alpha0").value(f.alpha0);
  out.key("alphas").begin_array();
  for (double a : f.alphas) out.value(a);
  out.end_array();
  out.key("betas").begin_array();
  for (double b : f.betas) out.value(b);
  out.end_array();
  out.end_object();
  out.end_object();
  emit(out);
  return 0;
}

int cmd_act(int kernel, double theta1, const std::string& g_text, double tolerance,
            int nodes) {
  json gj;
  try {
    gj = json::parse(g_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("--g: malformed JSON (") + e.what() + ")");
  }
  TestFunction g = TestFunction::from_spectrum(parse_spectrum(gj));
  QuadratureConfig cfg;
  cfg.tolerance = tolerance;
  cfg.node_count = nodes;
  ActionResult r = act(DeltaKernelSpec(theta1, kernel), g, cfg);
  JsonWriter out;
  out.begin_object();
  out.key("kernel").value(kernel);
  out.key("theta1").value(normalize_angle(theta1));
  out.key("value").value(r.value);
  out.key("error_estimate").value(r.error_estimate);
  out.key("converged").value(r.converged);
  out.key("table").begin_array();
  for (const auto& [rho, integral] : r.extrapolation_table) {
    out.begin_object();
    out.key("rho").value(rho);
    out.key("integral").value(integral);
    out.end_object();
  }
  out.end_array();
  out.end_object();
  emit(out);
  return 0;
}

int cmd_chain(int steps, const std::string& descriptor) {
  DistributionalObject d = parse_descriptor(descriptor, false);
  DistributionalObject result = primitive_chain(d, steps);
  JsonWriter out;
  write_object(out, result);
  emit(out);
  return 0;
}

int cmd_derive(int times, const std::string& descriptor) {
  DistributionalObject d = parse_descriptor(descriptor, false);
  DistributionalObject result = distributional_derivative(d, times);
  JsonWriter out;
  write_object(out, result);
  emit(out);
  return 0;
}

int cmd_classify(int kernel, bool log_primitive, int power, double theta1) {
  std::function<std::complex<double>(const PolarPoint&)> evaluator;
  if (log_primitive) {
    evaluator = [theta1](const PolarPoint& p) { return log_primitive_eval(p, theta1); };
  } else if (power > 0) {
    evaluator = [power](const PolarPoint& p) {
      return std::pow(p.z(), static_cast<double>(power));
    };
  } else {
    evaluator = [kernel, theta1](const PolarPoint& p) {
      return delta_derivative_kernel_eval(DeltaKernelSpec(theta1, kernel), p);
    };
  }
  SingularityReport r = hardness_probe(evaluator, theta1);
  JsonWriter out;
  out.begin_object();
  out.key("theta1").value(r.theta1);
  out.key("verdict").value(to_string(r.verdict));
  out.key("degree").value(r.degree);
  out.key("fitted_exponent").value(r.fitted_exponent);
  out.key("log_flag").value(r.log_flag);
  out.key("samples").begin_array();
  for (const auto& [rho, mag] : r.samples) {
    out.begin_object();
    out.key("rho").value(rho);
    out.key("magnitude").value(mag);
    out.end_object();
  }
  out.end_array();
  out.end_object();
  emit(out);
  return 0;
}

// Timings are omitted here so the output stays byte-deterministic; the
// acceptance test binary prints them.
int cmd_verify() {
  const auto results = run_acceptance();
  for (const auto& r : results)
    std::printf("%-4s %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Singular distributions on the unit circle as boundary limits of analytic "
      "functions on the disk"};
  app.require_subcommand(1);

  int kernel = 0;
  double theta1 = 0.0, rho = 0.0, theta = 0.0;
  bool proper = false;
  int order = 16, steps = 1, times = 1, power = 0, nodes = 256;
  bool log_primitive = false;
  double tolerance = env_tolerance();
  std::string g_text;
  std::string descriptor = R"({"atoms":[{"theta":0,"order":0,"coeff":1}]})";

  auto* eval = app.add_subcommand("eval", "Evaluate a kernel at a disk point");
  eval->add_option("--kernel", kernel, "Derivative order n (0 = delta kernel)")
      ->check(CLI::NonNegativeNumber);
  eval->add_option("--theta1", theta1, "Singular point (radians)");
  eval->add_option("--rho", rho, "Radius in [0, 1]")->required();
  eval->add_option("--theta", theta, "Angle (radians)")->required();
  eval->add_flag("--proper", proper, "Use the proper (zero-average) kernel for n = 0");

  auto* coeffs = app.add_subcommand("coeffs", "Taylor and Fourier coefficients");
  coeffs->add_option("--kernel", kernel, "Derivative order n")->check(CLI::NonNegativeNumber);
  coeffs->add_option("--theta1", theta1, "Singular point (radians)");
  coeffs->add_option("-K,--order", order, "Truncation order K")->check(CLI::PositiveNumber);

  auto* act_cmd = app.add_subcommand("act", "Apply delta^(n) to a test function");
  act_cmd->add_option("--kernel", kernel, "Derivative order n")->check(CLI::NonNegativeNumber);
  act_cmd->add_option("--theta1", theta1, "Singular point (radians)");
  act_cmd->add_option("--g", g_text, "Test function spectrum JSON {\"alpha0\",\"alphas\",\"betas\"}")
      ->required();
  act_cmd->add_option("--tolerance", tolerance,
                      "Convergence tolerance (default 1e-6, or DISKDIST_TOLERANCE)");
  act_cmd->add_option("--nodes", nodes, "Initial quadrature node count (power of two)");

  auto* chain = app.add_subcommand("chain", "Exact repeated angular primitive");
  chain->add_option("--steps", steps, "Number of integrations")->check(CLI::PositiveNumber);
  chain->add_option("--descriptor", descriptor, "Distribution descriptor JSON");

  auto* derive = app.add_subcommand("derive", "Exact distributional derivative");
  derive->add_option("--times", times, "Number of differentiations")->check(CLI::PositiveNumber);
  derive->add_option("--descriptor", descriptor, "Distribution descriptor JSON");

  auto* classify = app.add_subcommand("classify", "Probe the hardness of a singularity");
  classify->add_option("--kernel", kernel, "Probe the order-n kernel")
      ->check(CLI::NonNegativeNumber);
  classify->add_flag("--log-primitive", log_primitive, "Probe the logarithmic primitive");
  classify->add_option("--power", power, "Probe the entire function z^m (soft)")
      ->check(CLI::PositiveNumber);
  classify->add_option("--theta1", theta1, "Singular point (radians)");

  app.add_subcommand("verify", "Run the self-verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("eval")) return cmd_eval(kernel, theta1, rho, theta, proper);
    if (app.got_subcommand("coeffs")) return cmd_coeffs(kernel, theta1, order);
    if (app.got_subcommand("act")) return cmd_act(kernel, theta1, g_text, tolerance, nodes);
    if (app.got_subcommand("chain")) return cmd_chain(steps, descriptor);
    if (app.got_subcommand("derive")) return cmd_derive(times, descriptor);
    if (app.got_subcommand("classify"))
      return cmd_classify(kernel, log_primitive, power, theta1);
    if (app.got_subcommand("verify")) return cmd_verify();
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
