#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diskdist/kernels.hpp"
#include "diskdist/series.hpp"

namespace diskdist {

// Raised when a product of distributions has no definition, e.g. two singular
// atoms sharing the same singular point.
class UndefinedProductError : public std::domain_error {
 public:
  explicit UndefinedProductError(const std::string& what) : std::domain_error(what) {}
};

// Raised for products that are meaningful but outside the implemented cases
// (derivative atoms need Leibniz correction terms).
class UnsupportedProductError : public std::domain_error {
 public:
  explicit UnsupportedProductError(const std::string& what) : std::domain_error(what) {}
};

// Trigonometric-polynomial test function together with its disk extension.
struct TestFunction {
  FourierSpectrum spectrum;
  TaylorSeries series;

  static TestFunction from_spectrum(FourierSpectrum f) {
    TaylorSeries s = fourier_to_taylor(f);
    return TestFunction{std::move(f), std::move(s)};
  }

  // g(theta) on the unit circle, evaluated from the finite spectrum.
  double boundary_value(double theta) const {
    double v = spectrum.alpha0 / 2.0;
    for (int k = 1; k <= spectrum.harmonics(); ++k)
      v += spectrum.alphas[k - 1] * std::cos(k * theta) +
           spectrum.betas[k - 1] * std::sin(k * theta);
    return v;
  }

  // Harmonic extension u_gamma(rho, theta) = Re w_gamma(rho e^{i theta}).
  double disk_value(double rho, double theta) const {
    return evaluate_series(series, PolarPoint(rho, theta)).real();
  }
};

struct QuadratureConfig {
  int node_count = 256;                 // power of two, >= 16
  std::vector<double> rho_ladder;       // increasing, all in (0, 1)
  double tolerance = 1e-6;

  QuadratureConfig() : rho_ladder(default_rho_ladder()) {}

  static std::vector<double> default_rho_ladder() {
    std::vector<double> ladder;
    for (int j = 2; j <= 12; ++j) ladder.push_back(1.0 - std::ldexp(1.0, -j));
    return ladder;
  }

  void validate() const {
    if (node_count < 16 || (node_count & (node_count - 1)) != 0)
      throw std::domain_error("QuadratureConfig: node_count must be a power of two >= 16");
    if (!(tolerance > 0.0)) throw std::domain_error("QuadratureConfig: tolerance must be positive");
    double prev = 0.0;
    for (double r : rho_ladder) {
      if (!(r > prev && r < 1.0))
        throw std::domain_error("QuadratureConfig: rho ladder must be strictly increasing in (0, 1)");
      prev = r;
    }
  }
};

namespace detail {

struct KahanAccumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Periodic trapezoid sum over theta_i = -pi + i h, refined by node doubling
// (previously computed samples are reused) until two successive values agree
// to stop_tol. Deterministic: fixed evaluation and summation order.
template <typename F>
double doubling_trapezoid(const F& f, int n_start, int n_cap, double stop_tol,
                          bool& converged, int& n_used) {
  const double two_pi = 2.0 * std::numbers::pi;
  KahanAccumulator acc;
  int n = n_start;
  for (int i = 0; i < n; ++i) acc.add(f(-std::numbers::pi + i * (two_pi / n)));
  double t_prev = (two_pi / n) * acc.sum;
  while (n < n_cap) {
    const double h_new = std::numbers::pi / n;
    for (int i = 0; i < n; ++i) acc.add(f(-std::numbers::pi + (2 * i + 1) * h_new));
    n *= 2;
    const double t = (two_pi / n) * acc.sum;
    if (std::abs(t - t_prev) <= stop_tol) {
      converged = true;
      n_used = n;
      return t;
    }
    t_prev = t;
  }
  converged = false;
  n_used = n;
  return t_prev;
}

// Integrand rho * u_gamma * u_kernel at fixed rho, with the spectrum
// premultiplied by rho^k (exact harmonic extension) and the kernel evaluated
// from its closed form via half-angle quantities.
struct ActIntegrand {
  double rho;
  double theta1;
  double cos_t1, sin_t1;
  int kernel_order;                 // 0 means the full delta kernel
  std::vector<double> a_coeffs;     // A_r(q) coefficients for order >= 1
  double a0_half_rho;               // rho * alpha0 / 2
  std::vector<double> ga, gb;       // rho * rho^k * (alpha_k, beta_k)

  ActIntegrand(double rho_, double theta1_, int order, const FourierSpectrum& g)
      : rho(rho_), theta1(theta1_), cos_t1(std::cos(theta1_)), sin_t1(std::sin(theta1_)),
        kernel_order(order) {
    if (order >= 1) {
      const Polynomial<Rational> a = eulerian_numerator(order);
      for (const Rational& c : a.coefficients()) a_coeffs.push_back(c.value());
    }
    a0_half_rho = rho * g.alpha0 / 2.0;
    int last = 0;
    for (int k = 1; k <= g.harmonics(); ++k)
      if (g.alphas[k - 1] != 0.0 || g.betas[k - 1] != 0.0) last = k;
    double rk = rho;
    for (int k = 1; k <= last; ++k) {
      rk *= rho;  // rho * rho^k
      ga.push_back(rk * g.alphas[k - 1]);
      gb.push_back(rk * g.betas[k - 1]);
    }
  }

  double operator()(double theta) const {
    constexpr double inv_pi = 1.0 / std::numbers::pi;
    const double half = 0.5 * (theta - theta1);
    const double sh = std::sin(half), ch = std::cos(half);
    const double cos_d = 1.0 - 2.0 * sh * sh;
    const double sin_d = 2.0 * sh * ch;

    // Kernel real part.
    const double or_ = (1.0 - rho) + 2.0 * rho * sh * sh;
    const double oi = -rho * sin_d;
    const double qr = rho * cos_d, qi = rho * sin_d;
    double u;
    if (kernel_order == 0) {
      const double d = or_ * or_ + oi * oi;
      u = 0.5 * inv_pi + inv_pi * (qr * or_ + qi * oi) / d;
    } else {
      double nr = 0.0, ni = 0.0;  // A(q)
      for (std::size_t k = a_coeffs.size(); k-- > 0;) {
        const double tr = nr * qr - ni * qi + a_coeffs[k];
        ni = nr * qi + ni * qr;
        nr = tr;
      }
      double mr = qr * nr - qi * ni;  // q A(q)
      double mi = qr * ni + qi * nr;
      double dr = or_, di = oi;       // (1-q)^{r+1}
      for (int j = 0; j < kernel_order; ++j) {
        const double tr = dr * or_ - di * oi;
        di = dr * oi + di * or_;
        dr = tr;
      }
      const double dd = dr * dr + di * di;
      const double zr = (mr * dr + mi * di) / dd * inv_pi;
      const double zi = (mi * dr - mr * di) / dd * inv_pi;
      switch (kernel_order & 3) {
        case 0: u = zr; break;
        case 1: u = -zi; break;
        case 2: u = -zr; break;
        default: u = zi; break;
      }
    }

    // rho * u_gamma via the harmonic recurrence on cos/sin(k theta).
    double v = a0_half_rho;
    if (!ga.empty()) {
      const double c1 = cos_d * cos_t1 - sin_d * sin_t1;
      const double s1 = sin_d * cos_t1 + cos_d * sin_t1;
      double ck = c1, sk = s1;
      v += ga[0] * ck + gb[0] * sk;
      for (std::size_t k = 1; k < ga.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        v += ga[k] * ck + gb[k] * sk;
      }
    }
    return v * u;
  }
};

// Absolute rounding-noise bound for the order-r kernel integrand at radius
// rho: eps * (2 r!/pi) (1-rho)^{-r} * max(1, sum |g|), padded by 8.
inline double rung_noise_estimate(int r, double rho, const FourierSpectrum& g) {
  double gsum = std::abs(g.alpha0) / 2.0;
  for (std::size_t k = 0; k < g.alphas.size(); ++k)
    gsum += std::abs(g.alphas[k]) + std::abs(g.betas[k]);
  double fact = 1.0;
  for (int j = 2; j <= r; ++j) fact *= j;
  const double s = 1.0 - rho;
  return 8.0 * std::numeric_limits<double>::epsilon() * (2.0 * fact / std::numbers::pi) *
         std::pow(s, -r) * std::max(1.0, gsum);
}

}  // namespace detail

// Periodic composite trapezoid rule over (-pi, pi] at cfg.node_count nodes.
// Spectrally accurate for smooth periodic integrands.
inline double circle_integral(const std::function<double(double)>& integrand,
                              const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = cfg.node_count;
  const double two_pi = 2.0 * std::numbers::pi;
  detail::KahanAccumulator acc;
  for (int i = 0; i < n; ++i) {
    const double theta = -std::numbers::pi + i * (two_pi / n);
    const double f = integrand(theta);
    if (!std::isfinite(f))
      throw std::domain_error("circle_integral: integrand not finite at node " +
                              std::to_string(i) + " of " + std::to_string(n) +
                              " (theta = " + std::to_string(theta) + ")");
    acc.add(f);
  }
  return (two_pi / n) * acc.sum;
}

// Polynomial extrapolation of a ladder of (rho_j, value_j) to rho = 1, done
// by Neville's scheme in the variable x = 1 - rho at x = 0. The error
// estimate is the difference of the last two diagonal extrapolants.
inline std::pair<double, double> rho_extrapolate(
    const std::vector<std::pair<double, double>>& table) {
  const std::size_t n = table.size();
  if (n < 3) throw std::domain_error("rho_extrapolate: need at least 3 ladder entries");
  std::vector<double> x(n), t(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && !(table[j].first > table[j - 1].first))
      throw std::domain_error("rho_extrapolate: rho ladder must be strictly increasing");
    if (!(table[j].first < 1.0))
      throw std::domain_error("rho_extrapolate: rho must be < 1");
    x[j] = 1.0 - table[j].first;
    t[j] = table[j].second;
  }
  double last = t[0], prev = t[0];
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i)
      t[i] = t[i + 1] + (t[i + 1] - t[i]) * (-x[i + level]) / (x[i + level] - x[i]);
    prev = last;
    last = t[0];
  }
  return {last, std::abs(last - prev)};
}

// Estimate of a distribution applied to a test function: the ladder of circle
// integrals inside the disk and their extrapolated rho -> 1 limit.
struct ActionResult {
  double value = 0.0;
  std::vector<std::pair<double, double>> extrapolation_table;
  double error_estimate = 0.0;
  bool converged = false;
};

// Action of delta^{(n)}(theta - theta1) on g: the rho -> 1 limit of
//   I(rho) = integral rho u_gamma(rho, theta) u_{delta^{n'}}(rho, theta, theta1) dtheta,
// which converges to (-1)^n g^{(n)}(theta1). Each rung is integrated by the
// doubling trapezoid rule; when the order-n integrand is too ill-conditioned
// for double precision at large rho (its terms grow like (1-rho)^{-n} while
// the integral stays O(1)), the rung is first transformed by exact
// integration by parts, which moves derivatives onto the test function
// without changing the integral's value.
inline ActionResult act(const DeltaKernelSpec& spec, const TestFunction& g,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  if (cfg.rho_ladder.size() < 3)
    throw std::domain_error("act: rho ladder needs at least 3 rungs for extrapolation");
  const double stop_tol = 0.1 * cfg.tolerance;
  const int n_cap = 1 << 22;

  ActionResult result;
  bool rungs_ok = true;
  int n_start = cfg.node_count;
  for (double rho : cfg.rho_ladder) {
    // Smallest parts-reduction m whose residual kernel order n - m keeps
    // rounding noise well below the doubling-stop threshold, so the node
    // doubling terminates on truncation decay rather than on noise.
    FourierSpectrum gm = g.spectrum;
    int m = 0;
    while (m < spec.order_n &&
           detail::rung_noise_estimate(spec.order_n - m, rho, gm) > 0.05 * stop_tol) {
      gm = spectrum_derivative(gm);
      ++m;
    }
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    detail::ActIntegrand integrand(rho, spec.theta1, spec.order_n - m, gm);
    bool conv = false;
    int n_used = 0;
    const double t =
        detail::doubling_trapezoid(integrand, n_start, n_cap, stop_tol, conv, n_used);
    rungs_ok = rungs_ok && conv;
    result.extrapolation_table.emplace_back(rho, sign * t);
    n_start = std::max(cfg.node_count, n_used / 2);
  }

  auto [limit, extrap_err] = rho_extrapolate(result.extrapolation_table);
  result.value = limit;
  result.error_estimate = extrap_err + 0.5 * stop_tol;
  result.converged = rungs_ok && result.error_estimate <= cfg.tolerance;
  return result;
}

// Singular atom coeff * delta^{(order)}(theta - theta1) on the numeric side.
struct WeightedAtom {
  double theta1;
  int order;
  double coeff;
};

// g(theta) delta(theta - theta1) = g(theta1) delta(theta - theta1): scaling
// the atom by the boundary value of g at the singular point. Only order 0 is
// defined here; derivative atoms would pick up Leibniz terms.
inline WeightedAtom product_with_continuous(const TestFunction& g, const WeightedAtom& atom) {
  if (atom.order != 0)
    throw UnsupportedProductError(
        "product_with_continuous: only delta atoms (order 0) are supported");
  return WeightedAtom{atom.theta1, 0, atom.coeff * g.boundary_value(atom.theta1)};
}

// Product of two singular atoms. Coinciding singular points have no defined
// product; disjoint points annihilate (each atom sits where the other
// vanishes).
inline WeightedAtom product_of_atoms(const WeightedAtom& a, const WeightedAtom& b) {
  if (normalize_angle(a.theta1) == normalize_angle(b.theta1))
    throw UndefinedProductError(
        "product_of_atoms: product of two singular distributions at the same point is "
        "undefined");
  return WeightedAtom{a.theta1, 0, 0.0};
}

}  // namespace diskdist
