#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace diskdist {

// Wrap an angle into the periodic interval (-pi, pi].
inline double normalize_angle(double theta) {
  double t = std::remainder(theta, 2.0 * std::numbers::pi);
  if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
  return t;
}

// Point rho * e^{i theta} of the closed unit disk in polar coordinates.
// Series evaluation requires rho < 1; the closed-form kernels additionally
// accept boundary points away from their pole.
struct PolarPoint {
  double rho;
  double theta;

  PolarPoint(double rho_, double theta_) : rho(rho_), theta(normalize_angle(theta_)) {
    if (!(rho >= 0.0 && rho <= 1.0) || !std::isfinite(theta_))
      throw std::domain_error("PolarPoint: rho must lie in [0, 1]");
  }

  std::complex<double> z() const { return std::polar(rho, theta); }
};

// Truncated power series sum_{k=0}^{K} c_k z^k of a function analytic on the
// open unit disk.
class TaylorSeries {
 public:
  explicit TaylorSeries(std::vector<std::complex<double>> coefficients)
      : c_(std::move(coefficients)) {
    if (c_.empty()) throw std::domain_error("TaylorSeries: empty coefficient list");
    for (const auto& c : c_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::domain_error("TaylorSeries: non-finite coefficient");
  }

  const std::vector<std::complex<double>>& coefficients() const { return c_; }
  int truncation_order() const { return static_cast<int>(c_.size()) - 1; }

  // A series is proper when it vanishes at the origin.
  bool is_proper() const { return c_[0] == std::complex<double>(0.0, 0.0); }

 private:
  std::vector<std::complex<double>> c_;
};

// Real trigonometric data alpha_0, {alpha_k}, {beta_k} of a function
// f(theta) = alpha_0/2 + sum_k [alpha_k cos(k theta) + beta_k sin(k theta)].
struct FourierSpectrum {
  double alpha0 = 0.0;
  std::vector<double> alphas;
  std::vector<double> betas;

  FourierSpectrum() = default;
  FourierSpectrum(double a0, std::vector<double> a, std::vector<double> b)
      : alpha0(a0), alphas(std::move(a)), betas(std::move(b)) {
    if (alphas.size() != betas.size())
      throw std::domain_error("FourierSpectrum: alphas and betas must have equal length");
  }

  int harmonics() const { return static_cast<int>(alphas.size()); }
};

inline std::complex<double> evaluate_series(const TaylorSeries& s, const PolarPoint& p) {
  if (p.rho >= 1.0)
    throw std::domain_error(
        "evaluate_series: rho must be < 1 (reach the boundary by extrapolation)");
  const std::complex<double> z = p.z();
  std::complex<double> acc(0.0, 0.0);
  const auto& c = s.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// c_k -> i k c_k, c_0 -> 0. Equivalent to d/dtheta at constant rho. Written
// componentwise so repeated application reproduces the closed-form kernel
// coefficients bit for bit.
inline TaylorSeries angular_derivative_series(const TaylorSeries& s) {
  std::vector<std::complex<double>> c = s.coefficients();
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double k_d = static_cast<double>(k);
    c[k] = std::complex<double>(-k_d * c[k].imag(), k_d * c[k].real());
  }
  return TaylorSeries(std::move(c));
}

// c_k -> c_k / (i k), c_0 -> 0. Inverse of the angular derivative on proper
// series.
inline TaylorSeries angular_primitive_series(const TaylorSeries& s) {
  std::vector<std::complex<double>> c = s.coefficients();
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    // z / (i k) = -i z / k, computed componentwise so that the derivative
    // round trip is exact whenever k * c_k is.
    const double k_d = static_cast<double>(k);
    c[k] = std::complex<double>(c[k].imag() / k_d, -c[k].real() / k_d);
  }
  return TaylorSeries(std::move(c));
}

// Exact termwise derivative of a spectrum: alpha_k' = k beta_k,
// beta_k' = -k alpha_k, and the constant mode drops.
inline FourierSpectrum spectrum_derivative(const FourierSpectrum& f) {
  FourierSpectrum d;
  d.alpha0 = 0.0;
  d.alphas.resize(f.alphas.size());
  d.betas.resize(f.betas.size());
  for (std::size_t k = 1; k <= f.alphas.size(); ++k) {
    d.alphas[k - 1] = static_cast<double>(k) * f.betas[k - 1];
    d.betas[k - 1] = -static_cast<double>(k) * f.alphas[k - 1];
  }
  return d;
}

inline FourierSpectrum spectrum_nth_derivative(FourierSpectrum f, int n) {
  for (int j = 0; j < n; ++j) f = spectrum_derivative(f);
  return f;
}

// c_0 = alpha_0 / 2, c_k = alpha_k - i beta_k.
inline TaylorSeries fourier_to_taylor(const FourierSpectrum& f) {
  std::vector<std::complex<double>> c(f.alphas.size() + 1);
  c[0] = std::complex<double>(f.alpha0 / 2.0, 0.0);
  for (std::size_t k = 0; k < f.alphas.size(); ++k)
    c[k + 1] = std::complex<double>(f.alphas[k], -f.betas[k]);
  return TaylorSeries(std::move(c));
}

// Inverse of fourier_to_taylor. A series whose c_0 has a nonzero imaginary
// part lies outside the real-part convention and is rejected rather than
// silently truncated.
inline FourierSpectrum taylor_to_fourier(const TaylorSeries& s) {
  const auto& c = s.coefficients();
  const double im0 = std::abs(c[0].imag());
  if (im0 > 1e-13 * std::max(1.0, std::abs(c[0])))
    throw std::domain_error("taylor_to_fourier: c_0 is not real (|Im c_0| = " +
                            std::to_string(im0) + ")");
  FourierSpectrum f;
  f.alpha0 = 2.0 * c[0].real();
  f.alphas.resize(c.size() - 1);
  f.betas.resize(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) {
    f.alphas[k - 1] = c[k].real();
    f.betas[k - 1] = -c[k].imag();
  }
  return f;
}

// Taylor coefficients of the kernel family: for n = 0 the delta kernel has
// c_0 = 1/(2 pi), c_k = e^{-i k theta1}/pi; for n >= 1 the n-th chain
// derivative has c_0 = 0, c_k = i^n k^n e^{-i k theta1}/pi.
inline TaylorSeries delta_taylor_coefficients(double theta1, int n, int K) {
  if (n < 0)
    throw std::domain_error(
        "delta_taylor_coefficients: n must be >= 0 (primitives are handled by "
        "angular_primitive_series or the piecewise calculus)");
  if (K < 1) throw std::domain_error("delta_taylor_coefficients: K must be >= 1");
  theta1 = normalize_angle(theta1);
  const double inv_pi = 1.0 / std::numbers::pi;
  std::vector<std::complex<double>> c(static_cast<std::size_t>(K) + 1);
  c[0] = (n == 0) ? std::complex<double>(0.5 * inv_pi, 0.0) : std::complex<double>(0.0, 0.0);
  for (int k = 1; k <= K; ++k) {
    // c_k of the delta itself, then n applications of c -> i k c using the
    // same componentwise form as angular_derivative_series, so the n-fold
    // derivative identity holds exactly.
    const double k_d = static_cast<double>(k);
    std::complex<double> ck(std::cos(k * theta1) * inv_pi, -std::sin(k * theta1) * inv_pi);
    for (int j = 0; j < n; ++j)
      ck = std::complex<double>(-k_d * ck.imag(), k_d * ck.real());
    c[static_cast<std::size_t>(k)] = ck;
  }
  return TaylorSeries(std::move(c));
}

// Smallest K with sum_{k>K} |c_k| rho^k <= eps for the kernel-family
// coefficients |c_k| = k^n / pi, bounded by a geometric tail estimate.
inline int delta_truncation_order(int n, double rho, double eps) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("delta_truncation_order: rho must be in [0, 1)");
  if (!(eps > 0.0)) throw std::domain_error("delta_truncation_order: eps must be positive");
  if (rho == 0.0) return 1;
  const double inv_pi = 1.0 / std::numbers::pi;
  for (int K = 1; K < 100000000; ++K) {
    const double k1 = K + 1;
    const double head = inv_pi * std::pow(k1, n) * std::pow(rho, k1);
    const double ratio = rho * std::pow((k1 + 1.0) / k1, n);
    if (ratio < 1.0 && head / (1.0 - ratio) <= eps) return K;
  }
  throw std::domain_error("delta_truncation_order: no feasible K");
}

}  // namespace diskdist
