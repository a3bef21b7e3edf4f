#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "diskdist/polynomial.hpp"
#include "diskdist/rational.hpp"
#include "diskdist/series.hpp"

namespace diskdist {

// Kernel of the n-th derivative of the circle delta concentrated at
// z1 = e^{i theta1}; n = 0 is the delta itself.
struct DeltaKernelSpec {
  double theta1;
  int order_n;

  DeltaKernelSpec(double t1, int n) : theta1(normalize_angle(t1)), order_n(n) {
    if (n < 0) throw std::domain_error("DeltaKernelSpec: order_n must be >= 0");
  }
};

namespace detail {

// 1 - q for q = rho e^{i dtheta}, assembled from 1 - rho and the half-angle
// sine so that both components keep full relative accuracy near the pole:
//   Re(1 - q) = (1 - rho) + 2 rho sin^2(dtheta/2),  Im(1 - q) = -rho sin(dtheta).
inline std::complex<double> one_minus_q(double rho, double sin_half, double cos_half) {
  return {(1.0 - rho) + 2.0 * rho * sin_half * sin_half,
          -2.0 * rho * sin_half * cos_half};
}

inline std::complex<double> q_from_half_angle(double rho, double sin_half, double cos_half) {
  return {rho * (1.0 - 2.0 * sin_half * sin_half), 2.0 * rho * sin_half * cos_half};
}

}  // namespace detail

// Numerator polynomial A_n(q) of the order-n kernel written as
//   w = (i^n / pi) q A_n(q) / (1 - q)^{n+1},
// generated by the recurrence A_{n+1} = (1 + n q) A_n + q (1 - q) A_n'.
// A_1 = 1, A_2 = 1 + q, A_3 = 1 + 4q + q^2; A_n(1) = n!.
inline Polynomial<Rational> eulerian_numerator(int n) {
  if (n < 1) throw std::domain_error("eulerian_numerator: n must be >= 1");
  Polynomial<Rational> a(std::vector<Rational>{Rational(1)});
  const Polynomial<Rational> q(std::vector<Rational>{Rational(0), Rational(1)});
  const Polynomial<Rational> q_one_minus_q(
      std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
  for (int m = 1; m < n; ++m) {
    Polynomial<Rational> one_plus_mq(
        std::vector<Rational>{Rational(1), Rational(m)});
    a = one_plus_mq * a + q_one_minus_q * a.derivative();
  }
  return a;
}

// Exact closed form of a chain kernel as a rational function of q = z/z1:
//   value = scalar * pi^{pi_power} * q * A(q) / (1 - q)^{pole_order}.
// The proper delta kernel (order 0) is scalar 1, A = 1, pole order 1; the
// order-n kernel is scalar i^n, A = A_n, pole order n + 1.
class RationalKernel {
 public:
  RationalKernel(GaussRat scalar, int pi_power, Polynomial<Rational> numerator,
                 int pole_order)
      : scalar_(scalar), pi_power_(pi_power), a_(std::move(numerator)), pole_(pole_order) {
    if (pole_ < 1) throw std::domain_error("RationalKernel: pole order must be >= 1");
    if (a_.eval_exact(Rational(1)).is_zero())
      throw std::domain_error("RationalKernel: numerator vanishes at q = 1");
  }

  static RationalKernel for_order(int n) {
    if (n < 0) throw std::domain_error("RationalKernel: order must be >= 0");
    GaussRat scalar(Rational(1));
    for (int j = 0; j < (n & 3); ++j) scalar = scalar.times_i();
    Polynomial<Rational> a =
        (n == 0) ? Polynomial<Rational>(std::vector<Rational>{Rational(1)})
                 : eulerian_numerator(n);
    return RationalKernel(scalar, -1, std::move(a), n + 1);
  }

  const GaussRat& scalar() const { return scalar_; }
  int pi_power() const { return pi_power_; }
  const Polynomial<Rational>& numerator() const { return a_; }
  int pole_order() const { return pole_; }

  // Exact angular derivative i q d/dq applied through the quotient rule:
  //   d/dq [N / (1-q)^m] = (N'(1-q) + m N) / (1-q)^{m+1}  with N = q A.
  // The extra factor q is divided back out of the new numerator.
  RationalKernel angular_derivative() const {
    const Polynomial<Rational> q(std::vector<Rational>{Rational(0), Rational(1)});
    const Polynomial<Rational> one_minus_q(
        std::vector<Rational>{Rational(1), Rational(-1)});
    Polynomial<Rational> n_poly = q * a_;
    Polynomial<Rational> numerator =
        q * (n_poly.derivative() * one_minus_q + n_poly * Rational(pole_));
    Polynomial<Rational> a_new = divide_exact(numerator, q);
    return RationalKernel(scalar_.times_i(), pi_power_, std::move(a_new), pole_ + 1);
  }

  std::complex<double> eval(double rho, double delta_theta) const {
    const double half = 0.5 * delta_theta;
    const double sh = std::sin(half), ch = std::cos(half);
    const std::complex<double> omq = detail::one_minus_q(rho, sh, ch);
    if (omq == std::complex<double>(0.0, 0.0))
      throw std::domain_error("RationalKernel: evaluation at the pole z = z1");
    const std::complex<double> q = detail::q_from_half_angle(rho, sh, ch);
    std::complex<double> num(0.0, 0.0);
    const auto& c = a_.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) num = num * q + c[k].value();
    std::complex<double> denom(1.0, 0.0);
    for (int j = 0; j < pole_; ++j) denom *= omq;
    return scalar_.value() * std::pow(std::numbers::pi, pi_power_) * q * num / denom;
  }

  friend bool operator==(const RationalKernel& a, const RationalKernel& b) {
    return a.scalar_ == b.scalar_ && a.pi_power_ == b.pi_power_ && a.a_ == b.a_ &&
           a.pole_ == b.pole_;
  }

 private:
  GaussRat scalar_;
  int pi_power_;
  Polynomial<Rational> a_;
  int pole_;
};

// Full delta kernel w = 1/(2 pi) - (1/pi) z/(z - z1), evaluated as
// 1/(2 pi) + (1/pi) q/(1 - q). Defined on the closed disk away from z1.
inline std::complex<double> delta_kernel_eval(const PolarPoint& p, double theta1) {
  const double dtheta = normalize_angle(p.theta - theta1);
  if (p.rho == 1.0 && dtheta == 0.0)
    throw std::domain_error("delta_kernel_eval: z = z1 is the pole");
  const double half = 0.5 * dtheta;
  const double sh = std::sin(half), ch = std::cos(half);
  const std::complex<double> omq = detail::one_minus_q(p.rho, sh, ch);
  const std::complex<double> q = detail::q_from_half_angle(p.rho, sh, ch);
  const double inv_pi = 1.0 / std::numbers::pi;
  return std::complex<double>(0.5 * inv_pi, 0.0) + inv_pi * (q / omq);
}

// Real and imaginary parts of the delta kernel:
//   u = 1/(2 pi) - (1/pi) rho (rho - cos dtheta) / D,
//   v = (1/pi) rho sin(dtheta) / D,   D = rho^2 + 1 - 2 rho cos(dtheta).
// Algebraically u = (1 - rho^2) / (2 pi D), the Poisson form.
inline std::pair<double, double> delta_boundary_parts(double rho, double theta,
                                                      double theta1) {
  const double dtheta = normalize_angle(theta - theta1);
  if (rho == 1.0 && dtheta == 0.0)
    throw std::domain_error("delta_boundary_parts: z = z1 is the pole");
  const double half = 0.5 * dtheta;
  const double sh = std::sin(half), ch = std::cos(half);
  const double cos_d = 1.0 - 2.0 * sh * sh;
  const double sin_d = 2.0 * sh * ch;
  const double d = (1.0 - rho) * (1.0 - rho) + 4.0 * rho * sh * sh;
  const double inv_pi = 1.0 / std::numbers::pi;
  const double u = 0.5 * inv_pi - inv_pi * rho * (rho - cos_d) / d;
  const double v = inv_pi * rho * sin_d / d;
  return {u, v};
}

// For n = 0 returns the proper kernel -(1/pi) z/(z - z1) (the chain member,
// without the 1/(2 pi) constant); for n >= 1 the order-n chain kernel.
inline std::complex<double> delta_derivative_kernel_eval(const DeltaKernelSpec& spec,
                                                         const PolarPoint& p) {
  const double dtheta = normalize_angle(p.theta - spec.theta1);
  if (p.rho == 1.0 && dtheta == 0.0)
    throw std::domain_error("delta_derivative_kernel_eval: z = z1 is the pole");
  return RationalKernel::for_order(spec.order_n).eval(p.rho, dtheta);
}

// First angular primitive of the proper delta kernel:
//   w = (i/pi) Log((z1 - z)/z1) = (i/pi) Log(1 - q),
// principal branch; Re(1 - q) > 0 on the open disk so the cut is never
// crossed. Vanishes at z = 0.
inline std::complex<double> log_primitive_eval(const PolarPoint& p, double theta1) {
  const double dtheta = normalize_angle(p.theta - theta1);
  if (p.rho == 1.0 && dtheta == 0.0)
    throw std::domain_error("log_primitive_eval: z = z1 is the singular point");
  if (p.rho == 0.0) return {0.0, 0.0};
  const double half = 0.5 * dtheta;
  const std::complex<double> omq =
      detail::one_minus_q(p.rho, std::sin(half), std::cos(half));
  const std::complex<double> log_val = std::log(omq);
  const double inv_pi = 1.0 / std::numbers::pi;
  return {-inv_pi * log_val.imag(), inv_pi * log_val.real()};
}

}  // namespace diskdist
