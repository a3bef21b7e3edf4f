#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "diskdist/rational.hpp"

namespace diskdist {

// Dense univariate polynomial over an exact coefficient ring T (Rational,
// GaussRat or PiScalar). Coefficients are stored in ascending order with no
// trailing zeros; the zero polynomial has an empty coefficient list.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Polynomial(T constant) : c_{std::move(constant)} { trim(); }

  static Polynomial zero() { return Polynomial(); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<T>& coefficients() const { return c_; }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  template <typename U, typename Conv>
  U eval(const U& x, Conv conv) const {
    U acc = U{};
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + conv(c_[k]);
    return acc;
  }

  // Evaluation inside the coefficient ring itself.
  T eval_exact(const T& x) const {
    T acc = T(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long long>(k));
    return Polynomial(std::move(d));
  }

  // Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    if (c_.empty()) return Polynomial();
    std::vector<T> a(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
      a[k + 1] = c_[k] * Rational(1, static_cast<long long>(k) + 1);
    return Polynomial(std::move(a));
  }

  // P(x + delta) as a polynomial in x, computed by Horner expansion.
  Polynomial shifted(const T& delta) const {
    Polynomial result;
    Polynomial x_plus_delta(std::vector<T>{delta, T(1)});
    for (std::size_t k = c_.size(); k-- > 0;)
      result = result * x_plus_delta + Polynomial(c_[k]);
    return result;
  }

  Polynomial operator-() const {
    std::vector<T> r(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] = -c_[k];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] = r[k] + a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] = r[k] + b.c_[k];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const T& s) {
    std::vector<T> r(a.c_.size());
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] = a.c_[k] * s;
    return Polynomial(std::move(r));
  }

  // Exact division by a monic-up-to-units divisor; throws if the division
  // leaves a remainder. Used to cancel known common factors.
  friend Polynomial divide_exact(const Polynomial& num, const Polynomial& div) {
    if (div.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
    std::vector<T> rem = num.c_;
    std::vector<T> q(rem.size() >= div.c_.size() ? rem.size() - div.c_.size() + 1 : 0, T(0));
    const T& lead = div.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
      T factor = divide_coeff(rem[k + div.c_.size() - 1], lead);
      q[k] = factor;
      for (std::size_t j = 0; j < div.c_.size(); ++j)
        rem[k + j] = rem[k + j] - factor * div.c_[j];
    }
    for (const T& r : rem)
      if (!(r == T(0))) throw std::domain_error("Polynomial: inexact division");
    return Polynomial(std::move(q));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  static T divide_coeff(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Rational>) {
      return a / b;
    } else {
      // GaussRat division by a Gaussian rational unit or rational scalar.
      static_assert(std::is_same_v<T, GaussRat>, "divide_exact: unsupported ring");
      Rational n2 = b.re * b.re + b.im * b.im;
      GaussRat conj(b.re, -b.im);
      GaussRat prod = a * conj;
      return GaussRat(prod.re / n2, prod.im / n2);
    }
  }

  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace diskdist
