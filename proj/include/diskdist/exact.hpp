#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "diskdist/rational.hpp"

namespace diskdist {

// Element of Q[pi, 1/pi]: a finite sum of terms r * pi^p with rational r and
// integer p. Closed under ring operations, so every coefficient appearing in
// the exact piecewise calculus (values like -pi/6, 1/2, -1/(4 pi)) is
// representable and comparable exactly.
class PiScalar {
 public:
  PiScalar() = default;
  PiScalar(Rational r, int pi_power = 0) {
    if (!r.is_zero()) terms_[pi_power] = r;
  }
  PiScalar(long long n) : PiScalar(Rational(n)) {}

  static PiScalar zero() { return PiScalar(); }

  bool is_zero() const { return terms_.empty(); }

  // Terms sorted by ascending pi power.
  const std::map<int, Rational>& terms() const { return terms_; }

  bool is_single_term() const { return terms_.size() == 1; }

  Rational rational_part() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  double value() const {
    double v = 0.0;
    for (const auto& [p, r] : terms_) v += r.value() * std::pow(std::numbers::pi, p);
    return v;
  }

  PiScalar operator-() const {
    PiScalar s;
    for (const auto& [p, r] : terms_) s.terms_[p] = -r;
    return s;
  }

  friend PiScalar operator+(const PiScalar& a, const PiScalar& b) {
    PiScalar s = a;
    for (const auto& [p, r] : b.terms_) s.add_term(p, r);
    return s;
  }
  friend PiScalar operator-(const PiScalar& a, const PiScalar& b) {
    PiScalar s = a;
    for (const auto& [p, r] : b.terms_) s.add_term(p, -r);
    return s;
  }
  friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
    PiScalar s;
    for (const auto& [pa, ra] : a.terms_)
      for (const auto& [pb, rb] : b.terms_) s.add_term(pa + pb, ra * rb);
    return s;
  }
  friend PiScalar operator*(const PiScalar& a, const Rational& r) {
    PiScalar s;
    if (r.is_zero()) return s;
    for (const auto& [p, c] : a.terms_) s.terms_[p] = c * r;
    return s;
  }
  friend PiScalar operator*(const Rational& r, const PiScalar& a) { return a * r; }
  friend PiScalar operator/(const PiScalar& a, const Rational& r) {
    return a * (Rational(1) / r);
  }

  PiScalar& operator+=(const PiScalar& o) { return *this = *this + o; }
  PiScalar& operator-=(const PiScalar& o) { return *this = *this - o; }
  PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }

  friend bool operator==(const PiScalar& a, const PiScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, r] : terms_) {
      if (!first) s += " + ";
      s += r.str();
      if (p != 0) s += "*pi^" + std::to_string(p);
      first = false;
    }
    return s;
  }

 private:
  void add_term(int p, const Rational& r) {
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      if (!r.is_zero()) terms_[p] = r;
      return;
    }
    it->second += r;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<int, Rational> terms_;
};

inline PiScalar pi_times(Rational r) { return PiScalar(r, 1); }

// Exact angle theta = t * pi with rational t normalized into (-1, 1]. Used as
// singular-point and section-boundary coordinate so that evaluation and
// integration of section polynomials stay inside Q[pi, 1/pi].
class Angle {
 public:
  Angle() : t_(0) {}
  explicit Angle(Rational turns_of_pi) : t_(normalize(turns_of_pi)) {}

  static Angle of(long long num, long long den) { return Angle(Rational(num, den)); }

  const Rational& pi_multiple() const { return t_; }
  double radians() const { return t_.value() * std::numbers::pi; }
  PiScalar exact() const { return PiScalar(t_, 1); }

  friend bool operator==(const Angle& a, const Angle& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Angle& a, const Angle& b) { return !(a == b); }
  friend bool operator<(const Angle& a, const Angle& b) { return a.t_ < b.t_; }

  std::string str() const { return t_.str() + "*pi"; }

 private:
  static Rational normalize(Rational t) {
    // Reduce modulo 2 into (-1, 1].
    Rational shifted = (t + Rational(1)) / Rational(2);
    t = t - Rational(2) * Rational(shifted.floor_div());
    if (t > Rational(1)) t -= Rational(2);
    if (t <= Rational(-1)) t += Rational(2);
    return t;
  }

  Rational t_;
};

}  // namespace diskdist
