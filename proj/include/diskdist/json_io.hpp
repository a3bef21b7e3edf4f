#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diskdist/exact.hpp"
#include "diskdist/piecewise.hpp"
#include "diskdist/rational.hpp"

namespace diskdist {

// Minimal JSON emitter with deterministic byte output: insertion-ordered
// keys and doubles printed with 17 significant digits (round-trip safe).
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    separator();
    out_ += '{';
    stack_.push_back(false);
    return *this;
  }
  JsonWriter& end_object() {
    out_ += '}';
    stack_.pop_back();
    mark_value();
    return *this;
  }
  JsonWriter& begin_array() {
    separator();
    out_ += '[';
    stack_.push_back(false);
    return *this;
  }
  JsonWriter& end_array() {
    out_ += ']';
    stack_.pop_back();
    mark_value();
    return *this;
  }
  JsonWriter& key(std::string_view k) {
    separator();
    append_string(k);
    out_ += ':';
    pending_key_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    separator();
    char buf[40];
    if (std::isfinite(v))
      std::snprintf(buf, sizeof(buf), "%.17g", v);
    else
      std::snprintf(buf, sizeof(buf), "null");
    out_ += buf;
    mark_value();
    return *this;
  }
  JsonWriter& value(long long v) {
    separator();
    out_ += std::to_string(v);
    mark_value();
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    mark_value();
    return *this;
  }
  JsonWriter& value(std::string_view v) {
    separator();
    append_string(v);
    mark_value();
    return *this;
  }
  JsonWriter& null() {
    separator();
    out_ += "null";
    mark_value();
    return *this;
  }

  const std::string& str() const { return out_; }

 private:
  void separator() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back()) out_ += ',';
  }
  void mark_value() {
    if (!stack_.empty()) stack_.back() = true;
  }
  void append_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> stack_;
  bool pending_key_ = false;
};

// Nearest rational with bounded denominator via continued fractions; empty
// when x is not within 1e-12 (relative) of such a fraction. The denominator
// bound keeps downstream exact arithmetic far from 64-bit overflow.
inline std::optional<Rational> snap_rational(double x, long long max_den = 4096) {
  if (!std::isfinite(x)) return std::nullopt;
  double v = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::abs(fl) > 4e18) return std::nullopt;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= 1e-12 * std::max(1.0, std::abs(x)))
      return Rational(p1, q1);
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

// Angle from radians, snapped to a rational multiple of pi.
inline std::optional<Angle> snap_angle(double radians) {
  auto r = snap_rational(radians / std::numbers::pi);
  if (!r) return std::nullopt;
  return Angle(*r);
}

inline void write_exact_term(JsonWriter& w, int pi_power, const Rational& r) {
  w.begin_object();
  w.key("num").value(r.num());
  w.key("den").value(r.den());
  w.key("pi_power").value(pi_power);
  w.end_object();
}

// Exact scalars print as {"num", "den", "pi_power"}; sums of several pi
// powers print as an array of such terms.
inline void write_exact(JsonWriter& w, const PiScalar& s) {
  if (s.is_zero()) {
    write_exact_term(w, 0, Rational(0));
    return;
  }
  if (s.is_single_term()) {
    const auto& [p, r] = *s.terms().begin();
    write_exact_term(w, p, r);
    return;
  }
  w.begin_array();
  for (const auto& [p, r] : s.terms()) write_exact_term(w, p, r);
  w.end_array();
}

inline void write_angle(JsonWriter& w, const Angle& a) {
  w.begin_object();
  w.key("num").value(a.pi_multiple().num());
  w.key("den").value(a.pi_multiple().den());
  w.end_object();
}

inline void write_object(JsonWriter& w, const DistributionalObject& d) {
  w.begin_object();
  w.key("atoms").begin_array();
  for (const auto& atom : d.atoms) {
    w.begin_object();
    w.key("theta");
    write_angle(w, atom.theta);
    w.key("order").value(atom.order);
    w.key("coeff");
    write_exact(w, atom.coeff);
    w.end_object();
  }
  w.end_array();
  w.key("smooth");
  if (!d.smooth) {
    w.null();
  } else {
    w.begin_object();
    w.key("points").begin_array();
    for (const auto& p : d.smooth->singular_points()) write_angle(w, p);
    w.end_array();
    w.key("sections").begin_array();
    for (const auto& sec : d.smooth->sections()) {
      w.begin_array();
      for (int k = 0; k <= std::max(sec.degree(), 0); ++k) write_exact(w, sec.coeff(k));
      w.end_array();
    }
    w.end_array();
    w.key("order").value(d.smooth->order());
    w.end_object();
  }
  w.end_object();
}

}  // namespace diskdist
