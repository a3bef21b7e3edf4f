#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskdist/exact.hpp"
#include "diskdist/polynomial.hpp"
#include "diskdist/series.hpp"

namespace diskdist {

// Singular atom coeff * delta^{(order)}(theta - theta_i) with exact position
// and coefficient.
struct ExactAtom {
  Angle theta;
  int order = 0;
  PiScalar coeff;

  friend bool operator==(const ExactAtom& a, const ExactAtom& b) {
    return a.theta == b.theta && a.order == b.order && a.coeff == b.coeff;
  }
};

// Zero or more polynomial sections wrapped around the unit circle. Section i
// covers the open arc (theta_i, theta_{i+1}), the last one wrapping around to
// theta_0 + 2 pi; its polynomial is a function of the lifted coordinate that
// runs continuously over that arc. Coefficients live in Q[pi, 1/pi] and the
// section boundaries are rational multiples of pi, so evaluation at
// boundaries, integration and differentiation are all exact.
class PiecewisePolyCircle {
 public:
  PiecewisePolyCircle(std::vector<Angle> points,
                      std::vector<Polynomial<PiScalar>> sections)
      : points_(std::move(points)), sections_(std::move(sections)) {
    if (points_.empty()) throw std::domain_error("PiecewisePolyCircle: needs at least one singular point");
    if (points_.size() != sections_.size())
      throw std::domain_error("PiecewisePolyCircle: one section per singular point required");
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i - 1] < points_[i]))
        throw std::domain_error("PiecewisePolyCircle: singular points must be strictly increasing");
  }

  const std::vector<Angle>& singular_points() const { return points_; }
  const std::vector<Polynomial<PiScalar>>& sections() const { return sections_; }

  int order() const {
    int n = 0;
    for (const auto& p : sections_) n = std::max(n, std::max(0, p.degree()));
    return n;
  }

  bool is_identically_zero() const {
    for (const auto& p : sections_)
      if (!p.is_zero()) return false;
    return true;
  }

  // Left endpoint of section i in the lifted coordinate.
  PiScalar section_left(std::size_t i) const { return points_[i].exact(); }
  // Right endpoint of section i in the lifted coordinate.
  PiScalar section_right(std::size_t i) const {
    if (i + 1 < points_.size()) return points_[i + 1].exact();
    return points_[0].exact() + PiScalar(Rational(2), 1);
  }

  double eval(double theta) const {
    const double t = normalize_angle(theta);
    for (const Angle& p : points_)
      if (t == p.radians())
        throw std::domain_error("eval_pp: evaluation at a singular point (theta = " +
                                p.str() + ")");
    const auto [idx, lifted] = locate(t);
    return sections_[idx].eval(lifted, [](const PiScalar& c) { return c.value(); });
  }

  // One-sided limit at an exact angle. At a singular point the two sides may
  // differ; elsewhere both sides agree with the exact value.
  PiScalar eval_one_sided(const Angle& point, bool from_right) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), point,
                               [](const Angle& a, const Angle& b) { return a < b; });
    if (it != points_.end() && *it == point) {
      const std::size_t i = static_cast<std::size_t>(it - points_.begin());
      if (from_right) return sections_[i].eval_exact(point.exact());
      const std::size_t left = (i == 0) ? points_.size() - 1 : i - 1;
      PiScalar x = point.exact();
      if (i == 0) x += PiScalar(Rational(2), 1);
      return sections_[left].eval_exact(x);
    }
    // Interior of a section: both one-sided limits equal the value.
    double t = point.radians();
    const auto [idx, lifted] = locate(t);
    PiScalar x = point.exact();
    if (lifted != t) x += PiScalar(Rational(2), 1);
    return sections_[idx].eval_exact(x);
  }

  // Exact integral of section i over its arc.
  PiScalar section_integral(std::size_t i) const {
    const Polynomial<PiScalar> anti = sections_[i].antiderivative();
    return anti.eval_exact(section_right(i)) - anti.eval_exact(section_left(i));
  }

  PiScalar circle_integral_exact() const {
    PiScalar total;
    for (std::size_t i = 0; i < sections_.size(); ++i) total += section_integral(i);
    return total;
  }

  PiScalar average() const {
    return circle_integral_exact() * PiScalar(Rational(1, 2), -1);
  }

  // Same function on a finer partition (extra points must include the
  // existing ones or are united with them). Pieces taken from the wrap
  // section onto a plain section get their argument shifted by 2 pi.
  PiecewisePolyCircle refined(std::vector<Angle> extra) const {
    std::vector<Angle> pts = points_;
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end(), [](const Angle& a, const Angle& b) { return a < b; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const PiScalar two_pi(Rational(2), 1);
    std::vector<Polynomial<PiScalar>> secs(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == pts.size() - 1) {
        // New wrap section is always contained in the old wrap section.
        secs[j] = sections_.back();
        continue;
      }
      const Angle& a = pts[j];
      if (a < points_[0]) {
        secs[j] = sections_.back().shifted(two_pi);
      } else {
        auto it = std::upper_bound(points_.begin(), points_.end(), a,
                                   [](const Angle& x, const Angle& y) { return x < y; });
        secs[j] = sections_[static_cast<std::size_t>(it - points_.begin()) - 1];
      }
    }
    return PiecewisePolyCircle(std::move(pts), std::move(secs));
  }

  PiecewisePolyCircle mapped(const std::function<Polynomial<PiScalar>(const Polynomial<PiScalar>&)>& f) const {
    std::vector<Polynomial<PiScalar>> secs;
    secs.reserve(sections_.size());
    for (const auto& p : sections_) secs.push_back(f(p));
    return PiecewisePolyCircle(points_, std::move(secs));
  }

  friend bool operator==(const PiecewisePolyCircle& a, const PiecewisePolyCircle& b) {
    return a.points_ == b.points_ && a.sections_ == b.sections_;
  }
  friend bool operator!=(const PiecewisePolyCircle& a, const PiecewisePolyCircle& b) {
    return !(a == b);
  }

 private:
  std::pair<std::size_t, double> locate(double t) const {
    if (t < points_[0].radians()) return {points_.size() - 1, t + 2.0 * std::numbers::pi};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i].radians() <= t) idx = i;
    return {idx, t};
  }

  std::vector<Angle> points_;
  std::vector<Polynomial<PiScalar>> sections_;
};

inline double eval_pp(const PiecewisePolyCircle& f, double theta) { return f.eval(theta); }
inline PiScalar eval_pp_one_sided(const PiecewisePolyCircle& f, const Angle& point,
                                  bool from_right) {
  return f.eval_one_sided(point, from_right);
}

// Finite superposition of singular atoms plus a piecewise polynomial part.
struct DistributionalObject {
  std::vector<ExactAtom> atoms;
  std::optional<PiecewisePolyCircle> smooth;

  static DistributionalObject delta(Angle theta1, int order, Rational coeff) {
    DistributionalObject d;
    if (!coeff.is_zero()) d.atoms.push_back({theta1, order, PiScalar(coeff)});
    return d;
  }

  bool is_zero() const {
    return atoms.empty() && (!smooth || smooth->is_identically_zero());
  }

  // Sort and merge atoms, drop vanished atoms and an identically zero smooth
  // part.
  void normalize() {
    std::map<std::pair<Rational, int>, PiScalar> merged;
    std::map<std::pair<Rational, int>, Angle> angles;
    for (const auto& a : atoms) {
      auto key = std::make_pair(a.theta.pi_multiple(), a.order);
      merged[key] += a.coeff;
      angles.emplace(key, a.theta);
    }
    atoms.clear();
    for (const auto& [key, coeff] : merged)
      if (!coeff.is_zero()) atoms.push_back({angles.at(key), key.second, coeff});
    if (smooth && smooth->is_identically_zero()) smooth.reset();
  }

  friend bool operator==(const DistributionalObject& a, const DistributionalObject& b) {
    if (a.atoms != b.atoms) return false;
    if (a.smooth.has_value() != b.smooth.has_value()) return false;
    return !a.smooth || *a.smooth == *b.smooth;
  }
};

namespace detail {

// Partition points for an object: smooth boundaries united with atom sites.
inline std::vector<Angle> object_partition(const DistributionalObject& d) {
  std::vector<Angle> pts;
  if (d.smooth) pts = d.smooth->singular_points();
  for (const auto& a : d.atoms) pts.push_back(a.theta);
  std::sort(pts.begin(), pts.end(), [](const Angle& a, const Angle& b) { return a < b; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Total mass of the object: order-0 atom coefficients plus the smooth
// integral (higher atoms integrate to zero around the circle).
inline PiScalar object_mass(const DistributionalObject& d) {
  PiScalar mass;
  for (const auto& a : d.atoms)
    if (a.order == 0) mass += a.coeff;
  if (d.smooth) mass += d.smooth->circle_integral_exact();
  return mass;
}

}  // namespace detail

// The object with its circle average removed: the member of the proper chain
// that carries the same singular content (for the unit delta this is
// delta - 1/(2 pi)).
inline DistributionalObject zero_average_completion(DistributionalObject d) {
  const PiScalar mass = detail::object_mass(d);
  if (mass.is_zero()) return d;
  const PiScalar mean = mass * PiScalar(Rational(1, 2), -1);
  const Polynomial<PiScalar> minus_mean(-mean);
  if (d.smooth) {
    auto pts = d.smooth->singular_points();
    std::vector<Polynomial<PiScalar>> secs;
    for (const auto& p : d.smooth->sections()) secs.push_back(p - Polynomial<PiScalar>(mean));
    d.smooth = PiecewisePolyCircle(std::move(pts), std::move(secs));
  } else {
    auto pts = detail::object_partition(d);
    if (pts.empty()) pts.push_back(Angle(Rational(1)));
    std::vector<Polynomial<PiScalar>> secs(pts.size(), minus_mean);
    d.smooth = PiecewisePolyCircle(std::move(pts), std::move(secs));
  }
  return d;
}

// One angular integration step applied `steps` times. Each step makes the
// input proper (zero circle average), integrates the section polynomials,
// turns each order-0 atom of coefficient c into a jump of height c at its
// site, demotes higher atoms by one order and fixes the constant so that the
// result again has zero average. All arithmetic is exact.
inline DistributionalObject primitive_chain(DistributionalObject d, int steps) {
  if (steps < 1) throw std::domain_error("primitive_chain: steps must be >= 1");
  const PiScalar two_pi(Rational(2), 1);
  for (int step = 0; step < steps; ++step) {
    d.normalize();
    if (d.is_zero()) return d;
    d = zero_average_completion(d);

    const std::vector<Angle> pts = detail::object_partition(d);
    PiecewisePolyCircle sm =
        d.smooth ? d.smooth->refined(pts)
                 : PiecewisePolyCircle(pts, std::vector<Polynomial<PiScalar>>(pts.size()));

    std::map<Rational, PiScalar> jumps;
    std::vector<ExactAtom> remaining;
    for (const auto& a : d.atoms) {
      if (a.order == 0)
        jumps[a.theta.pi_multiple()] += a.coeff;
      else
        remaining.push_back({a.theta, a.order - 1, a.coeff});
    }

    const std::size_t n = pts.size();
    std::vector<Polynomial<PiScalar>> anti(n);
    for (std::size_t i = 0; i < n; ++i) anti[i] = sm.sections()[i].antiderivative();

    auto jump_at = [&jumps](const Angle& p) {
      auto it = jumps.find(p.pi_multiple());
      return it == jumps.end() ? PiScalar() : it->second;
    };

    // Section constants from continuity across boundaries: crossing the
    // boundary theta_i adds the jump there.
    std::vector<PiScalar> constant(n);
    for (std::size_t i = 1; i < n; ++i) {
      const PiScalar boundary = pts[i].exact();
      constant[i] = constant[i - 1] + anti[i - 1].eval_exact(boundary) + jump_at(pts[i]) -
                    anti[i].eval_exact(boundary);
    }
    // Closure around the circle is automatic once the mass is zero.
    {
      const PiScalar wrap_end = pts[0].exact() + two_pi;
      const PiScalar lhs = anti[0].eval_exact(pts[0].exact());
      const PiScalar rhs = constant[n - 1] + anti[n - 1].eval_exact(wrap_end) + jump_at(pts[0]);
      if (lhs != rhs)
        throw std::logic_error("primitive_chain: circle closure violated (internal)");
    }

    std::vector<Polynomial<PiScalar>> secs(n);
    for (std::size_t i = 0; i < n; ++i)
      secs[i] = anti[i] + Polynomial<PiScalar>(constant[i]);
    PiecewisePolyCircle raw(pts, std::move(secs));
    const PiScalar avg = raw.average();
    PiecewisePolyCircle balanced = raw.mapped(
        [&avg](const Polynomial<PiScalar>& p) { return p - Polynomial<PiScalar>(avg); });

    d.atoms = std::move(remaining);
    d.smooth = std::move(balanced);
    d.normalize();
  }
  return d;
}

// Distributional derivative, `times` times: section polynomials are
// differentiated, every jump of the current function contributes an order-0
// atom with the jump as coefficient, and existing atoms are promoted one
// order. After order + 1 derivatives of a pure piecewise polynomial the
// smooth part is gone and only atoms remain.
inline DistributionalObject distributional_derivative(DistributionalObject d, int times) {
  if (times < 1) throw std::domain_error("distributional_derivative: times must be >= 1");
  for (int step = 0; step < times; ++step) {
    d.normalize();
    std::vector<ExactAtom> atoms;
    for (const auto& a : d.atoms) atoms.push_back({a.theta, a.order + 1, a.coeff});
    if (d.smooth) {
      const PiecewisePolyCircle& sm = *d.smooth;
      const auto& pts = sm.singular_points();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const PiScalar jump =
            sm.eval_one_sided(pts[i], true) - sm.eval_one_sided(pts[i], false);
        if (!jump.is_zero()) atoms.push_back({pts[i], 0, jump});
      }
      PiecewisePolyCircle deriv =
          sm.mapped([](const Polynomial<PiScalar>& p) { return p.derivative(); });
      if (deriv.is_identically_zero())
        d.smooth.reset();
      else
        d.smooth = std::move(deriv);
    }
    d.atoms = std::move(atoms);
    d.normalize();
  }
  return d;
}

inline DistributionalObject distributional_derivative(const PiecewisePolyCircle& f,
                                                      int times) {
  DistributionalObject d;
  d.smooth = f;
  return distributional_derivative(std::move(d), times);
}

// Weighted sum of distributional objects: atom lists merge (coefficients of
// coincident (theta, order) add) and smooth parts add on the common refined
// partition.
inline DistributionalObject superpose(const std::vector<DistributionalObject>& objects,
                                      const std::vector<Rational>& weights) {
  if (objects.size() != weights.size())
    throw std::domain_error("superpose: objects and weights must have equal length");
  DistributionalObject out;
  std::vector<Angle> all_points;
  bool any_smooth = false;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (const auto& a : objects[i].atoms)
      out.atoms.push_back({a.theta, a.order, a.coeff * weights[i]});
    if (objects[i].smooth) {
      any_smooth = true;
      const auto& pts = objects[i].smooth->singular_points();
      all_points.insert(all_points.end(), pts.begin(), pts.end());
    }
  }
  if (any_smooth) {
    std::sort(all_points.begin(), all_points.end(),
              [](const Angle& a, const Angle& b) { return a < b; });
    all_points.erase(std::unique(all_points.begin(), all_points.end()), all_points.end());
    std::optional<PiecewisePolyCircle> sum;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (!objects[i].smooth) continue;
      PiecewisePolyCircle part = objects[i].smooth->refined(all_points);
      PiecewisePolyCircle scaled = part.mapped([&](const Polynomial<PiScalar>& p) {
        return p * PiScalar(weights[i]);
      });
      if (!sum) {
        sum = std::move(scaled);
      } else {
        std::vector<Polynomial<PiScalar>> secs;
        for (std::size_t j = 0; j < sum->sections().size(); ++j)
          secs.push_back(sum->sections()[j] + scaled.sections()[j]);
        sum = PiecewisePolyCircle(all_points, std::move(secs));
      }
    }
    out.smooth = std::move(sum);
  }
  out.normalize();
  return out;
}

// First K Fourier harmonics of a piecewise polynomial, via the exact
// antiderivative recurrence for integrals of theta^m e^{-i k theta} over each
// section (double precision result).
inline FourierSpectrum piecewise_fourier(const PiecewisePolyCircle& f, int K) {
  if (K < 0) throw std::domain_error("piecewise_fourier: K must be >= 0");
  FourierSpectrum out;
  out.alpha0 = f.circle_integral_exact().value() / std::numbers::pi;
  out.alphas.resize(K, 0.0);
  out.betas.resize(K, 0.0);
  const std::size_t nsec = f.sections().size();
  for (int k = 1; k <= K; ++k) {
    std::complex<double> total(0.0, 0.0);
    const std::complex<double> ik(0.0, static_cast<double>(k));
    for (std::size_t i = 0; i < nsec; ++i) {
      const double a = f.section_left(i).value();
      const double b = f.section_right(i).value();
      const std::complex<double> ea = std::polar(1.0, -k * a);
      const std::complex<double> eb = std::polar(1.0, -k * b);
      const auto& coeffs = f.sections()[i].coefficients();
      // J_m = int_a^b theta^m e^{-ik theta} dtheta.
      std::complex<double> jm = (eb - ea) / (-ik);
      double am = 1.0, bm = 1.0;
      for (std::size_t m = 0; m < coeffs.size(); ++m) {
        if (m > 0) {
          am *= a;
          bm *= b;
          jm = (bm * eb - am * ea) / (-ik) + (static_cast<double>(m) / ik) * jm;
        }
        total += coeffs[m].value() * jm;
      }
    }
    out.alphas[k - 1] = total.real() / std::numbers::pi;
    out.betas[k - 1] = -total.imag() / std::numbers::pi;
  }
  return out;
}

}  // namespace diskdist
