#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diskdist/series.hpp"

namespace diskdist {

// Radial growth taxonomy of a boundary singularity: soft (finite limit),
// borderline hard (logarithmic blowup, degree of hardness zero) or hard of
// integer degree m (pole-like growth (1-rho)^{-m}).
enum class SingularityVerdict { soft, borderline_hard, hard, hard_noninteger };

inline std::string to_string(SingularityVerdict v) {
  switch (v) {
    case SingularityVerdict::soft: return "soft";
    case SingularityVerdict::borderline_hard: return "borderline_hard";
    case SingularityVerdict::hard: return "hard";
    default: return "hard(noninteger)";
  }
}

struct SingularityReport {
  double theta1 = 0.0;
  SingularityVerdict verdict = SingularityVerdict::soft;
  int degree = -1;               // hard degree; 0 for borderline, -1 for soft
  double fitted_exponent = 0.0;  // >= 0
  bool log_flag = false;
  std::vector<std::pair<double, double>> samples;  // (rho_j, |w|)
};

// Radial probe ladder rho_j = 1 - 2^{-j}, j = 4..14.
inline std::vector<double> default_probe_ladder() {
  std::vector<double> ladder;
  for (int j = 4; j <= 14; ++j) ladder.push_back(1.0 - std::ldexp(1.0, -j));
  return ladder;
}

// Probes |w(rho e^{i theta1})| along the ladder and fits C (1-rho)^{-p} by
// log-log regression on the last half. Integer-snapped p >= 1 reports a hard
// singularity of that degree; bounded samples are soft; unbounded samples
// growing linearly in -ln(1-rho) are borderline hard. Anything else is
// flagged as hard(noninteger) rather than silently guessed.
inline SingularityReport hardness_probe(
    const std::function<std::complex<double>(const PolarPoint&)>& evaluator,
    double theta1, const std::vector<double>& ladder = default_probe_ladder()) {
  if (ladder.size() < 4) throw std::domain_error("hardness_probe: ladder needs >= 4 rungs");
  SingularityReport report;
  report.theta1 = normalize_angle(theta1);

  double prev = 0.0;
  for (double rho : ladder) {
    if (!(rho > prev && rho < 1.0))
      throw std::domain_error("hardness_probe: ladder must be strictly increasing in (0, 1)");
    prev = rho;
    const std::complex<double> w = evaluator(PolarPoint(rho, theta1));
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw std::domain_error("hardness_probe: evaluator not finite at rho = " +
                              std::to_string(rho));
    report.samples.emplace_back(rho, std::abs(w));
  }

  const std::size_t n = ladder.size();
  const std::size_t lo = n / 2;
  double max_abs = 0.0;
  for (const auto& [rho, mag] : report.samples) max_abs = std::max(max_abs, mag);
  if (max_abs == 0.0) {
    report.verdict = SingularityVerdict::soft;
    return report;
  }

  // Least-squares slope of ln|w| against x = -ln(1-rho) over the last half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t j = lo; j < n; ++j) {
    const double x = -std::log(1.0 - report.samples[j].first);
    const double y = std::log(std::max(report.samples[j].second, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  report.fitted_exponent = std::max(slope, 0.0);

  if (slope >= 0.5) {
    const int m = static_cast<int>(std::lround(slope));
    if (m >= 1 && std::abs(slope - m) <= 0.1) {
      report.verdict = SingularityVerdict::hard;
      report.degree = m;
    } else {
      report.verdict = SingularityVerdict::hard_noninteger;
    }
    return report;
  }

  // Exponent near zero: separate bounded samples from logarithmic growth by a
  // linear fit |w| = a + b x on the last half (scale invariant tests).
  double tx = 0, ty = 0, txx = 0, txy = 0;
  for (std::size_t j = lo; j < n; ++j) {
    const double x = -std::log(1.0 - report.samples[j].first);
    const double y = report.samples[j].second;
    tx += x;
    ty += y;
    txx += x * x;
    txy += x * y;
  }
  const double b = (count * txy - tx * ty) / (count * txx - tx * tx);
  const double a = (ty - b * tx) / count;
  const double x_first = -std::log(1.0 - report.samples[lo].first);
  const double x_last = -std::log(1.0 - report.samples[n - 1].first);
  const double growth = b * (x_last - x_first);
  if (std::abs(growth) <= 0.05 * max_abs) {
    report.verdict = SingularityVerdict::soft;
    return report;
  }
  double resid = 0.0;
  for (std::size_t j = lo; j < n; ++j) {
    const double x = -std::log(1.0 - report.samples[j].first);
    resid = std::max(resid, std::abs(report.samples[j].second - (a + b * x)));
  }
  if (resid <= 0.05 * max_abs && growth > 0.0) {
    report.verdict = SingularityVerdict::borderline_hard;
    report.degree = 0;
    report.log_flag = true;
  } else {
    report.verdict = SingularityVerdict::hard_noninteger;
  }
  return report;
}

}  // namespace diskdist
