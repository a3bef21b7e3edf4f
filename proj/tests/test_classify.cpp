#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "diskdist/classify.hpp"
#include "diskdist/kernels.hpp"

using namespace diskdist;

namespace {
auto kernel_evaluator(int n, double theta1) {
  return [n, theta1](const PolarPoint& p) {
    return delta_derivative_kernel_eval(DeltaKernelSpec(theta1, n), p);
  };
}
}  // namespace

TEST_CASE("kernel family probes to hard of degree n+1") {
  for (int n = 0; n <= 4; ++n) {
    SingularityReport r = hardness_probe(kernel_evaluator(n, 0.4), 0.4);
    CHECK(r.verdict == SingularityVerdict::hard);
    CHECK(r.degree == n + 1);
    CHECK(r.fitted_exponent == Catch::Approx(n + 1.0).margin(0.1));
    CHECK(r.samples.size() == default_probe_ladder().size());
  }
}

TEST_CASE("full delta kernel probes to hard degree one") {
  SingularityReport r = hardness_probe(
      [](const PolarPoint& p) { return delta_kernel_eval(p, 0.2); }, 0.2);
  CHECK(r.verdict == SingularityVerdict::hard);
  CHECK(r.degree == 1);
}

TEST_CASE("log primitive probes to borderline hard") {
  SingularityReport r = hardness_probe(
      [](const PolarPoint& p) { return log_primitive_eval(p, 0.0); }, 0.0);
  CHECK(r.verdict == SingularityVerdict::borderline_hard);
  CHECK(r.degree == 0);
  CHECK(r.log_flag);
}

TEST_CASE("entire functions probe to soft") {
  SingularityReport r = hardness_probe(
      [](const PolarPoint& p) { return p.z(); }, 0.0);
  CHECK(r.verdict == SingularityVerdict::soft);

  SingularityReport zero = hardness_probe(
      [](const PolarPoint&) { return std::complex<double>(0.0, 0.0); }, 0.0);
  CHECK(zero.verdict == SingularityVerdict::soft);
}

TEST_CASE("verdict is scale invariant") {
  for (double scale : {1e-9, 1.0, 3.7e8}) {
    SingularityReport hard = hardness_probe(
        [scale](const PolarPoint& p) {
          return scale * delta_derivative_kernel_eval(DeltaKernelSpec(0.0, 2), p);
        },
        0.0);
    CHECK(hard.verdict == SingularityVerdict::hard);
    CHECK(hard.degree == 3);

    SingularityReport soft = hardness_probe(
        [scale](const PolarPoint& p) { return scale * p.z(); }, 0.0);
    CHECK(soft.verdict == SingularityVerdict::soft);

    SingularityReport log = hardness_probe(
        [scale](const PolarPoint& p) { return scale * log_primitive_eval(p, 0.0); }, 0.0);
    CHECK(log.verdict == SingularityVerdict::borderline_hard);
  }
}

TEST_CASE("one exact chain step raises the degree by one") {
  for (int n = 0; n <= 3; ++n) {
    RationalKernel stepped = RationalKernel::for_order(n).angular_derivative();
    SingularityReport r = hardness_probe(
        [&stepped](const PolarPoint& p) { return stepped.eval(p.rho, p.theta); }, 0.0);
    SingularityReport base = hardness_probe(kernel_evaluator(n, 0.0), 0.0);
    CHECK(r.verdict == SingularityVerdict::hard);
    CHECK(base.verdict == SingularityVerdict::hard);
    CHECK(r.degree == base.degree + 1);
  }
}

TEST_CASE("ambiguous growth is reported, not guessed") {
  // |w| ~ (1 - rho)^{-3/2}: neither an integer pole order nor logarithmic.
  SingularityReport r = hardness_probe(
      [](const PolarPoint& p) {
        return std::complex<double>(std::pow(1.0 - p.rho, -1.5), 0.0);
      },
      0.0);
  CHECK(r.verdict == SingularityVerdict::hard_noninteger);
  CHECK(r.fitted_exponent == Catch::Approx(1.5).margin(0.05));
}

TEST_CASE("probe input validation") {
  CHECK_THROWS_AS(hardness_probe([](const PolarPoint& p) { return p.z(); }, 0.0,
                                 std::vector<double>{0.5, 0.6}),
                  std::domain_error);
  CHECK_THROWS_AS(hardness_probe([](const PolarPoint& p) { return p.z(); }, 0.0,
                                 std::vector<double>{0.5, 0.4, 0.6, 0.7}),
                  std::domain_error);
  CHECK_THROWS_AS(
      hardness_probe(
          [](const PolarPoint&) {
            return std::complex<double>(std::numeric_limits<double>::infinity(), 0.0);
          },
          0.0),
      std::domain_error);
}
