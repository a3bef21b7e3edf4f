#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "diskdist/piecewise.hpp"
#include "diskdist/series.hpp"

using namespace diskdist;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

PiScalar ps(long long num, long long den, int pi_power = 0) {
  return PiScalar(Rational(num, den), pi_power);
}

Polynomial<PiScalar> poly(std::vector<PiScalar> c) { return Polynomial<PiScalar>(std::move(c)); }

// The paper's first three primitives of the zero-average delta at theta1 = 0,
// written in the lifted coordinate theta in (0, 2 pi):
//   s=1:  1/2 - theta/(2 pi)
//   s=2:  -pi/6 + theta/2 - theta^2/(4 pi)
//   s=3:  -pi theta/6 + theta^2/4 - theta^3/(12 pi)
Polynomial<PiScalar> sawtooth() { return poly({ps(1, 2), ps(-1, 2, -1)}); }
Polynomial<PiScalar> quadratic() { return poly({ps(-1, 6, 1), ps(1, 2), ps(-1, 4, -1)}); }
Polynomial<PiScalar> cubic() { return poly({PiScalar(), ps(-1, 6, 1), ps(1, 4), ps(-1, 12, -1)}); }

DistributionalObject unit_delta() {
  return DistributionalObject::delta(Angle(Rational(0)), 0, Rational(1));
}
}  // namespace

TEST_CASE("piecewise evaluation of the chain polynomials") {
  PiecewisePolyCircle saw({Angle(Rational(0))}, {sawtooth()});

  // delta^{-1'} at dtheta = pi/2.
  CHECK(eval_pp(saw, kPi / 2) == Approx(0.25).margin(1e-15));
  // Odd side: at dtheta = -pi/2 the lifted coordinate is 3 pi/2.
  CHECK(eval_pp(saw, -kPi / 2) == Approx(-0.25).margin(1e-15));
  CHECK_THROWS_AS(eval_pp(saw, 0.0), std::domain_error);

  PiecewisePolyCircle quad({Angle(Rational(0))}, {quadratic()});
  CHECK(eval_pp_one_sided(quad, Angle(Rational(0)), true) == ps(-1, 6, 1));
  // delta^{-2'} is continuous: both sides agree at the singular point.
  CHECK(eval_pp_one_sided(quad, Angle(Rational(0)), false) == ps(-1, 6, 1));

  PiecewisePolyCircle cub({Angle(Rational(0))}, {cubic()});
  // At dtheta = pi the cubic evaluates to -pi^2/6 + pi^2/4 - pi^2/12 = 0.
  CHECK(cub.eval_one_sided(Angle(Rational(1)), true).is_zero());
  CHECK(eval_pp(cub, kPi / 2) ==
        Approx(-kPi * (kPi / 2) / 6 + (kPi / 2) * (kPi / 2) / 4 -
               std::pow(kPi / 2, 3) / (12 * kPi))
            .margin(1e-14));
}

TEST_CASE("primitive chain of the unit delta reproduces the paper polynomials") {
  DistributionalObject d = unit_delta();

  DistributionalObject s1 = primitive_chain(d, 1);
  REQUIRE(s1.smooth.has_value());
  CHECK(s1.atoms.empty());
  CHECK(s1.smooth->singular_points() == std::vector<Angle>{Angle(Rational(0))});
  CHECK(s1.smooth->sections()[0] == sawtooth());

  DistributionalObject s2 = primitive_chain(d, 2);
  CHECK(s2.smooth->sections()[0] == quadratic());

  DistributionalObject s3 = primitive_chain(d, 3);
  CHECK(s3.smooth->sections()[0] == cubic());

  // Equivalent: chaining one step at a time.
  DistributionalObject step = primitive_chain(primitive_chain(d, 1), 2);
  CHECK(step.smooth->sections()[0] == cubic());

  // Explicit zero-average input gives the same first primitive.
  DistributionalObject proper = unit_delta();
  proper.smooth = PiecewisePolyCircle({Angle(Rational(0))}, {poly({ps(-1, 2, -1)})});
  CHECK(primitive_chain(proper, 1).smooth->sections()[0] == sawtooth());
}

TEST_CASE("deep chain members equal Bernoulli polynomials exactly") {
  // Independent oracle: the s-th primitive of the zero-average unit delta at
  // theta1 = 0 is -(2 pi)^{s-1}/s! B_s(theta/(2 pi)) on (0, 2 pi), with B_s
  // the Bernoulli polynomials. Their coefficients come from the classical
  // number recurrence, exercising none of the chain integration code.
  const int max_s = 10;
  std::vector<Rational> b(max_s + 1);  // Bernoulli numbers, b[1] = -1/2
  std::vector<std::vector<Rational>> choose(max_s + 2);
  for (int n = 0; n <= max_s + 1; ++n) {
    choose[n].assign(n + 1, Rational(1));
    for (int k = 1; k < n; ++k) choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
  }
  b[0] = Rational(1);
  for (int m = 1; m <= max_s; ++m) {
    Rational acc(0);
    for (int j = 0; j < m; ++j) acc += choose[m + 1][j] * b[j];
    b[m] = -acc / Rational(m + 1);
  }
  REQUIRE(b[2] == Rational(1, 6));
  REQUIRE(b[4] == Rational(-1, 30));

  DistributionalObject d = unit_delta();
  Rational s_factorial(1);
  for (int s = 1; s <= max_s; ++s) {
    s_factorial *= Rational(s);
    // Coefficient of theta^k: -C(s,k) b_{s-k} 2^{s-1-k} pi^{s-1-k} / s!.
    std::vector<PiScalar> coeffs(s + 1);
    Rational pow2(1);
    for (int j = 0; j < s - 1; ++j) pow2 *= Rational(2);  // 2^{s-1}
    for (int k = 0; k <= s; ++k) {
      coeffs[k] = PiScalar(-choose[s][k] * b[s - k] * pow2 / s_factorial, s - 1 - k);
      pow2 /= Rational(2);
    }
    Polynomial<PiScalar> expected{coeffs};

    DistributionalObject p = primitive_chain(d, s);
    REQUIRE(p.smooth.has_value());
    CHECK(p.smooth->sections()[0] == expected);
  }
}

TEST_CASE("square wave from two opposite deltas") {
  DistributionalObject d = superpose(
      {DistributionalObject::delta(Angle(Rational(0)), 0, Rational(1)),
       DistributionalObject::delta(Angle(Rational(1)), 0, Rational(1))},
      {Rational(1), Rational(-1)});
  REQUIRE(d.atoms.size() == 2);

  DistributionalObject wave = primitive_chain(d, 1);
  REQUIRE(wave.smooth.has_value());
  CHECK(wave.atoms.empty());
  const auto& pts = wave.smooth->singular_points();
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == Angle(Rational(0)));
  CHECK(pts[1] == Angle(Rational(1)));
  CHECK(wave.smooth->sections()[0] == poly({ps(1, 2)}));
  CHECK(wave.smooth->sections()[1] == poly({ps(-1, 2)}));
  CHECK(eval_pp(*wave.smooth, 1.0) == Approx(0.5));
  CHECK(eval_pp(*wave.smooth, -1.0) == Approx(-0.5));

  // Differentiating the square wave recovers the two atoms and nothing else.
  DistributionalObject back = distributional_derivative(*wave.smooth, 1);
  CHECK_FALSE(back.smooth.has_value());
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.atoms[0].theta == Angle(Rational(0)));
  CHECK(back.atoms[0].order == 0);
  CHECK(back.atoms[0].coeff == PiScalar(Rational(1)));
  CHECK(back.atoms[1].coeff == PiScalar(Rational(-1)));
}

TEST_CASE("distributional derivative of the sawtooth") {
  PiecewisePolyCircle saw({Angle(Rational(0))}, {sawtooth()});
  DistributionalObject d = distributional_derivative(saw, 1);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].theta == Angle(Rational(0)));
  CHECK(d.atoms[0].order == 0);
  CHECK(d.atoms[0].coeff == PiScalar(Rational(1)));
  REQUIRE(d.smooth.has_value());
  CHECK(d.smooth->sections()[0] == poly({ps(-1, 2, -1)}));

  // A global constant has no distributional derivative content.
  PiecewisePolyCircle flat({Angle(Rational(0))}, {poly({PiScalar()})});
  DistributionalObject z = distributional_derivative(flat, 1);
  CHECK(z.atoms.empty());
  CHECK_FALSE(z.smooth.has_value());
}

TEST_CASE("chain round trip is exact for zero-mass atom superpositions") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> order_pick(0, 3);
  std::uniform_int_distribution<long long> coeff_pick(-6, 6);
  const std::vector<Angle> sites = {Angle(Rational(0)), Angle(Rational(1, 2)),
                                    Angle(Rational(-2, 3)), Angle(Rational(1))};
  for (int trial = 0; trial < 12; ++trial) {
    DistributionalObject d;
    Rational mass(0);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const int order = order_pick(rng);
      Rational c(coeff_pick(rng), 1 + (trial % 3));
      if (order == 0) mass += c;
      if (!c.is_zero()) d.atoms.push_back({sites[i], order, PiScalar(c)});
    }
    // Cancel the order-0 mass so the chain stays in the proper subspace.
    if (!mass.is_zero()) d.atoms.push_back({Angle(Rational(5, 7)), 0, PiScalar(-mass)});
    d.normalize();
    if (d.atoms.empty()) continue;

    for (int s : {1, 2, 4}) {
      if (s <= 3) {
        // Not all atoms are absorbed yet for small s; only s > max order gives
        // a pure piecewise polynomial.
      }
      DistributionalObject rt = distributional_derivative(primitive_chain(d, s), s);
      rt.normalize();
      CHECK(rt == d);
    }
  }
}

TEST_CASE("round trip of the unit delta lands on its zero-average completion") {
  DistributionalObject rt = distributional_derivative(primitive_chain(unit_delta(), 1), 1);
  DistributionalObject completed = zero_average_completion(unit_delta());
  CHECK(rt == completed);
  REQUIRE(rt.smooth.has_value());
  CHECK(rt.smooth->sections()[0] == poly({ps(-1, 2, -1)}));
}

TEST_CASE("every chain member has exact zero average") {
  DistributionalObject d = superpose(
      {unit_delta(), DistributionalObject::delta(Angle(Rational(2, 5)), 2, Rational(3, 2))},
      {Rational(1), Rational(1)});
  for (int s = 1; s <= 5; ++s) {
    DistributionalObject p = primitive_chain(d, s);
    REQUIRE(p.smooth.has_value());
    CHECK(p.smooth->average().is_zero());
  }
}

TEST_CASE("smoothness gain along the chain") {
  // The s-th primitive of a single delta atom is C^{s-2} at the site: one
  // sided values and the first s-2 derivatives agree, the (s-1)-th does not.
  for (int s : {2, 3, 4, 5}) {
    DistributionalObject p = primitive_chain(unit_delta(), s);
    REQUIRE(p.smooth.has_value());
    const PiecewisePolyCircle& f = *p.smooth;
    PiecewisePolyCircle current = f;
    for (int d = 0; d <= s - 2; ++d) {
      const PiScalar right = current.eval_one_sided(Angle(Rational(0)), true);
      const PiScalar left = current.eval_one_sided(Angle(Rational(0)), false);
      CHECK(right == left);
      current = current.mapped(
          [](const Polynomial<PiScalar>& q) { return q.derivative(); });
    }
    const PiScalar right = current.eval_one_sided(Angle(Rational(0)), true);
    const PiScalar left = current.eval_one_sided(Angle(Rational(0)), false);
    CHECK(right != left);
  }
}

TEST_CASE("parity of chain members in dtheta") {
  // Odd s gives an odd function of dtheta, even s an even one. With the atom
  // at zero, compare P(theta) against P(2 pi - theta) expanded exactly.
  for (int s = 1; s <= 5; ++s) {
    DistributionalObject p = primitive_chain(unit_delta(), s);
    const Polynomial<PiScalar>& q = p.smooth->sections()[0];
    // Build P(2 pi - x): shift by 2 pi, then substitute x -> -x.
    Polynomial<PiScalar> shifted = q.shifted(PiScalar(Rational(2), 1));
    std::vector<PiScalar> neg;
    for (int k = 0; k <= shifted.degree(); ++k) {
      PiScalar c = shifted.coeff(k);
      neg.push_back((k % 2 == 0) ? c : -c);
    }
    Polynomial<PiScalar> mirrored{neg};
    if (s % 2 == 0)
      CHECK(mirrored == q);
    else
      CHECK(mirrored == -q);
  }
}

TEST_CASE("superpose merges atoms and smooth parts") {
  DistributionalObject a = unit_delta();
  DistributionalObject single = superpose({a}, {Rational(1)});
  CHECK(single == a);

  DistributionalObject cancel = superpose({a, a}, {Rational(1), Rational(-1)});
  CHECK(cancel.is_zero());

  // Atom plus a smooth part at a different site: atoms merge into the atom
  // list, the smooth partition keeps its own boundaries.
  DistributionalObject b = primitive_chain(
      DistributionalObject::delta(Angle(Rational(1, 2)), 0, Rational(2)), 1);
  DistributionalObject sum = superpose({a, b}, {Rational(1), Rational(1, 2)});
  REQUIRE(sum.smooth.has_value());
  CHECK(sum.atoms.size() == 1);
  CHECK(sum.atoms[0].theta == Angle(Rational(0)));
  CHECK(sum.smooth->singular_points().size() == 1);
  const double at = 2.0;  // away from both sites
  CHECK(eval_pp(*sum.smooth, at) ==
        Approx(0.5 * eval_pp(*b.smooth, at)).margin(1e-15));
}

TEST_CASE("piecewise fourier matches the primitive series route") {
  // First harmonics of the exact chain members against the s-fold angular
  // primitive of the delta series.
  const int K = 16;
  for (int s = 1; s <= 3; ++s) {
    DistributionalObject p = primitive_chain(unit_delta(), s);
    FourierSpectrum exact = piecewise_fourier(*p.smooth, K);

    TaylorSeries series = delta_taylor_coefficients(0.0, 0, K);
    for (int j = 0; j < s; ++j) series = angular_primitive_series(series);
    FourierSpectrum via_series = taylor_to_fourier(series);

    CHECK(std::abs(exact.alpha0 - via_series.alpha0) < 1e-12);
    for (int k = 1; k <= K; ++k) {
      CHECK(exact.alphas[k - 1] == Approx(via_series.alphas[k - 1]).margin(1e-10));
      CHECK(exact.betas[k - 1] == Approx(via_series.betas[k - 1]).margin(1e-10));
    }
  }
}

TEST_CASE("superposed chains match the summed series route") {
  // Two atoms at different sites, chained and superposed in the exact
  // calculus; the spectral oracle is the sum of the two shifted primitive
  // series. This exercises the wrap-around section shifting.
  const int K = 12;
  const Angle site_a(Rational(0));
  const Angle site_b(Rational(-2, 3));
  for (int s : {1, 2, 3}) {
    DistributionalObject chain_a =
        primitive_chain(DistributionalObject::delta(site_a, 0, Rational(1)), s);
    DistributionalObject chain_b =
        primitive_chain(DistributionalObject::delta(site_b, 0, Rational(1)), s);
    DistributionalObject sum =
        superpose({chain_a, chain_b}, {Rational(3), Rational(-2)});
    REQUIRE(sum.smooth.has_value());
    CHECK(sum.smooth->singular_points().size() == 2);
    CHECK(sum.smooth->average().is_zero());
    FourierSpectrum got = piecewise_fourier(*sum.smooth, K);

    auto primitive_spectrum = [&](double theta1) {
      TaylorSeries series = delta_taylor_coefficients(theta1, 0, K);
      for (int j = 0; j < s; ++j) series = angular_primitive_series(series);
      return taylor_to_fourier(series);
    };
    FourierSpectrum fa = primitive_spectrum(site_a.radians());
    FourierSpectrum fb = primitive_spectrum(site_b.radians());
    for (int k = 1; k <= K; ++k) {
      const double ea = 3 * fa.alphas[k - 1] - 2 * fb.alphas[k - 1];
      const double eb = 3 * fa.betas[k - 1] - 2 * fb.betas[k - 1];
      CHECK(got.alphas[k - 1] == Approx(ea).margin(1e-10));
      CHECK(got.betas[k - 1] == Approx(eb).margin(1e-10));
    }
  }
}

TEST_CASE("chain with atoms at some boundaries of an existing smooth part") {
  // Mixed object: a smooth square wave plus a delta atom at a third site.
  // One integration step must absorb the atom as a jump while integrating
  // the wave's sections.
  DistributionalObject wave = primitive_chain(
      superpose({DistributionalObject::delta(Angle(Rational(0)), 0, Rational(1)),
                 DistributionalObject::delta(Angle(Rational(1)), 0, Rational(1))},
                {Rational(1), Rational(-1)}),
      1);
  DistributionalObject mixed = wave;
  mixed.atoms.push_back({Angle(Rational(1, 2)), 0, PiScalar(Rational(2))});

  DistributionalObject integrated = primitive_chain(mixed, 1);
  REQUIRE(integrated.smooth.has_value());
  CHECK(integrated.atoms.empty());
  CHECK(integrated.smooth->singular_points().size() == 3);
  CHECK(integrated.smooth->average().is_zero());

  // The jump of the primitive at the atom site equals the atom coefficient;
  // at the wave's own sites the primitive is continuous.
  const PiScalar jump_mid =
      integrated.smooth->eval_one_sided(Angle(Rational(1, 2)), true) -
      integrated.smooth->eval_one_sided(Angle(Rational(1, 2)), false);
  CHECK(jump_mid == PiScalar(Rational(2)));
  CHECK(integrated.smooth->eval_one_sided(Angle(Rational(0)), true) ==
        integrated.smooth->eval_one_sided(Angle(Rational(0)), false));

  // Differentiating recovers the zero-average completion of the mixed object
  // (the atom carries mass 2, so the chain subtracts 1/pi from the smooth
  // part), on the partition refined by the atom site.
  DistributionalObject back = distributional_derivative(integrated, 1);
  DistributionalObject expected = zero_average_completion(mixed);
  expected.normalize();
  expected.smooth = expected.smooth->refined({Angle(Rational(1, 2))});
  CHECK(back == expected);
}

TEST_CASE("refinement preserves the function") {
  DistributionalObject p = primitive_chain(unit_delta(), 2);
  PiecewisePolyCircle fine = p.smooth->refined(
      {Angle(Rational(1, 3)), Angle(Rational(-3, 4)), Angle(Rational(1))});
  for (double t : {-3.0, -1.2, 0.4, 1.9, 3.0})
    CHECK(eval_pp(fine, t) == Approx(eval_pp(*p.smooth, t)).margin(1e-14));
  CHECK(fine.average().is_zero());
  CHECK(fine.circle_integral_exact() == p.smooth->circle_integral_exact());
}

TEST_CASE("primitive chain input validation") {
  CHECK_THROWS_AS(primitive_chain(unit_delta(), 0), std::domain_error);
  CHECK_THROWS_AS(distributional_derivative(unit_delta(), 0), std::domain_error);
  DistributionalObject zero;
  CHECK(primitive_chain(zero, 3).is_zero());
  CHECK_THROWS_AS(superpose({unit_delta()}, {Rational(1), Rational(2)}), std::domain_error);
}
