#include <catch2/catch_amalgamated.hpp>

#include "diskdist/exact.hpp"
#include "diskdist/polynomial.hpp"
#include "diskdist/rational.hpp"

using namespace diskdist;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(3, 6) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(-7, 3) < Rational(-2));
  CHECK(Rational(-7, 2).floor_div() == -4);
  CHECK(Rational(7, 2).floor_div() == 3);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("gaussian rational rotation by i") {
  GaussRat one(Rational(1));
  GaussRat x = one;
  for (int j = 0; j < 4; ++j) x = x.times_i();
  CHECK(x == one);
  CHECK(one.times_i() == GaussRat(Rational(0), Rational(1)));
  CHECK(GaussRat(Rational(0), Rational(1)) * GaussRat(Rational(0), Rational(1)) ==
        GaussRat(Rational(-1)));
}

TEST_CASE("pi scalar ring operations") {
  PiScalar minus_pi_over_6(Rational(-1, 6), 1);
  PiScalar half(Rational(1, 2));
  PiScalar inv_4pi(Rational(-1, 4), -1);

  PiScalar sum = minus_pi_over_6 + half + inv_4pi;
  CHECK(sum.terms().size() == 3);
  CHECK(sum.value() == Catch::Approx(-std::numbers::pi / 6 + 0.5 - 1 / (4 * std::numbers::pi))
                           .epsilon(1e-15));

  CHECK(minus_pi_over_6 * PiScalar(Rational(-6), -1) == PiScalar(Rational(1)));
  CHECK((half - half).is_zero());
  CHECK(PiScalar(Rational(2), 1) * PiScalar(Rational(1, 2), -1) == PiScalar(Rational(1)));
  CHECK(half / Rational(2) == PiScalar(Rational(1, 4)));
}

TEST_CASE("angle normalization into (-pi, pi]") {
  CHECK(Angle(Rational(3)) == Angle(Rational(1)));       // 3 pi = pi
  CHECK(Angle(Rational(-1)) == Angle(Rational(1)));      // -pi = pi
  CHECK(Angle(Rational(-5, 2)) == Angle(Rational(-1, 2)));
  CHECK(Angle(Rational(7, 3)) == Angle(Rational(1, 3)));
  CHECK(Angle(Rational(0)) < Angle(Rational(1, 2)));
  CHECK(Angle(Rational(1)).radians() == Catch::Approx(std::numbers::pi));
}

TEST_CASE("polynomial arithmetic over exact rings") {
  using P = Polynomial<Rational>;
  P p(std::vector<Rational>{Rational(1), Rational(4), Rational(1)});  // 1 + 4q + q^2
  P q(std::vector<Rational>{Rational(0), Rational(1)});

  CHECK(p.degree() == 2);
  CHECK(p.eval_exact(Rational(1)) == Rational(6));
  CHECK(p.derivative() == P(std::vector<Rational>{Rational(4), Rational(2)}));
  CHECK(p.antiderivative().derivative() == p);
  CHECK(divide_exact(p * q, q) == p);
  CHECK_THROWS_AS(divide_exact(p, q), std::domain_error);  // nonzero remainder

  // Shift (x -> x + 2 pi) stays in the ring and is exact.
  using PP = Polynomial<PiScalar>;
  PP x2(std::vector<PiScalar>{PiScalar(Rational(0)), PiScalar(Rational(0)), PiScalar(Rational(1))});
  PP shifted = x2.shifted(PiScalar(Rational(2), 1));
  CHECK(shifted.coeff(0) == PiScalar(Rational(4), 2));
  CHECK(shifted.coeff(1) == PiScalar(Rational(4), 1));
  CHECK(shifted.coeff(2) == PiScalar(Rational(1)));
}

TEST_CASE("polynomial trims trailing zeros") {
  Polynomial<Rational> z(std::vector<Rational>{Rational(0), Rational(0)});
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  Polynomial<Rational> a(std::vector<Rational>{Rational(2), Rational(3)});
  CHECK((a - a).is_zero());
}
