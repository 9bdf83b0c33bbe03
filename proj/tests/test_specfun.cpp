#include <cmath>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <gtest/gtest.h>

#include "stopdur/specfun.hpp"

using namespace stopdur;
using namespace stopdur::specfun;
using std::numbers::e;

// Reference values come from Boost.Math, which is independent of our code.

TEST(Digamma, ExamplesAndOracle) {
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-13);
  EXPECT_NEAR(digamma(2.0), 0.4227843350984671, 1e-13);
  double harmonic = 0.0;
  for (int k = 1; k <= 9; ++k)
    harmonic += 1.0 / k;
  EXPECT_NEAR(digamma(10.0), -euler_gamma + harmonic, 1e-12);
  for (double x : {0.01, 0.3, 0.5, 1.5, 3.7, 6.0, 10.0, 99.5, 1e4, 1e7})
    EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::digamma(x)))) << x;
}

TEST(Digamma, Recurrence) {
  for (double x : {0.5, 1.0, 2.0, 10.0, 100.0})
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-12) << x;
}

TEST(Digamma, Domain) {
  EXPECT_THROW(digamma(0.0), std::domain_error);
  EXPECT_THROW(digamma(-2.5), std::domain_error);
}

TEST(LambertW, Examples) {
  EXPECT_EQ(lambert_w(0.0, LambertBranch::principal), 0.0);
  EXPECT_NEAR(lambert_w(-1.0 / e, LambertBranch::lower), -1.0, 1e-7);
  EXPECT_NEAR(lambert_w(-1.0 / e, LambertBranch::principal), -1.0, 1e-7);
  const double w = lambert_w(-2.0 / (e * e), LambertBranch::principal);
  EXPECT_NEAR(w, -0.40637573995996, 1e-12);
  EXPECT_NEAR(w * std::exp(w), -2.0 / (e * e), 1e-15);
  EXPECT_NEAR(-0.5 * w, 0.20318786, 1e-8);
}

TEST(LambertW, ResidualAcrossBranches) {
  const double zmin = -1.0 / e;
  for (int i = 0; i < 100; ++i) {
    // Principal: from the branch point out to 50.
    const double zp = zmin + (50.0 - zmin) * std::pow(i / 99.0, 3);
    const double wp = lambert_w(zp, LambertBranch::principal);
    EXPECT_GE(wp, -1.0 - 1e-7);
    EXPECT_NEAR(wp * std::exp(wp), zp, 1e-10 * std::max(1.0, std::abs(zp))) << zp;
    if (i > 0)
      EXPECT_NEAR(wp, boost::math::lambert_w0(zp), 1e-10 * std::max(1.0, std::abs(wp))) << zp;
    // Lower: the whole of [-1/e, 0).
    const double zl = zmin * (1.0 - i / 100.0);
    const double wl = lambert_w(zl, LambertBranch::lower);
    EXPECT_LE(wl, -1.0 + 1e-7);
    EXPECT_NEAR(wl * std::exp(wl), zl, 1e-10) << zl;
    if (i > 0)
      EXPECT_NEAR(wl, boost::math::lambert_wm1(zl), 1e-9 * std::abs(wl)) << zl;
  }
}

TEST(LambertW, Domain) {
  EXPECT_THROW(lambert_w(-0.5, LambertBranch::principal), std::domain_error);
  EXPECT_THROW(lambert_w(0.0, LambertBranch::lower), std::domain_error);
  EXPECT_THROW(lambert_w(0.1, LambertBranch::lower), std::domain_error);
}

TEST(ExpIntegral, OracleAndConstants) {
  for (double c : {1e-6, 0.1, 0.5, 0.804352, 0.999, 1.0, 1.25643, 2.1198, 5.0, 30.0})
    EXPECT_NEAR(exp_integral_e1(c), boost::math::expint(1, c), 1e-12 * std::max(1.0, boost::math::expint(1, c))) << c;
  EXPECT_NEAR(exp_integral_e1(0.804352), 0.308164, 1e-6);
  EXPECT_NEAR(exp_integral_e1(1.25643), 0.144948, 1e-6);
  EXPECT_NEAR(exp_integral_e1(1.0), 0.21938393439552, 1e-12);
}

TEST(ExpIntegral, MatchesQuadratureOfDefinition) {
  for (double c : {0.5, 0.804352, 1.25643, 2.1198}) {
    const double q = integrate([c](double x) { return std::exp(-c * x) / x; }, 1.0, INFINITY, 1e-12);
    EXPECT_NEAR(exp_integral_e1(c), q, 1e-9) << c;
  }
}

TEST(ExpIntegral, Domain) {
  EXPECT_THROW(exp_integral_e1(0.0), std::domain_error);
  EXPECT_THROW(exp_integral_e1(-1.0), std::domain_error);
}

TEST(SolveRoot, Examples) {
  EXPECT_NEAR(solve_root([](double x) { return x * x - 2.0; }, {1.0, 2.0}, 1e-12), std::numbers::sqrt2, 1e-12);
  // sum_j c^j / (j! j) = 1
  auto gm = [](double c) {
    double term = 1.0, s = 0.0;
    for (int j = 1; j < 60; ++j) {
      term *= c / j;
      s += term / j;
    }
    return s - 1.0;
  };
  EXPECT_NEAR(solve_root(gm, {0.5, 1.0}), 0.804352, 1e-6);
  EXPECT_NEAR(solve_root([](double c) { return std::expm1(c) - 2.0 * c; }, {1.0, 2.0}), 1.25643, 1e-5);
}

TEST(SolveRoot, SignChangeWithinTolerance) {
  const double tol = 1e-10;
  auto check = [&](auto f, Bracket b) {
    const double x = solve_root(f, b, tol);
    EXPECT_TRUE(x >= b.lo && x <= b.hi);
    EXPECT_LE(f(x - tol) * f(x + tol), 0.0) << x;
  };
  check([](double x) { return std::exp(x) - 3.0; }, {0.0, 2.0});
  check([](double x) { return std::log(x) + 0.5; }, {0.01, 1.0});
  check([](double x) { return std::atan(x - 0.3); }, {-10.0, 10.0});
  check([](double x) { return -x * x * x + 0.001; }, {-1.0, 1.0});
  check([](double x) { return std::tanh(50.0 * (x - 0.77)); }, {0.0, 1.0});
}

TEST(SolveRoot, Errors) {
  EXPECT_THROW(solve_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}), NumericError);
  EXPECT_THROW(solve_root([](double x) { return x; }, {1.0, -1.0}), std::invalid_argument);
}

TEST(Integrate, Examples) {
  EXPECT_NEAR(integrate([](double x) { return x; }, 0.0, 1.0), 0.5, 1e-14);
  const double c = 0.804352;
  EXPECT_NEAR(integrate([c](double x) { return std::exp(-c * x) / (x * x); }, 1.0, INFINITY), 0.199505, 1e-6);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x) / x; }, 1.0, INFINITY), 0.21938393439552, 1e-11);
  EXPECT_NEAR(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10), 2.0 / 3.0, 1e-10);
}

TEST(CompensatedSum, RecoversCancelledMass) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i)
    s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-10, 1e-20);
}
