#include <doctest.h>

#include <cmath>

#include "widomlab/entropy.hpp"
#include "widomlab/trace.hpp"
#include "widomlab/widom.hpp"

using namespace widomlab;
using namespace widomlab::widom;
using geometry::Domain;

namespace {
const double kFourPi2 = 4.0 * kPi * kPi;
}

TEST_CASE("f_tilde analytic shortcuts") {
  auto t2 = SpectralFunction::monomial(2);
  CHECK(f_tilde(t2, 1.0) == doctest::Approx(-1.0 / kFourPi2).epsilon(1e-14));
  CHECK(f_tilde(t2, 0.5) == doctest::Approx(-0.25 / kFourPi2).epsilon(1e-14));

  auto t1 = SpectralFunction::monomial(1);
  CHECK(f_tilde(t1, 1.0) == 0.0);
  CHECK(f_tilde(t1, 0.37) == 0.0);

  auto t3 = SpectralFunction::monomial(3);
  CHECK(f_tilde(t3, 1.0) == doctest::Approx(-1.5 / kFourPi2).epsilon(1e-14));  // -3/(8 pi^2)

  CHECK(f_tilde(SpectralFunction::make_eta(), 1.0) == doctest::Approx(1.0 / 12.0));
  for (double beta : {0.5, 2.0, 3.0})
    CHECK(f_tilde(SpectralFunction::make_eta_beta(beta), 1.0) ==
          doctest::Approx((1.0 + beta) / (24.0 * beta)).epsilon(1e-14));
  // beta = 1 collapses to eta.
  CHECK(f_tilde(SpectralFunction::make_eta_beta(1.0), 1.0) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("f_tilde numeric path matches the shortcuts") {
  for (int k = 2; k <= 6; ++k) {
    auto f = SpectralFunction::monomial(k);
    for (double xi : {1.0, 0.8, 0.3}) {
      CHECK(std::abs(f_tilde_numeric(f, xi) - f_tilde(f, xi)) < 1e-8);
    }
  }
  for (double beta : {0.5, 2.0, 3.0}) {
    auto f = SpectralFunction::make_eta_beta(beta);
    CHECK(std::abs(f_tilde_numeric(f, 1.0) - (1.0 + beta) / (24.0 * beta)) < 1e-8);
  }
  CHECK(std::abs(f_tilde_numeric(SpectralFunction::make_eta(), 1.0) - 1.0 / 12.0) < 1e-8);
}

TEST_CASE("f_tilde linearity on the numeric path") {
  numerics::RandomSource rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    int k1 = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    int k2 = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    auto combo = SpectralFunction::user(
        [=](double t) { return a * std::pow(t, k1) + b * std::pow(t, k2); });
    for (double xi : {1.0, 0.6}) {
      double lhs = f_tilde_numeric(combo, xi);
      double rhs = a * f_tilde_numeric(SpectralFunction::monomial(k1), xi) +
                   b * f_tilde_numeric(SpectralFunction::monomial(k2), xi);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
  CHECK_THROWS_AS(SpectralFunction::user([](double t) { return t + 1.0; }),
                  InvalidFunctionError);
}

TEST_CASE("widom prediction, d=1 intervals") {
  auto seg = Domain::box({{-1.0, 1.0}});
  auto one = fourier::Symbol::one();
  auto pred = widom_prediction(SpectralFunction::monomial(2), one, seg, seg);
  CHECK(pred.leading_a == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(pred.log_b == doctest::Approx(-1.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK_FALSE(pred.conjectural);
  double r = 37.0;
  CHECK(pred.value_at(r) ==
        doctest::Approx(2.0 * r / kPi - std::log(r) / (kPi * kPi)).epsilon(1e-12));

  // F = t: b = 0 and the prediction equals the exact trace for all R.
  auto lin = widom_prediction(SpectralFunction::monomial(1), one, seg, seg);
  CHECK(lin.log_b == 0.0);
  for (double rr : {0.5, 3.0, 120.0}) {
    auto spec = trace::make_spec(seg, seg, one, rr);
    CHECK(lin.value_at(rr) == doctest::Approx(trace::exact_trace(spec).value).epsilon(1e-12));
  }
}

TEST_CASE("widom prediction, d=2 disks") {
  auto disk = Domain::ball(2, 1.0);
  auto one = fourier::Symbol::one();
  auto pred = widom_prediction(SpectralFunction::monomial(2), one, disk, disk, 128);
  CHECK(pred.leading_a == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(pred.log_b == doctest::Approx(-1.0 / (kPi * kPi)).epsilon(2e-4));

  // Assembly identity: b = Ftilde(1) (2pi)^{-(d-1)} coupling for alpha = 1.
  double coupling = geometry::coupling_integral(disk, disk, 128);
  CHECK(pred.log_b ==
        doctest::Approx(-1.0 / kFourPi2 / kTwoPi * coupling).epsilon(1e-12));

  // eta-type predictions carry the conjectural flag.
  auto eta_pred = widom_prediction(SpectralFunction::make_eta(), one, disk, disk, 64);
  CHECK(eta_pred.conjectural);
  auto cubic = widom_prediction(SpectralFunction::monomial(3), one, disk, disk, 64);
  CHECK(cubic.conjectural);
}

TEST_CASE("renyi coefficient") {
  auto seg = Domain::box({{-1.0, 1.0}});
  CHECK(renyi_coefficient(1.0, seg, seg) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(renyi_coefficient(2.0, seg, seg) == doctest::Approx(0.25).epsilon(1e-12));
  double prev = renyi_coefficient(0.25, seg, seg);
  for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    double cur = renyi_coefficient(beta, seg, seg);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(renyi_coefficient(0.0, seg, seg), InvalidArgumentError);
  CHECK_THROWS_AS(renyi_coefficient(-2.0, seg, seg), InvalidArgumentError);
}

TEST_CASE("entropy lower bound") {
  auto seg = Domain::box({{-1.0, 1.0}});
  double c = 4.0 * std::log(2.0) / (kPi * kPi);
  for (double r : {1.0, 20.0, 300.0})
    CHECK(entropy_lower_bound(seg, seg, r) == doctest::Approx(c * std::log(r)).epsilon(1e-12));
  CHECK(entropy_lower_bound(seg, seg, 1.0) == doctest::Approx(0.0));

  auto disk = Domain::ball(2, 1.0);
  double r = 25.0;
  CHECK(entropy_lower_bound(disk, disk, r) ==
        doctest::Approx(c * r * std::log(r)).epsilon(2e-4));
  CHECK_THROWS_AS(entropy_lower_bound(seg, seg, 0.5), InvalidArgumentError);
}
