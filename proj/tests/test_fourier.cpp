#include <doctest.h>

#include <cmath>

#include "widomlab/fourier.hpp"

using namespace widomlab;
using namespace widomlab::fourier;
using geometry::Domain;

namespace {

double bessel_j1(double x) { return numerics::bessel_j(1.0, x); }

// Composite 8-point panels resolving the sinc oscillation.
double panel_quad(const std::function<double(double)>& f, double a, double b, double width) {
  static const auto rule = numerics::gauss_legendre(8);
  long n = std::max<long>(8, static_cast<long>(std::ceil((b - a) / width)));
  double h = (b - a) / n, total = 0.0;
  for (long k = 0; k < n; ++k) {
    double mid = a + (k + 0.5) * h;
    for (int i = 0; i < 8; ++i) total += 0.5 * h * rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
  }
  return total;
}

}  // namespace

TEST_CASE("gamma closed forms") {
  auto one = Symbol::one();

  // d = 1 interval: sin(v)/(pi v).
  auto seg = Domain::box({{-1.0, 1.0}});
  for (double v : {0.3, 2.7, 11.0}) {
    auto g = gamma(seg, one, Vec{0.0}, Vec{v});
    CHECK(g.value.real() == doctest::Approx(std::sin(v) / (kPi * v)).epsilon(1e-13));
    CHECK(std::abs(g.value.imag()) < 1e-15);
  }

  // v = 0 always gives |Gamma| / (2 pi)^d.
  for (auto dom : {Domain::box({{-1.0, 1.0}, {0.0, 2.0}}), Domain::ball(2, 1.4),
                   Domain::ellipsoid({1.0, 2.0})}) {
    auto g = gamma(dom, one, Vec(2), Vec(2));
    CHECK(g.value.real() ==
          doctest::Approx(dom.volume() / (kTwoPi * kTwoPi)).epsilon(1e-12));
  }

  // d = 2 unit disk at v = (3,0): J1(3) / (6 pi).
  auto disk = Domain::ball(2, 1.0);
  auto g3 = gamma(disk, one, Vec(2), Vec{3.0, 0.0});
  CHECK(g3.value.real() == doctest::Approx(bessel_j1(3.0) / (6.0 * kPi)).epsilon(1e-12));
  CHECK(std::abs(g3.value.imag()) < 1e-15);

  // Same number from the defining integral by quadrature.
  auto gq = gamma(disk, one, Vec(2), Vec{3.0, 0.0}, GammaMethod::quadrature);
  CHECK(std::abs(gq.value - g3.value) < 1e-10);
}

TEST_CASE("gamma closed vs quadrature on the disk, 50 random v") {
  auto disk = Domain::ball(2, 1.0);
  auto one = Symbol::one();
  numerics::RandomSource rng(9);
  for (int t = 0; t < 50; ++t) {
    double r = rng.uniform(0.2, 20.0), th = rng.uniform(0.0, kTwoPi);
    Vec v{r * std::cos(th), r * std::sin(th)};
    auto c = gamma(disk, one, Vec(2), v, GammaMethod::closed_form);
    auto q = gamma(disk, one, Vec(2), v, GammaMethod::quadrature);
    CHECK(std::abs(c.value - q.value) <= 1e-8);
  }
}

TEST_CASE("gamma magnitude never exceeds |Gamma|/(2pi)^d") {
  auto one = Symbol::one();
  numerics::RandomSource rng(55);
  for (auto dom : {Domain::ball(2, 1.0), Domain::box({{-1.0, 1.0}, {0.0, 2.0}}),
                   Domain::ellipsoid({1.0, 2.0})}) {
    double bound = dom.volume() / (kTwoPi * kTwoPi);
    for (int t = 0; t < 40; ++t) {
      Vec v{rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
      CHECK(std::abs(gamma(dom, one, Vec(2), v).value) <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("gamma conjugate symmetry for real symbols") {
  auto disk = Domain::ball(2, 1.0);
  auto one = Symbol::one();
  auto cosp = Symbol::momentum([](const Vec& p) { return Complex(std::cos(p[0]), 0.0); }, 1.0,
                               true);
  numerics::RandomSource rng(13);
  for (int t = 0; t < 8; ++t) {
    Vec v{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
    auto plus = gamma(disk, one, Vec(2), v);
    auto minus = gamma(disk, one, Vec(2), -v);
    CHECK(std::abs(minus.value - std::conj(plus.value)) < 1e-12);

    auto qplus = gamma(disk, cosp, Vec(2), v);
    auto qminus = gamma(disk, cosp, Vec(2), -v);
    CHECK(std::abs(qminus.value - std::conj(qplus.value)) < 1e-8);
  }
}

TEST_CASE("gamma oscillation budget") {
  auto disk = Domain::ball(2, 1.0);
  auto cosp =
      Symbol::momentum([](const Vec& p) { return Complex(std::cos(p[0]), 0.0); }, 1.0, true);
  CHECK_THROWS_AS(gamma(disk, cosp, Vec(2), Vec{5000.0, 0.0}, GammaMethod::quadrature, 8),
                  AccuracyLossError);
  CHECK_THROWS_AS(
      gamma(disk, cosp, Vec(2), Vec{std::nan(""), 0.0}, GammaMethod::quadrature, 8),
      InvalidArgumentError);
}

TEST_CASE("gamma_asymptotic reproduces the d=1 sinc exactly") {
  auto seg = Domain::ball(1, 1.0);
  auto one = Symbol::one();
  for (double v : {7.0, 20.0, 55.5}) {
    auto a = gamma_asymptotic(seg, one, Vec{0.0}, Vec{v});
    CHECK(a.value.real() == doctest::Approx(std::sin(v) / (kPi * v)).epsilon(1e-12));
  }
}

TEST_CASE("gamma_asymptotic vs Bessel on the disk") {
  auto disk = Domain::ball(2, 1.0);
  auto one = Symbol::one();
  for (double v : {50.0, 80.0, 130.0}) {
    double worst = 0.0;
    for (int k = 0; k < 24; ++k) {
      double vv = v + k * kTwoPi / 24.0;
      auto a = gamma_asymptotic(disk, one, Vec(2), Vec{vv, 0.0});
      double closed = bessel_j1(vv) / (kTwoPi * vv);
      double env = 2.0 * std::pow(kTwoPi * vv, -1.5);
      worst = std::max(worst, std::abs(a.value.real() - closed) / env);
      CHECK(std::abs(a.value.imag()) < 1e-15);
    }
    CHECK(worst <= 2.0 / v);
  }
}

TEST_CASE("gamma_asymptotic rotational invariance on balls") {
  auto disk = Domain::ball(2, 1.0);
  auto one = Symbol::one();
  numerics::RandomSource rng(19);
  for (double v : {12.0, 60.0}) {
    auto ref = gamma_asymptotic(disk, one, Vec(2), Vec{v, 0.0});
    for (int t = 0; t < 6; ++t) {
      double th = rng.uniform(0.0, kTwoPi);
      auto rot = gamma_asymptotic(disk, one, Vec(2), Vec{v * std::cos(th), v * std::sin(th)});
      CHECK(std::abs(rot.value - ref.value) < 1e-12);
    }
  }
}

TEST_CASE("gamma_asymptotic envelope on the 3-ball") {
  auto ball = Domain::ball(3, 1.0);
  auto one = Symbol::one();
  // |gamma| at stationary-phase maxima approaches 2 (2 pi v)^{-2}; compare the
  // J_{3/2} closed form maximum over one period.
  double v0 = 80.0;
  double peak_closed = 0.0, peak_asym = 0.0;
  for (int k = 0; k < 200; ++k) {
    double v = v0 + k * kTwoPi / 200.0;
    peak_closed = std::max(peak_closed, std::abs(gamma(ball, one, Vec(3), Vec{0.0, 0.0, v}).value));
    peak_asym = std::max(
        peak_asym, std::abs(gamma_asymptotic(ball, one, Vec(3), Vec{0.0, 0.0, v}).value));
  }
  double envelope = 2.0 * std::pow(kTwoPi * v0, -2.0);
  CHECK(peak_asym == doctest::Approx(envelope).epsilon(0.05));
  CHECK(peak_closed == doctest::Approx(envelope).epsilon(0.05));

  CHECK_THROWS_AS(gamma_asymptotic(Domain::box({{-1.0, 1.0}, {-1.0, 1.0}}), one, Vec(2),
                                   Vec{50.0, 0.0}),
                  UnsupportedDomainError);
  CHECK_THROWS_AS(gamma_asymptotic(ball, one, Vec(3), Vec{1.0, 0.0, 0.0}),
                  InvalidArgumentError);
}

TEST_CASE("decay envelope: disk bounded, box unbounded along axes") {
  std::vector<double> grid;
  for (double v = 20.0; v <= 320.0; v *= 1.5) grid.push_back(v);

  auto disk_rep = decay_envelope_check(Domain::ball(2, 1.0), 64, grid);
  CHECK(disk_rep.bounded);
  CHECK(disk_rep.c_estimate > 0.1);
  CHECK(disk_rep.c_estimate < 1.0);

  auto box_rep = decay_envelope_check(Domain::box({{-1.0, 1.0}, {-1.0, 1.0}}), 64, grid);
  CHECK_FALSE(box_rep.bounded);
}

TEST_CASE("sinc kernel self-reproduction under convolution") {
  // chi_Gamma^2 = chi_Gamma: (gamma * gamma)(v) = gamma(v). Truncation at
  // +-200 leaves the analytically known non-oscillatory tail
  // -cos(v)/(2 pi^2 v) ln((L-v)/(L+v)), which is added back in closed form.
  const double L = 200.0;
  auto seg = Domain::box({{-1.0, 1.0}});
  auto one = Symbol::one();
  auto g = [&](double u) {
    return u == 0.0 ? 1.0 / kPi : std::sin(u) / (kPi * u);
  };
  for (double v : {0.0, 1.0, 2.5, 5.0}) {
    double conv = panel_quad([&](double u) { return g(u) * g(v - u); }, -L, L, 1.0);
    double dc_tail;
    if (v == 0.0) {
      dc_tail = -std::cos(v) / (2.0 * kPi * kPi) * (-2.0 / L);
    } else {
      dc_tail = -std::cos(v) / (2.0 * kPi * kPi) * std::log((L - v) / (L + v)) / v;
    }
    // Leading oscillatory boundary term of the two tails.
    double osc_tail = (std::sin(2.0 * L - v) / (2.0 * L * (L - v)) +
                       std::sin(2.0 * L + v) / (2.0 * L * (L + v))) /
                      (2.0 * kPi * kPi);
    double lhs = conv + dc_tail + osc_tail;
    auto rhs = gamma(seg, one, Vec{0.0}, Vec{v}).value.real();
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}
