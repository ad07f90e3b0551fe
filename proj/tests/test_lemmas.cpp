#include <doctest.h>

#include <cmath>

#include "widomlab/lemmas.hpp"

using namespace widomlab;
using namespace widomlab::lemmas;
using geometry::Domain;

namespace {

TranslateFamily disk_family(std::vector<Vec> shifts, double eps,
                            std::function<double(const Vec&)> weight = {}) {
  return TranslateFamily{Domain::ball(2, 1.0), std::move(shifts), eps, std::move(weight)};
}

}  // namespace

TEST_CASE("excluded volume closed forms") {
  // Box slab: exactly eps for a unit translate.
  TranslateFamily box{Domain::box({{0.0, 1.0}, {0.0, 1.0}}), {Vec{1.0, 0.0}}, 0.01, {}};
  CHECK(excluded_volume(box, VolumeMethod::closed) == doctest::Approx(0.01).epsilon(1e-12));

  // Unit disk, unit translate, eps = 0.01: 0.02 + O(eps^2) (the exact value
  // is pi minus the lens area at distance eps).
  auto disk = disk_family({Vec{1.0, 0.0}}, 0.01);
  double val = excluded_volume(disk, VolumeMethod::closed);
  CHECK(std::abs(val - 0.02) < 2e-4);
  double lens = 2.0 * std::acos(0.005) - 0.005 * std::sqrt(4.0 - 1e-4);
  CHECK(val == doctest::Approx(kPi - lens).epsilon(1e-9));

  // eps scaled to zero shifts: excluded volume vanishes.
  auto zero = disk_family({Vec{0.0, 0.0}}, 0.01);
  CHECK(excluded_volume(zero, VolumeMethod::closed) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(excluded_volume(disk_family({Vec{1.0, 0.0}}, 10.0), VolumeMethod::closed),
                  InvalidArgumentError);
  TranslateFamily ball3{Domain::ball(3, 1.0), {Vec{1.0, 0.0, 0.0}}, 0.01, {}};
  CHECK_THROWS_AS(excluded_volume(ball3, VolumeMethod::closed), InvalidMethodError);
}

TEST_CASE("excluded volume MC vs closed") {
  auto fam = disk_family({Vec{1.0, 0.0}, Vec{std::cos(1.2), std::sin(1.2)}}, 0.1);
  double closed = excluded_volume(fam, VolumeMethod::closed);
  double mc = excluded_volume(fam, VolumeMethod::mc);
  CHECK(std::abs(mc - closed) < 3e-3);

  // Weighted MC agrees too.
  auto weighted = disk_family({Vec{1.0, 0.0}}, 0.1, [](const Vec& x) { return 1.0 + 0.5 * x[0]; });
  double wc = excluded_volume(weighted, VolumeMethod::closed);
  double wm = excluded_volume(weighted, VolumeMethod::mc);
  CHECK(std::abs(wm - wc) < 3e-3);
}

TEST_CASE("surface term on the disk") {
  auto one_shift = disk_family({Vec{1.0, 0.0}}, 0.02);
  CHECK(surface_term(one_shift) == doctest::Approx(2.0 * 0.02).epsilon(1e-5));

  auto pm = disk_family({Vec{1.0, 0.0}, Vec{-1.0, 0.0}}, 0.02);
  CHECK(surface_term(pm) == doctest::Approx(4.0 * 0.02).epsilon(1e-5));

  auto weighted = disk_family({Vec{1.0, 0.0}}, 0.02, [](const Vec& x) { return x[0]; });
  CHECK(surface_term(weighted) == doctest::Approx(0.02 * kPi / 2.0).epsilon(1e-5));

  // Positive homogeneity in eps and jointly in the shift family.
  auto base = disk_family({Vec{0.7, 0.2}}, 0.01);
  auto doubled_eps = disk_family({Vec{0.7, 0.2}}, 0.02);
  CHECK(surface_term(doubled_eps) == doctest::Approx(2.0 * surface_term(base)).epsilon(1e-12));
  auto doubled_v = disk_family({Vec{1.4, 0.4}}, 0.01);
  CHECK(surface_term(doubled_v) == doctest::Approx(2.0 * surface_term(base)).epsilon(1e-12));
}

TEST_CASE("roccaforte order check families") {
  std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125};

  // Flat box faces: the identity is exact at every eps.
  TranslateFamily box{Domain::box({{0.0, 1.0}, {0.0, 1.0}}), {Vec{1.0, 0.0}}, 0.1, {}};
  auto flat = roccaforte_order_check(box, eps, VolumeMethod::closed);
  CHECK(flat.flat);

  // Unweighted single translate on the disk: the eps^2 term of the lens
  // expansion vanishes and the true order is 3 (still within the O(eps^2)
  // bound of the expansion theorem).
  auto single = roccaforte_order_check(disk_family({Vec{1.0, 0.0}}, 0.1), eps,
                                       VolumeMethod::closed);
  CHECK(single.slope == doctest::Approx(3.0).epsilon(0.1));

  // A C^1 weight brings back a genuine eps^2 term.
  auto weighted = roccaforte_order_check(
      disk_family({Vec{1.0, 0.0}}, 0.1, [](const Vec& x) { return 1.0 + 0.5 * x[0]; }), eps,
      VolumeMethod::closed);
  CHECK(weighted.slope > 1.8);
  CHECK(weighted.slope < 2.2);

  // Two generic translates, unweighted.
  auto pair = roccaforte_order_check(
      disk_family({Vec{1.0, 0.0}, Vec{std::cos(1.2217), std::sin(1.2217)}}, 0.1), eps,
      VolumeMethod::closed);
  CHECK(pair.slope > 1.8);
  CHECK(pair.slope < 2.2);
}

TEST_CASE("permutation identities on small cases") {
  std::vector<double> one = {0.7};
  CHECK(widom_identity_lhs(one) == doctest::Approx(0.7));
  CHECK(widom_identity_rhs(one) == doctest::Approx(0.7));
  CHECK(kac_identity_rhs(one) == doctest::Approx(0.7));
  std::vector<double> oneneg = {-0.4};
  CHECK(widom_identity_lhs(oneneg) == 0.0);
  CHECK(kac_identity_rhs(oneneg) == 0.0);

  // n = 2, a = (1,-1): both permutations enumerated by hand give 1.
  std::vector<double> pm = {1.0, -1.0};
  CHECK(widom_identity_lhs(pm) == doctest::Approx(1.0));
  CHECK(widom_identity_rhs(pm) == doctest::Approx(1.0));
  CHECK(kac_identity_rhs(pm) == doctest::Approx(1.0));

  std::vector<double> big(10, 1.0);
  CHECK_THROWS_AS(widom_identity_lhs(big), TooLargeError);
}

TEST_CASE("permutation identities agree on random vectors") {
  numerics::RandomSource rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 6;
    std::vector<double> a(n);
    for (double& x : a) x = rng.uniform(-1.0, 1.0);
    if (trial % 4 == 1 && n >= 2) a[1] = -a[0];  // zero partial sum
    if (trial % 5 == 2 && n >= 3) a[2] = a[0];   // repeated entry
    double lhs = widom_identity_lhs(a);
    double rhs = widom_identity_rhs(a);
    double kac = kac_identity_rhs(a);
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(std::abs(lhs - kac) < 1e-10);

    // Homogeneity under positive scaling.
    double s = 2.75;
    std::vector<double> scaled(a);
    for (double& x : scaled) x *= s;
    CHECK(widom_identity_lhs(scaled) == doctest::Approx(s * lhs).epsilon(1e-10));
    CHECK(kac_identity_rhs(scaled) == doctest::Approx(s * kac).epsilon(1e-10));
  }
}
