#include "widomlab/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace widomlab::lemmas {

using geometry::Domain;
using geometry::DomainKind;

namespace {

double inradius(const Domain& d) {
  switch (d.kind()) {
    case DomainKind::box: {
      double r = std::numeric_limits<double>::infinity();
      for (const auto& [lo, hi] : d.bounds()) r = std::min(r, 0.5 * (hi - lo));
      return r;
    }
    case DomainKind::ball:
      return d.radius();
    case DomainKind::ellipsoid:
      return *std::min_element(d.semi_axes().begin(), d.semi_axes().end());
  }
  return 0.0;
}

void validate(const TranslateFamily& fam) {
  if (fam.shifts.empty()) throw InvalidArgumentError("TranslateFamily: need at least one shift");
  if (!(fam.eps > 0.0)) throw InvalidArgumentError("TranslateFamily: eps must be > 0");
  double vmax = 0.0;
  for (const auto& v : fam.shifts) vmax = std::max(vmax, v.norm());
  if (fam.eps * vmax >= 0.5 * inradius(fam.domain))
    throw InvalidArgumentError("TranslateFamily: eps exceeds the tubular-neighborhood budget");
}

double weight_at(const TranslateFamily& fam, const Vec& x) {
  return fam.weight ? fam.weight(x) : 1.0;
}

// Adaptive Simpson in the angle; the radial kink locations (argmin branch
// switches) are resolved by recursion.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

// Deterministic route on the d = 2 ball: polar slices with the excluded
// radial segment [rho*(theta), r].
double excluded_ball2(const TranslateFamily& fam) {
  const Domain& omega = fam.domain;
  const double r = omega.radius();
  const Vec c = omega.center();
  const double eps = fam.eps;
  static const auto radial_rule = numerics::gauss_legendre(16);

  auto slice = [&](double theta) {
    Vec u{std::cos(theta), std::sin(theta)};
    double rho_star = r;
    for (const auto& v : fam.shifts) {
      // |(rho u + eps v)| = r with the shift convention Omega - eps v.
      double vu = v.dot(u), v2 = v.norm2();
      double disc = r * r - eps * eps * (v2 - vu * vu);
      double rho_k = -eps * vu + std::sqrt(std::max(0.0, disc));
      rho_star = std::min(rho_star, std::max(0.0, rho_k));
    }
    if (rho_star >= r) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
      double rho = 0.5 * (rho_star + r) + 0.5 * (r - rho_star) * radial_rule.nodes[i];
      Vec x = c + rho * u;
      acc += 0.5 * (r - rho_star) * radial_rule.weights[i] * weight_at(fam, x) * rho;
    }
    return acc;
  };
  return integrate_adaptive(slice, 0.0, kTwoPi, 1e-13);
}

double box_integral(const TranslateFamily& fam, const std::vector<std::pair<double, double>>& b) {
  // Tensor Gauss-Legendre of the weight over the box.
  if (!fam.weight) {
    double v = 1.0;
    for (const auto& [lo, hi] : b) v *= std::max(0.0, hi - lo);
    return v;
  }
  for (const auto& [lo, hi] : b)
    if (hi <= lo) return 0.0;
  numerics::Box box{b};
  static const auto rule = numerics::gauss_legendre(32);
  return numerics::integrate_nd_real([&](const Vec& x) { return fam.weight(x); }, box, rule);
}

double excluded_box(const TranslateFamily& fam) {
  const auto& b = fam.domain.bounds();
  const int d = fam.domain.dim();
  // Omega ∩ ∩_k (Omega - eps v_k) is the box with per-axis bounds
  // [lo - eps min(0, min_k v), hi - eps max(0, max_k v)].
  std::vector<std::pair<double, double>> inner(b.begin(), b.end());
  for (int i = 0; i < d; ++i) {
    double vmin = 0.0, vmax = 0.0;
    for (const auto& v : fam.shifts) {
      vmin = std::min(vmin, v[i]);
      vmax = std::max(vmax, v[i]);
    }
    inner[i].first = b[i].first - fam.eps * vmin;
    inner[i].second = b[i].second - fam.eps * vmax;
  }
  return box_integral(fam, b) - box_integral(fam, inner);
}

}  // namespace

double excluded_volume(const TranslateFamily& fam, VolumeMethod method, long n_samples,
                       std::uint64_t seed) {
  validate(fam);
  if (method == VolumeMethod::closed) {
    if (fam.domain.kind() == DomainKind::box) return excluded_box(fam);
    if (fam.domain.kind() == DomainKind::ball && fam.domain.dim() == 2)
      return excluded_ball2(fam);
    throw InvalidMethodError("excluded_volume: closed route supports boxes and d = 2 balls");
  }
  if (n_samples <= 0) {
    double want = 1000.0 / (fam.eps * fam.eps);
    n_samples = static_cast<long>(std::clamp(want, 1.0e6, 1.0e7));
  }
  numerics::RandomSource rng(seed);
  const Domain& omega = fam.domain;
  double sum = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    Vec x = omega.sample_uniform(rng);
    bool excluded = false;
    for (const auto& v : fam.shifts) {
      if (!omega.contains(x + fam.eps * v)) {
        excluded = true;
        break;
      }
    }
    if (excluded) sum += weight_at(fam, x);
  }
  return omega.volume() * sum / static_cast<double>(n_samples);
}

double surface_term(const TranslateFamily& fam, int resolution) {
  validate(fam);
  double acc = 0.0;
  for (const auto& bp : geometry::boundary_quadrature(fam.domain, resolution)) {
    double m = 0.0;
    for (const auto& v : fam.shifts) m = std::max(m, v.dot(bp.normal));
    if (m > 0.0) acc += bp.weight * weight_at(fam, bp.position) * m;
  }
  return fam.eps * acc;
}

OrderReport roccaforte_order_check(const TranslateFamily& fam, const std::vector<double>& eps_grid,
                                   VolumeMethod method) {
  if (eps_grid.size() < 2)
    throw InvalidArgumentError("roccaforte_order_check: need at least two eps values");
  OrderReport rep;
  rep.eps_grid = eps_grid;
  double scale = fam.domain.volume();
  for (double eps : eps_grid) {
    TranslateFamily f = fam;
    f.eps = eps;
    double diff = std::abs(excluded_volume(f, method) - surface_term(f));
    rep.differences.push_back(diff);
  }
  bool all_zero = std::all_of(rep.differences.begin(), rep.differences.end(),
                              [&](double d) { return d < 1e-12 * scale; });
  if (all_zero) {
    rep.flat = true;
    return rep;
  }
  std::vector<double> lx, ly;
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    lx.push_back(std::log(eps_grid[i]));
    ly.push_back(std::log(std::max(rep.differences[i], 1e-300)));
  }
  auto fit = numerics::fit_linear(lx, ly,
                                  {[](double x) { return x; }, [](double) { return 1.0; }});
  rep.slope = fit.coefficients[0];
  return rep;
}

namespace {

template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void check_size(std::span<const double> a) {
  if (a.empty()) throw InvalidArgumentError("identity: empty vector");
  if (a.size() > 9) throw TooLargeError("identity: n > 9 exceeds the factorial budget");
}

}  // namespace

// Extended-precision accumulation keeps the three forms' branch decisions
// (max vs 0, Theta at 0) consistent across permutation orders.

double widom_identity_lhs(std::span<const double> a) {
  check_size(a);
  const int n = static_cast<int>(a.size());
  long double total = 0.0L;
  for_each_permutation(n, [&](const std::vector<int>& perm) {
    long double run = 0.0L, best = 0.0L;
    for (int i = 0; i < n; ++i) {
      run += a[perm[i]];
      best = std::max(best, run);
    }
    total += best;
  });
  return static_cast<double>(total);
}

double widom_identity_rhs(std::span<const double> a) {
  check_size(a);
  const int n = static_cast<int>(a.size());
  long double total = 0.0L;
  for_each_permutation(n, [&](const std::vector<int>& perm) {
    long double run = 0.0L;
    for (int l = 1; l <= n; ++l) {
      run += a[perm[l - 1]];
      if (run > 0.0L) total += run / l;
    }
  });
  return static_cast<double>(total);
}

double kac_identity_rhs(std::span<const double> a) {
  check_size(a);
  const int n = static_cast<int>(a.size());
  long double total = 0.0L;
  for_each_permutation(n, [&](const std::vector<int>& perm) {
    long double first = a[perm[0]];
    long double run = 0.0L;
    int steps = 0;
    for (int k = 1; k <= n; ++k) {
      run += a[perm[k - 1]];
      if (run >= 0.0L) ++steps;  // Theta(0) = 1, right-continuous
    }
    total += first * steps;
  });
  return static_cast<double>(total);
}

}  // namespace widomlab::lemmas
