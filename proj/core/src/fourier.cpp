#include "widomlab/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace widomlab::fourier {

using geometry::Domain;
using geometry::DomainKind;

Symbol Symbol::one() {
  Symbol s;
  s.kind_ = Kind::one;
  return s;
}

Symbol Symbol::momentum(std::function<Complex(const Vec&)> f, double sup_norm,
                        bool real_valued) {
  Symbol s;
  s.kind_ = Kind::momentum;
  s.fp_ = std::move(f);
  s.sup_norm_ = sup_norm;
  s.real_ = real_valued;
  return s;
}

Symbol Symbol::general(std::function<Complex(const Vec&, const Vec&)> f, double sup_norm,
                       bool real_valued) {
  Symbol s;
  s.kind_ = Kind::general;
  s.fxp_ = std::move(f);
  s.sup_norm_ = sup_norm;
  s.real_ = real_valued;
  return s;
}

Complex Symbol::operator()(const Vec& x, const Vec& p) const {
  switch (kind_) {
    case Kind::one:
      return 1.0;
    case Kind::momentum:
      return fp_(p);
    case Kind::general:
      return fxp_(x, p);
  }
  return 0.0;
}

namespace {

constexpr Complex kI{0.0, 1.0};

// J_nu(z) / z^nu, stable through z -> 0.
double bessel_over_power(double nu, double z) {
  if (z < 0.5) {
    double q = 0.25 * z * z;
    double term = std::pow(0.5, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k <= 12; ++k) {
      term *= -q / (k * (k + nu));
      sum += term;
    }
    return sum;
  }
  return numerics::bessel_j(nu, z) / std::pow(z, nu);
}

// (2 pi)^{-1} integral over [a,b] of e^{i v t} dt.
Complex interval_factor(double a, double b, double v) {
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double z = v * half;
  double sinc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
  return std::exp(kI * (v * mid)) * (b - a) * sinc / kTwoPi;
}

Complex closed_form_ball(int d, double r, const Vec& center, const Vec& v) {
  double z = r * v.norm();
  double value = std::pow(r, d) * std::pow(kTwoPi, -0.5 * d) * bessel_over_power(0.5 * d, z);
  return std::exp(kI * v.dot(center)) * value;
}

Complex quadrature_gamma(const Domain& g, const Symbol& alpha, const Vec& x, const Vec& v,
                         int resolution) {
  const int d = g.dim();
  if (v.norm() * g.diameter() > 200.0 * resolution)
    throw AccuracyLossError("gamma: |v| exceeds the oscillation budget for this resolution");

  // Node count scaled to the phase range across the domain.
  double phase = 0.5 * v.norm() * g.diameter();
  int res = std::max(resolution, static_cast<int>(std::ceil(1.1 * phase)) + 16);
  Complex total = 0.0;
  for (const auto& qn : geometry::quadrature_grid(g, res))
    total += qn.w * alpha(x, qn.p) * std::exp(kI * v.dot(qn.p));
  return total * std::pow(kTwoPi, -d);
}

}  // namespace

GammaEvaluation gamma(const Domain& gamma_dom, const Symbol& alpha, const Vec& x, const Vec& v,
                      GammaMethod method, int resolution) {
  for (int i = 0; i < v.dim(); ++i)
    if (!std::isfinite(v[i])) throw InvalidArgumentError("gamma: v must be finite");
  if (method == GammaMethod::stationary_phase) return gamma_asymptotic(gamma_dom, alpha, x, v);

  const int d = gamma_dom.dim();
  const bool have_closed = alpha.is_one();
  if (method == GammaMethod::automatic) {
    method = have_closed ? GammaMethod::closed_form : GammaMethod::quadrature;
  }
  if (method == GammaMethod::closed_form) {
    if (!have_closed)
      throw InvalidMethodError("gamma: no closed form for this symbol");
    GammaEvaluation ev;
    ev.method = GammaMethod::closed_form;
    ev.error_estimate = 1e-14 * gamma_dom.volume() * std::pow(kTwoPi, -d);
    switch (gamma_dom.kind()) {
      case DomainKind::box: {
        Complex prod = 1.0;
        for (int i = 0; i < d; ++i)
          prod *= interval_factor(gamma_dom.bounds()[i].first, gamma_dom.bounds()[i].second, v[i]);
        ev.value = prod;
        return ev;
      }
      case DomainKind::ball:
        ev.value = closed_form_ball(d, gamma_dom.radius(), gamma_dom.center(), v);
        return ev;
      case DomainKind::ellipsoid: {
        const auto& a = gamma_dom.semi_axes();
        double det = 1.0;
        Vec w(d);
        for (int i = 0; i < d; ++i) {
          det *= a[i];
          w[i] = a[i] * v[i];
        }
        double z = w.norm();
        ev.value = det * std::pow(kTwoPi, -0.5 * d) * bessel_over_power(0.5 * d, z);
        return ev;
      }
    }
  }
  GammaEvaluation ev;
  ev.method = GammaMethod::quadrature;
  ev.value = quadrature_gamma(gamma_dom, alpha, x, v, resolution);
  // Refinement difference as the error estimate.
  Complex refined = quadrature_gamma(gamma_dom, alpha, x, v, resolution + resolution / 2 + 8);
  ev.error_estimate = std::abs(refined - ev.value);
  ev.value = refined;
  return ev;
}

GammaEvaluation gamma_asymptotic(const Domain& gamma_dom, const Symbol& alpha, const Vec& x,
                                 const Vec& v) {
  if (!gamma_dom.smooth())
    throw UnsupportedDomainError("gamma_asymptotic: domain boundary must be smooth");
  const int d = gamma_dom.dim();
  const double vnorm = v.norm();
  if (vnorm * gamma_dom.min_curvature_radius() < 5.0)
    throw InvalidArgumentError("gamma_asymptotic: |v| below the asymptotic regime");

  Vec e = v * (1.0 / vnorm);
  auto crit = geometry::critical_points(gamma_dom, e);
  Complex sum = 0.0;
  for (const auto& k : crit.points) {
    double sgn_vn = v.dot(k.normal) >= 0.0 ? 1.0 : -1.0;
    // Signature of the boundary-graph Hessian along e: the outward second
    // fundamental form flips sign on the far side (n_k = +e).
    int graph_sig = static_cast<int>(-sgn_vn) * k.signature;
    Complex phase = std::exp(kI * (v.dot(k.position) + 0.25 * kPi * graph_sig));
    sum += sgn_vn / std::sqrt(std::abs(k.curvature)) * alpha(x, k.position) * phase;
  }
  GammaEvaluation ev;
  ev.method = GammaMethod::stationary_phase;
  ev.value = -kI * std::pow(kTwoPi * vnorm, -0.5 * (d + 1)) * sum;
  double envelope = static_cast<double>(crit.points.size()) * std::pow(kTwoPi * vnorm, -0.5 * (d + 1));
  ev.error_estimate = 2.0 * envelope / vnorm;
  return ev;
}

DecayReport decay_envelope_check(const Domain& gamma_dom, int directions,
                                 const std::vector<double>& v_grid) {
  const int d = gamma_dom.dim();
  Symbol one = Symbol::one();
  Vec origin(d);

  // Direction set: the coordinate axes (box worst case) plus a seeded sample.
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    Vec e(d);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  numerics::RandomSource rng(20100409u);
  while (static_cast<int>(dirs.size()) < std::max(directions, d)) {
    Vec q(d);
    for (int i = 0; i < d; ++i) q[i] = rng.normal();
    if (q.norm() > 1e-12) dirs.push_back(q.normalized());
  }

  DecayReport rep;
  rep.v_values = v_grid;
  for (double vmag : v_grid) {
    double sup = 0.0;
    for (const auto& e : dirs) {
      // Probe a quarter-period pair so an oscillation node cannot hide the
      // true envelope at this magnitude.
      for (double v : {vmag, vmag + 0.25 * kTwoPi}) {
        Complex g = gamma(gamma_dom, one, origin, e * v).value;
        sup = std::max(sup, std::abs(g) * std::pow(v, 0.5 * (d + 1)));
      }
    }
    rep.normalized_sup.push_back(sup);
  }
  rep.c_estimate = *std::max_element(rep.normalized_sup.begin(), rep.normalized_sup.end());

  // Growth trend: compare the sup over the top half of the grid with the
  // bottom half.
  size_t half = rep.normalized_sup.size() / 2;
  double lo = *std::max_element(rep.normalized_sup.begin(), rep.normalized_sup.begin() + half);
  double hi = *std::max_element(rep.normalized_sup.begin() + half, rep.normalized_sup.end());
  rep.bounded = hi <= 1.25 * lo;
  return rep;
}

}  // namespace widomlab::fourier
