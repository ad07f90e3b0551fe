#include "widomlab/widom.hpp"

#include <cmath>

#include "widomlab/numerics.hpp"

namespace widomlab::widom {

using geometry::Domain;
using fourier::Symbol;

double eta(double t) {
  if (t < -1e-9 || t > 1.0 + 1e-9)
    throw InvalidArgumentError("eta: argument outside [0,1]");
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -t * std::log(t) - (1.0 - t) * std::log(1.0 - t);
}

double eta_beta(double beta, double t) {
  if (beta <= 0.0) throw InvalidArgumentError("eta_beta: beta must be > 0");
  if (beta == 1.0) throw InvalidArgumentError("eta_beta: beta = 1 is the eta limit");
  if (t < -1e-9 || t > 1.0 + 1e-9)
    throw InvalidArgumentError("eta_beta: argument outside [0,1]");
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::log(std::pow(t, beta) + std::pow(1.0 - t, beta)) / (1.0 - beta);
}

SpectralFunction SpectralFunction::monomial(int k) {
  if (k < 1) throw InvalidArgumentError("SpectralFunction::monomial: k must be >= 1");
  SpectralFunction f;
  f.tag_ = Tag::monomial;
  f.k_ = k;
  return f;
}

SpectralFunction SpectralFunction::make_eta() {
  SpectralFunction f;
  f.tag_ = Tag::eta;
  return f;
}

SpectralFunction SpectralFunction::make_eta_beta(double beta) {
  if (beta <= 0.0) throw InvalidArgumentError("SpectralFunction: beta must be > 0");
  SpectralFunction f;
  if (beta == 1.0) {
    f.tag_ = Tag::eta;
    return f;
  }
  f.tag_ = Tag::eta_beta;
  f.beta_ = beta;
  return f;
}

SpectralFunction SpectralFunction::user(std::function<double(double)> f,
                                        std::function<double(double)> df) {
  if (std::abs(f(0.0)) > 1e-12)
    throw InvalidFunctionError("SpectralFunction::user: F(0) must vanish");
  SpectralFunction s;
  s.tag_ = Tag::user;
  s.f_ = std::move(f);
  s.df_ = std::move(df);
  return s;
}

double SpectralFunction::operator()(double t) const {
  switch (tag_) {
    case Tag::monomial:
      return std::pow(t, k_);
    case Tag::eta:
      return eta(t);
    case Tag::eta_beta:
      return eta_beta(beta_, t);
    case Tag::user:
      return f_(t);
  }
  return 0.0;
}

double f_tilde_numeric(const SpectralFunction& f, double xi, int points) {
  const double f_xi = f(xi);
  auto integrand = [&](double t) { return (f(t * xi) - t * f_xi) / (t * (1.0 - t)); };

  // t = s^2 on [0,1/2] and t = 1 - s^2 on [1/2,1].
  auto rule = numerics::gauss_legendre(points);
  const double smax = 1.0 / std::sqrt(2.0);
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    double s = 0.5 * smax * (rule.nodes[i] + 1.0);
    double w = 0.5 * smax * rule.weights[i] * 2.0 * s;
    total += w * (integrand(s * s) + integrand(1.0 - s * s));
  }
  return total / (4.0 * kPi * kPi);
}

double f_tilde(const SpectralFunction& f, double xi) {
  switch (f.tag()) {
    case SpectralFunction::Tag::monomial: {
      // -(xi^k / 4pi^2) sum_{l=1}^{k-1} 1/l ; identically zero for k = 1.
      double h = 0.0;
      for (int l = 1; l < f.power(); ++l) h += 1.0 / l;
      return -std::pow(xi, f.power()) * h / (4.0 * kPi * kPi);
    }
    case SpectralFunction::Tag::eta:
      if (xi == 1.0) return 1.0 / 12.0;
      break;
    case SpectralFunction::Tag::eta_beta:
      if (xi == 1.0) return (1.0 + f.beta()) / (24.0 * f.beta());
      break;
    case SpectralFunction::Tag::user:
      break;
  }
  return f_tilde_numeric(f, xi);
}

double WidomPrediction::value_at(double r) const {
  return leading_a * std::pow(r, dim) + log_b * std::pow(r, dim - 1) * std::log(r);
}

WidomPrediction widom_prediction(const SpectralFunction& f, const Symbol& alpha,
                                 const Domain& omega, const Domain& gamma, int resolution) {
  if (omega.dim() != gamma.dim())
    throw InvalidArgumentError("widom_prediction: dimension mismatch");
  const int d = omega.dim();
  WidomPrediction pred;
  pred.dim = d;
  pred.conjectural = !f.theorem_status();

  // Bulk integral of F(alpha) over Omega x Gamma.
  if (alpha.is_one()) {
    pred.bulk_integral = f(1.0) * omega.volume() * gamma.volume();
    pred.a_error = 0.0;
  } else if (alpha.x_independent()) {
    double acc = 0.0;
    for (const auto& n : geometry::quadrature_grid(gamma, resolution))
      acc += n.w * f(alpha(Vec(d), n.p).real());
    pred.bulk_integral = omega.volume() * acc;
  } else if (2 * d <= 4) {
    double acc = 0.0;
    auto gx = geometry::quadrature_grid(omega, resolution);
    auto gp = geometry::quadrature_grid(gamma, resolution);
    for (const auto& nx : gx) {
      double row = 0.0;
      for (const auto& np : gp) row += np.w * f(alpha(nx.p, np.p).real());
      acc += nx.w * row;
    }
    pred.bulk_integral = acc;
  } else {
    // Product dimension above the tensor budget: seeded Monte Carlo.
    numerics::RandomSource rng(0x5bd1e995u);
    const long n = 400000;
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < n; ++i) {
      double val = f(alpha(omega.sample_uniform(rng), gamma.sample_uniform(rng)).real());
      sum += val;
      sum2 += val * val;
    }
    double mean = sum / n;
    pred.bulk_integral = mean * omega.volume() * gamma.volume();
    pred.a_error = omega.volume() * gamma.volume() *
                   std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n) *
                   std::pow(kTwoPi, -d);
  }
  pred.leading_a = pred.bulk_integral * std::pow(kTwoPi, -d);

  // Boundary integral of |n.n| Ftilde(alpha).
  if (alpha.is_one()) {
    pred.boundary_integral = f_tilde(f, 1.0) * geometry::coupling_integral(omega, gamma, resolution);
  } else {
    pred.boundary_integral = geometry::coupling_integral(
        omega, gamma,
        [&](const Vec& x, const Vec& p) { return f_tilde(f, alpha(x, p).real()); }, resolution);
  }
  pred.log_b = pred.boundary_integral * std::pow(kTwoPi, -(d - 1));
  return pred;
}

double renyi_coefficient(double beta, const Domain& omega, const Domain& gamma,
                         int resolution) {
  if (beta <= 0.0) throw InvalidArgumentError("renyi_coefficient: beta must be > 0");
  const int d = omega.dim();
  // (1+beta)/(24 beta) is continuous through the von Neumann point beta = 1,
  // where it equals the eta limit 1/12.
  double factor = beta == 1.0 ? 1.0 / 12.0 : (1.0 + beta) / (24.0 * beta);
  return factor * std::pow(kTwoPi, -(d - 1)) * geometry::coupling_integral(omega, gamma, resolution);
}

double entropy_lower_bound(const Domain& omega, const Domain& gamma, double r,
                           int resolution) {
  if (r < 1.0) throw InvalidArgumentError("entropy_lower_bound: requires R >= 1");
  const int d = omega.dim();
  return std::log(2.0) / (kPi * kPi) * std::pow(r / kTwoPi, d - 1) * std::log(r) *
         geometry::coupling_integral(omega, gamma, resolution);
}

}  // namespace widomlab::widom
