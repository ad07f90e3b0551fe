#pragma once

#include <functional>

#include "widomlab/common.hpp"
#include "widomlab/fourier.hpp"
#include "widomlab/geometry.hpp"

namespace widomlab::widom {

/// eta(t) = -t ln t - (1-t) ln(1-t), exactly 0 at t in {0,1}.
double eta(double t);
/// eta_beta(t) = ln(t^beta + (1-t)^beta) / (1-beta), beta > 0, beta != 1.
double eta_beta(double beta, double t);

/// Test function F with F(0) = 0, the argument of the trace functional.
class SpectralFunction {
 public:
  enum class Tag { monomial, eta, eta_beta, user };

  static SpectralFunction monomial(int k);
  static SpectralFunction make_eta();
  static SpectralFunction make_eta_beta(double beta);
  /// User function; derivative is optional (one-sided 1e-6 offsets otherwise).
  static SpectralFunction user(std::function<double(double)> f,
                               std::function<double(double)> df = {});

  double operator()(double t) const;
  Tag tag() const { return tag_; }
  int power() const { return k_; }
  double beta() const { return beta_; }
  /// Proven (the linear identity and the quadratic theorem) vs conjectural.
  bool theorem_status() const { return tag_ == Tag::monomial && k_ <= 2; }

 private:
  Tag tag_ = Tag::monomial;
  int k_ = 1;
  double beta_ = 0.0;
  std::function<double(double)> f_, df_;
};

/// The transform (1/4pi^2) integral_0^1 [F(t xi) - t F(xi)] / (t(1-t)) dt.
/// Analytic shortcuts: monomial k -> -xi^k H_{k-1} / 4pi^2; eta_beta and eta
/// at xi = 1 -> (1+beta)/(24 beta) resp. 1/12. Everything else goes through
/// the numeric path.
double f_tilde(const SpectralFunction& f, double xi);

/// Numeric path: the halves [0,1/2], [1/2,1] are mapped by t = s^2 and
/// t = 1 - s^2 (regularizes the endpoint behavior of the eta family) and
/// integrated with Gauss-Legendre.
double f_tilde_numeric(const SpectralFunction& f, double xi, int points = 200);

struct WidomPrediction {
  int dim = 0;
  double leading_a = 0.0;         // coefficient of R^d
  double log_b = 0.0;             // coefficient of R^{d-1} ln R
  double bulk_integral = 0.0;     // integral of F(alpha) over Omega x Gamma
  double boundary_integral = 0.0; // integral of |n.n| Ftilde(alpha) over the boundaries
  double a_error = 0.0;
  double b_error = 0.0;
  bool conjectural = false;

  double value_at(double r) const;
};

/// Two-term prediction: a = (2pi)^{-d} int F(alpha), b = (2pi)^{-(d-1)} times
/// the |n.n|-coupled boundary integral of Ftilde(alpha).
WidomPrediction widom_prediction(const SpectralFunction& f, const fourier::Symbol& alpha,
                                 const geometry::Domain& omega, const geometry::Domain& gamma,
                                 int resolution = 64);

/// Conjectured Renyi log-coefficient (1+beta)/(24 beta) (2pi)^{-(d-1)} times
/// the plain coupling integral; beta = 1 is the von Neumann limit 1/12.
double renyi_coefficient(double beta, const geometry::Domain& omega,
                         const geometry::Domain& gamma, int resolution = 128);

/// Asymptotic entropy lower bound (ln 2 / pi^2) (R/2pi)^{d-1} ln R times the
/// coupling integral.
double entropy_lower_bound(const geometry::Domain& omega, const geometry::Domain& gamma,
                           double r, int resolution = 128);

}  // namespace widomlab::widom
