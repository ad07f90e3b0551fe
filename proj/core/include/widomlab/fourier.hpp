#pragma once

#include <functional>
#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/geometry.hpp"

namespace widomlab::fourier {

/// Phase-space function alpha(x,p), bounded on Omega x Gamma. The descriptor
/// drives closed-form routing: the constant-1 symbol evaluates to exactly 1.
class Symbol {
 public:
  enum class Kind { one, momentum, general };

  static Symbol one();
  /// alpha depending on p only; pass real_valued = true when alpha is real
  /// (enables the Hermitian trace route).
  static Symbol momentum(std::function<Complex(const Vec&)> f, double sup_norm,
                         bool real_valued);
  static Symbol general(std::function<Complex(const Vec&, const Vec&)> f, double sup_norm,
                        bool real_valued);

  Complex operator()(const Vec& x, const Vec& p) const;
  Kind kind() const { return kind_; }
  bool is_one() const { return kind_ == Kind::one; }
  bool x_independent() const { return kind_ != Kind::general; }
  bool real_valued() const { return real_; }
  double sup_norm() const { return sup_norm_; }

 private:
  Kind kind_ = Kind::one;
  std::function<Complex(const Vec&)> fp_;
  std::function<Complex(const Vec&, const Vec&)> fxp_;
  double sup_norm_ = 1.0;
  bool real_ = true;
};

enum class GammaMethod { automatic, closed_form, quadrature, stationary_phase };

struct GammaEvaluation {
  Complex value;
  GammaMethod method = GammaMethod::closed_form;
  double error_estimate = 0.0;
};

/// gamma_x(v) = (2 pi)^{-d} integral over Gamma of alpha(x,p) e^{i v.p} dp.
/// Closed forms: boxes with alpha = 1 (products of shifted sinc factors) and
/// balls/ellipsoids with alpha = 1 (Bessel J_{d/2}); otherwise tensor
/// quadrature in domain-adapted coordinates.
GammaEvaluation gamma(const geometry::Domain& gamma_dom, const Symbol& alpha, const Vec& x,
                      const Vec& v, GammaMethod method = GammaMethod::automatic,
                      int resolution = 64);

/// Leading stationary-phase term for large |v| (smooth boundaries only):
///   -i (2 pi v)^{-(d+1)/2} sum over critical points k of
///   sgn(v.n_k)/sqrt(|K(k)|) alpha(x,k) e^{i v.k + i pi sign_k/4},
/// with sign_k the Hessian signature of the boundary graph along v/|v|.
GammaEvaluation gamma_asymptotic(const geometry::Domain& gamma_dom, const Symbol& alpha,
                                 const Vec& x, const Vec& v);

struct DecayReport {
  double c_estimate = 0.0;            // sup over the grid of |gamma| v^{(d+1)/2}
  bool bounded = false;               // no growth trend of the normalized sup in v
  std::vector<double> v_values;
  std::vector<double> normalized_sup;  // per |v|: sup over directions
};

/// Samples sup_x-free decay of |gamma(v)| over a direction/magnitude grid and
/// checks the v^{-(d+1)/2} envelope.
DecayReport decay_envelope_check(const geometry::Domain& gamma_dom, int directions,
                                 const std::vector<double>& v_grid);

}  // namespace widomlab::fourier
