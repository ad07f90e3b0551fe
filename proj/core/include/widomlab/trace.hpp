#pragma once

#include <string>
#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/fourier.hpp"
#include "widomlab/geometry.hpp"
#include "widomlab/numerics.hpp"
#include "widomlab/widom.hpp"

namespace widomlab::trace {

/// The scaled integral operator A_R on L^2(Omega) with kernel
/// (R/2pi)^d integral over Gamma of e^{i R (x-y).p} alpha(x,p) dp.
struct OperatorSpec {
  geometry::Domain omega;
  geometry::Domain gamma;
  fourier::Symbol alpha;
  double R = 1.0;
};

OperatorSpec make_spec(geometry::Domain omega, geometry::Domain gamma, fourier::Symbol alpha,
                       double R);

/// Kernel a_R(x,y) = R^d gamma_x(R(x-y)).
Complex kernel(const OperatorSpec& spec, const Vec& x, const Vec& y);

/// Quadrature discretization M(i,j) = sqrt(w_i w_j) a_R(x_i, x_j); the
/// sqrt-symmetrization keeps M Hermitian whenever the kernel is.
struct NystromOperator {
  std::vector<geometry::VolumeNode> nodes;
  int n = 0;
  std::vector<Complex> m;  // row-major n x n
  bool hermitian = false;

  Complex entry(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }
  double diagonal_trace() const;
  numerics::HermitianMatrix to_hermitian() const;  // validates symmetry
};

NystromOperator build_nystrom(const OperatorSpec& spec, int resolution);

/// Heuristic per-direction resolution resolving the kernel oscillation.
int default_nystrom_resolution(const OperatorSpec& spec);

enum class TraceMethod { exact, radial, overlap, nystrom, mc };

struct TraceResult {
  double value = 0.0;
  TraceMethod method = TraceMethod::exact;
  double error_estimate = 0.0;
  double R = 0.0;
  std::string provenance;
};

/// tr A_R = (R/2pi)^d integral of alpha over Omega x Gamma, exact in R.
TraceResult exact_trace(const OperatorSpec& spec);

/// tr A_R^2 by one of three independent routes:
///  - radial: balls with alpha = 1, 1-D oscillatory radial integral;
///  - overlap: |gamma(Rv)|^2 against the translate-overlap volume over
///    Omega - Omega (x-dependent symbols: d = 1 frozen-x reduction);
///  - nystrom: squared Frobenius norm of the discretized operator.
TraceResult trace_square(const OperatorSpec& spec, TraceMethod method,
                         int resolution = 0);

/// Eigenvalues of the Nystrom matrix (Hermitian specs only), ascending.
std::vector<double> nystrom_spectrum(const OperatorSpec& spec, int resolution = 0);

/// tr F(A_R) through the Nystrom eigenvalues. Spectra feeding entropy-type F
/// are clipped to [0,1] with a 1e-3 excursion guard.
TraceResult trace_F(const OperatorSpec& spec, const widom::SpectralFunction& f,
                    int resolution = 0);

/// Monte Carlo estimate of tr A_R^k (k >= 3, alpha = 1) from the
/// (k-1)-fold gamma product against the k-fold translate-overlap volume,
/// importance-sampled from the |gamma| envelope.
TraceResult trace_power_mc(const OperatorSpec& spec, int k, long n_samples,
                           numerics::RandomSource& rng);

struct ClipReport {
  int count = 0;
  double max_magnitude = 0.0;
};

/// Clip small excursions outside [0,1] in place; excursions beyond tol abort
/// with discretization-too-coarse.
ClipReport clip_to_unit_interval(std::vector<double>& values, double tol = 1e-3);

/// Fit of trace data against a R^d + b R^{d-1} ln R + c R^{d-1} with the
/// leading coefficient pinned.
struct AsymptoticFit {
  std::vector<double> r_grid;
  std::vector<double> values;
  int dim = 0;
  double leading_a = 0.0;
  double log_coefficient = 0.0;    // b
  double power_coefficient = 0.0;  // c
  double log_coefficient_stderr = 0.0;
  double residual_norm = 0.0;
};

AsymptoticFit asymptotic_fit(const std::vector<double>& r_grid,
                             const std::vector<double>& values, int dim, double leading_a);

}  // namespace widomlab::trace
