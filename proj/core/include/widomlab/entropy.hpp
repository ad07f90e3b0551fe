#pragma once

#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/numerics.hpp"
#include "widomlab/trace.hpp"
#include "widomlab/widom.hpp"

namespace widomlab::entropy {

using widom::eta;
using widom::eta_beta;

/// Eigenvalue multiset of a one-particle density operator, clipped to [0,1]
/// with an audited excursion budget.
class Spectrum {
 public:
  static Spectrum from_eigenvalues(std::vector<double> ev, double clip_tol = 1e-3);

  const std::vector<double>& values() const { return values_; }
  int clip_count() const { return clip_.count; }
  double clip_max() const { return clip_.max_magnitude; }

 private:
  std::vector<double> values_;
  trace::ClipReport clip_;
};

struct Entropies {
  double von_neumann = 0.0;
  std::vector<std::pair<double, double>> renyi;  // (beta, S_beta)
  double particle_number = 0.0;
  double number_variance = 0.0;
};

Entropies entropies(const Spectrum& spec, const std::vector<double>& betas = {});

/// Term-by-term evaluation of the estimate chain
///   2 tr D(1-D) <= S_2 <= (4 ln 2) tr D(1-D) <= S <= S_{1/2}
///     <= 2 tr sqrt(D(1-D)) <= 2 tr sqrt(D).
struct BoundChainReport {
  std::array<double, 7> terms{};
  double worst_violation = 0.0;  // most negative forward gap (0 when monotone)
  bool holds = false;
};

BoundChainReport check_bound_chain(const Spectrum& spec, double tol = 1e-10);

/// Sine-kernel overlap matrix: M(m,n) = sin(k_F (m-n)) / (pi (m-n)),
/// diagonal k_F / pi; the lattice Fermi projection restricted to 1..L.
numerics::HermitianMatrix lattice_overlap_matrix(int length, double k_fermi);

struct ScalingFit {
  double beta = 1.0;
  double log_coefficient = 0.0;
  double constant = 0.0;
  double stderr_log = 0.0;
  std::vector<int> l_grid;
  std::vector<double> entropies;
};

/// Dense-diagonalization entropy growth S_beta(L) ~ c ln L + const; lattice
/// sizes below 64 are excluded from the fit (oscillatory finite-size range).
/// Diagonalizations across L run on `jobs` threads.
std::vector<ScalingFit> lattice_entropy_scaling(const std::vector<int>& l_grid, double k_fermi,
                                                const std::vector<double>& betas, int jobs = 1);

struct ContinuumEntropy {
  Spectrum spectrum;
  Entropies values;
  double lower_bound = 0.0;  // Widom-route asymptotic bound (0 below R = 1)
  double ratio = 0.0;        // S / lower_bound when the bound is positive
};

/// Nystrom spectrum of the alpha = 1 spec fed through the entropy
/// functionals, with the conjecture-side lower bound for comparison.
ContinuumEntropy continuum_entropy(const trace::OperatorSpec& spec, int resolution = 0,
                                   const std::vector<double>& betas = {});

/// Brute-force Fock-space realization of the quasi-free state with covariance
/// D (n <= 8 modes, eigenvalues inside (delta, 1-delta), delta = 1e-8).
struct FockReport {
  int modes = 0;
  double trace_error = 0.0;      // |tr W - 1|
  double two_point_error = 0.0;  // max |rho(a*(f)a(g)) - <g,Df>|
  double wick_error = 0.0;       // 2x2 Wick determinant residual
  double entropy_error = 0.0;    // |tr eta(D) + tr W ln W|
  double car_error = 0.0;        // max CAR residual on the built matrices
  double fock_entropy = 0.0;     // -tr W ln W from the Fock spectrum
  double spectral_entropy = 0.0; // tr eta(D)

  bool ok(double tol = 1e-8) const {
    return trace_error <= tol && two_point_error <= tol && wick_error <= tol &&
           entropy_error <= tol && car_error <= tol;
  }
};

FockReport fock_oracle(const numerics::HermitianMatrix& d_matrix, numerics::RandomSource& rng);

/// Bipartition of the first n_first modes against the rest: partial
/// entropies, the triangle inequality slack, and the pure-state identity
/// residual |Delta S - 2 S_1|.
struct BipartitionReport {
  double s_total = 0.0;
  double s_first = 0.0;
  double s_second = 0.0;
  double delta_s = 0.0;            // S_1 + S_2 - S
  double identity_residual = 0.0;  // |Delta S - 2 S_1|
  bool triangle_holds = false;     // |S_1 - S_2| <= S <= S_1 + S_2
};

BipartitionReport fock_bipartition(const numerics::HermitianMatrix& d_matrix, int n_first);

}  // namespace widomlab::entropy
