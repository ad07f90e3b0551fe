#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "widomlab/common.hpp"

namespace widomlab::numerics {

/// Gauss-Legendre rule on [-1,1]: n points integrate degree <= 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // strictly positive
  int order = 0;
};

QuadratureRule gauss_legendre(int n);

/// Axis-aligned integration box in R^k.
struct Box {
  std::vector<std::pair<double, double>> bounds;
  int dim() const { return static_cast<int>(bounds.size()); }
  double volume() const;
};

/// Tensor-product Gauss-Legendre over a box, k <= 4.
Complex integrate_nd(const std::function<Complex(const Vec&)>& f, const Box& box,
                     const QuadratureRule& rule);
double integrate_nd_real(const std::function<double(const Vec&)>& f, const Box& box,
                         const QuadratureRule& rule);

/// Deterministic counter-free PRNG stream (xoshiro256++ seeded via splitmix64).
/// Identical seeds give bit-identical streams; not safe to share across threads.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                     // [0,1)
  double uniform(double a, double b);   // [a,b)
  double normal();                      // standard Gaussian
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  bool have_cached_ = false;
  double cached_normal_ = 0.0;
};

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
};

/// Monte Carlo mean-value integral: sampler yields uniform points of a region
/// with the given volume.
McResult mc_integrate(const std::function<double(const Vec&)>& f,
                      const std::function<Vec(RandomSource&)>& sampler,
                      double region_volume, long n_samples, RandomSource& rng);

/// Bessel J_nu for nu in {0, 1/2, 1, 3/2, 2, 5/2, 3}, x >= 0.
/// Absolute error <= 1e-10 (series for small x, closed trig forms for
/// half-integer orders, Hankel expansion for large-x integer orders).
double bessel_j(double nu, double x);

/// Hermitian matrix with symmetry enforced by construction: set(i,j,z) also
/// stores conj(z) at (j,i).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  int n() const { return n_; }
  Complex operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, Complex z);
  void set_diagonal(int i, double x) { a_[static_cast<size_t>(i) * n_ + i] = x; }

  double trace_real() const;
  double frobenius_norm() const;
  bool is_real(double tol) const;

 private:
  int n_;
  std::vector<Complex> a_;
};

/// All eigenvalues of a real symmetric matrix (row-major, full storage) by
/// cyclic Jacobi rotations; off-diagonal Frobenius norm driven below
/// tol_rel * ||A||_F. Returns ascending values. When `vectors` is non-null it
/// receives the orthonormal eigenvectors as columns (row-major), same order.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double tol_rel = 1e-12,
                                       std::vector<double>* vectors = nullptr);

/// Eigenvalues of a real symmetric matrix by Householder tridiagonalization
/// and implicit-shift QL; O(n^3) with a small constant, values only.
std::vector<double> householder_ql_eigenvalues(std::vector<double> a, int n);

/// Dispatcher: Jacobi up to n = 128 (and whenever eigenvectors are wanted),
/// Householder + QL beyond. The two routes cross-check each other in tests.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// Eigenvalues of a Hermitian matrix, ascending. Complex matrices go through
/// the real-symmetric 2n x 2n embedding [[Re,-Im],[Im,Re]] whose (doubled)
/// spectrum is collapsed by pairing adjacent sorted values.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;    // ascending
  std::vector<Complex> vectors;  // row-major n x n, column k = eigenvector k
};

/// Full eigendecomposition of a Hermitian matrix (small n; the complex case
/// extracts eigenvectors of the real embedding).
EigenDecomposition eigen_hermitian(const HermitianMatrix& m);

struct LinearFit {
  std::vector<double> coefficients;
  std::vector<double> std_errors;  // from residual variance, zero when dof = 0
  double residual_norm = 0.0;
};

/// Least squares via normal equations with full pivoting.
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<std::function<double(double)>>& basis);

}  // namespace widomlab::numerics
