#include "widomlab/numerics.hpp"
#include <limits>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace widomlab::numerics {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgumentError("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-14) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double Box::volume() const {
  double v = 1.0;
  for (const auto& [lo, hi] : bounds) v *= hi - lo;
  return v;
}

Complex integrate_nd(const std::function<Complex(const Vec&)>& f, const Box& box,
                     const QuadratureRule& rule) {
  const int k = box.dim();
  if (k < 1) throw InvalidArgumentError("integrate_nd: empty box");
  if (k > 4)
    throw DimensionTooLargeError("integrate_nd: k > 4, use mc_integrate");
  const int n = rule.order;
  std::array<int, 4> idx{};
  Vec x(k);
  Complex total = 0.0;
  double jac = 1.0;
  std::array<double, 4> mid{}, half{};
  for (int a = 0; a < k; ++a) {
    mid[a] = 0.5 * (box.bounds[a].first + box.bounds[a].second);
    half[a] = 0.5 * (box.bounds[a].second - box.bounds[a].first);
    jac *= half[a];
  }
  while (true) {
    double w = 1.0;
    for (int a = 0; a < k; ++a) {
      x[a] = mid[a] + half[a] * rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    total += w * f(x);
    int a = 0;
    while (a < k && ++idx[a] == n) idx[a++] = 0;
    if (a == k) break;
  }
  return total * jac;
}

double integrate_nd_real(const std::function<double(const Vec&)>& f, const Box& box,
                         const QuadratureRule& rule) {
  return integrate_nd([&](const Vec& x) { return Complex(f(x), 0.0); }, box, rule).real();
}

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t RandomSource::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomSource::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double a, double b) { return a + (b - a) * uniform(); }

double RandomSource::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_normal_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  have_cached_ = true;
  cached_normal_ = r * std::sin(kTwoPi * u2);
  return r * std::cos(kTwoPi * u2);
}

McResult mc_integrate(const std::function<double(const Vec&)>& f,
                      const std::function<Vec(RandomSource&)>& sampler,
                      double region_volume, long n_samples, RandomSource& rng) {
  if (n_samples < 1) throw InvalidArgumentError("mc_integrate: n_samples must be >= 1");
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    double v = f(sampler(rng));
    sum += v;
    sum2 += v * v;
  }
  double mean = sum / n_samples;
  double var = std::max(0.0, sum2 / n_samples - mean * mean);
  McResult r;
  r.value = mean * region_volume;
  r.std_error = region_volume * std::sqrt(var / n_samples);
  r.n_samples = n_samples;
  return r;
}

namespace {

bool supported_order(double nu) {
  for (double v : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0})
    if (nu == v) return true;
  return false;
}

// Ascending power series; no cancellation, used for small x.
double bessel_series(double nu, double x) {
  double half = 0.5 * x;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  double x2 = half * half;
  for (int k = 1; k <= 60; ++k) {
    term *= -x2 / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
  }
  return sum;
}

// Hankel large-argument expansion for integer orders.
double bessel_hankel(int m, double x) {
  const double mu = 4.0 * m * m;
  const double chi = x - (0.5 * m + 0.25) * kPi;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  // Terms of the asymptotic series in 1/(8x); stop at the smallest term.
  double prev = std::abs(term);
  for (int k = 1; k <= 20; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    if (k % 2 == 1)
      q += (k % 4 == 1 ? term : -term);
    else
      p += (k % 4 == 2 ? -term : term);
    if (std::abs(term) < 1e-17) break;
  }
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!supported_order(nu))
    throw InvalidArgumentError("bessel_j: unsupported order " + std::to_string(nu));
  if (x < 0.0) throw InvalidArgumentError("bessel_j: x must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

  bool half_integer = (nu != std::floor(nu));
  if (half_integer) {
    if (x < 1.0) return bessel_series(nu, x);
    double a = std::sqrt(2.0 / (kPi * x));
    double s = std::sin(x), c = std::cos(x);
    if (nu == 0.5) return a * s;
    if (nu == 1.5) return a * (s / x - c);
    return a * ((3.0 / (x * x) - 1.0) * s - 3.0 / x * c);  // nu = 5/2
  }
  int m = static_cast<int>(nu);
  if (x <= 12.0) return bessel_series(nu, x);
  return bessel_hankel(m, x);
}

void HermitianMatrix::set(int i, int j, Complex z) {
  if (i == j) z = Complex(z.real(), 0.0);
  a_[static_cast<size_t>(i) * n_ + j] = z;
  a_[static_cast<size_t>(j) * n_ + i] = std::conj(z);
}

double HermitianMatrix::trace_real() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += a_[static_cast<size_t>(i) * n_ + i].real();
  return t;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool HermitianMatrix::is_real(double tol) const {
  for (const Complex& z : a_)
    if (std::abs(z.imag()) > tol) return false;
  return true;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double tol_rel,
                                       std::vector<double>* vectors) {
  if (vectors) {
    vectors->assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) (*vectors)[static_cast<size_t>(i) * n + i] = 1.0;
  }
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return std::vector<double>(n, 0.0);
  const double stop = tol_rel * norm;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = off_norm();
    if (off < stop) break;
    // Rotations below this threshold are deferred to later sweeps.
    double thresh = (sweep < 3) ? 0.2 * off * off / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      double* rowp = a.data() + static_cast<size_t>(p) * n;
      for (int q = p + 1; q < n; ++q) {
        double apq = rowp[q];
        if (apq == 0.0 || apq * apq <= thresh) continue;
        double* rowq = a.data() + static_cast<size_t>(q) * n;
        double app = rowp[p], aqq = rowq[q];
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int j = 0; j < n; ++j) {
          double ap = rowp[j], aq = rowq[j];
          rowp[j] = c * ap - s * aq;
          rowq[j] = s * ap + c * aq;
        }
        for (int i = 0; i < n; ++i) {
          double* row = a.data() + static_cast<size_t>(i) * n;
          double aip = row[p], aiq = row[q];
          row[p] = c * aip - s * aiq;
          row[q] = s * aip + c * aiq;
        }
        if (vectors) {
          for (int i = 0; i < n; ++i) {
            double* row = vectors->data() + static_cast<size_t>(i) * n;
            double vip = row[p], viq = row[q];
            row[p] = c * vip - s * viq;
            row[q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[static_cast<size_t>(i) * n + i];
  if (!vectors) {
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return ev[i] < ev[j]; });
  std::vector<double> sorted_ev(n);
  std::vector<double> sorted_vec(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    sorted_ev[k] = ev[order[k]];
    for (int i = 0; i < n; ++i)
      sorted_vec[static_cast<size_t>(i) * n + k] = (*vectors)[static_cast<size_t>(i) * n + order[k]];
  }
  *vectors = std::move(sorted_vec);
  return sorted_ev;
}

namespace {

// Householder reduction of a symmetric matrix (row-major, destroyed) to
// tridiagonal d/e form, without accumulating transformations.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  for (int i = n - 1; i >= 1; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = A(i, i);
}

// Implicit-shift QL on a tridiagonal (d, e); values only. Deflation combines
// the local relative test with an absolute floor at machine noise of the
// global scale (clustered spectra stall on the relative test alone).
void tql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]) + std::abs(e[i]));
  const double floor = std::numeric_limits<double>::epsilon() * scale;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd + floor) break;
      }
      if (m != l) {
        if (iter++ == 64) throw AccuracyLossError("tql: too many QL iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i], b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> householder_ql_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> d, e;
  tridiagonalize(a, n, d, e);
  tql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (n <= 128) return jacobi_eigenvalues(std::move(a), n);
  return householder_ql_eigenvalues(std::move(a), n);
}

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m) {
  const int n = m.n();
  if (n < 1) throw InvalidArgumentError("eigenvalues_hermitian: empty matrix");
  const double scale = std::max(m.frobenius_norm(), 1e-300);

  if (m.is_real(1e-14 * scale)) {
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = m(i, j).real();
    return symmetric_eigenvalues(std::move(a), n);
  }

  // Real-symmetric embedding [[Re,-Im],[Im,Re]]: each eigenvalue doubled.
  const int n2 = 2 * n;
  std::vector<double> a(static_cast<size_t>(n2) * n2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex z = m(i, j);
      a[static_cast<size_t>(i) * n2 + j] = z.real();
      a[static_cast<size_t>(i + n) * n2 + j + n] = z.real();
      a[static_cast<size_t>(i) * n2 + j + n] = -z.imag();
      a[static_cast<size_t>(i + n) * n2 + j] = z.imag();
    }
  }
  std::vector<double> doubled = symmetric_eigenvalues(std::move(a), n2);
  const double gap_tol = 1e-9 * scale;
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) {
    double lo = doubled[2 * i], hi = doubled[2 * i + 1];
    if (std::abs(hi - lo) > gap_tol)
      throw AccuracyLossError("eigenvalues_hermitian: embedding pair gap exceeds tolerance");
    ev[i] = 0.5 * (lo + hi);
  }
  return ev;
}

EigenDecomposition eigen_hermitian(const HermitianMatrix& m) {
  const int n = m.n();
  EigenDecomposition dec;
  const double scale = std::max(m.frobenius_norm(), 1e-300);

  if (m.is_real(1e-14 * scale)) {
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = m(i, j).real();
    std::vector<double> vec;
    dec.values = jacobi_eigenvalues(std::move(a), n, 1e-12, &vec);
    dec.vectors.resize(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < vec.size(); ++i) dec.vectors[i] = vec[i];
    return dec;
  }

  const int n2 = 2 * n;
  std::vector<double> a(static_cast<size_t>(n2) * n2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex z = m(i, j);
      a[static_cast<size_t>(i) * n2 + j] = z.real();
      a[static_cast<size_t>(i + n) * n2 + j + n] = z.real();
      a[static_cast<size_t>(i) * n2 + j + n] = -z.imag();
      a[static_cast<size_t>(i + n) * n2 + j] = z.imag();
    }
  }
  std::vector<double> vec;
  auto doubled = jacobi_eigenvalues(std::move(a), n2, 1e-12, &vec);

  // Each doubled eigenvalue carries the complex eigenvector z = u + i w from
  // the embedding vector (u; w); within a degenerate group the candidates are
  // reduced by complex Gram-Schmidt (z and i z span the same complex line).
  dec.values.reserve(n);
  dec.vectors.assign(static_cast<size_t>(n) * n, 0.0);
  const double gap_tol = 1e-8 * scale;
  int col = 0;
  size_t idx = 0;
  while (idx < doubled.size()) {
    size_t end = idx + 1;
    while (end < doubled.size() && doubled[end] - doubled[idx] < gap_tol) ++end;
    size_t mult2 = end - idx;
    if (mult2 % 2 != 0)
      throw AccuracyLossError("eigen_hermitian: embedding produced an odd multiplicity group");
    size_t want = mult2 / 2;
    std::vector<std::vector<Complex>> group;
    for (size_t k = idx; k < end && group.size() < want; ++k) {
      std::vector<Complex> z(n);
      for (int i = 0; i < n; ++i)
        z[i] = Complex(vec[static_cast<size_t>(i) * n2 + k], vec[static_cast<size_t>(i + n) * n2 + k]);
      for (const auto& prev : group) {
        Complex ip = 0.0;
        for (int i = 0; i < n; ++i) ip += std::conj(prev[i]) * z[i];
        for (int i = 0; i < n; ++i) z[i] -= ip * prev[i];
      }
      double nn = 0.0;
      for (int i = 0; i < n; ++i) nn += std::norm(z[i]);
      if (nn < 0.25) continue;  // same complex line as an accepted vector
      double inv = 1.0 / std::sqrt(nn);
      for (int i = 0; i < n; ++i) z[i] *= inv;
      group.push_back(std::move(z));
    }
    if (group.size() != want)
      throw AccuracyLossError("eigen_hermitian: could not extract a full eigenvector basis");
    for (const auto& z : group) {
      dec.values.push_back(doubled[idx]);
      for (int i = 0; i < n; ++i) dec.vectors[static_cast<size_t>(i) * n + col] = z[i];
      ++col;
    }
    idx = end;
  }
  if (col != n) throw AccuracyLossError("eigen_hermitian: eigenvector count mismatch");
  return dec;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<std::function<double(double)>>& basis) {
  const int m = static_cast<int>(xs.size());
  const int k = static_cast<int>(basis.size());
  if (m != static_cast<int>(ys.size()))
    throw InvalidArgumentError("fit_linear: xs/ys size mismatch");
  if (m < k) throw InvalidArgumentError("fit_linear: fewer points than basis functions");

  std::vector<double> design(static_cast<size_t>(m) * k);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j) design[static_cast<size_t>(i) * k + j] = basis[j](xs[i]);

  // Normal equations G c = b with full pivoting.
  std::vector<double> g(static_cast<size_t>(k) * (k + 1));
  auto G = [&](int i, int j) -> double& { return g[static_cast<size_t>(i) * (k + 1) + j]; };
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int r = 0; r < m; ++r)
        s += design[static_cast<size_t>(r) * k + i] * design[static_cast<size_t>(r) * k + j];
      G(i, j) = s;
    }
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += design[static_cast<size_t>(r) * k + i] * ys[r];
    G(i, k) = s;
  }
  double gmax = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gmax = std::max(gmax, std::abs(G(i, j)));

  std::vector<int> col_perm(k);
  for (int i = 0; i < k; ++i) col_perm[i] = i;
  std::vector<double> ginv(static_cast<size_t>(k) * k, 0.0);  // for std errors
  std::vector<double> gcopy(g.begin(), g.end());

  for (int step = 0; step < k; ++step) {
    int pr = step, pc = step;
    double best = 0.0;
    for (int i = step; i < k; ++i)
      for (int j = step; j < k; ++j)
        if (std::abs(G(i, j)) > best) {
          best = std::abs(G(i, j));
          pr = i;
          pc = j;
        }
    if (best <= 1e-13 * std::max(gmax, 1.0))
      throw SingularFitError("fit_linear: rank-deficient design matrix");
    if (pr != step)
      for (int j = 0; j <= k; ++j) std::swap(G(step, j), G(pr, j));
    if (pc != step) {
      for (int i = 0; i < k; ++i) std::swap(G(i, step), G(i, pc));
      std::swap(col_perm[step], col_perm[pc]);
    }
    for (int i = step + 1; i < k; ++i) {
      double f = G(i, step) / G(step, step);
      for (int j = step; j <= k; ++j) G(i, j) -= f * G(step, j);
    }
  }
  std::vector<double> cp(k);
  for (int i = k - 1; i >= 0; --i) {
    double s = G(i, k);
    for (int j = i + 1; j < k; ++j) s -= G(i, j) * cp[j];
    cp[i] = s / G(i, i);
  }
  LinearFit fit;
  fit.coefficients.assign(k, 0.0);
  for (int i = 0; i < k; ++i) fit.coefficients[col_perm[i]] = cp[i];

  double rss = 0.0;
  for (int r = 0; r < m; ++r) {
    double pred = 0.0;
    for (int j = 0; j < k; ++j) pred += design[static_cast<size_t>(r) * k + j] * fit.coefficients[j];
    rss += (ys[r] - pred) * (ys[r] - pred);
  }
  fit.residual_norm = std::sqrt(rss);

  // Coefficient standard errors from sigma^2 (G^-1): invert G by solving k
  // right-hand sides with plain Gaussian elimination on the saved copy.
  fit.std_errors.assign(k, 0.0);
  if (m > k) {
    double sigma2 = rss / (m - k);
    std::vector<double> A(gcopy.begin(), gcopy.end());
    auto Ae = [&](int i, int j) -> double& { return A[static_cast<size_t>(i) * (k + 1) + j]; };
    std::vector<double> inv(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<size_t>(i) * k + i] = 1.0;
    for (int step = 0; step < k; ++step) {
      int p = step;
      for (int i = step + 1; i < k; ++i)
        if (std::abs(Ae(i, step)) > std::abs(Ae(p, step))) p = i;
      if (std::abs(Ae(p, step)) <= 1e-13 * std::max(gmax, 1.0)) return fit;
      if (p != step) {
        for (int j = 0; j < k; ++j) {
          std::swap(Ae(step, j), Ae(p, j));
          std::swap(inv[static_cast<size_t>(step) * k + j], inv[static_cast<size_t>(p) * k + j]);
        }
      }
      double d = Ae(step, step);
      for (int j = 0; j < k; ++j) {
        Ae(step, j) /= d;
        inv[static_cast<size_t>(step) * k + j] /= d;
      }
      for (int i = 0; i < k; ++i) {
        if (i == step) continue;
        double f = Ae(i, step);
        if (f == 0.0) continue;
        for (int j = 0; j < k; ++j) {
          Ae(i, j) -= f * Ae(step, j);
          inv[static_cast<size_t>(i) * k + j] -= f * inv[static_cast<size_t>(step) * k + j];
        }
      }
    }
    for (int i = 0; i < k; ++i)
      fit.std_errors[i] = std::sqrt(std::max(0.0, sigma2 * inv[static_cast<size_t>(i) * k + i]));
  }
  return fit;
}

}  // namespace widomlab::numerics
