#include "widomlab/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace widomlab::entropy {

using numerics::HermitianMatrix;

Spectrum Spectrum::from_eigenvalues(std::vector<double> ev, double clip_tol) {
  Spectrum s;
  s.clip_ = trace::clip_to_unit_interval(ev, clip_tol);
  s.values_ = std::move(ev);
  return s;
}

Entropies entropies(const Spectrum& spec, const std::vector<double>& betas) {
  Entropies out;
  for (double l : spec.values()) {
    out.von_neumann += eta(l);
    out.particle_number += l;
    out.number_variance += l * (1.0 - l);
  }
  for (double beta : betas) {
    double s = 0.0;
    if (beta == 1.0) {
      s = out.von_neumann;
    } else {
      for (double l : spec.values()) s += eta_beta(beta, l);
    }
    out.renyi.push_back({beta, s});
  }
  return out;
}

BoundChainReport check_bound_chain(const Spectrum& spec, double tol) {
  BoundChainReport rep;
  double var = 0.0, s2 = 0.0, s = 0.0, s_half = 0.0, root_var = 0.0, root = 0.0;
  for (double l : spec.values()) {
    var += l * (1.0 - l);
    s2 += eta_beta(2.0, l);
    s += eta(l);
    s_half += eta_beta(0.5, l);
    root_var += std::sqrt(l * (1.0 - l));
    root += std::sqrt(l);
  }
  rep.terms = {2.0 * var, s2, 4.0 * std::log(2.0) * var, s, s_half, 2.0 * root_var, 2.0 * root};
  rep.worst_violation = 0.0;
  for (size_t i = 0; i + 1 < rep.terms.size(); ++i)
    rep.worst_violation = std::min(rep.worst_violation, rep.terms[i + 1] - rep.terms[i]);
  rep.holds = rep.worst_violation >= -tol;
  return rep;
}

HermitianMatrix lattice_overlap_matrix(int length, double k_fermi) {
  if (length < 2) throw InvalidArgumentError("lattice_overlap_matrix: L must be >= 2");
  if (!(k_fermi > 0.0 && k_fermi < kPi))
    throw InvalidArgumentError("lattice_overlap_matrix: k_F must lie in (0, pi)");
  HermitianMatrix m(length);
  for (int i = 0; i < length; ++i) {
    m.set_diagonal(i, k_fermi / kPi);
    for (int j = i + 1; j < length; ++j) {
      double d = j - i;
      m.set(i, j, std::sin(k_fermi * d) / (kPi * d));
    }
  }
  return m;
}

std::vector<ScalingFit> lattice_entropy_scaling(const std::vector<int>& l_grid, double k_fermi,
                                                const std::vector<double>& betas, int jobs) {
  if (l_grid.empty()) throw InvalidArgumentError("lattice_entropy_scaling: empty L grid");
  for (int l : l_grid)
    if (l > 4000) throw TooLargeError("lattice_entropy_scaling: L exceeds the dense budget (4000)");

  const std::vector<int>& ls = l_grid;
  std::vector<Entropies> per_l(ls.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= ls.size()) return;
      auto ev = numerics::eigenvalues_hermitian(lattice_overlap_matrix(ls[i], k_fermi));
      per_l[i] = entropies(Spectrum::from_eigenvalues(std::move(ev)), betas);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<std::vector<double>> s_rows(betas.size());
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t b = 0; b < betas.size(); ++b) s_rows[b].push_back(per_l[i].renyi[b].second);

  std::vector<ScalingFit> fits;
  for (size_t b = 0; b < betas.size(); ++b) {
    ScalingFit fit;
    fit.beta = betas[b];
    fit.l_grid = ls;
    fit.entropies = s_rows[b];
    std::vector<double> xs, ys;
    for (size_t i = 0; i < ls.size(); ++i) {
      if (ls[i] < 64) continue;  // finite-size oscillation range
      xs.push_back(static_cast<double>(ls[i]));
      ys.push_back(s_rows[b][i]);
    }
    if (xs.size() < 3)
      throw InvalidArgumentError("lattice_entropy_scaling: need >= 3 sizes with L >= 64");
    auto lf = numerics::fit_linear(
        xs, ys, {[](double l) { return std::log(l); }, [](double) { return 1.0; }});
    fit.log_coefficient = lf.coefficients[0];
    fit.constant = lf.coefficients[1];
    fit.stderr_log = lf.std_errors[0];
    fits.push_back(std::move(fit));
  }
  return fits;
}

ContinuumEntropy continuum_entropy(const trace::OperatorSpec& spec, int resolution,
                                   const std::vector<double>& betas) {
  if (!spec.alpha.is_one())
    throw InvalidMethodError("continuum_entropy: requires the Fermi-projection symbol alpha = 1");
  auto ev = trace::nystrom_spectrum(spec, resolution);
  ContinuumEntropy out{Spectrum::from_eigenvalues(std::move(ev)), {}, 0.0, 0.0};
  out.values = entropies(out.spectrum, betas);
  if (spec.R >= 1.0) {
    out.lower_bound = widom::entropy_lower_bound(spec.omega, spec.gamma, spec.R);
    if (out.lower_bound > 0.0) out.ratio = out.values.von_neumann / out.lower_bound;
  }
  return out;
}

namespace {

// Jordan-Wigner annihilation matrices on the 2^n Fock basis; bit j of the
// basis index is the occupation of mode j.
std::vector<std::vector<Complex>> jw_annihilators(int n) {
  const int dim = 1 << n;
  std::vector<std::vector<Complex>> a(n, std::vector<Complex>(static_cast<size_t>(dim) * dim, 0.0));
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < dim; ++s) {
      if (!(s >> j & 1)) continue;
      int t = s ^ (1 << j);
      int lower = s & ((1 << j) - 1);
      double sign = __builtin_popcount(lower) % 2 == 0 ? 1.0 : -1.0;
      a[j][static_cast<size_t>(t) * dim + s] = sign;
    }
  }
  return a;
}

std::vector<Complex> matmul(const std::vector<Complex>& x, const std::vector<Complex>& y, int dim) {
  std::vector<Complex> z(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      Complex xik = x[static_cast<size_t>(i) * dim + k];
      if (xik == Complex(0.0)) continue;
      const Complex* yrow = y.data() + static_cast<size_t>(k) * dim;
      Complex* zrow = z.data() + static_cast<size_t>(i) * dim;
      for (int j = 0; j < dim; ++j) zrow[j] += xik * yrow[j];
    }
  return z;
}

std::vector<Complex> dagger(const std::vector<Complex>& x, int dim) {
  std::vector<Complex> z(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      z[static_cast<size_t>(i) * dim + j] = std::conj(x[static_cast<size_t>(j) * dim + i]);
  return z;
}

Complex trace_of(const std::vector<Complex>& x, int dim) {
  Complex t = 0.0;
  for (int i = 0; i < dim; ++i) t += x[static_cast<size_t>(i) * dim + i];
  return t;
}

// exp(X) by scaling and squaring with a Taylor kernel.
std::vector<Complex> expm(std::vector<Complex> x, int dim) {
  double norm = 0.0;
  for (const Complex& z : x) norm += std::norm(z);
  norm = std::sqrt(norm);
  int s = 0;
  while (norm > 0.5 && s < 40) {
    norm *= 0.5;
    ++s;
  }
  double scale = std::ldexp(1.0, -s);
  for (Complex& z : x) z *= scale;

  std::vector<Complex> result(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) result[static_cast<size_t>(i) * dim + i] = 1.0;
  std::vector<Complex> term = result;
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, x, dim);
    double inv = 1.0 / k;
    double mag = 0.0;
    for (size_t i = 0; i < term.size(); ++i) {
      term[i] *= inv;
      result[i] += term[i];
      mag += std::norm(term[i]);
    }
    if (std::sqrt(mag) < 1e-18) break;
  }
  for (int k = 0; k < s; ++k) result = matmul(result, result, dim);
  return result;
}

std::vector<double> fock_spectrum(const std::vector<Complex>& w, int dim) {
  HermitianMatrix h(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Complex a = w[static_cast<size_t>(i) * dim + j];
      Complex b = std::conj(w[static_cast<size_t>(j) * dim + i]);
      h.set(i, j, 0.5 * (a + b));
    }
  return numerics::eigenvalues_hermitian(h);
}

}  // namespace

FockReport fock_oracle(const HermitianMatrix& d_matrix, numerics::RandomSource& rng) {
  const int n = d_matrix.n();
  if (n > 8) throw TooLargeError("fock_oracle: n must be <= 8 (2^n Fock dimension)");
  const double delta = 1e-8;

  auto dec = numerics::eigen_hermitian(d_matrix);
  for (double l : dec.values)
    if (l < delta || l > 1.0 - delta)
      throw DegenerateCovarianceError("fock_oracle: eigenvalue at the boundary of (0,1)");

  // M = ln(D^{-1} - 1) = U diag(ln(1/lambda - 1)) U^dagger, and det(1-D).
  std::vector<Complex> big_m(static_cast<size_t>(n) * n, 0.0);
  double det_one_minus = 1.0;
  for (int k = 0; k < n; ++k) {
    det_one_minus *= 1.0 - dec.values[k];
    double x = std::log(1.0 / dec.values[k] - 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        big_m[static_cast<size_t>(i) * n + j] += dec.vectors[static_cast<size_t>(i) * n + k] * x *
                                                 std::conj(dec.vectors[static_cast<size_t>(j) * n + k]);
  }

  const int dim = 1 << n;
  auto a_ops = jw_annihilators(n);
  std::vector<std::vector<Complex>> adag_ops(n);
  for (int j = 0; j < n; ++j) adag_ops[j] = dagger(a_ops[j], dim);

  // H = sum M_{jm} a*_j a_m, W = det(1-D) exp(-H).
  std::vector<Complex> h(static_cast<size_t>(dim) * dim, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int mm = 0; mm < n; ++mm) {
      Complex coef = big_m[static_cast<size_t>(j) * n + mm];
      if (coef == Complex(0.0)) continue;
      auto prod = matmul(adag_ops[j], a_ops[mm], dim);
      for (size_t i = 0; i < h.size(); ++i) h[i] += coef * prod[i];
    }
  }
  for (Complex& z : h) z = -z;
  auto w = expm(std::move(h), dim);
  for (Complex& z : w) z *= det_one_minus;

  FockReport rep;
  rep.modes = n;
  rep.trace_error = std::abs(trace_of(w, dim) - 1.0);

  auto rho = [&](const std::vector<Complex>& op) {
    return trace_of(matmul(w, op, dim), dim);
  };
  auto a_of = [&](const std::vector<Complex>& f) {
    std::vector<Complex> op(static_cast<size_t>(dim) * dim, 0.0);
    for (int j = 0; j < n; ++j) {
      Complex c = std::conj(f[j]);
      for (size_t i = 0; i < op.size(); ++i) op[i] += c * a_ops[j][i];
    }
    return op;
  };
  auto adag_of = [&](const std::vector<Complex>& f) {
    std::vector<Complex> op(static_cast<size_t>(dim) * dim, 0.0);
    for (int j = 0; j < n; ++j)
      for (size_t i = 0; i < op.size(); ++i) op[i] += f[j] * adag_ops[j][i];
    return op;
  };
  auto random_vec = [&]() {
    std::vector<Complex> f(n);
    for (int i = 0; i < n; ++i) f[i] = Complex(rng.normal(), rng.normal());
    return f;
  };
  auto apply_d = [&](const std::vector<Complex>& f) {
    std::vector<Complex> g(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i] += d_matrix(i, j) * f[j];
    return g;
  };
  auto inner = [&](const std::vector<Complex>& g, const std::vector<Complex>& f) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(g[i]) * f[i];
    return s;
  };

  // (b) two-point functions against <g, D f>.
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_vec(), g = random_vec();
    Complex lhs = rho(matmul(adag_of(f), a_of(g), dim));
    Complex rhs = inner(g, apply_d(f));
    rep.two_point_error = std::max(rep.two_point_error, std::abs(lhs - rhs));
  }

  // (c) the 2x2 Wick determinant rho(a*(f1) a*(f2) a(g2) a(g1)) = det <g_i, D f_j>.
  {
    auto f1 = random_vec(), f2 = random_vec(), g1 = random_vec(), g2 = random_vec();
    auto op = matmul(matmul(adag_of(f1), adag_of(f2), dim), matmul(a_of(g2), a_of(g1), dim), dim);
    Complex lhs = rho(op);
    Complex d11 = inner(g1, apply_d(f1)), d12 = inner(g1, apply_d(f2));
    Complex d21 = inner(g2, apply_d(f1)), d22 = inner(g2, apply_d(f2));
    rep.wick_error = std::abs(lhs - (d11 * d22 - d12 * d21));
  }

  // (e) CAR: {a(f), a*(g)} = <f,g> 1.
  {
    auto f = random_vec(), g = random_vec();
    auto af = a_of(f), adg = adag_of(g);
    auto anti = matmul(af, adg, dim);
    auto ga = matmul(adg, af, dim);
    Complex ip = inner(f, g);
    double err = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Complex v = anti[static_cast<size_t>(i) * dim + j] + ga[static_cast<size_t>(i) * dim + j];
        if (i == j) v -= ip;
        err = std::max(err, std::abs(v));
      }
    double fg_scale = std::sqrt(inner(f, f).real() * inner(g, g).real());
    rep.car_error = err / std::max(1.0, fg_scale);
  }

  // (d) -tr W ln W from the Fock spectrum vs tr eta(D).
  auto mu = fock_spectrum(w, dim);
  double s_fock = 0.0;
  for (double m : mu) {
    if (m < -1e-10) throw AccuracyLossError("fock_oracle: negative Fock weight");
    if (m > 1e-300) s_fock -= m * std::log(m);
  }
  rep.fock_entropy = s_fock;
  for (double l : dec.values) rep.spectral_entropy += eta(l);
  rep.entropy_error = std::abs(rep.fock_entropy - rep.spectral_entropy);
  return rep;
}

BipartitionReport fock_bipartition(const HermitianMatrix& d_matrix, int n_first) {
  const int n = d_matrix.n();
  if (n_first < 1 || n_first >= n)
    throw InvalidArgumentError("fock_bipartition: split must leave modes on both sides");

  auto block_entropy = [&](int lo, int hi) {
    HermitianMatrix block(hi - lo);
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j)
        if (i <= j) block.set(i - lo, j - lo, d_matrix(i, j));
    double s = 0.0;
    for (double l : numerics::eigenvalues_hermitian(block)) {
      double t = std::min(1.0, std::max(0.0, l));
      s += eta(t);
    }
    return s;
  };

  BipartitionReport rep;
  rep.s_first = block_entropy(0, n_first);
  rep.s_second = block_entropy(n_first, n);
  double s = 0.0;
  for (double l : numerics::eigenvalues_hermitian(d_matrix))
    s += eta(std::min(1.0, std::max(0.0, l)));
  rep.s_total = s;
  rep.delta_s = rep.s_first + rep.s_second - rep.s_total;
  rep.identity_residual = std::abs(rep.delta_s - 2.0 * rep.s_first);
  rep.triangle_holds = std::abs(rep.s_first - rep.s_second) <= rep.s_total + 1e-10 &&
                       rep.s_total <= rep.s_first + rep.s_second + 1e-10;
  return rep;
}

}  // namespace widomlab::entropy
