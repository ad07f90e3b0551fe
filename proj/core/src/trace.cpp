#include "widomlab/trace.hpp"

#include <algorithm>
#include <cmath>

namespace widomlab::trace {

using fourier::GammaMethod;
using fourier::Symbol;
using geometry::Domain;
using geometry::DomainKind;

namespace {

constexpr Complex kI{0.0, 1.0};

double max_momentum(const Domain& g) {
  switch (g.kind()) {
    case DomainKind::box: {
      double s = 0.0;
      for (const auto& [lo, hi] : g.bounds())
        s += std::max(lo * lo, hi * hi);
      return std::sqrt(s);
    }
    case DomainKind::ball:
      return g.center().norm() + g.radius();
    case DomainKind::ellipsoid:
      return *std::max_element(g.semi_axes().begin(), g.semi_axes().end());
  }
  return 0.0;
}

double sphere_surface(int d) {  // |S^{d-1}|
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// Composite Gauss-Legendre with panels at the oscillation period. Twelve
// points per panel: eight leave ~1e-4 phase-coherent residue at small R.
constexpr int kPanelPoints = 12;

double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       double panel_width, long max_panels = 4000000) {
  long n = std::max<long>(4, static_cast<long>(std::ceil((b - a) / panel_width)));
  if (n > max_panels)
    throw AccuracyLossError("panel_integrate: oscillation scale needs " + std::to_string(n) +
                            " panels (budget " + std::to_string(max_panels) + ")");
  static const auto rule = numerics::gauss_legendre(kPanelPoints);
  double h = (b - a) / n;
  double total = 0.0;
  for (long k = 0; k < n; ++k) {
    double mid = a + (k + 0.5) * h;
    for (int i = 0; i < kPanelPoints; ++i)
      total += 0.5 * h * rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
  }
  return total;
}

}  // namespace

OperatorSpec make_spec(Domain omega, Domain gamma, Symbol alpha, double R) {
  if (omega.dim() != gamma.dim())
    throw InvalidArgumentError("OperatorSpec: position and momentum dimensions differ");
  if (!(R > 0.0)) throw InvalidArgumentError("OperatorSpec: R must be > 0");
  return OperatorSpec{std::move(omega), std::move(gamma), std::move(alpha), R};
}

Complex kernel(const OperatorSpec& spec, const Vec& x, const Vec& y) {
  const int d = spec.omega.dim();
  Vec v = (x - y) * spec.R;
  auto g = fourier::gamma(spec.gamma, spec.alpha, x, v);
  return std::pow(spec.R, d) * g.value;
}

double NystromOperator::diagonal_trace() const {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += entry(i, i).real();
  return t;
}

numerics::HermitianMatrix NystromOperator::to_hermitian() const {
  if (!hermitian)
    throw InvalidMethodError("NystromOperator: matrix is not Hermitian for this symbol");
  double scale = 0.0;
  for (const Complex& z : m) scale += std::norm(z);
  scale = std::sqrt(scale);
  numerics::HermitianMatrix h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Complex a = entry(i, j), b = std::conj(entry(j, i));
      if (std::abs(a - b) > 1e-10 * std::max(scale, 1.0))
        throw InvalidMethodError("NystromOperator: Hermitian symmetry check failed");
      h.set(i, j, 0.5 * (a + b));
    }
  }
  return h;
}

int default_nystrom_resolution(const OperatorSpec& spec) {
  const int d = spec.omega.dim();
  double c = spec.R * max_momentum(spec.gamma) * 0.5 * spec.omega.diameter();
  if (d == 1) return static_cast<int>(std::ceil(0.75 * c)) + 48;
  return static_cast<int>(std::ceil(0.6 * c)) + 12;
}

NystromOperator build_nystrom(const OperatorSpec& spec, int resolution) {
  if (resolution <= 0) resolution = default_nystrom_resolution(spec);
  NystromOperator op;
  op.nodes = geometry::quadrature_grid(spec.omega, resolution);
  op.n = static_cast<int>(op.nodes.size());
  op.hermitian = spec.alpha.x_independent() && spec.alpha.real_valued();
  op.m.resize(static_cast<size_t>(op.n) * op.n);

  std::vector<double> sqw(op.n);
  for (int i = 0; i < op.n; ++i) sqw[i] = std::sqrt(op.nodes[i].w);

  if (op.hermitian) {
    for (int i = 0; i < op.n; ++i) {
      for (int j = i; j < op.n; ++j) {
        Complex k = kernel(spec, op.nodes[i].p, op.nodes[j].p) * (sqw[i] * sqw[j]);
        if (i == j) k = Complex(k.real(), 0.0);
        op.m[static_cast<size_t>(i) * op.n + j] = k;
        op.m[static_cast<size_t>(j) * op.n + i] = std::conj(k);
      }
    }
  } else {
    for (int i = 0; i < op.n; ++i)
      for (int j = 0; j < op.n; ++j)
        op.m[static_cast<size_t>(i) * op.n + j] =
            kernel(spec, op.nodes[i].p, op.nodes[j].p) * (sqw[i] * sqw[j]);
  }
  return op;
}

TraceResult exact_trace(const OperatorSpec& spec) {
  const int d = spec.omega.dim();
  const double scale = std::pow(spec.R / kTwoPi, d);
  TraceResult res;
  res.method = TraceMethod::exact;
  res.R = spec.R;

  if (spec.alpha.is_one()) {
    res.value = scale * spec.omega.volume() * spec.gamma.volume();
    res.provenance = "closed form (R/2pi)^d |Omega||Gamma|";
    return res;
  }
  if (spec.alpha.x_independent()) {
    double acc = 0.0;
    for (const auto& n : geometry::quadrature_grid(spec.gamma, 64))
      acc += n.w * spec.alpha(Vec(d), n.p).real();
    res.value = scale * spec.omega.volume() * acc;
    res.provenance = "momentum-symbol quadrature";
    res.error_estimate = 1e-10 * std::abs(res.value);
    return res;
  }
  if (2 * d <= 4) {
    auto gx = geometry::quadrature_grid(spec.omega, 48);
    auto gp = geometry::quadrature_grid(spec.gamma, 48);
    double acc = 0.0;
    for (const auto& nx : gx) {
      double row = 0.0;
      for (const auto& np : gp) row += np.w * spec.alpha(nx.p, np.p).real();
      acc += nx.w * row;
    }
    res.value = scale * acc;
    res.provenance = "tensor quadrature over Omega x Gamma";
    res.error_estimate = 1e-8 * std::abs(res.value);
    return res;
  }
  numerics::RandomSource rng(0x243f6a88u);
  const long n = 400000;
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < n; ++i) {
    double val = spec.alpha(spec.omega.sample_uniform(rng), spec.gamma.sample_uniform(rng)).real();
    sum += val;
    sum2 += val * val;
  }
  double mean = sum / n;
  res.value = scale * spec.omega.volume() * spec.gamma.volume() * mean;
  res.error_estimate = scale * spec.omega.volume() * spec.gamma.volume() *
                       std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
  res.method = TraceMethod::mc;
  res.provenance = "Monte Carlo over Omega x Gamma";
  return res;
}

namespace {

// Bounding box of Omega - Omega.
numerics::Box difference_box(const Domain& omega) {
  numerics::Box box;
  const int d = omega.dim();
  if (omega.kind() == DomainKind::box) {
    for (const auto& [lo, hi] : omega.bounds()) box.bounds.push_back({lo - hi, hi - lo});
  } else {
    double r = 0.5 * omega.diameter();
    for (int i = 0; i < d; ++i) {
      double len = omega.kind() == DomainKind::ellipsoid ? omega.semi_axes()[i] : r;
      box.bounds.push_back({-2.0 * len, 2.0 * len});
    }
  }
  return box;
}

TraceResult trace_square_radial(const OperatorSpec& spec) {
  const int d = spec.omega.dim();
  if (spec.omega.kind() != DomainKind::ball || spec.gamma.kind() != DomainKind::ball ||
      !spec.alpha.is_one())
    throw InvalidMethodError("trace_square: radial route needs balls and alpha = 1");
  if (d > 3) throw InvalidMethodError("trace_square: radial route supports d <= 3");
  const double R = spec.R;
  const double r_gamma = spec.gamma.radius();
  const double diam = spec.omega.diameter();

  Vec e(d);
  e[0] = 1.0;
  auto integrand = [&](double rho) {
    Complex g = fourier::gamma(spec.gamma, spec.alpha, Vec(d), (R * rho) * e,
                               GammaMethod::closed_form)
                    .value;
    return std::pow(rho, d - 1) * std::norm(g) * geometry::intersection_volume(spec.omega, rho * e);
  };
  double integral = panel_integrate(integrand, 0.0, diam, kPi / (R * r_gamma));
  TraceResult res;
  res.method = TraceMethod::radial;
  res.R = R;
  res.value = std::pow(R, 2 * d) * sphere_surface(d) * integral;
  res.error_estimate = 1e-7 * std::abs(res.value);
  res.provenance = "radial overlap integral, panels pi/(R r_Gamma)";
  return res;
}

TraceResult trace_square_overlap(const OperatorSpec& spec) {
  const int d = spec.omega.dim();
  const double R = spec.R;
  const double r_gamma = 0.5 * spec.gamma.diameter();
  const double panel = kPi / (R * r_gamma);
  const bool alpha_one = spec.alpha.is_one();
  const bool x_indep = spec.alpha.x_independent();

  if (!alpha_one && d > 1)
    throw InvalidMethodError("trace_square: overlap route supports general symbols in d = 1 only");

  auto gamma_sq = [&](const Vec& v) -> double {
    // gamma(Rv) gamma(-Rv) = |gamma(Rv)|^2 for real symbols.
    auto g = fourier::gamma(spec.gamma, spec.alpha, Vec(d), R * v);
    if (spec.alpha.real_valued()) return std::norm(g.value);
    auto gm = fourier::gamma(spec.gamma, spec.alpha, Vec(d), (-R) * v);
    return (g.value * gm.value).real();
  };

  TraceResult res;
  res.method = TraceMethod::overlap;
  res.R = R;

  if (d == 1) {
    double lo, hi;
    if (spec.omega.kind() == DomainKind::box) {
      lo = spec.omega.bounds()[0].first;
      hi = spec.omega.bounds()[0].second;
    } else {
      lo = spec.omega.center()[0] - 0.5 * spec.omega.diameter();
      hi = spec.omega.center()[0] + 0.5 * spec.omega.diameter();
    }
    double len = hi - lo;
    static const auto u_rule = numerics::gauss_legendre(24);
    auto f = [&](double v) {
      Vec vv{v};
      if (alpha_one || x_indep) return gamma_sq(vv) * std::max(0.0, len - std::abs(v));
      // Frozen-x reduction: average gamma_x(Rv) gamma_x(-Rv) over the overlap.
      double a = std::max(lo, lo + v), b = std::min(hi, hi + v);
      if (b <= a) return 0.0;
      double acc = 0.0;
      for (int i = 0; i < 24; ++i) {
        double u = 0.5 * (a + b) + 0.5 * (b - a) * u_rule.nodes[i];
        Vec x{u};
        Complex gp = fourier::gamma(spec.gamma, spec.alpha, x, R * vv).value;
        Complex gm = fourier::gamma(spec.gamma, spec.alpha, x, (-R) * vv).value;
        acc += 0.5 * (b - a) * u_rule.weights[i] * (gp * gm).real();
      }
      return acc;
    };
    // Split at v = 0: the overlap length has a kink there.
    double integral = panel_integrate(f, -len, 0.0, panel) + panel_integrate(f, 0.0, len, panel);
    res.value = R * R * integral;
  } else {
    // Tensor panel quadrature over the bounding box of Omega - Omega.
    auto box = difference_box(spec.omega);
    static const auto rule = numerics::gauss_legendre(kPanelPoints);
    std::vector<std::vector<std::pair<double, double>>> axes(d);
    long total_pts = 1;
    for (int i = 0; i < d; ++i) {
      auto [a, b] = box.bounds[i];
      // Panels aligned to the overlap-volume kink at 0.
      for (auto [lo, hi] : {std::pair{a, 0.0}, std::pair{0.0, b}}) {
        long n = std::max<long>(2, static_cast<long>(std::ceil((hi - lo) / panel)));
        double h = (hi - lo) / n;
        for (long k = 0; k < n; ++k) {
          double mid = lo + (k + 0.5) * h;
          for (int q = 0; q < kPanelPoints; ++q)
            axes[i].push_back({mid + 0.5 * h * rule.nodes[q], 0.5 * h * rule.weights[q]});
        }
      }
      total_pts *= static_cast<long>(axes[i].size());
      if (total_pts > 30000000)
        throw AccuracyLossError("trace_square overlap: oscillation grid exceeds budget at R = " +
                                std::to_string(R));
    }
    std::array<int, kMaxDim> idx{};
    double acc = 0.0;
    Vec v(d);
    while (true) {
      double w = 1.0;
      for (int i = 0; i < d; ++i) {
        v[i] = axes[i][idx[i]].first;
        w *= axes[i][idx[i]].second;
      }
      double ivol = geometry::intersection_volume(spec.omega, v);
      if (ivol > 0.0) acc += w * gamma_sq(v) * ivol;
      int a = 0;
      while (a < d && ++idx[a] == static_cast<int>(axes[a].size())) idx[a++] = 0;
      if (a == d) break;
    }
    res.value = std::pow(R, 2 * d) * acc;
  }
  res.error_estimate = 1e-6 * std::abs(res.value);
  res.provenance = "translate-overlap integral, panels pi/(R r_Gamma)";
  return res;
}

TraceResult trace_square_nystrom(const OperatorSpec& spec, int resolution) {
  auto op = build_nystrom(spec, resolution);
  double acc = 0.0;
  if (op.hermitian) {
    for (int i = 0; i < op.n; ++i) {
      acc += std::norm(op.entry(i, i));
      for (int j = i + 1; j < op.n; ++j) acc += 2.0 * std::norm(op.entry(i, j));
    }
  } else {
    Complex c = 0.0;
    for (int i = 0; i < op.n; ++i)
      for (int j = 0; j < op.n; ++j) c += op.entry(i, j) * op.entry(j, i);
    if (std::abs(c.imag()) > 1e-8 * std::max(1.0, std::abs(c.real())))
      throw AccuracyLossError("trace_square: non-real trace from non-Hermitian Nystrom matrix");
    acc = c.real();
  }
  TraceResult res;
  res.method = TraceMethod::nystrom;
  res.R = spec.R;
  res.value = acc;
  res.error_estimate = 1e-5 * std::abs(acc);
  res.provenance = "Nystrom Frobenius norm, n = " + std::to_string(op.n);
  return res;
}

}  // namespace

TraceResult trace_square(const OperatorSpec& spec, TraceMethod method, int resolution) {
  switch (method) {
    case TraceMethod::radial:
      return trace_square_radial(spec);
    case TraceMethod::overlap:
      return trace_square_overlap(spec);
    case TraceMethod::nystrom:
      return trace_square_nystrom(spec, resolution);
    default:
      throw InvalidMethodError("trace_square: method must be radial, overlap, or nystrom");
  }
}

ClipReport clip_to_unit_interval(std::vector<double>& values, double tol) {
  ClipReport rep;
  for (double& v : values) {
    if (v < 0.0) {
      if (v < -tol)
        throw DiscretizationTooCoarseError("spectrum excursion " + std::to_string(v) +
                                           " below -" + std::to_string(tol));
      rep.max_magnitude = std::max(rep.max_magnitude, -v);
      ++rep.count;
      v = 0.0;
    } else if (v > 1.0) {
      if (v > 1.0 + tol)
        throw DiscretizationTooCoarseError("spectrum excursion " + std::to_string(v) +
                                           " above 1+" + std::to_string(tol));
      rep.max_magnitude = std::max(rep.max_magnitude, v - 1.0);
      ++rep.count;
      v = 1.0;
    }
  }
  return rep;
}

std::vector<double> nystrom_spectrum(const OperatorSpec& spec, int resolution) {
  auto op = build_nystrom(spec, resolution);
  return numerics::eigenvalues_hermitian(op.to_hermitian());
}

TraceResult trace_F(const OperatorSpec& spec, const widom::SpectralFunction& f,
                    int resolution) {
  if (!(spec.alpha.x_independent() && spec.alpha.real_valued()))
    throw InvalidMethodError("trace_F: spectral route requires an x-independent real symbol");
  auto ev = nystrom_spectrum(spec, resolution);
  const bool entropy_type = f.tag() == widom::SpectralFunction::Tag::eta ||
                            f.tag() == widom::SpectralFunction::Tag::eta_beta;
  if (entropy_type) clip_to_unit_interval(ev);
  double acc = 0.0;
  for (double l : ev) acc += f(l);
  TraceResult res;
  res.method = TraceMethod::nystrom;
  res.R = spec.R;
  res.value = acc;
  res.error_estimate = 1e-5 * std::max(1.0, std::abs(acc));
  res.provenance = "eigenvalue route, n = " + std::to_string(ev.size());
  return res;
}

TraceResult trace_power_mc(const OperatorSpec& spec, int k, long n_samples,
                           numerics::RandomSource& rng) {
  if (k < 3) throw InvalidArgumentError("trace_power_mc: k must be >= 3 (closed routes exist)");
  if (!spec.alpha.is_one()) throw InvalidMethodError("trace_power_mc: requires alpha = 1");
  const int d = spec.omega.dim();
  const bool interval_like = spec.omega.kind() == DomainKind::box || d == 1;
  if (!interval_like)
    throw InvalidMethodError("trace_power_mc: overlap volume needs a box (or any d = 1) domain");

  const double R = spec.R;
  // Omega bounds scaled by R.
  std::vector<std::pair<double, double>> b;
  if (spec.omega.kind() == DomainKind::box) {
    for (auto [lo, hi] : spec.omega.bounds()) b.push_back({R * lo, R * hi});
  } else {
    double c = spec.omega.center()[0], r = 0.5 * spec.omega.diameter();
    b.push_back({R * (c - r), R * (c + r)});
  }

  // Radial envelope density ~ min(1, (rho0/rho)^{(d+1)/2}) rho^{d-1} on (0, ymax].
  const double ymax = [&] {
    double s = 0.0;
    for (auto [lo, hi] : b) s += (hi - lo) * (hi - lo);
    return std::sqrt(s);
  }();
  const double rho0 = std::min(ymax, kPi / (0.5 * spec.gamma.diameter()));
  const double p_in = std::pow(rho0, d) / d;  // integral of rho^{d-1} over [0, rho0]
  const double tail_pow = 0.5 * (d - 3);
  double p_out;
  if (d == 1) {
    p_out = rho0 * std::log(ymax / rho0);
  } else if (tail_pow == -0.5) {
    p_out = std::pow(rho0, 1.5) * 2.0 * (std::sqrt(ymax) - std::sqrt(rho0));
  } else {
    p_out = std::pow(rho0, 0.5 * (d + 1)) * (std::pow(ymax, tail_pow + 1.0) - std::pow(rho0, tail_pow + 1.0)) /
            (tail_pow + 1.0);
  }
  const double norm_radial = p_in + p_out;
  const double surface = sphere_surface(d);

  auto sample_y = [&](numerics::RandomSource& r2, double* density) {
    double u = r2.uniform() * norm_radial;
    double rho;
    if (u < p_in) {
      rho = std::pow(u * d, 1.0 / d);
    } else {
      double w = u - p_in;
      if (d == 1) {
        rho = rho0 * std::exp(w / rho0);
      } else if (tail_pow == -0.5) {
        rho = std::pow(std::sqrt(rho0) + 0.5 * w / std::pow(rho0, 1.5), 2.0);
      } else {
        rho = std::pow(std::pow(rho0, tail_pow + 1.0) + w * (tail_pow + 1.0) / std::pow(rho0, 0.5 * (d + 1)),
                       1.0 / (tail_pow + 1.0));
      }
    }
    // Density per unit volume; the rho^{d-1} of the radial pdf cancels
    // against the volume element.
    double h = rho <= rho0 ? 1.0 : std::pow(rho0 / rho, 0.5 * (d + 1));
    *density = h / (norm_radial * surface);
    Vec dir(d);
    if (d == 1) {
      dir[0] = r2.uniform() < 0.5 ? -1.0 : 1.0;
    } else {
      double n2 = 0.0;
      do {
        for (int i = 0; i < d; ++i) dir[i] = r2.normal();
        n2 = dir.norm2();
      } while (n2 == 0.0);
      dir = dir * (1.0 / std::sqrt(n2));
    }
    return rho * dir;
  };

  auto gamma_of = [&](const Vec& y) {
    return fourier::gamma(spec.gamma, spec.alpha, Vec(d), y, GammaMethod::closed_form).value;
  };

  double sum = 0.0, sum2 = 0.0;
  std::vector<Vec> ys(k - 1);
  for (long it = 0; it < n_samples; ++it) {
    double weight = 1.0;
    Complex prod = 1.0;
    Vec total(d);
    for (int j = 0; j < k - 1; ++j) {
      double dens;
      ys[j] = sample_y(rng, &dens);
      weight /= dens;
      prod *= gamma_of(-1.0 * ys[j]);
      total += ys[j];
    }
    prod *= gamma_of(total);
    // Translate-overlap volume: intersection over partial sums.
    double vol = 1.0;
    Vec partial(d);
    std::array<double, kMaxDim> smin{}, smax{};
    for (int i = 0; i < d; ++i) {
      smin[i] = 0.0;
      smax[i] = 0.0;
    }
    for (int j = 0; j < k - 1; ++j) {
      partial += ys[j];
      for (int i = 0; i < d; ++i) {
        smin[i] = std::min(smin[i], partial[i]);
        smax[i] = std::max(smax[i], partial[i]);
      }
    }
    for (int i = 0; i < d; ++i)
      vol *= std::max(0.0, (b[i].second - b[i].first) - (smax[i] - smin[i]));
    double val = vol > 0.0 ? prod.real() * vol * weight : 0.0;
    sum += val;
    sum2 += val * val;
  }
  double mean = sum / n_samples;
  TraceResult res;
  res.method = TraceMethod::mc;
  res.R = R;
  res.value = mean;
  res.error_estimate = std::sqrt(std::max(0.0, sum2 / n_samples - mean * mean) / n_samples);
  res.provenance = "importance-sampled gamma-product, k = " + std::to_string(k) +
                   ", n = " + std::to_string(n_samples);
  return res;
}

AsymptoticFit asymptotic_fit(const std::vector<double>& r_grid,
                             const std::vector<double>& values, int dim, double leading_a) {
  if (r_grid.size() != values.size())
    throw InvalidArgumentError("asymptotic_fit: grid/value size mismatch");
  if (r_grid.size() < 5)
    throw InvalidArgumentError("asymptotic_fit: need at least 5 R values");
  double rmin = *std::min_element(r_grid.begin(), r_grid.end());
  double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  if (rmax < 10.0 * rmin)
    throw InvalidArgumentError("asymptotic_fit: R grid must span at least a decade");

  std::vector<double> ys(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    ys[i] = values[i] - leading_a * std::pow(r_grid[i], dim);

  std::vector<std::function<double(double)>> basis = {
      [dim](double r) { return std::pow(r, dim - 1) * std::log(r); },
      [dim](double r) { return std::pow(r, dim - 1); },
  };
  auto fit = numerics::fit_linear(r_grid, ys, basis);

  AsymptoticFit out;
  out.r_grid = r_grid;
  out.values = values;
  out.dim = dim;
  out.leading_a = leading_a;
  out.log_coefficient = fit.coefficients[0];
  out.power_coefficient = fit.coefficients[1];
  out.log_coefficient_stderr = fit.std_errors[0];
  out.residual_norm = fit.residual_norm;
  return out;
}

}  // namespace widomlab::trace
