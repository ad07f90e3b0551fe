#include "widomlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace widomlab::geometry {

namespace {

double unit_ball_volume(int d) {
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

void check_dim(int d) {
  if (d < 1 || d > kMaxDim)
    throw InvalidArgumentError("Domain: dimension must be in 1..5");
}

}  // namespace

Domain Domain::box(std::vector<std::pair<double, double>> bounds) {
  check_dim(static_cast<int>(bounds.size()));
  for (const auto& [lo, hi] : bounds)
    if (!(hi > lo)) throw InvalidArgumentError("Domain::box: empty interval");
  Domain d;
  d.kind_ = DomainKind::box;
  d.dim_ = static_cast<int>(bounds.size());
  d.bounds_ = std::move(bounds);
  return d;
}

Domain Domain::ball(int dim, double radius, const Vec& center) {
  check_dim(dim);
  if (!(radius > 0.0)) throw InvalidArgumentError("Domain::ball: radius must be > 0");
  Domain d;
  d.kind_ = DomainKind::ball;
  d.dim_ = dim;
  d.radius_ = radius;
  d.center_ = center.dim() == dim ? center : Vec(dim);
  return d;
}

Domain Domain::ellipsoid(std::vector<double> semi_axes) {
  check_dim(static_cast<int>(semi_axes.size()));
  for (double a : semi_axes)
    if (!(a > 0.0)) throw InvalidArgumentError("Domain::ellipsoid: semi-axes must be > 0");
  Domain d;
  d.kind_ = DomainKind::ellipsoid;
  d.dim_ = static_cast<int>(semi_axes.size());
  d.axes_ = std::move(semi_axes);
  return d;
}

double Domain::volume() const {
  switch (kind_) {
    case DomainKind::box: {
      double v = 1.0;
      for (const auto& [lo, hi] : bounds_) v *= hi - lo;
      return v;
    }
    case DomainKind::ball:
      return unit_ball_volume(dim_) * std::pow(radius_, dim_);
    case DomainKind::ellipsoid: {
      double v = unit_ball_volume(dim_);
      for (double a : axes_) v *= a;
      return v;
    }
  }
  return 0.0;
}

double Domain::diameter() const {
  switch (kind_) {
    case DomainKind::box: {
      double s = 0.0;
      for (const auto& [lo, hi] : bounds_) s += (hi - lo) * (hi - lo);
      return std::sqrt(s);
    }
    case DomainKind::ball:
      return 2.0 * radius_;
    case DomainKind::ellipsoid:
      return 2.0 * *std::max_element(axes_.begin(), axes_.end());
  }
  return 0.0;
}

double Domain::min_curvature_radius() const {
  switch (kind_) {
    case DomainKind::box:
      return std::numeric_limits<double>::infinity();
    case DomainKind::ball:
      return radius_;
    case DomainKind::ellipsoid: {
      double amin = *std::min_element(axes_.begin(), axes_.end());
      double amax = *std::max_element(axes_.begin(), axes_.end());
      return amin * amin / amax;
    }
  }
  return 0.0;
}

bool Domain::contains(const Vec& x) const {
  switch (kind_) {
    case DomainKind::box:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < bounds_[i].first || x[i] > bounds_[i].second) return false;
      return true;
    case DomainKind::ball:
      return (x - center_).norm2() <= radius_ * radius_;
    case DomainKind::ellipsoid: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += x[i] * x[i] / (axes_[i] * axes_[i]);
      return s <= 1.0;
    }
  }
  return false;
}

Vec Domain::sample_uniform(numerics::RandomSource& rng) const {
  switch (kind_) {
    case DomainKind::box: {
      Vec x(dim_);
      for (int i = 0; i < dim_; ++i) x[i] = rng.uniform(bounds_[i].first, bounds_[i].second);
      return x;
    }
    case DomainKind::ball:
    case DomainKind::ellipsoid: {
      Vec q(dim_);
      double n2 = 0.0;
      do {
        for (int i = 0; i < dim_; ++i) q[i] = rng.normal();
        n2 = q.norm2();
      } while (n2 == 0.0);
      double rho = std::pow(rng.uniform(), 1.0 / dim_) / std::sqrt(n2);
      Vec x(dim_);
      if (kind_ == DomainKind::ball) {
        for (int i = 0; i < dim_; ++i) x[i] = center_[i] + radius_ * rho * q[i];
      } else {
        for (int i = 0; i < dim_; ++i) x[i] = axes_[i] * rho * q[i];
      }
      return x;
    }
  }
  return Vec(dim_);
}

namespace {

struct SpherePoint {
  Vec q;
  double w;
};

// Quadrature on the unit sphere S^{d-1}: Gauss-Legendre in the polar angles,
// uniform midpoint grid in the azimuth.
std::vector<SpherePoint> sphere_grid(int d, int res) {
  std::vector<SpherePoint> pts;
  if (d == 1) {
    pts.push_back({Vec{1.0}, 1.0});
    pts.push_back({Vec{-1.0}, 1.0});
    return pts;
  }
  const int nphi = 2 * res;
  std::vector<double> phi(nphi), wphi(nphi, kTwoPi / nphi);
  for (int j = 0; j < nphi; ++j) phi[j] = kTwoPi * (j + 0.5) / nphi;

  if (d == 2) {
    for (int j = 0; j < nphi; ++j)
      pts.push_back({Vec{std::cos(phi[j]), std::sin(phi[j])}, wphi[j]});
    return pts;
  }
  if (d == 3) {
    // u = cos(theta) with Gauss-Legendre: exact for polynomials on the sphere.
    auto gl = numerics::gauss_legendre(res);
    for (int i = 0; i < res; ++i) {
      double u = gl.nodes[i], su = std::sqrt(1.0 - u * u);
      for (int j = 0; j < nphi; ++j) {
        pts.push_back({Vec{su * std::cos(phi[j]), su * std::sin(phi[j]), u},
                       gl.weights[i] * wphi[j]});
      }
    }
    return pts;
  }
  // d = 4, 5: polar angles theta_i in [0, pi] with weights sin^{d-1-i}.
  auto gl = numerics::gauss_legendre(res);
  std::vector<double> theta(res), wt(res);
  for (int i = 0; i < res; ++i) {
    theta[i] = 0.5 * kPi * (gl.nodes[i] + 1.0);
    wt[i] = 0.5 * kPi * gl.weights[i];
  }
  const int npolar = d - 2;
  std::vector<int> idx(npolar, 0);
  while (true) {
    double w = 1.0;
    Vec q(d);
    double running = 1.0;
    for (int a = 0; a < npolar; ++a) {
      double th = theta[idx[a]];
      q[a] = running * std::cos(th);
      w *= wt[idx[a]] * std::pow(std::sin(th), d - 2 - a);
      running *= std::sin(th);
    }
    for (int j = 0; j < nphi; ++j) {
      Vec p = q;
      p[d - 2] = running * std::cos(phi[j]);
      p[d - 1] = running * std::sin(phi[j]);
      pts.push_back({p, w * wphi[j]});
    }
    int a = 0;
    while (a < npolar && ++idx[a] == res) idx[a++] = 0;
    if (a == npolar) break;
  }
  return pts;
}

// Shape operator of the ellipsoid level set at a boundary point: tangent-basis
// projection of Hess(g)/|grad g| with g = sum x_i^2/a_i^2 - 1.
void ellipsoid_curvature(const std::vector<double>& axes, const Vec& p, double* curvature,
                         int* signature) {
  const int d = static_cast<int>(axes.size());
  Vec grad(d);
  for (int i = 0; i < d; ++i) grad[i] = 2.0 * p[i] / (axes[i] * axes[i]);
  double gn = grad.norm();
  Vec n = grad * (1.0 / gn);
  if (d == 1) {
    *curvature = 1.0;
    *signature = 0;
    return;
  }
  // Tangent basis by Gram-Schmidt against n.
  std::vector<Vec> basis;
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
    Vec t(d);
    t[i] = 1.0;
    t = t - n * n.dot(t);
    for (const Vec& b : basis) t = t - b * b.dot(t);
    if (t.norm() > 1e-8) basis.push_back(t.normalized());
  }
  const int k = d - 1;
  std::vector<double> shape(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int r = 0; r < d; ++r) s += basis[i][r] * (2.0 / (axes[r] * axes[r])) * basis[j][r];
      shape[static_cast<size_t>(i) * k + j] = s / gn;
    }
  auto ev = numerics::jacobi_eigenvalues(shape, k);
  double det = 1.0;
  int sig = 0;
  for (double e : ev) {
    det *= e;
    sig += e > 0.0 ? 1 : -1;
  }
  *curvature = det;
  *signature = sig;
}

}  // namespace

std::vector<BoundaryPoint> boundary_quadrature(const Domain& d, int resolution) {
  if (resolution < 4) throw InvalidArgumentError("boundary_quadrature: resolution must be >= 4");
  std::vector<BoundaryPoint> out;
  const int dim = d.dim();

  if (dim == 1) {
    double lo, hi;
    if (d.kind() == DomainKind::box) {
      lo = d.bounds()[0].first;
      hi = d.bounds()[0].second;
    } else if (d.kind() == DomainKind::ball) {
      lo = d.center()[0] - d.radius();
      hi = d.center()[0] + d.radius();
    } else {
      lo = -d.semi_axes()[0];
      hi = d.semi_axes()[0];
    }
    out.push_back({Vec{lo}, Vec{-1.0}, 1.0, 1.0, 0});
    out.push_back({Vec{hi}, Vec{1.0}, 1.0, 1.0, 0});
    return out;
  }

  switch (d.kind()) {
    case DomainKind::ball: {
      const double r = d.radius();
      for (const auto& sp : sphere_grid(dim, resolution)) {
        BoundaryPoint bp;
        bp.position = d.center() + r * sp.q;
        bp.normal = sp.q;
        bp.weight = sp.w * std::pow(r, dim - 1);
        bp.curvature = std::pow(r, -(dim - 1));
        bp.signature = dim - 1;
        out.push_back(bp);
      }
      return out;
    }
    case DomainKind::ellipsoid: {
      const auto& a = d.semi_axes();
      double det = 1.0;
      for (double ai : a) det *= ai;
      for (const auto& sp : sphere_grid(dim, resolution)) {
        BoundaryPoint bp;
        bp.position = Vec(dim);
        Vec ainv_q(dim);
        for (int i = 0; i < dim; ++i) {
          bp.position[i] = a[i] * sp.q[i];
          ainv_q[i] = sp.q[i] / a[i];
        }
        double an = ainv_q.norm();
        bp.normal = ainv_q * (1.0 / an);
        bp.weight = sp.w * det * an;
        ellipsoid_curvature(a, bp.position, &bp.curvature, &bp.signature);
        out.push_back(bp);
      }
      return out;
    }
    case DomainKind::box: {
      auto gl = numerics::gauss_legendre(resolution);
      const auto& b = d.bounds();
      for (int axis = 0; axis < dim; ++axis) {
        for (int side = 0; side < 2; ++side) {
          Vec normal(dim);
          normal[axis] = side == 0 ? -1.0 : 1.0;
          double coord = side == 0 ? b[axis].first : b[axis].second;
          // Tensor grid over the remaining axes.
          std::vector<int> free;
          for (int i = 0; i < dim; ++i)
            if (i != axis) free.push_back(i);
          std::vector<int> idx(free.size(), 0);
          while (true) {
            BoundaryPoint bp;
            bp.position = Vec(dim);
            bp.position[axis] = coord;
            bp.weight = 1.0;
            for (size_t a = 0; a < free.size(); ++a) {
              int i = free[a];
              double mid = 0.5 * (b[i].first + b[i].second);
              double half = 0.5 * (b[i].second - b[i].first);
              bp.position[i] = mid + half * gl.nodes[idx[a]];
              bp.weight *= half * gl.weights[idx[a]];
            }
            bp.normal = normal;
            out.push_back(bp);
            size_t a = 0;
            while (a < free.size() && ++idx[a] == resolution) idx[a++] = 0;
            if (a == free.size()) break;
          }
        }
      }
      return out;
    }
  }
  return out;
}

CriticalSet critical_points(const Domain& d, const Vec& e) {
  if (std::abs(e.norm() - 1.0) > 1e-10)
    throw InvalidArgumentError("critical_points: direction must be a unit vector");
  if (!d.smooth())
    throw UnsupportedDomainError("critical_points: boxes have no Gauss-map critical points");
  CriticalSet set;
  set.direction = e;
  const int dim = d.dim();

  if (d.kind() == DomainKind::ball) {
    const double r = d.radius();
    for (int sgn : {+1, -1}) {
      BoundaryPoint bp;
      bp.position = d.center() + (sgn * r) * e;
      bp.normal = static_cast<double>(sgn) * e;
      bp.weight = 0.0;
      bp.curvature = dim == 1 ? 1.0 : std::pow(r, -(dim - 1));
      bp.signature = dim - 1;
      set.points.push_back(bp);
    }
    return set;
  }

  // Axis-aligned ellipsoid: gradient parallel to e at p_i = +- a_i^2 e_i / |(a_j e_j)|.
  const auto& a = d.semi_axes();
  double norm2 = 0.0;
  for (int i = 0; i < dim; ++i) norm2 += a[i] * a[i] * e[i] * e[i];
  double inv = 1.0 / std::sqrt(norm2);
  for (int sgn : {+1, -1}) {
    BoundaryPoint bp;
    bp.position = Vec(dim);
    for (int i = 0; i < dim; ++i) bp.position[i] = sgn * a[i] * a[i] * e[i] * inv;
    bp.normal = static_cast<double>(sgn) * e;
    bp.weight = 0.0;
    if (dim == 1) {
      bp.curvature = 1.0;
      bp.signature = 0;
    } else {
      ellipsoid_curvature(a, bp.position, &bp.curvature, &bp.signature);
    }
    set.points.push_back(bp);
  }
  return set;
}

namespace {

double ball_intersection(int d, double r, double dist) {
  if (dist >= 2.0 * r) return 0.0;
  if (d == 1) return 2.0 * r - dist;
  if (d == 2)
    return 2.0 * r * r * std::acos(0.5 * dist / r) -
           0.5 * dist * std::sqrt(4.0 * r * r - dist * dist);
  if (d == 3) {
    double t = 2.0 * r - dist;
    return kPi * t * t * (dist + 4.0 * r) / 12.0;
  }
  return -1.0;  // no closed form
}

}  // namespace

double intersection_volume(const Domain& d, const Vec& v) {
  const int dim = d.dim();
  if (d.kind() == DomainKind::box) {
    double vol = 1.0;
    for (int i = 0; i < dim; ++i) {
      double len = d.bounds()[i].second - d.bounds()[i].first;
      vol *= std::max(0.0, len - std::abs(v[i]));
    }
    return vol;
  }
  if (d.kind() == DomainKind::ball && dim <= 3)
    return ball_intersection(dim, d.radius(), v.norm());

  // Seeded Monte Carlo fallback: x uniform in D, test x - v in D.
  if (v.norm() > d.diameter()) return 0.0;
  numerics::RandomSource rng(0x9d2c5680u);
  const long n = 1000000;
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    Vec x = d.sample_uniform(rng);
    if (d.contains(x - v)) ++hits;
  }
  return d.volume() * static_cast<double>(hits) / static_cast<double>(n);
}

std::vector<VolumeNode> quadrature_grid(const Domain& d, int resolution) {
  if (resolution < 2) throw InvalidArgumentError("quadrature_grid: resolution must be >= 2");
  const int dim = d.dim();
  std::vector<VolumeNode> out;

  if (d.kind() == DomainKind::box) {
    auto gl = numerics::gauss_legendre(resolution);
    std::array<int, kMaxDim> idx{};
    const auto& b = d.bounds();
    while (true) {
      VolumeNode n;
      n.p = Vec(dim);
      n.w = 1.0;
      for (int i = 0; i < dim; ++i) {
        double mid = 0.5 * (b[i].first + b[i].second);
        double half = 0.5 * (b[i].second - b[i].first);
        n.p[i] = mid + half * gl.nodes[idx[i]];
        n.w *= half * gl.weights[idx[i]];
      }
      out.push_back(n);
      int a = 0;
      while (a < dim && ++idx[a] == resolution) idx[a++] = 0;
      if (a == dim) break;
    }
    return out;
  }

  const bool ellips = d.kind() == DomainKind::ellipsoid;
  const double r = ellips ? 1.0 : d.radius();
  double det = 1.0;
  if (ellips)
    for (double ai : d.semi_axes()) det *= ai;

  if (dim == 1) {
    auto gl = numerics::gauss_legendre(resolution);
    double c = ellips ? 0.0 : d.center()[0];
    double a = ellips ? d.semi_axes()[0] : r;
    for (int i = 0; i < resolution; ++i)
      out.push_back({Vec{c + a * gl.nodes[i]}, a * gl.weights[i]});
    return out;
  }

  // Radial Gauss-Legendre times a sphere grid in the angle.
  auto radial = numerics::gauss_legendre(resolution);
  auto sphere = sphere_grid(dim, std::max(2, resolution / (dim == 2 ? 1 : 2)));
  for (int i = 0; i < resolution; ++i) {
    double rho = 0.5 * r * (radial.nodes[i] + 1.0);
    double wr = 0.5 * r * radial.weights[i] * std::pow(rho, dim - 1);
    for (const auto& sp : sphere) {
      VolumeNode n;
      n.p = Vec(dim);
      for (int k = 0; k < dim; ++k) {
        double coord = rho * sp.q[k];
        n.p[k] = ellips ? d.semi_axes()[k] * coord : d.center()[k] + coord;
      }
      n.w = wr * sp.w * (ellips ? det : 1.0);
      out.push_back(n);
    }
  }
  return out;
}

double coupling_integral(const Domain& omega, const Domain& gamma,
                         const std::function<double(const Vec&, const Vec&)>& weight,
                         int resolution) {
  if (omega.dim() != gamma.dim())
    throw InvalidArgumentError("coupling_integral: dimension mismatch");
  auto bx = boundary_quadrature(omega, resolution);
  auto bp = boundary_quadrature(gamma, resolution);
  double total = 0.0;
  for (const auto& x : bx) {
    double partial = 0.0;
    for (const auto& p : bp) {
      double c = std::abs(x.normal.dot(p.normal));
      if (c == 0.0) continue;
      double w = weight ? weight(x.position, p.position) : 1.0;
      partial += p.weight * c * w;
    }
    total += x.weight * partial;
  }
  return total;
}

}  // namespace widomlab::geometry
