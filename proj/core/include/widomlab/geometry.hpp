#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/numerics.hpp"

namespace widomlab::geometry {

enum class DomainKind { box, ball, ellipsoid };

/// Compact region of R^d (d <= 5) from the closed-form family: interval box,
/// ball, or axis-aligned centered ellipsoid. Balls and ellipsoids have smooth
/// boundaries with nowhere-vanishing Gauss-Kronecker curvature; boxes reject
/// curvature queries.
class Domain {
 public:
  static Domain box(std::vector<std::pair<double, double>> bounds);
  static Domain ball(int dim, double radius, const Vec& center);
  static Domain ball(int dim, double radius) { return ball(dim, radius, Vec(dim)); }
  static Domain ellipsoid(std::vector<double> semi_axes);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool smooth() const { return kind_ != DomainKind::box; }

  double volume() const;
  double diameter() const;
  /// 1 / (largest principal curvature over the boundary); infinite for boxes.
  double min_curvature_radius() const;

  bool contains(const Vec& x) const;
  Vec sample_uniform(numerics::RandomSource& rng) const;

  const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }
  const std::vector<double>& semi_axes() const { return axes_; }

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::box;
  int dim_ = 0;
  std::vector<std::pair<double, double>> bounds_;  // box
  double radius_ = 0.0;                            // ball
  Vec center_;                                     // ball
  std::vector<double> axes_;                       // ellipsoid
};

/// Boundary sample: position, outward unit normal, surface-measure weight,
/// Gauss-Kronecker curvature and signature of the second fundamental form
/// (with respect to the outward normal; zero on box faces).
struct BoundaryPoint {
  Vec position;
  Vec normal;
  double weight = 0.0;
  double curvature = 0.0;
  int signature = 0;
};

/// Quadrature points covering the whole boundary; weights sum to the surface
/// area. In d = 1 the boundary measure is counting measure on the endpoints.
std::vector<BoundaryPoint> boundary_quadrature(const Domain& d, int resolution);

/// Critical points of p -> p.e on the boundary: the two points with n = +-e.
struct CriticalSet {
  Vec direction;
  std::vector<BoundaryPoint> points;
};

CriticalSet critical_points(const Domain& d, const Vec& e);

/// |D intersect (D + v)| : closed form for boxes and for balls with d <= 3,
/// seeded Monte Carlo (1e6 samples) otherwise.
double intersection_volume(const Domain& d, const Vec& v);

/// Volume quadrature node.
struct VolumeNode {
  Vec p;
  double w;
};

/// Smooth product quadrature covering the domain: tensor Gauss-Legendre on
/// boxes, polar/spherical grids on balls, affine-mapped ball grids on
/// ellipsoids. `resolution` counts nodes per radial/axis direction; azimuthal
/// counts are doubled.
std::vector<VolumeNode> quadrature_grid(const Domain& d, int resolution);

/// Integral of |n_x . n_p| w(x,p) over the product of the two boundaries.
/// Pass an empty weight for w = 1.
double coupling_integral(const Domain& omega, const Domain& gamma,
                         const std::function<double(const Vec&, const Vec&)>& weight,
                         int resolution);

inline double coupling_integral(const Domain& omega, const Domain& gamma,
                                int resolution = 128) {
  return coupling_integral(omega, gamma, nullptr, resolution);
}

}  // namespace widomlab::geometry
