#pragma once

#include <functional>
#include <span>
#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/geometry.hpp"
#include "widomlab/numerics.hpp"

namespace widomlab::lemmas {

/// Base domain with translation directions v_1..v_n at scale eps and an
/// optional C^1 weight. The intersected family is Omega ∩ ∩_k (Omega - eps v_k),
/// paired with max(0, v_k . n) on the surface side.
struct TranslateFamily {
  geometry::Domain domain;
  std::vector<Vec> shifts;
  double eps = 0.0;
  std::function<double(const Vec&)> weight;  // empty means f = 1
};

enum class VolumeMethod { closed, mc };

/// Integral of the weight over Omega minus the intersected translate family.
/// Closed (deterministic quadrature) route for boxes and d <= 2 balls; seeded
/// Monte Carlo otherwise, with the sample budget scaling as eps^{-2} capped
/// at 1e7.
double excluded_volume(const TranslateFamily& fam, VolumeMethod method,
                       long n_samples = 0, std::uint64_t seed = 2718281828u);

/// eps * integral over the boundary of f(x) max_k(0, v_k . n_x) dsigma.
double surface_term(const TranslateFamily& fam, int resolution = 512);

struct OrderReport {
  std::vector<double> eps_grid;
  std::vector<double> differences;  // |excluded - surface| per eps
  double slope = 0.0;               // log-log fit; meaningless when flat
  bool flat = false;                // identically zero differences (box faces)
};

/// Empirical order of |excluded_volume - surface_term| in eps; the expansion
/// error bound is O(eps^2).
OrderReport roccaforte_order_check(const TranslateFamily& fam, const std::vector<double>& eps_grid,
                                   VolumeMethod method);

/// Permutation-sum identities (n <= 9):
///   lhs:  sum over permutations of max(0, partial sums),
///   rhs:  harmonic form sum_l (1/l) max(0, S_l),
///   kac:  a_{sigma 1} sum_k Theta(S_k) with right-continuous Theta.
double widom_identity_lhs(std::span<const double> a);
double widom_identity_rhs(std::span<const double> a);
double kac_identity_rhs(std::span<const double> a);

}  // namespace widomlab::lemmas
