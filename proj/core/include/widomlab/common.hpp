#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace widomlab {

inline constexpr int kMaxDim = 5;
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

using Complex = std::complex<double>;

/// Point or direction in R^d, d <= kMaxDim. Fixed capacity, no heap.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) { c_.fill(0.0); }
  Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    c_.fill(0.0);
    int i = 0;
    for (double x : xs) c_[i++] = x;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  double dot(const Vec& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  Vec operator+(const Vec& o) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  Vec operator*(double a) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r.c_[i] = a * c_[i];
    return r;
  }
  Vec operator-() const { return *this * -1.0; }
  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }

  Vec normalized() const {
    double n = norm();
    return *this * (1.0 / n);
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

inline Vec operator*(double a, const Vec& v) { return v * a; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error { using Error::Error; };
struct DimensionTooLargeError : Error { using Error::Error; };
struct SingularFitError : Error { using Error::Error; };
struct UnsupportedDomainError : Error { using Error::Error; };
struct AccuracyLossError : Error { using Error::Error; };
struct InvalidFunctionError : Error { using Error::Error; };
struct InvalidMethodError : Error { using Error::Error; };
struct DiscretizationTooCoarseError : Error { using Error::Error; };
struct DegenerateCovarianceError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace widomlab
