#pragma once

#include <complex>
#include <vector>

namespace sta {

// Cubic spline on a uniform grid with not-a-knot ends (third derivative
// continuous across the first and last interior nodes). Natural ends would
// drop to O(h^2) near the boundary; not-a-knot keeps O(h^4) everywhere,
// which the frame interpolators rely on. Needs at least 4 nodes.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(double x0, double dx, std::vector<double> y);

  double operator()(double x) const;
  double deriv(double x) const;

  double x0() const { return x0_; }
  double dx() const { return dx_; }
  std::size_t size() const { return y_.size(); }

 private:
  double x0_ = 0.0, dx_ = 1.0;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the nodes
};

// Re/Im pair sharing one grid.
class CubicSplineC {
 public:
  CubicSplineC() = default;
  CubicSplineC(double x0, double dx, const std::vector<std::complex<double>>& y);

  std::complex<double> operator()(double x) const { return {re_(x), im_(x)}; }

 private:
  CubicSpline re_, im_;
};

}  // namespace sta
