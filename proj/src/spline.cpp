#include "sta/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace sta {

CubicSpline::CubicSpline(double x0, double dx, std::vector<double> y)
    : x0_(x0), dx_(dx), y_(std::move(y)) {
  const std::size_t n = y_.size();
  if (n < 4) throw std::invalid_argument("CubicSpline: need at least 4 nodes");
  if (dx_ <= 0.0) throw std::invalid_argument("CubicSpline: dx must be positive");

  // Moments m_i = S''(x_i). Interior continuity gives
  //   m_{i-1} + 4 m_i + m_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / dx^2 .
  // The not-a-knot conditions m_0 = 2 m_1 - m_2 and the mirrored one at the
  // far end collapse the first and last interior equations to
  //   m_1 = R_1 / 6,  m_{n-2} = R_{n-2} / 6,
  // leaving a plain tridiagonal system for m_2 .. m_{n-3}.
  m_.assign(n, 0.0);
  const double s = 6.0 / (dx_ * dx_);
  auto rhs = [&](std::size_t i) { return s * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]); };

  m_[1] = rhs(1) / 6.0;
  m_[n - 2] = rhs(n - 2) / 6.0;
  if (n > 4) {
    const std::size_t k = n - 4;  // unknowns m_2 .. m_{n-3}
    std::vector<double> c(k, 0.0), d(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 2;
      double r = rhs(i);
      if (j == 0) r -= m_[1];
      if (j == k - 1) r -= m_[n - 2];
      double piv = 4.0;
      if (j > 0) {
        piv -= c[j - 1];
        r -= d[j - 1];
      }
      c[j] = (j + 1 < k) ? 1.0 / piv : 0.0;
      d[j] = r / piv;
    }
    for (std::size_t j = k; j-- > 0;) {
      m_[j + 2] = d[j] - (j + 1 < k ? c[j] * m_[j + 3] : 0.0);
    }
  }
  m_[0] = 2.0 * m_[1] - m_[2];
  m_[n - 1] = 2.0 * m_[n - 2] - m_[n - 3];
}

double CubicSpline::operator()(double x) const {
  const std::size_t n = y_.size();
  const double f = (x - x0_) / dx_;
  const std::size_t i =
      static_cast<std::size_t>(std::clamp(std::floor(f), 0.0, static_cast<double>(n - 2)));
  const double u = x - (x0_ + static_cast<double>(i) * dx_);
  const double b = (y_[i + 1] - y_[i]) / dx_ - dx_ * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return y_[i] + u * (b + u * (0.5 * m_[i] + u * (m_[i + 1] - m_[i]) / (6.0 * dx_)));
}

double CubicSpline::deriv(double x) const {
  const std::size_t n = y_.size();
  const double f = (x - x0_) / dx_;
  const std::size_t i =
      static_cast<std::size_t>(std::clamp(std::floor(f), 0.0, static_cast<double>(n - 2)));
  const double u = x - (x0_ + static_cast<double>(i) * dx_);
  const double b = (y_[i + 1] - y_[i]) / dx_ - dx_ * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return b + u * (m_[i] + u * 0.5 * (m_[i + 1] - m_[i]) / dx_);
}

CubicSplineC::CubicSplineC(double x0, double dx, const std::vector<std::complex<double>>& y) {
  std::vector<double> re(y.size()), im(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    re[i] = y[i].real();
    im[i] = y[i].imag();
  }
  re_ = CubicSpline(x0, dx, std::move(re));
  im_ = CubicSpline(x0, dx, std::move(im));
}

}  // namespace sta
