#include "sta/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sta {

namespace {

std::vector<double> component(const std::vector<Coords>& v, double Coords::*m) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].*m;
  return out;
}

// 4th-order first-derivative stencils on a uniform grid; one-sided rows for
// the first and last two nodes.
double d1_at(const std::vector<double>& y, std::size_t i, double dt) {
  const std::size_t n = y.size();
  const double inv = 1.0 / (12.0 * dt);
  if (i >= 2 && i + 2 < n)
    return (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) * inv;
  if (i == 0)
    return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) * inv;
  if (i == 1)
    return (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) * inv;
  if (i == n - 2)
    return (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]) * inv;
  // i == n - 1
  return (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) *
         inv;
}

State2 column(const Mat2& m, int j) {
  return j == 0 ? State2{m.a, m.c} : State2{m.b, m.d};
}

void set_column(Mat2& m, int j, const State2& v) {
  if (j == 0) {
    m.a = v.c1;
    m.c = v.c2;
  } else {
    m.b = v.c1;
    m.d = v.c2;
  }
}

// Residual connection Im<v_j|d v_j/dt> per column, by 4th-order differences
// of the basis series.
void connection(const std::vector<Mat2>& a, double dt, std::vector<double>& c1,
                std::vector<double>& c2) {
  const std::size_t n = a.size();
  c1.resize(n);
  c2.resize(n);
  auto conn_col = [&](int j, std::vector<double>& out) {
    std::vector<cplx> top(n), bot(n);
    for (std::size_t i = 0; i < n; ++i) {
      const State2 v = column(a[i], j);
      top[i] = v.c1;
      bot[i] = v.c2;
    }
    std::vector<double> tr(n), ti(n), br(n), bi(n);
    for (std::size_t i = 0; i < n; ++i) {
      tr[i] = top[i].real();
      ti[i] = top[i].imag();
      br[i] = bot[i].real();
      bi[i] = bot[i].imag();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const cplx dtop(d1_at(tr, i, dt), d1_at(ti, i, dt));
      const cplx dbot(d1_at(br, i, dt), d1_at(bi, i, dt));
      out[i] = (std::conj(top[i]) * dtop + std::conj(bot[i]) * dbot).imag();
    }
  };
  conn_col(0, c1);
  conn_col(1, c2);
}

// cumulative trapezoid of a sampled function, zero at the first node
std::vector<double> cumtrapz(const std::vector<double>& y, double dt) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t i = 1; i < y.size(); ++i)
    out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
  return out;
}

}  // namespace

CoordTrack::CoordTrack(double t0, double dt, std::vector<Coords> v)
    : t0_(t0), dt_(dt), v_(std::move(v)) {
  sx_ = CubicSpline(t0_, dt_, component(v_, &Coords::x));
  sy_ = CubicSpline(t0_, dt_, component(v_, &Coords::y));
  sz_ = CubicSpline(t0_, dt_, component(v_, &Coords::z));
}

std::vector<double> fd_derivative(const std::vector<double>& y, double dt) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = d1_at(y, i, dt);
  return out;
}

std::vector<Coords> generator_from_basis(const std::vector<Mat2>& a, double dt) {
  const std::size_t n = a.size();
  // differentiate the 8 real component series, then form i hbar Adot Adj(A)
  std::vector<double> comp[8];
  for (auto& v : comp) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    comp[0][i] = a[i].a.real();
    comp[1][i] = a[i].a.imag();
    comp[2][i] = a[i].b.real();
    comp[3][i] = a[i].b.imag();
    comp[4][i] = a[i].c.real();
    comp[5][i] = a[i].c.imag();
    comp[6][i] = a[i].d.real();
    comp[7][i] = a[i].d.imag();
  }
  std::vector<Coords> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 adot{cplx(d1_at(comp[0], i, dt), d1_at(comp[1], i, dt)),
                    cplx(d1_at(comp[2], i, dt), d1_at(comp[3], i, dt)),
                    cplx(d1_at(comp[4], i, dt), d1_at(comp[5], i, dt)),
                    cplx(d1_at(comp[6], i, dt), d1_at(comp[7], i, dt))};
    out[i] = to_coords(cplx(0.0, hbar) * (adot * a[i].dagger()));
  }
  return out;
}

Mat2 AdiabaticFrame::basis_at(double t) const {
  const Mat2 raw{cplx(basis_splines[0](t), basis_splines[1](t)),
                 cplx(basis_splines[2](t), basis_splines[3](t)),
                 cplx(basis_splines[4](t), basis_splines[5](t)),
                 cplx(basis_splines[6](t), basis_splines[7](t))};
  // Gram-Schmidt on the two columns restores unitarity lost to interpolation
  State2 v1 = column(raw, 0), v2 = column(raw, 1);
  v1 = v1.normalized();
  const cplx ov = dot(v1, v2);
  v2 = (v2 - ov * v1).normalized();
  Mat2 out;
  set_column(out, 0, v1);
  set_column(out, 1, v2);
  return out;
}

AdiabaticFrame build_frame(const DriveSchedule& s, int grid_points) {
  if (grid_points < 5) throw GridTooCoarse("build_frame: need at least 5 grid points");
  AdiabaticFrame f;
  f.n = grid_points;
  f.t0 = 0.0;
  f.dt = s.duration() / static_cast<double>(grid_points - 1);
  const double tol = 1e-12 * s.scale();

  f.h.resize(f.n);
  f.basis.resize(f.n);
  f.e1.resize(f.n);

  State2 prev1, prev2;
  for (int i = 0; i < f.n; ++i) {
    const double t = f.grid_time(i);
    f.h[i] = s.coords(t);
    const Eigensystem es = eigensystem(f.h[i], tol);
    State2 v1, v2;
    double ev1;
    if (i == 0) {
      // label by maximal overlap with the bare basis
      const bool up_first = std::abs(es.up.c1) >= std::abs(es.dn.c1);
      v1 = up_first ? es.up : es.dn;
      v2 = up_first ? es.dn : es.up;
      ev1 = up_first ? es.value_up : -es.value_up;
    } else {
      const double o_up = std::abs(dot(prev1, es.up));
      const double o_dn = std::abs(dot(prev1, es.dn));
      const bool up_first = o_up >= o_dn;
      v1 = up_first ? es.up : es.dn;
      v2 = up_first ? es.dn : es.up;
      ev1 = up_first ? es.value_up : -es.value_up;
      const double o1 = std::max(o_up, o_dn);
      const double o2 = std::abs(dot(prev2, v2));
      if (o1 < 0.99 || o2 < 0.99) {
        std::ostringstream os;
        os << "build_frame: eigenvector overlap " << std::min(o1, o2) << " between nodes "
           << (i - 1) << " and " << i << "; refine the time grid";
        throw GridTooCoarse(os.str());
      }
      // parallel transport: make the step overlap real positive
      const cplx p1 = dot(prev1, v1), p2 = dot(prev2, v2);
      v1 = (std::conj(p1) / std::abs(p1)) * v1;
      v2 = (std::conj(p2) / std::abs(p2)) * v2;
    }
    set_column(f.basis[i], 0, v1);
    set_column(f.basis[i], 1, v2);
    f.e1[i] = ev1;
    prev1 = v1;
    prev2 = v2;
  }

  // Gauge polish: cancel the residual finite-difference connection so
  // <n|ndot> = 0 holds to near machine precision even for complex tracks.
  std::vector<double> c1, c2;
  for (int pass = 0; pass < 8; ++pass) {
    connection(f.basis, f.dt, c1, c2);
    double m = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i)
      m = std::max(m, std::max(std::abs(c1[i]), std::abs(c2[i])));
    f.max_connection = m;
    if (m < 1e-12) break;
    const std::vector<double> p1 = cumtrapz(c1, f.dt), p2 = cumtrapz(c2, f.dt);
    for (int i = 0; i < f.n; ++i) {
      const cplx g1(std::cos(p1[i]), -std::sin(p1[i]));
      const cplx g2(std::cos(p2[i]), -std::sin(p2[i]));
      set_column(f.basis[i], 0, g1 * column(f.basis[i], 0));
      set_column(f.basis[i], 1, g2 * column(f.basis[i], 1));
    }
  }

  f.initial_overlap_deficit = 1.0 - std::norm(f.basis[0].a);

  // K = i hbar Adot Adj(A). In this gauge it reduces to the drive-axis form
  // (hbar/2) nhat x nhatdot = (hbar/2) (h x hdot) / r^2, so the nodes come
  // from the schedule's derivative interface; differencing the basis instead
  // would stack two finite-difference passes by level 1 and leave a roundoff
  // floor of order eps/dt^2. generator_from_basis remains the cross route.
  f.k.resize(f.n);
  for (int i = 0; i < f.n; ++i) {
    const Coords& h = f.h[i];
    const Coords hd = s.coords_dot(f.grid_time(i));
    const double g = 0.5 * hbar / (h.x * h.x + h.y * h.y + h.z * h.z);
    f.k[i] = {g * (h.y * hd.z - h.z * hd.y), g * (h.z * hd.x - h.x * hd.z),
              g * (h.x * hd.y - h.y * hd.x)};
  }
  f.h_next.resize(f.n);
  for (int i = 0; i < f.n; ++i) {
    const Mat2 hm = to_matrix(f.h[i]) - to_matrix(f.k[i]);
    f.h_next[i] = to_coords(f.basis[i].dagger() * hm * f.basis[i]);
  }

  // interpolators
  f.basis_splines.resize(8);
  std::vector<double> tmp(f.n);
  auto fill = [&](int idx, auto getter) {
    for (int i = 0; i < f.n; ++i) tmp[i] = getter(f.basis[i]);
    f.basis_splines[idx] = CubicSpline(f.t0, f.dt, tmp);
  };
  fill(0, [](const Mat2& m) { return m.a.real(); });
  fill(1, [](const Mat2& m) { return m.a.imag(); });
  fill(2, [](const Mat2& m) { return m.b.real(); });
  fill(3, [](const Mat2& m) { return m.b.imag(); });
  fill(4, [](const Mat2& m) { return m.c.real(); });
  fill(5, [](const Mat2& m) { return m.c.imag(); });
  fill(6, [](const Mat2& m) { return m.d.real(); });
  fill(7, [](const Mat2& m) { return m.d.imag(); });
  f.k_track_ = CoordTrack(f.t0, f.dt, f.k);
  f.h_track_ = CoordTrack(f.t0, f.dt, f.h);
  f.h_next_track_ = CoordTrack(f.t0, f.dt, f.h_next);
  return f;
}

SampledSchedule::SampledSchedule(double t0, double dt, const std::vector<Coords>& values)
    : dur_(dt * static_cast<double>(values.size() - 1)) {
  val_ = CoordTrack(t0, dt, values);
  const std::vector<double> x = component(values, &Coords::x);
  const std::vector<double> y = component(values, &Coords::y);
  const std::vector<double> z = component(values, &Coords::z);
  const std::vector<double> dx = fd_derivative(x, dt);
  const std::vector<double> dy = fd_derivative(y, dt);
  const std::vector<double> dz = fd_derivative(z, dt);
  std::vector<Coords> d(values.size()), dd(values.size());
  const std::vector<double> ddx = fd_derivative(dx, dt);
  const std::vector<double> ddy = fd_derivative(dy, dt);
  const std::vector<double> ddz = fd_derivative(dz, dt);
  for (std::size_t i = 0; i < values.size(); ++i) {
    d[i] = {dx[i], dy[i], dz[i]};
    dd[i] = {ddx[i], ddy[i], ddz[i]};
  }
  dot_ = CoordTrack(t0, dt, d);
  ddot_ = CoordTrack(t0, dt, dd);
}

SampledSchedule iterate(const AdiabaticFrame& f) {
  return SampledSchedule(f.t0, f.dt, f.h_next);
}

CoordTrack cd_term_0(const AdiabaticFrame& f0) { return CoordTrack(f0.t0, f0.dt, f0.k); }

CoordTrack cd_term_1(const AdiabaticFrame& f0, const AdiabaticFrame& f1) {
  if (f0.n != f1.n || f0.dt != f1.dt || f0.t0 != f1.t0)
    throw GridMismatch("cd_term_1: frames were built on different grids");
  std::vector<Coords> v(f0.n);
  for (int i = 0; i < f0.n; ++i)
    v[i] = to_coords(f0.basis[i] * to_matrix(f1.k[i]) * f0.basis[i].dagger());
  return CoordTrack(f0.t0, f0.dt, v);
}

CoordTrack cd_term_01(const AdiabaticFrame& f0, const AdiabaticFrame& f1) {
  const CoordTrack t1 = cd_term_1(f0, f1);
  std::vector<Coords> v(f0.n);
  for (int i = 0; i < f0.n; ++i) v[i] = f0.k[i] + t1.values()[i];
  return CoordTrack(f0.t0, f0.dt, v);
}

}  // namespace sta
