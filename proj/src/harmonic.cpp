#include "sta/harmonic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "sta/kernels.hpp"

namespace sta {

namespace {

// FFTW's planner is not thread safe; plan creation and destruction are
// serialized, execution is not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftPair {
  fftw_plan fwd = nullptr, bwd = nullptr;

  FftPair(cplx* data, int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPair() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  FftPair(const FftPair&) = delete;
  FftPair& operator=(const FftPair&) = delete;
};

std::vector<double> wavenumbers(const Grid& g) {
  std::vector<double> k(g.n);
  const double dk = 2.0 * M_PI / (g.dq * g.n);
  for (int i = 0; i < g.n; ++i) k[i] = dk * (i <= g.n / 2 ? i : i - g.n);
  return k;
}

double fd1(const std::function<double(double)>& f, double t, double h) {
  auto d = [&](double hh) { return (f(t + hh) - f(t - hh)) / (2.0 * hh); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

void FrequencyRamp::validate(int samples) const {
  if (!(t_f > 0.0)) throw InvalidRamp("ramp duration must be positive");
  double scale = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = t_f * static_cast<double>(i) / (samples - 1);
    const double w = omega(t);
    if (!(w > 0.0)) throw InvalidRamp("trap frequency must stay positive, got " + std::to_string(w));
    scale = std::max(scale, std::abs(w));
  }
  const double h = 1e-5 * t_f;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * h + (t_f - 4.0 * h) * static_cast<double>(i) / (samples - 1);
    const double d1 = fd1(omega, t, h);
    const double d2 = fd1(omega_dot, t, h);
    if (std::abs(omega_dot(t) - d1) > 1e-8 * std::max(std::abs(d1), scale / t_f))
      throw InvalidRamp("first ramp derivative disagrees with finite differences");
    if (std::abs(omega_ddot(t) - d2) > 1e-8 * std::max(std::abs(d2), scale / (t_f * t_f)))
      throw InvalidRamp("second ramp derivative disagrees with finite differences");
  }
}

FrequencyRamp make_ramp(double omega_start, double omega_end, double t_f) {
  if (!(omega_start > 0.0) || !(omega_end > 0.0))
    throw InvalidRamp("endpoint frequencies must be positive");
  if (!(t_f > 0.0)) throw InvalidRamp("ramp duration must be positive");
  const double d = omega_end - omega_start;
  FrequencyRamp r;
  r.t_f = t_f;
  r.flat_ends = true;
  r.omega = [omega_start, d, t_f](double t) {
    const double u = t / t_f;
    return omega_start + d * u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  };
  r.omega_dot = [d, t_f](double t) {
    const double u = t / t_f;
    return d * 30.0 * u * u * (1.0 + u * (-2.0 + u)) / t_f;
  };
  r.omega_ddot = [d, t_f](double t) {
    const double u = t / t_f;
    return d * 60.0 * u * (1.0 + u * (-3.0 + 2.0 * u)) / (t_f * t_f);
  };
  return r;
}

FrequencyRamp constant_ramp(double omega, double t_f) {
  if (!(omega > 0.0)) throw InvalidRamp("trap frequency must be positive");
  if (!(t_f > 0.0)) throw InvalidRamp("ramp duration must be positive");
  FrequencyRamp r;
  r.t_f = t_f;
  r.flat_ends = true;
  r.omega = [omega](double) { return omega; };
  r.omega_dot = [](double) { return 0.0; };
  r.omega_ddot = [](double) { return 0.0; };
  return r;
}

double omega_prime_sq(const FrequencyRamp& r, double t) {
  const double w = r.omega(t), wd = r.omega_dot(t), wdd = r.omega_ddot(t);
  return w * w - 3.0 * wd * wd / (4.0 * w * w) + wdd / (2.0 * w);
}

std::vector<double> Grid::weights() const {
  std::vector<double> w(static_cast<std::size_t>(n), dq);
  w.front() = 0.5 * dq;
  w.back() = 0.5 * dq;
  return w;
}

Grid symmetric_grid(double half_width, int n) {
  Grid g;
  g.n = n;
  g.q_min = -half_width;
  g.dq = 2.0 * half_width / (n - 1);
  return g;
}

double GridWavefunction::norm() const {
  const std::size_t n = psi.size();
  double s = kernels::sum_abs2(psi.data(), n);
  s -= 0.5 * (std::norm(psi.front()) + std::norm(psi.back()));
  return std::sqrt(s * grid.dq);
}

void GridWavefunction::normalize() { kernels::scale(psi.data(), 1.0 / norm(), psi.size()); }

double GridWavefunction::mean_q() const {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double w = (i == 0 || i == grid.n - 1) ? 0.5 : 1.0;
    const double d = w * std::norm(psi[static_cast<std::size_t>(i)]);
    num += d * grid.q(i);
    den += d;
  }
  return num / den;
}

double GridWavefunction::width() const {
  double num = 0.0, den = 0.0, q1 = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double w = (i == 0 || i == grid.n - 1) ? 0.5 : 1.0;
    const double d = w * std::norm(psi[static_cast<std::size_t>(i)]);
    const double q = grid.q(i);
    q1 += d * q;
    num += d * q * q;
    den += d;
  }
  q1 /= den;
  return std::sqrt(num / den - q1 * q1);
}

double GridWavefunction::edge_ratio() const {
  std::vector<double> d(psi.size());
  kernels::abs2(psi.data(), d.data(), psi.size());
  const double peak = *std::max_element(d.begin(), d.end());
  return std::sqrt(std::max(d.front(), d.back()) / peak);
}

std::vector<double> GridWavefunction::density() const {
  std::vector<double> d(psi.size());
  kernels::abs2(psi.data(), d.data(), psi.size());
  return d;
}

cplx grid_overlap(const GridWavefunction& a, const GridWavefunction& b) {
  if (a.grid.n != b.grid.n || a.grid.dq != b.grid.dq || a.grid.q_min != b.grid.q_min)
    throw GridMismatch("overlap of wavefunctions on different grids");
  cplx s = kernels::cdot(a.psi.data(), b.psi.data(), a.psi.size());
  s -= 0.5 * (std::conj(a.psi.front()) * b.psi.front() + std::conj(a.psi.back()) * b.psi.back());
  return s * a.grid.dq;
}

GridWavefunction ground_state(const Grid& g, double mass, double omega) {
  GridWavefunction w;
  w.grid = g;
  w.mass = mass;
  w.psi.resize(static_cast<std::size_t>(g.n));
  const double a = mass * omega / (2.0 * hbar);
  for (int i = 0; i < g.n; ++i) {
    const double q = g.q(i);
    w.psi[static_cast<std::size_t>(i)] = std::exp(-a * q * q);
  }
  w.normalize();
  return w;
}

ErmakovSolution ermakov_oracle(const FrequencyRamp& ramp, int steps) {
  const double w0 = ramp.omega(0.0);
  const double w0sq = w0 * w0;
  const double h = ramp.t_f / steps;
  std::vector<double> b(static_cast<std::size_t>(steps) + 1), v(static_cast<std::size_t>(steps) + 1);
  b[0] = 1.0;
  v[0] = 0.0;
  auto acc = [&](double t, double bb) {
    const double w = ramp.omega(t);
    return w0sq / (bb * bb * bb) - w * w * bb;
  };
  double bmax = 1.0;
  for (int i = 0; i < steps; ++i) {
    const double t = h * i;
    const double b0 = b[static_cast<std::size_t>(i)], v0 = v[static_cast<std::size_t>(i)];
    const double k1b = v0, k1v = acc(t, b0);
    const double k2b = v0 + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, b0 + 0.5 * h * k1b);
    const double k3b = v0 + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, b0 + 0.5 * h * k2b);
    const double k4b = v0 + h * k3v, k4v = acc(t + h, b0 + h * k3b);
    b[static_cast<std::size_t>(i) + 1] = b0 + h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0;
    v[static_cast<std::size_t>(i) + 1] = v0 + h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0;
    bmax = std::max(bmax, b[static_cast<std::size_t>(i) + 1]);
  }
  ErmakovSolution sol;
  sol.t_f = ramp.t_f;
  sol.b_max = bmax;
  sol.b = CubicSpline(0.0, h, std::move(b));
  sol.b_dot = CubicSpline(0.0, h, std::move(v));
  return sol;
}

double box_half_width(const FrequencyRamp& ramp, double mass, double hbar_, double sigma_factor) {
  const double w0 = ramp.omega(0.0);
  const double sigma0 = std::sqrt(hbar_ / (2.0 * mass * w0));
  double adiab = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = ramp.t_f * i / 100.0;
    adiab = std::max(adiab, std::sqrt(w0 / ramp.omega(t)));
  }
  const double b_est = ermakov_oracle(ramp, 800).b_max;
  return sigma_factor * 1.5 * std::max(b_est, adiab) * sigma0;
}

namespace {

void apply_quadratic_phase(std::vector<cplx>& psi, const std::vector<double>& q2, double c) {
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = c * q2[i];
    psi[i] *= cplx(std::cos(ph), -std::sin(ph));
  }
}

void apply_dilation(std::vector<cplx>& psi, const Grid& g, double lambda) {
  const CubicSplineC interp(g.q_min, g.dq, psi);
  const double scale = std::exp(-0.5 * lambda);
  const double stretch = std::exp(-lambda);
  const double lo = g.q_min, hi = g.q_max();
  for (int i = 0; i < g.n; ++i) {
    const double q = stretch * g.q(i);
    psi[static_cast<std::size_t>(i)] = (q < lo || q > hi) ? cplx(0.0) : scale * interp(q);
  }
}

}  // namespace

TrapRun propagate_grid(TrapKind kind, const FrequencyRamp& ramp, const GridWavefunction& psi0,
                       int steps, int report_points) {
  const Grid& g = psi0.grid;
  const int n = g.n;
  const double m = psi0.mass;
  const double dt = ramp.t_f / steps;

  std::vector<double> q2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q2[static_cast<std::size_t>(i)] = g.q(i) * g.q(i);

  // half kinetic step with the 1/N of the round trip folded in
  std::vector<cplx> kin(static_cast<std::size_t>(n));
  {
    const std::vector<double> k = wavenumbers(g);
    for (int i = 0; i < n; ++i) {
      const double ph = hbar * k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] *
                        dt / (4.0 * m);
      kin[static_cast<std::size_t>(i)] = cplx(std::cos(ph), -std::sin(ph)) / static_cast<double>(n);
    }
  }

  std::vector<cplx> cur = psi0.psi;
  FftPair fft(cur.data(), n);

  TrapRun run;
  const int rp = std::max(2, report_points);
  const int stride = std::max(1, steps / (rp - 1));

  auto record = [&](double t) {
    run.t.push_back(t);
    run.snapshots.push_back({g, m, cur});
  };
  auto check = [&](double t) {
    double s = kernels::sum_abs2(cur.data(), cur.size());
    s -= 0.5 * (std::norm(cur.front()) + std::norm(cur.back()));
    const double drift = std::abs(std::sqrt(s * g.dq) - 1.0);
    run.norm_drift = std::max(run.norm_drift, drift);
    if (drift > 1e-6)
      throw NormDrift("norm drifted by " + std::to_string(drift) + " at t = " + std::to_string(t));
    std::vector<double> d(cur.size());
    kernels::abs2(cur.data(), d.data(), cur.size());
    const double peak = *std::max_element(d.begin(), d.end());
    const double ratio = std::sqrt(std::max(d.front(), d.back()) / peak);
    run.max_edge_ratio = std::max(run.max_edge_ratio, ratio);
    if (ratio > 1e-6)
      throw BoxOverflow("wavefunction reached the box edge at t = " + std::to_string(t));
  };

  record(0.0);
  for (int s = 0; s < steps; ++s) {
    const double t_mid = (s + 0.5) * dt;

    fftw_execute(fft.fwd);
    kernels::cmul(cur.data(), kin.data(), cur.data(), cur.size());
    fftw_execute(fft.bwd);

    switch (kind) {
      case TrapKind::reference: {
        const double w = ramp.omega(t_mid);
        apply_quadratic_phase(cur, q2, m * w * w * dt / (2.0 * hbar));
        break;
      }
      case TrapKind::modified: {
        apply_quadratic_phase(cur, q2, m * omega_prime_sq(ramp, t_mid) * dt / (2.0 * hbar));
        break;
      }
      case TrapKind::cd: {
        const double w = ramp.omega(t_mid);
        const double half = m * w * w * dt / (4.0 * hbar);
        apply_quadratic_phase(cur, q2, half);
        apply_dilation(cur, g, -ramp.omega_dot(t_mid) * dt / (2.0 * w));
        apply_quadratic_phase(cur, q2, half);
        break;
      }
    }

    fftw_execute(fft.fwd);
    kernels::cmul(cur.data(), kin.data(), cur.data(), cur.size());
    fftw_execute(fft.bwd);

    check((s + 1) * dt);
    if ((s + 1) % stride == 0 || s + 1 == steps) record((s + 1) * dt);
  }
  return run;
}

GridWavefunction u_q_map(const GridWavefunction& psi, const FrequencyRamp& ramp, double t,
                         int sign) {
  GridWavefunction out = psi;
  const double c = sign * psi.mass * ramp.omega_dot(t) / (4.0 * hbar * ramp.omega(t));
  for (int i = 0; i < out.grid.n; ++i) {
    const double q = out.grid.q(i);
    const double ph = c * q * q;
    out.psi[static_cast<std::size_t>(i)] *= cplx(std::cos(ph), std::sin(ph));
  }
  return out;
}

ExcitationReport final_excitation(const GridWavefunction& psi, double omega_target, int n_ho) {
  const Grid& g = psi.grid;
  const int n = g.n;
  const double m = psi.mass;
  const std::vector<double> w = g.weights();

  // Hermite functions by the normalized two-term recurrence
  std::vector<double> xi(static_cast<std::size_t>(n)), prev(static_cast<std::size_t>(n)),
      curh(static_cast<std::size_t>(n));
  const double a = std::sqrt(m * omega_target / hbar);
  const double c0 = std::pow(m * omega_target / (M_PI * hbar), 0.25);
  for (int i = 0; i < n; ++i) {
    const double x = a * g.q(i);
    xi[static_cast<std::size_t>(i)] = x;
    curh[static_cast<std::size_t>(i)] = c0 * std::exp(-0.5 * x * x);
  }

  ExcitationReport rep;
  rep.populations.resize(static_cast<std::size_t>(n_ho));
  for (int k = 0; k < n_ho; ++k) {
    cplx c(0.0);
    for (int i = 0; i < n; ++i)
      c += w[static_cast<std::size_t>(i)] * curh[static_cast<std::size_t>(i)] *
           psi.psi[static_cast<std::size_t>(i)];
    rep.populations[static_cast<std::size_t>(k)] = std::norm(c);
    // advance phi_{k} -> phi_{k+1}
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      const double next = std::sqrt(2.0 / (k + 1)) * xi[j] * curh[j] -
                          (k > 0 ? std::sqrt(static_cast<double>(k) / (k + 1)) * prev[j] : 0.0);
      prev[j] = curh[j];
      curh[j] = next;
    }
  }
  for (double p : rep.populations) rep.captured += p;

  // grid <H>: spectral kinetic part plus the target potential
  {
    std::vector<cplx> hat = psi.psi;
    FftPair fft(hat.data(), n);
    fftw_execute(fft.fwd);
    const std::vector<double> kv = wavenumbers(g);
    double t_kin = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      t_kin += hbar * hbar * kv[j] * kv[j] / (2.0 * m) * std::norm(hat[j]);
    }
    t_kin *= g.dq / n;
    double t_pot = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      const double q = g.q(i);
      t_pot += w[j] * 0.5 * m * omega_target * omega_target * q * q * std::norm(psi.psi[j]);
    }
    rep.mean_energy = t_kin + t_pot;
  }

  if (rep.captured < 1.0 - 1e-6)
    throw IncompleteBasis("basis of " + std::to_string(n_ho) + " states captures only " +
                          std::to_string(rep.captured) + " of the state");
  return rep;
}

double reference_ground_population(const ErmakovSolution& erk, const FrequencyRamp& ramp) {
  const double b = erk.b(erk.t_f), bd = erk.b_dot(erk.t_f);
  const double w0 = ramp.omega(0.0), wf = ramp.omega(ramp.t_f);
  const double re = b * wf + w0 / b;
  return 2.0 * std::sqrt(w0 * wf) / std::sqrt(re * re + bd * bd);
}

}  // namespace sta
