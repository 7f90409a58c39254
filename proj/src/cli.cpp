#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "sta/kernels.hpp"
#include "sta/output.hpp"
#include "sta/scenarios.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace sta {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

void check_protocols(const std::vector<std::string>& chosen, const std::vector<std::string>& known,
                     const std::string& what) {
  if (chosen.empty()) throw std::runtime_error(what + " list is empty");
  for (const auto& p : chosen) {
    if (std::find(known.begin(), known.end(), p) == known.end() &&
        !(what == "protocol" && p == "modified-frequency"))
      throw std::runtime_error("unknown " + what + " '" + p + "', expected one of " +
                               join_list(known));
  }
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config files. CLI11 only processes set_config on the root
// app, so subcommand configs are applied by hand after parsing: every key
// fills in its option unless the command line already set it.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    CLI::Option* op = key == "config" ? nullptr : cmd->get_option_no_throw("--" + key);
    if (op == nullptr)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                               "'");
    if (op->count() > 0) continue;
    op->add_result(trim(stripped.substr(eq + 1)));
    op->run_callback();
  }
}

// ---------------------------------------------------------------- two level

struct TwoLevelOptions {
  double alpha = -10.0, x0 = 1.0, T = 2.0;
  double tolerance = 1e-10;
  int report_points = 2001, grid_points = 4001;
  std::string protocols;
  std::string out;
  std::string config;
};

struct SweepFlagHandles {
  CLI::Option* alpha = nullptr;
  CLI::Option* T = nullptr;
};

SweepFlagHandles add_sweep_flags(CLI::App* cmd, TwoLevelOptions& o) {
  cmd->add_option("--config", o.config, "flat key=value config file; flags override it");
  SweepFlagHandles h;
  h.alpha = cmd->add_option("--alpha", o.alpha,
                            "detuning slope, Z(t) = alpha (t - T/2) (default -10)");
  cmd->add_option("--x0", o.x0, "constant coupling X (default 1)");
  h.T = cmd->add_option("--T", o.T, "sweep duration (default 2)");
  cmd->add_option("--tolerance", o.tolerance, "local error bound per propagator step");
  cmd->add_option("--report-points", o.report_points, "output grid size (default 2001)");
  cmd->add_option("--grid-points", o.grid_points, "eigenframe grid size (default 4001)");
  cmd->add_option("--protocols", o.protocols, "comma list of protocols to run");
  cmd->add_option("--out", o.out, "output directory");
  return h;
}

// One of alpha, T fixes the other through the quasi-adiabaticity scale
// |alpha| T = 20 used throughout the default runs.
void resolve_sweep(TwoLevelOptions& o, const SweepFlagHandles& h) {
  const bool has_alpha = h.alpha->count() > 0, has_T = h.T->count() > 0;
  if (has_alpha && !has_T) o.T = 20.0 / std::abs(o.alpha);
  if (has_T && !has_alpha) o.alpha = -20.0 / o.T;
}

ordered_json sweep_config_json(const TwoLevelOptions& o, const std::vector<std::string>& protos) {
  return ordered_json{{"alpha", o.alpha},
                      {"x0", o.x0},
                      {"T", o.T},
                      {"tolerance", o.tolerance},
                      {"report_points", o.report_points},
                      {"grid_points", o.grid_points},
                      {"protocols", join_list(protos)},
                      {"out", o.out}};
}

int run_two_level_scenario(const TwoLevelOptions& o) {
  const auto protos = split_list(o.protocols);
  check_protocols(protos, two_level_protocols, "protocol");
  fs::create_directories(o.out);

  const LzWorkspace ws = make_lz_workspace(o.alpha, o.x0, o.T, o.grid_points);
  std::vector<std::future<TwoLevelProtocolRun>> futs;
  futs.reserve(protos.size());
  for (const auto& p : protos)
    futs.push_back(std::async(std::launch::async, [&ws, &o, p] {
      return run_lz_protocol(ws, p, o.tolerance, o.report_points);
    }));
  std::vector<TwoLevelProtocolRun> runs;
  runs.reserve(futs.size());
  for (auto& f : futs) runs.push_back(f.get());

  std::vector<PlotSeries> pop_series, drive_series;
  ordered_json j;
  j["scenario"] = "lz-inversion";
  j["config"] = sweep_config_json(o, protos);
  j["adiabatic_target_p1"] = runs.front().adiabatic_target_p1;
  j["protocols"] = ordered_json::object();
  for (const auto& r : runs) {
    std::vector<std::vector<double>> hrows, prows;
    hrows.reserve(r.t.size());
    prows.reserve(r.t.size());
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      hrows.push_back({r.t[i], r.drive[i].x, r.drive[i].y, r.drive[i].z});
      prows.push_back({r.t[i], r.pops[i][0], r.pops[i][1], r.pops[i][2]});
    }
    write_csv(fs::path(o.out) / (r.protocol + "_hamiltonian.csv"), {"t", "X", "Y", "Z"}, hrows);
    write_csv(fs::path(o.out) / (r.protocol + "_populations.csv"), {"t", "P1", "P2", "eigen_P1"},
              prows);
    PlotSeries ps{r.protocol, r.t, {}};
    for (const auto& p : r.pops) ps.y.push_back(p[0]);
    pop_series.push_back(std::move(ps));
    PlotSeries ds{r.protocol, r.t, {}};
    for (const auto& d : r.drive) ds.y.push_back(d.x);
    drive_series.push_back(std::move(ds));
    j["protocols"][r.protocol] = ordered_json{{"final_p1", r.pops.back()[0]},
                                              {"final_p2", r.pops.back()[1]},
                                              {"final_eigen_p1", r.pops.back()[2]},
                                              {"fidelity", r.fidelity},
                                              {"norm_drift", r.norm_drift},
                                              {"steps", r.steps}};
    std::printf("  %-9s final P1 %.9g  fidelity %.9g\n", r.protocol.c_str(), r.pops.back()[0],
                r.fidelity);
  }
  write_svg_plot(fs::path(o.out) / "populations.svg", "level-1 population", "t", "P1", pop_series);
  write_svg_plot(fs::path(o.out) / "drive_x.svg", "drive X component", "t", "X", drive_series);
  write_json(fs::path(o.out) / "summary.json", j);
  std::printf("wrote %s\n", o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------- lab frame

int run_atom_scenario(const TwoLevelOptions& o, double omega0) {
  const auto protos = split_list(o.protocols);
  check_protocols(protos, atom_variants, "variant");
  fs::create_directories(o.out);

  const LzWorkspace ws = make_lz_workspace(o.alpha, o.x0, o.T, o.grid_points);
  std::vector<std::future<AtomVariantRun>> futs;
  futs.reserve(protos.size());
  for (const auto& p : protos)
    futs.push_back(std::async(std::launch::async, [&ws, &o, omega0, p] {
      return run_atom_variant(ws, p, omega0, o.tolerance, o.report_points);
    }));
  std::vector<AtomVariantRun> runs;
  runs.reserve(futs.size());
  for (auto& f : futs) runs.push_back(f.get());

  std::vector<PlotSeries> pop_series;
  ordered_json j;
  j["scenario"] = "atom-lab-frame";
  j["config"] = sweep_config_json(o, protos);
  j["config"]["omega0"] = omega0;
  j["variants"] = ordered_json::object();
  for (const auto& r : runs) {
    std::vector<std::vector<double>> hrows, prows, rrows;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      hrows.push_back({r.t[i], r.drive[i].x, r.drive[i].y, r.drive[i].z});
      prows.push_back({r.t[i], r.pops[i][0], r.pops[i][1], r.pops[i][2]});
      rrows.push_back({r.t[i], r.rotating_pops[i][0], r.rotating_pops[i][1], r.rotating_pops[i][2]});
    }
    write_csv(fs::path(o.out) / (r.variant + "_hamiltonian.csv"), {"t", "X", "Y", "Z"}, hrows);
    write_csv(fs::path(o.out) / (r.variant + "_populations.csv"), {"t", "P1", "P2", "eigen_P1"},
              prows);
    write_csv(fs::path(o.out) / (r.variant + "_rotating_populations.csv"),
              {"t", "P1", "P2", "eigen_P1"}, rrows);
    PlotSeries ps{r.variant, r.t, {}};
    for (const auto& p : r.pops) ps.y.push_back(p[0]);
    pop_series.push_back(std::move(ps));
    j["variants"][r.variant] = ordered_json{{"final_p1", r.pops.back()[0]},
                                            {"final_p2", r.pops.back()[1]},
                                            {"rotating_fidelity", r.rotating_fidelity},
                                            {"max_population_diff", r.max_population_diff},
                                            {"norm_drift", r.norm_drift},
                                            {"steps", r.steps}};
    std::printf("  %-12s final P1 %.9g  max pop diff vs rotating %.3g\n", r.variant.c_str(),
                r.pops.back()[0], r.max_population_diff);
  }
  write_svg_plot(fs::path(o.out) / "populations.svg", "level-1 population (lab frame)", "t", "P1",
                 pop_series);
  write_json(fs::path(o.out) / "summary.json", j);
  std::printf("wrote %s\n", o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------- trap

struct TrapOptions {
  double omega_start = 1.0, omega_end = 0.1, t_f = 1.0, mass = 1.0;
  int steps = 4000, grid_points = 2048, report_points = 41, n_ho = 32;
  std::string protocols = "reference,cd,modified";
  std::string out = "out/trap-expansion";
  std::string config;
};

int run_trap_scenario(const TrapOptions& o) {
  const auto protos = split_list(o.protocols);
  check_protocols(protos, trap_protocols, "protocol");
  fs::create_directories(o.out);

  const TrapWorkspace ws =
      make_trap_workspace(o.omega_start, o.omega_end, o.t_f, o.mass, o.grid_points);
  std::vector<std::future<TrapProtocolRun>> futs;
  futs.reserve(protos.size());
  for (const auto& p : protos)
    futs.push_back(std::async(std::launch::async, [&ws, &o, p] {
      return run_trap_protocol(ws, p, o.steps, o.report_points, o.n_ho);
    }));
  std::vector<TrapProtocolRun> runs;
  runs.reserve(futs.size());
  for (auto& f : futs) runs.push_back(f.get());

  const double sigma0 = std::sqrt(hbar / (2.0 * o.mass * o.omega_start));
  std::vector<PlotSeries> width_series, density_series;
  ordered_json j;
  j["scenario"] = "trap-expansion";
  j["config"] = ordered_json{{"omega_start", o.omega_start},
                             {"omega_end", o.omega_end},
                             {"tf", o.t_f},
                             {"mass", o.mass},
                             {"steps", o.steps},
                             {"grid_points", o.grid_points},
                             {"report_points", o.report_points},
                             {"n_ho", o.n_ho},
                             {"protocols", join_list(protos)},
                             {"out", o.out},
                             {"kernel_backend", kernels::backend().name}};
  j["box_half_width"] = -ws.grid.q_min;
  j["analytic_reference_p0"] = reference_ground_population(ws.oracle, ws.ramp);
  j["protocols"] = ordered_json::object();
  for (const auto& r : runs) {
    std::vector<std::vector<double>> wrows, frows;
    for (std::size_t i = 0; i < r.run.t.size(); ++i)
      wrows.push_back({r.run.t[i], r.width[i], ws.oracle.b(r.run.t[i]) * sigma0});
    const GridWavefunction& fin = r.run.snapshots.back();
    const std::vector<double> dens = fin.density();
    for (int i = 0; i < fin.grid.n; ++i)
      frows.push_back({fin.grid.q(i), fin.psi[static_cast<std::size_t>(i)].real(),
                       fin.psi[static_cast<std::size_t>(i)].imag(),
                       dens[static_cast<std::size_t>(i)]});
    write_csv(fs::path(o.out) / (r.protocol + "_width.csv"), {"t", "width", "ermakov_width"},
              wrows);
    write_csv(fs::path(o.out) / (r.protocol + "_final_state.csv"),
              {"q", "re_psi", "im_psi", "density"}, frows);
    width_series.push_back({r.protocol, r.run.t, r.width});
    {
      PlotSeries ds{r.protocol, {}, {}};
      for (int i = 0; i < fin.grid.n; ++i) {
        ds.x.push_back(fin.grid.q(i));
        ds.y.push_back(dens[static_cast<std::size_t>(i)]);
      }
      density_series.push_back(std::move(ds));
    }
    j["protocols"][r.protocol] = ordered_json{{"p0", r.excitation.populations.front()},
                                              {"captured", r.excitation.captured},
                                              {"mean_energy", r.excitation.mean_energy},
                                              {"final_width", r.width.back()},
                                              {"norm_drift", r.run.norm_drift},
                                              {"max_edge_ratio", r.run.max_edge_ratio},
                                              {"n_ho_used", r.n_ho_used}};
    std::printf("  %-9s P0 %.9g  <H> %.9g  norm drift %.3g\n", r.protocol.c_str(),
                r.excitation.populations.front(), r.excitation.mean_energy, r.run.norm_drift);
  }

  // Ermakov oracle width as its own curve
  {
    PlotSeries es{"ermakov", runs.front().run.t, {}};
    for (double t : es.x) es.y.push_back(ws.oracle.b(t) * sigma0);
    width_series.push_back(std::move(es));
  }

  const TrapProtocolRun* cd = nullptr;
  const TrapProtocolRun* mod = nullptr;
  for (const auto& r : runs) {
    if (r.protocol == "cd") cd = &r;
    if (r.protocol == "modified" || r.protocol == "modified-frequency") mod = &r;
  }
  if (cd && mod) {
    double max_l1 = 0.0;
    const std::vector<double> w = ws.grid.weights();
    for (std::size_t k = 0; k < cd->run.snapshots.size(); ++k) {
      const auto da = cd->run.snapshots[k].density();
      const auto db = mod->run.snapshots[k].density();
      double l1 = 0.0;
      for (std::size_t i = 0; i < da.size(); ++i) l1 += w[i] * std::abs(da[i] - db[i]);
      max_l1 = std::max(max_l1, l1);
    }
    const cplx ov = grid_overlap(cd->run.snapshots.back(), mod->run.snapshots.back());
    j["cd_vs_modified"] = ordered_json{{"max_l1_density", max_l1},
                                       {"final_overlap_deviation", std::abs(ov - cplx(1.0))},
                                       {"final_overlap_phase", std::arg(ov)}};
    std::printf("  cd vs modified: max L1 density %.3g, final overlap deviation %.3g\n", max_l1,
                std::abs(ov - cplx(1.0)));
  }

  write_svg_plot(fs::path(o.out) / "width.svg", "density width", "t", "width", width_series);
  write_svg_plot(fs::path(o.out) / "final_density.svg", "final density", "q", "|psi|^2",
                 density_series);
  write_json(fs::path(o.out) / "summary.json", j);
  std::printf("wrote %s\n", o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------- compare

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable tab;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      tab.columns.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  tab.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.c_str();
    char* end = nullptr;
    while (true) {
      row.push_back(std::strtod(p, &end));
      if (p == end) throw std::runtime_error("bad number in " + path.string());
      p = end;
      if (*p == ',') {
        ++p;
      } else {
        break;
      }
    }
    if (row.size() != tab.columns.size())
      throw std::runtime_error("ragged row in " + path.string());
    tab.rows.push_back(std::move(row));
  }
  return tab;
}

struct CompareOptions {
  std::string file_a, file_b, column;
  double tolerance = 1e-6;
};

int run_compare(const CompareOptions& o) {
  const CsvTable a = read_csv_table(o.file_a);
  const CsvTable b = read_csv_table(o.file_b);
  auto col_index = [&](const CsvTable& t, const std::string& file) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), o.column);
    if (it == t.columns.end())
      throw std::runtime_error("no column '" + o.column + "' in " + file + " (has " +
                               join_list(t.columns) + ")");
    return static_cast<std::size_t>(it - t.columns.begin());
  };
  const std::size_t ia = col_index(a, o.file_a), ib = col_index(b, o.file_b);
  if (a.rows.size() != b.rows.size())
    throw GridMismatch("row counts differ: " + std::to_string(a.rows.size()) + " vs " +
                       std::to_string(b.rows.size()));
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i][0] != b.rows[i][0])
      throw GridMismatch("abscissa grids differ at row " + std::to_string(i + 1));

  double max_abs = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double d = std::abs(a.rows[i][ia] - b.rows[i][ib]);
    max_abs = std::max(max_abs, d);
    if (i + 1 < a.rows.size()) {
      const double dn = std::abs(a.rows[i + 1][ia] - b.rows[i + 1][ib]);
      l1 += 0.5 * (d + dn) * (a.rows[i + 1][0] - a.rows[i][0]);
    }
  }
  std::printf("rows:         %zu\n", a.rows.size());
  std::printf("column:       %s\n", o.column.c_str());
  std::printf("max_abs_diff: %.17g\n", max_abs);
  std::printf("l1_diff:      %.17g\n", l1);
  std::printf("tolerance:    %.17g\n", o.tolerance);
  const bool ok = max_abs <= o.tolerance;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"shortcut-to-adiabaticity driving protocols: build, propagate, compare"};
  app.require_subcommand(1);

  TwoLevelOptions lz;
  lz.protocols = join_list(two_level_protocols);
  lz.out = "out/lz-inversion";
  auto* c_lz = app.add_subcommand("lz-inversion",
                                  "two-level sweep with counterdiabatic and rotated variants");
  const SweepFlagHandles lz_h = add_sweep_flags(c_lz, lz);

  TwoLevelOptions atom;
  atom.tolerance = 1e-12;  // fast field oscillations need tighter steps
  atom.protocols = join_list(atom_variants);
  atom.out = "out/atom-lab-frame";
  double omega0 = 100.0;
  auto* c_atom = app.add_subcommand("atom-lab-frame",
                                    "oscillating-field realizations checked against their "
                                    "rotating-frame counterparts");
  const SweepFlagHandles atom_h = add_sweep_flags(c_atom, atom);
  c_atom->add_option("--omega0", omega0, "atomic transition frequency (default 100)");

  TrapOptions trap;
  auto* c_trap = app.add_subcommand("trap-expansion",
                                    "harmonic trap expansion on a grid: bare, counterdiabatic "
                                    "and modified-frequency runs");
  c_trap->add_option("--config", trap.config, "flat key=value config file; flags override it");
  c_trap->add_option("--omega-start", trap.omega_start, "initial trap frequency (default 1)");
  c_trap->add_option("--omega-end", trap.omega_end, "final trap frequency (default 0.1)");
  c_trap->add_option("--tf", trap.t_f, "ramp duration (default 1)");
  c_trap->add_option("--mass", trap.mass, "particle mass (default 1)");
  c_trap->add_option("--steps", trap.steps, "time steps (default 4000)");
  c_trap->add_option("--grid-points", trap.grid_points, "spatial grid size (default 2048)");
  c_trap->add_option("--report-points", trap.report_points, "snapshots kept (default 41)");
  c_trap->add_option("--n-ho", trap.n_ho,
                     "projection basis size (default 32; reference runs use at least 96)");
  c_trap->add_option("--protocols", trap.protocols, "comma list of protocols to run");
  c_trap->add_option("--out", trap.out, "output directory");

  CompareOptions cmp;
  auto* c_cmp = app.add_subcommand("compare", "column-wise comparison of two CSV outputs");
  c_cmp->add_option("fileA", cmp.file_a, "first CSV")->required();
  c_cmp->add_option("fileB", cmp.file_b, "second CSV")->required();
  c_cmp->add_option("--column", cmp.column, "column name to compare")->required();
  c_cmp->add_option("--tolerance", cmp.tolerance, "max-abs tolerance (default 1e-6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (c_lz->parsed()) {
      if (!lz.config.empty()) apply_config(c_lz, lz.config);
      resolve_sweep(lz, lz_h);
      std::printf("lz-inversion: alpha=%g x0=%g T=%g\n", lz.alpha, lz.x0, lz.T);
      return run_two_level_scenario(lz);
    }
    if (c_atom->parsed()) {
      if (!atom.config.empty()) apply_config(c_atom, atom.config);
      resolve_sweep(atom, atom_h);
      std::printf("atom-lab-frame: alpha=%g x0=%g T=%g omega0=%g\n", atom.alpha, atom.x0, atom.T,
                  omega0);
      return run_atom_scenario(atom, omega0);
    }
    if (c_trap->parsed()) {
      if (!trap.config.empty()) apply_config(c_trap, trap.config);
      std::printf("trap-expansion: omega %g -> %g over tf=%g\n", trap.omega_start, trap.omega_end,
                  trap.t_f);
      return run_trap_scenario(trap);
    }
    if (c_cmp->parsed()) return run_compare(cmp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace sta
