// SPDX-License-Identifier: Apache-2.0
#include "core/runner.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "core/epsilon_spectrum.hpp"
#include "core/errors.hpp"
#include "core/modal_spectrum.hpp"
#include "core/output.hpp"
#include "core/simulate.hpp"
#include "core/stationary.hpp"

namespace ts {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

StationaryOptions stationary_options(const RunConfig& cfg) {
  StationaryOptions o;
  o.n_radial = cfg.numerics.n_radial;
  o.newton_tol = cfg.numerics.newton_tol;
  o.growth_tol = cfg.numerics.growth_tol;
  return o;
}

ModelParams model_params(const RunConfig& cfg) {
  ModelParams p;
  p.epsilon = cfg.model.epsilon;
  p.gamma = cfg.model.gamma;
  p.sigma_bar = cfg.model.sigma_bar;
  return p;
}

// Disk cache for the expensive radius search: every spectral command reuses
// the same profile, so only R_s is stored and the unit-ball solve is redone
// deterministically from it.
UnitStationaryState cached_stationary(const RunConfig& cfg, const std::string& out_dir) {
  const RateFunction f = cfg.model.f.build();
  const RateFunction g = cfg.model.g.build();
  const StationaryOptions opts = stationary_options(cfg);
  const ModelParams params = model_params(cfg);

  const fs::path cache_dir = fs::path(out_dir) / "cache";
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.json",
                static_cast<unsigned long long>(profile_hash(cfg)));
  const fs::path entry = cache_dir / name;

  if (fs::exists(entry)) {
    std::ifstream in(entry);
    nlohmann::json j;
    in >> j;
    return rescale_to_unit(f, g, params, j.at("R_s").get<double>(), opts);
  }

  UnitStationaryState st = compute_unit_stationary(f, g, params, opts);
  fs::create_directories(cache_dir);
  ordered_json j;
  j["R_s"] = st.R_s;
  atomic_write(entry.string(), j.dump(2) + "\n");
  return st;
}

std::string summary_json(const SpectralSummary& s, double alpha_star,
                         const double* epsilon0) {
  ordered_json j;
  j["gamma_star"] = s.gamma_star;
  j["l_star"] = s.l_star;
  j["alpha0"] = s.alpha0;
  j["alpha_star"] = alpha_star;
  if (epsilon0)
    j["epsilon0"] = *epsilon0;
  else
    j["epsilon0"] = nullptr;
  j["tail_bound_met"] = s.tail_ok;
  return j.dump(2) + "\n";
}

struct Emitter {
  fs::path dir;
  RunManifest manifest;

  void write(const std::string& name, const std::string& content) {
    atomic_write((dir / name).string(), content);
    manifest.files.push_back(name);
  }
  void finish() {
    manifest.files.push_back("manifest.json");
    atomic_write((dir / "manifest.json").string(), manifest.to_json());
  }
};

void run_stationary(const RunConfig& cfg, Emitter& em) {
  UnitStationaryState st = cached_stationary(cfg, em.dir.string());
  CsvWriter csv({"r", "sigma", "v", "p"});
  for (int i = 0; i < st.grid->size(); ++i)
    csv.add_row({format_double(st.grid->nodes()(i)), format_double(st.sigma(i)),
                 format_double(st.v(i)), format_double(st.p(i))});
  em.write("stationary.csv", csv.str());

  ordered_json j;
  j["R_s"] = st.R_s;
  j["sigma_prime_1"] = st.sigma_prime_1;
  j["nutrient_residual"] = st.nutrient_residual;
  j["growth_residual"] = st.growth_residual;
  em.write("stationary.json", j.dump(2) + "\n");
  em.manifest.residuals["nutrient"] = st.nutrient_residual;
  em.manifest.residuals["growth"] = st.growth_residual;
}

void run_spectrum(const RunConfig& cfg, Emitter& em, bool with_threshold) {
  UnitStationaryState st = cached_stationary(cfg, em.dir.string());
  const SpectralSummary sum =
      spectral_summary(st, cfg.numerics.l_max, /*extend_until_tail=*/true);

  CsvWriter csv({"l", "gamma_l", "K_l", "alpha_l"});
  csv.add_row({"0", "", "", format_double(sum.alpha0)});
  csv.add_row({"1", "", "", "0"});
  for (int l = 2; l <= sum.l_max; ++l)
    csv.add_row({std::to_string(l), format_double(sum.gamma_of(l)),
                 format_double(K_l(l)),
                 format_double(-K_l(l) * (cfg.model.gamma - sum.gamma_of(l)))});
  em.write("spectrum.csv", csv.str());

  const double astar = sum.alpha_star(cfg.model.gamma, st);
  em.manifest.residuals["nutrient"] = st.nutrient_residual;

  if (!with_threshold) {
    em.write("summary.json", summary_json(sum, astar, nullptr));
    return;
  }

  EpsilonSpectrumSolver solver(st);
  ThresholdOptions topts;
  topts.l_max = cfg.threshold.l_max;
  topts.eps_min = cfg.threshold.eps_min;
  topts.eps_max = cfg.threshold.eps_max;
  topts.grid_points = cfg.threshold.grid_points;
  ThresholdResult th = solver.threshold(cfg.model.gamma, sum, topts);
  em.write("summary.json",
           summary_json(sum, astar, th.found ? &th.epsilon0 : nullptr));
}

void run_eps_spectrum(const RunConfig& cfg, Emitter& em) {
  UnitStationaryState st = cached_stationary(cfg, em.dir.string());
  st.epsilon = cfg.model.epsilon;
  EpsilonSpectrumSolver solver(st);

  CsvWriter csv({"l", "epsilon", "gamma", "slow_re", "slow_im", "fast_max_re",
                 "eigvec_ratio"});
  for (int l : cfg.eps_spectrum.l_values) {
    for (double eps : cfg.eps_spectrum.epsilon_values) {
      EpsilonSpectrumReport rep = solver.spectrum(l, eps, cfg.model.gamma);
      csv.add_row({std::to_string(l), format_double(eps),
                   format_double(cfg.model.gamma), format_double(rep.slow.lambda),
                   "0", format_double(rep.fast_max_re),
                   format_double(rep.slow.phi_c_ratio)});
    }
  }
  em.write("eps_spectrum.csv", csv.str());
}

void run_simulate(const RunConfig& cfg, Emitter& em) {
  if (cfg.simulate.kind == "radial") {
    const RateFunction f = cfg.model.f.build();
    const RateFunction g = cfg.model.g.build();
    const double R_s = find_stationary_radius(f, g, stationary_options(cfg));
    RadialTrajectory tr = simulate_radial_nonlinear(
        f, g, cfg.model.epsilon, cfg.simulate.R0_factor * R_s, Eigen::VectorXd(),
        cfg.simulate.T, cfg.simulate.dt);

    CsvWriter csv({"t", "R", "sigma_center", "rate_running"});
    for (size_t i = 0; i < tr.times.size(); ++i) {
      double rate = 0.0;
      if (i > 0) {
        const double d1 = std::abs(tr.R[i] - R_s), d0 = std::abs(tr.R[i - 1] - R_s);
        if (d1 > 0 && d0 > 0)
          rate = std::log(d1 / d0) / (tr.times[i] - tr.times[i - 1]);
      }
      csv.add_row({format_double(tr.times[i]), format_double(tr.R[i]),
                   format_double(tr.sigma_center[i]), format_double(rate)});
    }
    em.write("simulate_radial.csv", csv.str());
    em.manifest.residuals["volume_balance"] = tr.volume_balance_max;
    if (tr.blew_up) throw SolverError("radial simulation left the admissible range");
    return;
  }

  // linear-mode: evolve the per-mode block system from the slow eigenvector
  UnitStationaryState st = cached_stationary(cfg, em.dir.string());
  EpsilonSpectrumSolver solver(st);
  ModalBlockOperator op =
      solver.assemble(cfg.simulate.l, cfg.model.epsilon, cfg.model.gamma);
  SlowBranch slow = solver.slow_branch(op);
  const double amp = 1e-3;
  const Stepper stepper = cfg.simulate.stepper == "rk4" ? Stepper::ExplicitRK4
                                                        : Stepper::ImplicitTRBDF2;
  LinearModalTrajectory tr = evolve_linear_mode(op, amp * slow.phi, amp,
                                                cfg.simulate.T, cfg.simulate.dt, stepper);
  CsvWriter csv({"t", "c", "phi_norm"});
  for (size_t i = 0; i < tr.times.size(); ++i)
    csv.add_row({format_double(tr.times[i]), format_double(tr.c_values[i]),
                 format_double(tr.phi_norms[i])});
  em.write("simulate_mode.csv", csv.str());
  em.manifest.residuals["fitted_rate"] = tr.fitted_rate;
}

struct SweepCell {
  double gamma = 0.0, epsilon = 0.0;
  double max_re = 0.0;
  bool stable = false;
  bool failed = false;
};

void run_sweep(const RunConfig& cfg, Emitter& em, int jobs) {
  if (cfg.sweep.gamma_values.empty() || cfg.sweep.epsilon_values.empty())
    throw ConfigError("sweep.gamma_values and sweep.epsilon_values must be nonempty");
  UnitStationaryState st = cached_stationary(cfg, em.dir.string());

  std::vector<SweepCell> cells;
  for (double gv : cfg.sweep.gamma_values)
    for (double ev : cfg.sweep.epsilon_values)
      cells.push_back({gv, ev, 0.0, false, false});

  // Cells are independent; workers own private solvers (shared state is the
  // read-only profile) and results merge by fixed cell index.
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    EpsilonSpectrumSolver solver(st);
    for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      SweepCell& cell = cells[i];
      try {
        double max_re = -std::numeric_limits<double>::infinity();
        for (int l = 0; l <= cfg.threshold.l_max; ++l) {
          EpsilonSpectrumReport rep = solver.spectrum(l, cell.epsilon, cell.gamma);
          for (const auto& ev : rep.eigenvalues) {
            if (l == 1 && std::abs(ev) <= 1e-7) continue;  // rigid-motion zeros
            max_re = std::max(max_re, ev.real());
          }
        }
        cell.max_re = max_re;
        cell.stable = max_re < 0.0;
      } catch (const std::exception&) {
        cell.failed = true;
      }
    }
  };
  const int n_workers = std::max(1, std::min<int>(jobs, int(cells.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CsvWriter csv({"gamma", "epsilon", "max_nonzero_re", "stable"});
  for (const SweepCell& cell : cells) {
    if (cell.failed)
      csv.add_row({format_double(cell.gamma), format_double(cell.epsilon), "nan",
                   "failed"});
    else
      csv.add_row({format_double(cell.gamma), format_double(cell.epsilon),
                   format_double(cell.max_re), cell.stable ? "true" : "false"});
  }
  em.write("sweep.csv", csv.str());
}

std::string error_block(int status, const std::string& what, const RunConfig& cfg) {
  ordered_json j;
  j["error"] = what;
  j["status"] = status;
  j["config_hash"] = profile_hash(cfg);
  return j.dump(2) + "\n";
}

}  // namespace

RunOutcome run_command(const std::string& cmd, const RunConfig& cfg,
                       const std::string& out_dir, int jobs) {
  RunOutcome out;
  Emitter em;
  em.dir = out_dir;
  em.manifest.config_hash = profile_hash(cfg);
  em.manifest.version = kArtifactVersion;
  em.manifest.command = cmd;
  em.manifest.timestamp = utc_now();

  try {
    fs::create_directories(em.dir);

    const AssumptionReport rep = validate_assumptions(
        cfg.model.f.build(), cfg.model.g.build(), cfg.model.sigma_bar);
    if (!rep.pass()) {
      ordered_json j;
      j["error"] = "model assumptions violated";
      j["status"] = 2;
      j["a1_monotone_f"] = rep.a1_monotone_f;
      j["a2_monotone_g_root"] = rep.a2_monotone_g_root;
      j["a3_root_below_bar"] = rep.a3_root_below_bar;
      j["detail"] = rep.detail;
      out.status = 2;
      out.error = j.dump(2) + "\n";
      atomic_write((em.dir / "error.json").string(), out.error);
      return out;
    }

    if (cmd == "stationary")
      run_stationary(cfg, em);
    else if (cmd == "spectrum")
      run_spectrum(cfg, em, /*with_threshold=*/false);
    else if (cmd == "threshold")
      run_spectrum(cfg, em, /*with_threshold=*/true);
    else if (cmd == "eps-spectrum")
      run_eps_spectrum(cfg, em);
    else if (cmd == "simulate")
      run_simulate(cfg, em);
    else if (cmd == "sweep")
      run_sweep(cfg, em, jobs);
    else
      throw ConfigError("unknown command: " + cmd);

    em.finish();
    out.files = em.manifest.files;
    return out;
  } catch (const ConfigError& e) {
    out.status = 2;
    out.error = error_block(2, e.what(), cfg);
  } catch (const DomainError& e) {
    out.status = 2;
    out.error = error_block(2, e.what(), cfg);
  } catch (const std::exception& e) {
    out.status = 3;
    out.error = error_block(3, e.what(), cfg);
  }
  try {
    atomic_write((em.dir / "error.json").string(), out.error);
  } catch (...) {
  }
  return out;
}

}  // namespace ts
