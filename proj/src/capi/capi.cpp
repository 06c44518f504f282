// SPDX-License-Identifier: Apache-2.0
#include "tumorspectra.h"

#include <cmath>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/modal_spectrum.hpp"
#include "core/runner.hpp"
#include "core/stationary.hpp"

struct ts_config {
  ts::RunConfig cfg;
};

struct ts_stationary {
  ts::UnitStationaryState st;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <class F>
auto guarded(F&& fn, decltype(fn()) on_error) -> decltype(fn()) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::exception& e) {
    set_error(e.what());
  } catch (...) {
    set_error("unknown error");
  }
  return on_error;
}

}  // namespace

extern "C" {

const char* ts_last_error(void) { return g_last_error.c_str(); }

ts_config* ts_config_load(const char* path) {
  if (!path) {
    set_error("null path");
    return nullptr;
  }
  return guarded([&]() -> ts_config* { return new ts_config{ts::parse_config(path)}; },
                 nullptr);
}

ts_config* ts_config_parse(const char* json_text) {
  if (!json_text) {
    set_error("null text");
    return nullptr;
  }
  return guarded(
      [&]() -> ts_config* { return new ts_config{ts::parse_config_text(json_text)}; },
      nullptr);
}

void ts_config_free(ts_config* cfg) { delete cfg; }

int ts_run(const ts_config* cfg, const char* command, const char* out_dir, int jobs) {
  if (!cfg || !command || !out_dir) {
    set_error("null argument");
    return TS_EINVAL;
  }
  return guarded(
      [&]() -> int {
        ts::RunOutcome out =
            ts::run_command(command, cfg->cfg, out_dir, jobs > 0 ? jobs : 1);
        if (out.status != 0) set_error(out.error);
        return out.status;
      },
      TS_ESOLVER);
}

ts_stationary* ts_stationary_solve(const ts_config* cfg) {
  if (!cfg) {
    set_error("null config");
    return nullptr;
  }
  return guarded(
      [&]() -> ts_stationary* {
        ts::StationaryOptions opts;
        opts.n_radial = cfg->cfg.numerics.n_radial;
        opts.newton_tol = cfg->cfg.numerics.newton_tol;
        opts.growth_tol = cfg->cfg.numerics.growth_tol;
        ts::ModelParams params;
        params.epsilon = cfg->cfg.model.epsilon;
        params.gamma = cfg->cfg.model.gamma;
        params.sigma_bar = cfg->cfg.model.sigma_bar;
        return new ts_stationary{ts::compute_unit_stationary(
            cfg->cfg.model.f.build(), cfg->cfg.model.g.build(), params, opts)};
      },
      nullptr);
}

void ts_stationary_free(ts_stationary* st) { delete st; }

double ts_stationary_radius(const ts_stationary* st) {
  return st ? st->st.R_s : std::nan("");
}

double ts_stationary_sigma_prime(const ts_stationary* st) {
  return st ? st->st.sigma_prime_1 : std::nan("");
}

int ts_spectral_threshold(const ts_stationary* st, int l_max, double* gamma_star,
                          int* l_star, double* alpha0) {
  if (!st || l_max < 2) {
    set_error("null state or l_max < 2");
    return TS_EINVAL;
  }
  return guarded(
      [&]() -> int {
        const ts::SpectralSummary sum = ts::spectral_summary(st->st, l_max);
        if (gamma_star) *gamma_star = sum.gamma_star;
        if (l_star) *l_star = sum.l_star;
        if (alpha0) *alpha0 = sum.alpha0;
        return TS_OK;
      },
      TS_ESOLVER);
}

double ts_alpha_l(const ts_stationary* st, int l, double gamma) {
  if (!st || l < 0) {
    set_error("null state or negative degree");
    return std::nan("");
  }
  return guarded([&]() -> double { return ts::alpha_l(l, gamma, st->st); },
                 std::nan(""));
}

}  // extern "C"
