// SPDX-License-Identifier: Apache-2.0
//
// tumor-spectra <command> --config <path> [--out <dir>] [--jobs N]
//
// Thin shell over the shared library: parse arguments, load the config,
// dispatch, map status codes to exit codes (0 ok, 2 validation, 3 solver).
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "tumorspectra.h"

int main(int argc, char** argv) {
  CLI::App app{"stationary states, spectral thresholds and epsilon-perturbed "
               "spectra for a free-boundary tumor-growth model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int jobs = 1;

  const char* commands[] = {"stationary", "spectrum",  "threshold",
                            "eps-spectrum", "simulate", "sweep"};
  const char* briefs[] = {
      "radial stationary profile and radius",
      "quasi-stationary per-mode thresholds gamma_l and gamma_star",
      "spectrum summary plus the stability threshold epsilon0",
      "epsilon-perturbed slow/fast spectra on an (l, epsilon) grid",
      "nonlinear radial or linear per-mode time evolution",
      "stability map over a (gamma, epsilon) grid"};

  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], briefs[i]);
    sub->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--jobs", jobs, "worker threads for sweeps (default: 1)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  ts_config* cfg = ts_config_load(config_path.c_str());
  if (!cfg) {
    std::string esc;
    for (char ch : std::string(ts_last_error())) {
      if (ch == '"' || ch == '\\') esc += '\\';
      if (ch == '\n') {
        esc += "\\n";
        continue;
      }
      esc += ch;
    }
    std::fprintf(stderr, "{\"error\": \"%s\", \"status\": 2}\n", esc.c_str());
    return TS_EVALIDATION;
  }
  const int status = ts_run(cfg, cmd.c_str(), out_dir.c_str(), jobs);
  if (status != TS_OK) std::fprintf(stderr, "%s\n", ts_last_error());
  ts_config_free(cfg);
  return status;
}
