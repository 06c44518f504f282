// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rate_function.hpp"

namespace ts {

struct RateSpec {
  std::string family = "linear";
  std::vector<double> coeffs = {1.0, 0.0};

  RateFunction build() const { return RateFunction::make(family, coeffs); }
};

struct ModelConfig {
  RateSpec f{"linear", {1.0, 0.0}};
  RateSpec g{"linear", {1.0, 0.5}};
  double epsilon = 0.01;
  double gamma = 1.0;
  double sigma_bar = 1.0;
};

struct NumericsConfig {
  int n_radial = 96;
  int L = 16;
  int l_max = 64;
  double newton_tol = 1e-12;
  double growth_tol = 1e-10;
};

struct SimulateConfig {
  std::string kind = "radial";  // "radial" | "linear-mode"
  double T = 10.0;
  double dt = 1e-3;
  double R0_factor = 1.05;  // radial: R(0) = factor * R_s
  int l = 2;                // linear-mode degree
  std::string stepper = "tr-bdf2";  // "tr-bdf2" | "rk4"
};

struct SweepConfig {
  std::vector<double> gamma_values;
  std::vector<double> epsilon_values;
};

struct EpsSpectrumConfig {
  std::vector<int> l_values = {2};
  std::vector<double> epsilon_values = {1e-3};
};

struct ThresholdConfig {
  int l_max = 12;
  double eps_min = 1e-6;
  double eps_max = 1.0;
  int grid_points = 40;
};

struct RunConfig {
  ModelConfig model;
  NumericsConfig numerics;
  SimulateConfig simulate;
  SweepConfig sweep;
  EpsSpectrumConfig eps_spectrum;
  ThresholdConfig threshold;
  std::uint64_t seed = 0;
};

/// Strict parse: unknown keys, type mismatches and constraint violations are
/// collected and reported together, each with the path of the offending field.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& json_text);

/// FNV-1a hash of the canonicalized (model, numerics) block; keys the
/// stationary-profile disk cache.
std::uint64_t profile_hash(const RunConfig& cfg);

}  // namespace ts
