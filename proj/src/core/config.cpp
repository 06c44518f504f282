// SPDX-License-Identifier: Apache-2.0
#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace ts {

using nlohmann::json;

namespace {

class Checker {
public:
  void unknown_keys(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* k : allowed) ok = ok || it.key() == k;
      if (!ok) errors_.push_back(path + it.key() + ": unknown key");
    }
  }

  template <class T>
  void get(const json& j, const std::string& path, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception&) {
      errors_.push_back(path + key + ": type mismatch");
    }
  }

  void require(bool cond, const std::string& field, const std::string& what) {
    if (!cond) errors_.push_back(field + ": " + what);
  }

  void finish() const {
    if (errors_.empty()) return;
    std::string msg = "invalid config:";
    for (const auto& e : errors_) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

private:
  std::vector<std::string> errors_;
};

void parse_rate(Checker& c, const json& j, const std::string& path, RateSpec& out) {
  if (!j.is_object()) {
    c.require(false, path, "expected object {family, coeffs}");
    return;
  }
  c.unknown_keys(j, path + ".", {"family", "coeffs"});
  c.get(j, path + ".", "family", out.family);
  c.get(j, path + ".", "coeffs", out.coeffs);
  c.require(out.family == "linear" || out.family == "polynomial" ||
                out.family == "tabulated-spline",
            path + ".family", "must be linear, polynomial, or tabulated-spline");
  c.require(!out.coeffs.empty(), path + ".coeffs", "must be nonempty");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig cfg;
  Checker c;
  c.unknown_keys(j, "", {"model", "numerics", "simulate", "sweep", "eps_spectrum",
                         "threshold", "seed"});
  c.get(j, "", "seed", cfg.seed);

  if (j.contains("model")) {
    const json& m = j["model"];
    if (!m.is_object()) {
      c.require(false, "model", "expected object");
    } else {
      c.unknown_keys(m, "model.", {"f", "g", "epsilon", "gamma", "sigma_bar"});
      if (m.contains("f")) parse_rate(c, m["f"], "model.f", cfg.model.f);
      if (m.contains("g")) parse_rate(c, m["g"], "model.g", cfg.model.g);
      c.get(m, "model.", "epsilon", cfg.model.epsilon);
      c.get(m, "model.", "gamma", cfg.model.gamma);
      c.get(m, "model.", "sigma_bar", cfg.model.sigma_bar);
      c.require(cfg.model.epsilon >= 0.0, "model.epsilon", "must be >= 0");
      c.require(cfg.model.gamma > 0.0, "model.gamma", "must be > 0");
      c.require(cfg.model.sigma_bar > 0.0, "model.sigma_bar", "must be > 0");
    }
  }

  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    if (!n.is_object()) {
      c.require(false, "numerics", "expected object");
    } else {
      c.unknown_keys(n, "numerics.",
                     {"n_radial", "L", "l_max", "newton_tol", "growth_tol"});
      c.get(n, "numerics.", "n_radial", cfg.numerics.n_radial);
      c.get(n, "numerics.", "L", cfg.numerics.L);
      c.get(n, "numerics.", "l_max", cfg.numerics.l_max);
      c.get(n, "numerics.", "newton_tol", cfg.numerics.newton_tol);
      c.get(n, "numerics.", "growth_tol", cfg.numerics.growth_tol);
      c.require(cfg.numerics.n_radial >= 16, "numerics.n_radial", "must be >= 16");
      c.require(cfg.numerics.L >= 1, "numerics.L", "must be >= 1");
      c.require(cfg.numerics.l_max >= 2, "numerics.l_max", "must be >= 2");
      c.require(cfg.numerics.newton_tol > 0.0, "numerics.newton_tol", "must be > 0");
      c.require(cfg.numerics.growth_tol > 0.0, "numerics.growth_tol", "must be > 0");
    }
  }

  if (j.contains("simulate")) {
    const json& s = j["simulate"];
    if (!s.is_object()) {
      c.require(false, "simulate", "expected object");
    } else {
      c.unknown_keys(s, "simulate.", {"kind", "T", "dt", "R0_factor", "l", "stepper"});
      c.get(s, "simulate.", "kind", cfg.simulate.kind);
      c.get(s, "simulate.", "T", cfg.simulate.T);
      c.get(s, "simulate.", "dt", cfg.simulate.dt);
      c.get(s, "simulate.", "R0_factor", cfg.simulate.R0_factor);
      c.get(s, "simulate.", "l", cfg.simulate.l);
      c.get(s, "simulate.", "stepper", cfg.simulate.stepper);
      c.require(cfg.simulate.kind == "radial" || cfg.simulate.kind == "linear-mode",
                "simulate.kind", "must be radial or linear-mode");
      c.require(cfg.simulate.T > 0.0, "simulate.T", "must be > 0");
      c.require(cfg.simulate.dt > 0.0, "simulate.dt", "must be > 0");
      c.require(cfg.simulate.R0_factor > 0.0, "simulate.R0_factor", "must be > 0");
      c.require(cfg.simulate.l >= 0, "simulate.l", "must be >= 0");
      c.require(cfg.simulate.stepper == "tr-bdf2" || cfg.simulate.stepper == "rk4",
                "simulate.stepper", "must be tr-bdf2 or rk4");
    }
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) {
      c.require(false, "sweep", "expected object");
    } else {
      c.unknown_keys(s, "sweep.", {"gamma_values", "epsilon_values"});
      c.get(s, "sweep.", "gamma_values", cfg.sweep.gamma_values);
      c.get(s, "sweep.", "epsilon_values", cfg.sweep.epsilon_values);
      for (double gv : cfg.sweep.gamma_values)
        c.require(gv > 0.0, "sweep.gamma_values", "entries must be > 0");
      for (double ev : cfg.sweep.epsilon_values)
        c.require(ev > 0.0, "sweep.epsilon_values", "entries must be > 0");
    }
  }

  if (j.contains("eps_spectrum")) {
    const json& s = j["eps_spectrum"];
    if (!s.is_object()) {
      c.require(false, "eps_spectrum", "expected object");
    } else {
      c.unknown_keys(s, "eps_spectrum.", {"l_values", "epsilon_values"});
      c.get(s, "eps_spectrum.", "l_values", cfg.eps_spectrum.l_values);
      c.get(s, "eps_spectrum.", "epsilon_values", cfg.eps_spectrum.epsilon_values);
      c.require(!cfg.eps_spectrum.l_values.empty(), "eps_spectrum.l_values",
                "must be nonempty");
      c.require(!cfg.eps_spectrum.epsilon_values.empty(),
                "eps_spectrum.epsilon_values", "must be nonempty");
      for (int lv : cfg.eps_spectrum.l_values)
        c.require(lv >= 0, "eps_spectrum.l_values", "entries must be >= 0");
      for (double ev : cfg.eps_spectrum.epsilon_values)
        c.require(ev > 0.0, "eps_spectrum.epsilon_values", "entries must be > 0");
    }
  }

  if (j.contains("threshold")) {
    const json& t = j["threshold"];
    if (!t.is_object()) {
      c.require(false, "threshold", "expected object");
    } else {
      c.unknown_keys(t, "threshold.", {"l_max", "eps_min", "eps_max", "grid_points"});
      c.get(t, "threshold.", "l_max", cfg.threshold.l_max);
      c.get(t, "threshold.", "eps_min", cfg.threshold.eps_min);
      c.get(t, "threshold.", "eps_max", cfg.threshold.eps_max);
      c.get(t, "threshold.", "grid_points", cfg.threshold.grid_points);
      c.require(cfg.threshold.l_max >= 2, "threshold.l_max", "must be >= 2");
      c.require(cfg.threshold.eps_min > 0.0, "threshold.eps_min", "must be > 0");
      c.require(cfg.threshold.eps_max > cfg.threshold.eps_min, "threshold.eps_max",
                "must exceed eps_min");
      c.require(cfg.threshold.grid_points >= 2, "threshold.grid_points",
                "must be >= 2");
    }
  }

  c.finish();

  // factories re-validate family/coeff structure
  try {
    cfg.model.f.build();
    cfg.model.g.build();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model rate law: ") + e.what());
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::uint64_t profile_hash(const RunConfig& cfg) {
  json j;
  j["f"] = {{"family", cfg.model.f.family}, {"coeffs", cfg.model.f.coeffs}};
  j["g"] = {{"family", cfg.model.g.family}, {"coeffs", cfg.model.g.coeffs}};
  j["sigma_bar"] = cfg.model.sigma_bar;
  j["n_radial"] = cfg.numerics.n_radial;
  j["newton_tol"] = cfg.numerics.newton_tol;
  j["growth_tol"] = cfg.numerics.growth_tol;
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ts
