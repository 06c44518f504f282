// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"

namespace ts {

inline constexpr const char* kArtifactVersion = "1.0.0";

struct RunOutcome {
  int status = 0;  // 0 ok, 2 validation failure, 3 solver failure
  std::string error;                // machine-readable JSON block when status != 0
  std::vector<std::string> files;   // artifacts written (manifest last)
};

/// Dispatches one of: stationary, spectrum, threshold, eps-spectrum,
/// simulate, sweep. Writes CSV/JSON artifacts plus manifest.json into
/// out_dir (created if absent). Never throws; failures are encoded in the
/// returned status/error.
RunOutcome run_command(const std::string& cmd, const RunConfig& cfg,
                       const std::string& out_dir, int jobs = 1);

}  // namespace ts
