#pragma once

// The run/compare/converge drivers behind the CLI. Each command writes its
// artifacts into the configured output directory and returns the process
// exit code; summary.json is written even on failure paths.

#include "gnflow/config.hpp"
#include "gnflow/elliptic.hpp"
#include "gnflow/grid.hpp"

namespace gnflow {

struct InitialData {
  HeightField h0;
  Field u0;
};

/// Initial Eulerian data for the configured scenario.
InitialData build_initial_data(const ScenarioConfig& cfg,
                               const PeriodicGrid& g);

int command_run(const ScenarioConfig& cfg);
int command_compare(const ScenarioConfig& cfg);
int command_converge(const ScenarioConfig& cfg);

/// Exit-code contract: 0 ok, 1 comparison tolerance failure, 2 config error,
/// 3 monotonicity loss, 4 solver failure (ill-posed/residual/step rejection).
int exit_code_for(ErrorKind kind);

}  // namespace gnflow
