#pragma once

#include "config.hpp"

#include <iosfwd>

namespace qgan::cli {

/// Runs the configured experiment and writes metrics.csv, summary.json and
/// theta_run<k>.txt into the output directory. Returns a process exit code;
/// failures are reported on `err` and nothing is silently truncated.
int run_experiment(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

/// Worker cap from the QGAN_THREADS environment variable; 0 when unset
/// (implementation default). Malformed values raise ConfigError.
int env_thread_cap();

} // namespace qgan::cli
