#pragma once

#include "qgan/trainer.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qgan::cli {

/// Raised for any malformed, missing or conflicting configuration entry.
/// The message always names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Partially specified experiment options, as read from a config file or
/// from command-line flags. Field names mirror the flag names 1:1.
struct ExperimentOptions {
    std::optional<std::string> circuit;
    std::optional<int> m;
    std::optional<int> layers;
    std::optional<int> ancilla;
    std::optional<int> epochs;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<int> batch_d;
    std::optional<int> batch_g;
    std::optional<int> d_step;
    std::optional<int> g_step;
    std::optional<double> lr_g;
    std::optional<double> lr_d;
    std::optional<std::string> grad_mode;
    std::optional<int> report_interval;
    std::optional<std::string> out;
};

/// Fully resolved and validated experiment configuration.
struct ExperimentConfig {
    std::string circuit;
    int m = 0;
    int layers = 0;
    int ancilla = 0; // meaningful for mps only
    int epochs = 5000;
    int runs = 1;
    std::uint64_t seed = 0;
    int batch_d = 64;
    int batch_g = 100;
    int d_step = 1;
    int g_step = 1;
    double lr_g = 2e-2;
    double lr_d = 1e-3;
    std::string grad_mode = "sampled";
    int report_interval = 50;
    std::string out = ".";
};

/// Reads a flat `key = value` config file. Unknown keys and unparseable
/// values raise ConfigError naming the key.
ExperimentOptions load_config_file(const std::string& path);

/// Overlays `over` onto `base`: fields set in `over` win.
ExperimentOptions merge_options(ExperimentOptions base, const ExperimentOptions& over);

/// Applies defaults and validates. Missing required keys (circuit, m,
/// layers, and ancilla for mps) and invalid or conflicting values raise
/// ConfigError naming the key.
ExperimentConfig resolve_config(const ExperimentOptions& options);

TrainConfig to_train_config(const ExperimentConfig& config);

} // namespace qgan::cli
