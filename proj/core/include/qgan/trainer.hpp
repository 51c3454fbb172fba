#pragma once

#include "qgan/bars_and_stripes.hpp"
#include "qgan/circuit.hpp"
#include "qgan/discriminator.hpp"
#include "qgan/gradient.hpp"

#include <cstdint>
#include <vector>

namespace qgan {

struct TrainConfig {
    CircuitSpec circuit;
    int bas_m = 2;         // dataset side length; circuit.num_bits must equal m*m
    int batch_d = 64;
    int batch_g = 100;
    int d_step = 1;
    int g_step = 1;
    int epochs = 5000;
    double lr_g = 2e-2;
    double lr_d = 1e-3;
    GradMode grad_mode;
    int report_interval = 50;
    std::uint64_t seed = 0;
    int hidden_dim = 50;
};

void validate_config(const TrainConfig& config);

struct MetricsRecord {
    int epoch = 0;
    double accuracy = 0.0;
    double kld = 0.0;
    double loss_g = 0.0;
    double loss_d = 0.0;
    bool kld_clamped = false; // generated probability hit the KLD floor
};

struct RunResult {
    ParamVector final_theta;
    std::vector<MetricsRecord> records;
};

/// Adversarial training: per epoch, d_step discriminator Adam updates on
/// half-real/half-fake batches, then g_step generator updates from the
/// parameter-shift gradient. Metrics are recorded every report_interval
/// epochs. Fully deterministic given the config seed.
RunResult train(const TrainConfig& config);

/// Fraction of samples that are valid dataset patterns.
double accuracy(const std::vector<std::uint64_t>& samples, const BasSpec& spec);

/// KL divergence of `generated` from `target`, summed over the target's
/// support with generated probabilities floored at 1e-12. Sets *clamped when
/// the floor fires. Both inputs must sum to 1 within 1e-8.
double kl_divergence(const Distribution& target, const Distribution& generated,
                     bool* clamped = nullptr);

/// Loss value at the adversarial equilibrium (discriminator outputs 1/2
/// everywhere): ln 2.
double equilibrium_loss();

struct AggregateRecord {
    int epoch = 0;
    double acc_mean = 0.0, acc_std = 0.0;
    double kld_mean = 0.0, kld_std = 0.0;
    double lossg_mean = 0.0, lossg_std = 0.0;
    double lossd_mean = 0.0, lossd_std = 0.0;
};

struct MultiRunResult {
    std::vector<RunResult> runs;
    std::vector<AggregateRecord> aggregate; // aligned on report epochs
    bool kld_clamped_any = false;
};

/// Repeats the experiment num_runs times with per-run seeds
/// mix_seed(config.seed, run_index) and aggregates per-epoch mean and
/// population standard deviation across runs. Up to max_workers runs execute
/// in parallel (0 = hardware default); results do not depend on scheduling.
MultiRunResult run_many(const TrainConfig& config, int num_runs, int max_workers = 0);

} // namespace qgan
