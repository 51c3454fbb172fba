#pragma once

#include "qgan/rng.hpp"

#include <cstdint>
#include <vector>

namespace qgan {

/// Clamp applied to classifier outputs before any log. Shared by the
/// discriminator and generator losses.
constexpr double kProbClamp = 1e-7;

inline double clamp_prob(double p) {
    if (p < kProbClamp) return kProbClamp;
    if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
    return p;
}

/// Two-layer feedforward classifier: input -> hidden (ReLU) -> 1 (sigmoid).
/// Inputs are bit patterns; bit q of a sample maps to feature q as 0.0/1.0.
struct Discriminator {
    int input_dim = 0;
    int hidden_dim = 0;
    std::vector<double> w1; // hidden_dim x input_dim, row-major
    std::vector<double> b1; // hidden_dim
    std::vector<double> w2; // 1 x hidden_dim
    double b2 = 0.0;
};

struct DiscGradients {
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
};

struct LabeledBatch {
    std::vector<std::uint64_t> samples;
    std::vector<int> labels; // 1 = real, 0 = fake
};

/// Adam optimizer state. Moments are zero-initialized and shaped like the
/// discriminator parameters.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step_count = 0;
    DiscGradients first_moment;
    DiscGradients second_moment;
};

/// Glorot-uniform weights (uniform on +-sqrt(6/(fan_in+fan_out))), zero biases.
Discriminator init_discriminator(int input_dim, int hidden_dim, Rng& rng);

AdamState init_adam(const Discriminator& d, double lr);

/// Prediction in (0,1) that sample x is real. Pure; no clamping here.
double forward(const Discriminator& d, std::uint64_t x);

/// Mean binary cross entropy over the arrays, predictions clamped.
double bce_loss(const std::vector<double>& preds, const std::vector<int>& labels);

/// BCE of the discriminator's predictions on a labeled batch.
double batch_loss(const Discriminator& d, const LabeledBatch& batch);

/// Gradients of the batch BCE w.r.t. all parameters, via backpropagation.
/// ReLU subgradient at exactly 0 is taken as 0.
DiscGradients backward(const Discriminator& d, const LabeledBatch& batch);

/// One Adam update with bias correction; increments step_count.
void adam_step(Discriminator& d, AdamState& adam, const DiscGradients& grads);

} // namespace qgan
