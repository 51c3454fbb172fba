#pragma once

#include "qgan/circuit.hpp"
#include "qgan/discriminator.hpp"
#include "qgan/rng.hpp"
#include "qgan/state_vector.hpp"

#include <vector>

namespace qgan {

enum class GradKind { Exact, Sampled };

/// How generator gradients are evaluated: from the exact output distribution,
/// or estimated from batch_g samples per shifted circuit.
struct GradMode {
    GradKind kind = GradKind::Exact;
    int batch_g = 100;
};

/// Generator loss -sum_x P(x) log D(x), with D clamped away from {0,1}.
double generator_loss_exact(const Distribution& dist, const Discriminator& d);

/// Analytic gradient of the generator loss via the parameter-shift rule:
/// component i is -sum_x log D(x) * (P[theta_i + pi/2](x) - P[theta_i - pi/2](x)) / 2,
/// evaluated with the exact distribution of either circuit family. Performs
/// exactly 2 * param_count distribution evaluations.
std::vector<double> grad_exact(const CircuitSpec& spec, const ParamVector& theta,
                               const Discriminator& d);

/// Monte-Carlo parameter-shift estimate: batch_g samples from each shifted
/// circuit, component i = (sum_{x in minus} log D(x) - sum_{x in plus} log D(x))
/// / (2 * batch_g). Each (component, sign) pair uses a fresh derived
/// sub-stream so shift estimates stay uncorrelated.
std::vector<double> grad_sampled(const CircuitSpec& spec, const ParamVector& theta,
                                 const Discriminator& d, int batch_g, Rng& rng);

/// Dispatches to grad_exact or grad_sampled per `mode`.
std::vector<double> generator_gradient(const CircuitSpec& spec, const ParamVector& theta,
                                       const Discriminator& d, const GradMode& mode, Rng& rng);

/// Plain gradient-descent step theta - lr * grad.
ParamVector sgd_update(const ParamVector& theta, const std::vector<double>& grad, double lr);

/// Central finite differences of the exact generator loss; the numerical
/// cross-check for grad_exact. |h| must lie in [1e-7, 1e-3].
std::vector<double> finite_diff_grad(const CircuitSpec& spec, const ParamVector& theta,
                                     const Discriminator& d, double h);

/// num_samples i.i.d. draws from the circuit's output distribution.
std::vector<std::uint64_t> sample_batch(const CircuitSpec& spec, const ParamVector& theta,
                                        int num_samples, Rng& rng);

} // namespace qgan
