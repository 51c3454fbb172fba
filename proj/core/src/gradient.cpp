#include "qgan/gradient.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgan {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// log D(x) for every outcome; the discriminator is read-only per evaluation.
std::vector<double> log_pred_table(const Discriminator& d, std::size_t num_outcomes) {
    std::vector<double> table(num_outcomes);
    for (std::size_t x = 0; x < num_outcomes; ++x) {
        table[x] = std::log(clamp_prob(forward(d, x)));
    }
    return table;
}

} // namespace

double generator_loss_exact(const Distribution& dist, const Discriminator& d) {
    double loss = 0.0;
    for (std::size_t x = 0; x < dist.size(); ++x) {
        if (dist[x] != 0.0) {
            loss -= dist[x] * std::log(clamp_prob(forward(d, x)));
        }
    }
    return loss;
}

std::vector<double> grad_exact(const CircuitSpec& spec, const ParamVector& theta,
                               const Discriminator& d) {
    const int count = param_count(spec);
    const std::vector<double> log_d =
        log_pred_table(d, std::size_t{1} << spec.num_bits);
    std::vector<double> grad(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const Distribution plus = exact_distribution(spec, shift_param(theta, i, kHalfPi));
        const Distribution minus = exact_distribution(spec, shift_param(theta, i, -kHalfPi));
        double g = 0.0;
        for (std::size_t x = 0; x < plus.size(); ++x) {
            g -= log_d[x] * 0.5 * (plus[x] - minus[x]);
        }
        grad[static_cast<std::size_t>(i)] = g;
    }
    return grad;
}

std::vector<double> grad_sampled(const CircuitSpec& spec, const ParamVector& theta,
                                 const Discriminator& d, int batch_g, Rng& rng) {
    if (batch_g < 1) {
        throw std::invalid_argument("batch_g must be >= 1");
    }
    const int count = param_count(spec);
    const std::uint64_t base_seed = rng.fork_seed();
    std::vector<double> grad(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double sums[2]; // [0] = minus shift, [1] = plus shift
        for (int sign = 0; sign < 2; ++sign) {
            Rng sub(Rng::mix_seed(base_seed, static_cast<std::uint64_t>(2 * i + sign)));
            const ParamVector shifted = shift_param(theta, i, sign ? kHalfPi : -kHalfPi);
            const auto batch = sample_batch(spec, shifted, batch_g, sub);
            double s = 0.0;
            for (std::uint64_t x : batch) {
                s += std::log(clamp_prob(forward(d, x)));
            }
            sums[sign] = s;
        }
        grad[static_cast<std::size_t>(i)] = (sums[0] - sums[1]) / (2.0 * batch_g);
    }
    return grad;
}

std::vector<double> generator_gradient(const CircuitSpec& spec, const ParamVector& theta,
                                       const Discriminator& d, const GradMode& mode, Rng& rng) {
    return mode.kind == GradKind::Exact ? grad_exact(spec, theta, d)
                                        : grad_sampled(spec, theta, d, mode.batch_g, rng);
}

ParamVector sgd_update(const ParamVector& theta, const std::vector<double>& grad, double lr) {
    if (theta.size() != grad.size()) {
        throw std::invalid_argument("parameter and gradient lengths differ");
    }
    if (lr <= 0.0) {
        throw std::invalid_argument("learning rate must be positive");
    }
    ParamVector next(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        next[i] = theta[i] - lr * grad[i];
    }
    return next;
}

std::vector<double> finite_diff_grad(const CircuitSpec& spec, const ParamVector& theta,
                                     const Discriminator& d, double h) {
    const double ah = std::abs(h);
    if (ah < 1e-7 || ah > 1e-3) {
        throw std::invalid_argument("finite-difference step must satisfy 1e-7 <= |h| <= 1e-3");
    }
    const int count = param_count(spec);
    std::vector<double> grad(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double plus =
            generator_loss_exact(exact_distribution(spec, shift_param(theta, i, h)), d);
        const double minus =
            generator_loss_exact(exact_distribution(spec, shift_param(theta, i, -h)), d);
        grad[static_cast<std::size_t>(i)] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

std::vector<std::uint64_t> sample_batch(const CircuitSpec& spec, const ParamVector& theta,
                                        int num_samples, Rng& rng) {
    std::vector<std::uint64_t> batch(static_cast<std::size_t>(num_samples));
    if (spec.family == CircuitFamily::Layered) {
        const StateVector state = run_layered(spec, theta);
        for (auto& x : batch) {
            x = sample(state, rng);
        }
    } else {
        for (auto& x : batch) {
            x = mps_sample(spec, theta, rng);
        }
    }
    return batch;
}

} // namespace qgan
