#include "qgan/discriminator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgan {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Feature vector of an input pattern: bit q (qubit-0-first) -> entry q.
void load_features(const Discriminator& d, std::uint64_t x, std::vector<double>& features) {
    features.resize(static_cast<std::size_t>(d.input_dim));
    for (int q = 0; q < d.input_dim; ++q) {
        features[static_cast<std::size_t>(q)] =
            (x >> (d.input_dim - 1 - q)) & 1 ? 1.0 : 0.0;
    }
}

// Hidden pre-activations, hidden activations and output probability.
double forward_impl(const Discriminator& d, const std::vector<double>& features,
                    std::vector<double>& pre, std::vector<double>& hidden) {
    const std::size_t h = static_cast<std::size_t>(d.hidden_dim);
    const std::size_t in = static_cast<std::size_t>(d.input_dim);
    pre.resize(h);
    hidden.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        double z = d.b1[j];
        for (std::size_t k = 0; k < in; ++k) {
            z += d.w1[j * in + k] * features[k];
        }
        pre[j] = z;
        hidden[j] = z > 0.0 ? z : 0.0;
    }
    double z2 = d.b2;
    for (std::size_t j = 0; j < h; ++j) {
        z2 += d.w2[j] * hidden[j];
    }
    return sigmoid(z2);
}

void check_dims(const Discriminator& d) {
    const std::size_t h = static_cast<std::size_t>(d.hidden_dim);
    const std::size_t in = static_cast<std::size_t>(d.input_dim);
    if (d.input_dim < 1 || d.hidden_dim < 1 || d.w1.size() != h * in || d.b1.size() != h ||
        d.w2.size() != h) {
        throw std::invalid_argument("discriminator dimensions are inconsistent");
    }
}

DiscGradients zeros_like(const Discriminator& d) {
    DiscGradients g;
    g.w1.assign(d.w1.size(), 0.0);
    g.b1.assign(d.b1.size(), 0.0);
    g.w2.assign(d.w2.size(), 0.0);
    g.b2 = 0.0;
    return g;
}

void adam_update(std::vector<double>& w, std::vector<double>& m, std::vector<double>& v,
                 const std::vector<double>& g, const AdamState& adam, double bc1, double bc2) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        m[i] = adam.beta1 * m[i] + (1.0 - adam.beta1) * g[i];
        v[i] = adam.beta2 * v[i] + (1.0 - adam.beta2) * g[i] * g[i];
        w[i] -= adam.lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + adam.epsilon);
    }
}

} // namespace

Discriminator init_discriminator(int input_dim, int hidden_dim, Rng& rng) {
    if (input_dim < 1 || hidden_dim < 1) {
        throw std::invalid_argument("discriminator dimensions must be >= 1");
    }
    Discriminator d;
    d.input_dim = input_dim;
    d.hidden_dim = hidden_dim;
    const double bound1 = std::sqrt(6.0 / (input_dim + hidden_dim));
    d.w1.resize(static_cast<std::size_t>(hidden_dim) * input_dim);
    for (double& w : d.w1) {
        w = rng.uniform(-bound1, bound1);
    }
    d.b1.assign(static_cast<std::size_t>(hidden_dim), 0.0);
    const double bound2 = std::sqrt(6.0 / (hidden_dim + 1));
    d.w2.resize(static_cast<std::size_t>(hidden_dim));
    for (double& w : d.w2) {
        w = rng.uniform(-bound2, bound2);
    }
    d.b2 = 0.0;
    return d;
}

AdamState init_adam(const Discriminator& d, double lr) {
    AdamState adam;
    adam.lr = lr;
    adam.first_moment = zeros_like(d);
    adam.second_moment = zeros_like(d);
    return adam;
}

double forward(const Discriminator& d, std::uint64_t x) {
    check_dims(d);
    std::vector<double> features, pre, hidden;
    load_features(d, x, features);
    return forward_impl(d, features, pre, hidden);
}

double bce_loss(const std::vector<double>& preds, const std::vector<int>& labels) {
    if (preds.size() != labels.size() || preds.empty()) {
        throw std::invalid_argument("predictions and labels must be non-empty and equal-length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const double p = clamp_prob(preds[i]);
        total += labels[i] ? std::log(p) : std::log(1.0 - p);
    }
    return -total / static_cast<double>(preds.size());
}

double batch_loss(const Discriminator& d, const LabeledBatch& batch) {
    std::vector<double> preds(batch.samples.size());
    for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        preds[i] = forward(d, batch.samples[i]);
    }
    return bce_loss(preds, batch.labels);
}

DiscGradients backward(const Discriminator& d, const LabeledBatch& batch) {
    check_dims(d);
    if (batch.samples.size() != batch.labels.size() || batch.samples.empty()) {
        throw std::invalid_argument("batch samples and labels must be non-empty and equal-length");
    }
    const std::size_t h = static_cast<std::size_t>(d.hidden_dim);
    const std::size_t in = static_cast<std::size_t>(d.input_dim);
    const double inv_n = 1.0 / static_cast<double>(batch.samples.size());

    DiscGradients g = zeros_like(d);
    std::vector<double> features, pre, hidden;
    for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        load_features(d, batch.samples[i], features);
        const double p = forward_impl(d, features, pre, hidden);
        // Fused sigmoid + cross-entropy derivative.
        const double dz2 = (p - static_cast<double>(batch.labels[i])) * inv_n;
        g.b2 += dz2;
        for (std::size_t j = 0; j < h; ++j) {
            g.w2[j] += dz2 * hidden[j];
            if (pre[j] > 0.0) {
                const double da = dz2 * d.w2[j];
                g.b1[j] += da;
                for (std::size_t k = 0; k < in; ++k) {
                    g.w1[j * in + k] += da * features[k];
                }
            }
        }
    }
    return g;
}

void adam_step(Discriminator& d, AdamState& adam, const DiscGradients& grads) {
    if (grads.w1.size() != d.w1.size() || grads.b1.size() != d.b1.size() ||
        grads.w2.size() != d.w2.size()) {
        throw std::invalid_argument("gradient shapes do not match discriminator");
    }
    adam.step_count += 1;
    const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step_count));
    const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step_count));
    adam_update(d.w1, adam.first_moment.w1, adam.second_moment.w1, grads.w1, adam, bc1, bc2);
    adam_update(d.b1, adam.first_moment.b1, adam.second_moment.b1, grads.b1, adam, bc1, bc2);
    adam_update(d.w2, adam.first_moment.w2, adam.second_moment.w2, grads.w2, adam, bc1, bc2);
    adam.first_moment.b2 = adam.beta1 * adam.first_moment.b2 + (1.0 - adam.beta1) * grads.b2;
    adam.second_moment.b2 =
        adam.beta2 * adam.second_moment.b2 + (1.0 - adam.beta2) * grads.b2 * grads.b2;
    d.b2 -= adam.lr * (adam.first_moment.b2 / bc1) /
            (std::sqrt(adam.second_moment.b2 / bc2) + adam.epsilon);
}

} // namespace qgan
