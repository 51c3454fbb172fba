#include "qgan/gradcheck.hpp"

#include "qgan/circuit.hpp"
#include "qgan/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgan {

namespace {

constexpr double kFdStep = 1e-5;

CircuitSpec random_small_spec(int trial, Rng& rng) {
    CircuitSpec spec;
    spec.family = trial % 2 == 0 ? CircuitFamily::Layered : CircuitFamily::Mps;
    spec.num_bits = 1 + static_cast<int>(rng.uniform() * 3.0);
    spec.layers = 1 + static_cast<int>(rng.uniform() * 2.0);
    if (spec.family == CircuitFamily::Mps) {
        spec.ancillas = 1 + static_cast<int>(rng.uniform() * 2.0);
    }
    spec.num_bits = std::min(spec.num_bits, 3);
    spec.layers = std::min(spec.layers, 2);
    spec.ancillas = std::min(spec.ancillas, 2);
    return spec;
}

double param_shift_deviation(const CircuitSpec& spec, Rng& rng) {
    const ParamVector theta = random_params(spec, rng);
    const Discriminator d = init_discriminator(spec.num_bits, 8, rng);
    const auto analytic = grad_exact(spec, theta, d);
    const auto numeric = finite_diff_grad(spec, theta, d, kFdStep);
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
    }
    return worst;
}

double backprop_deviation(Rng& rng) {
    const int input_dim = 2 + static_cast<int>(rng.uniform() * 3.0);
    const int hidden_dim = 2 + static_cast<int>(rng.uniform() * 5.0);
    Discriminator net = init_discriminator(input_dim, hidden_dim, rng);
    // Non-zero biases so their gradients are exercised off the origin.
    for (double& b : net.b1) {
        b = rng.uniform(-0.5, 0.5);
    }
    net.b2 = rng.uniform(-0.5, 0.5);

    LabeledBatch batch;
    const int batch_size = 8;
    for (int i = 0; i < batch_size; ++i) {
        batch.samples.push_back(rng.next_u64() & ((std::uint64_t{1} << input_dim) - 1));
        batch.labels.push_back(rng.uniform() < 0.5 ? 0 : 1);
    }

    const auto analytic = flatten(backward(net, batch));
    const auto ptrs = param_pointers(net);
    double worst = 0.0;
    for (std::size_t j = 0; j < ptrs.size(); ++j) {
        const double orig = *ptrs[j];
        *ptrs[j] = orig + kFdStep;
        const double lp = batch_loss(net, batch);
        *ptrs[j] = orig - kFdStep;
        const double lm = batch_loss(net, batch);
        *ptrs[j] = orig;
        const double fd = (lp - lm) / (2.0 * kFdStep);
        worst = std::max(worst, std::abs(analytic[j] - fd) / (std::abs(fd) + 1e-8));
    }
    return worst;
}

} // namespace

GradcheckReport run_gradcheck(std::uint64_t seed, int trials) {
    if (trials < 1) {
        throw std::invalid_argument("gradcheck needs trials >= 1");
    }
    GradcheckReport report;
    report.trials = trials;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const CircuitSpec spec = random_small_spec(t, rng);
        report.max_param_shift_dev =
            std::max(report.max_param_shift_dev, param_shift_deviation(spec, rng));
        report.max_backprop_rel_dev =
            std::max(report.max_backprop_rel_dev, backprop_deviation(rng));
    }
    return report;
}

std::vector<double*> param_pointers(Discriminator& d) {
    std::vector<double*> ptrs;
    ptrs.reserve(d.w1.size() + d.b1.size() + d.w2.size() + 1);
    for (double& w : d.w1) ptrs.push_back(&w);
    for (double& b : d.b1) ptrs.push_back(&b);
    for (double& w : d.w2) ptrs.push_back(&w);
    ptrs.push_back(&d.b2);
    return ptrs;
}

std::vector<double> flatten(const DiscGradients& grads) {
    std::vector<double> flat;
    flat.reserve(grads.w1.size() + grads.b1.size() + grads.w2.size() + 1);
    flat.insert(flat.end(), grads.w1.begin(), grads.w1.end());
    flat.insert(flat.end(), grads.b1.begin(), grads.b1.end());
    flat.insert(flat.end(), grads.w2.begin(), grads.w2.end());
    flat.push_back(grads.b2);
    return flat;
}

} // namespace qgan
