#include "qgan/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgan {

namespace {

constexpr int kMaxMpsEnumerationBits = 16;
// Branches below this probability are dropped during enumeration; total mass
// lost is bounded by N * 1e-14.
constexpr double kBranchCutoff = 1e-14;

void check_theta_size(const CircuitSpec& spec, const ParamVector& theta) {
    const int expected = param_count(spec);
    if (static_cast<int>(theta.size()) != expected) {
        throw std::invalid_argument("parameter vector has " + std::to_string(theta.size()) +
                                    " entries, circuit expects " + std::to_string(expected));
    }
}

// Applies one node of the MPS chain (its L layers) to the register.
void apply_mps_node(StateVector& state, const CircuitSpec& spec, const ParamVector& theta,
                    int node) {
    const int w = spec.width();
    const int per_layer = 5 * w;
    for (int l = 0; l < spec.layers; ++l) {
        const int block = node * spec.layers + l;
        apply_layer(state, w,
                    std::span<const double>(theta).subspan(
                        static_cast<std::size_t>(block) * per_layer, per_layer));
    }
}

void mps_enumerate(StateVector state, const CircuitSpec& spec, const ParamVector& theta,
                   int node, std::uint64_t prefix, double weight, Distribution& probs) {
    if (node == spec.num_bits) {
        probs[prefix] += weight;
        return;
    }
    apply_mps_node(state, spec, theta, node);
    for (int bit = 0; bit < 2; ++bit) {
        const double p = marginal_prob(state, 0, bit);
        if (p < kBranchCutoff) {
            continue;
        }
        StateVector branch = state;
        collapse_and_reset(branch, 0, bit);
        mps_enumerate(std::move(branch), spec, theta, node + 1, (prefix << 1) | bit,
                      weight * p, probs);
    }
}

} // namespace

void validate_spec(const CircuitSpec& spec) {
    if (spec.num_bits < 1) {
        throw std::invalid_argument("circuit num_bits must be >= 1");
    }
    if (spec.layers < 1) {
        throw std::invalid_argument("circuit layers must be >= 1");
    }
    if (spec.family == CircuitFamily::Mps && spec.ancillas < 1) {
        throw std::invalid_argument("MPS circuit needs ancillas >= 1");
    }
}

int param_count(const CircuitSpec& spec) {
    validate_spec(spec);
    const int base = 5 * spec.num_bits * spec.layers;
    return spec.family == CircuitFamily::Mps ? base * (spec.ancillas + 1) : base;
}

ParamSlot param_slot(const CircuitSpec& spec, int index) {
    if (index < 0 || index >= param_count(spec)) {
        throw std::out_of_range("parameter index out of range");
    }
    const int w = spec.width();
    const int per_block = 5 * w;
    ParamSlot slot{};
    slot.block = index / per_block;
    const int off = index % per_block;
    if (off < 3 * w) {
        slot.qubit = off / 3;
        slot.slot = off % 3;
    } else {
        const int e = off - 3 * w;
        slot.qubit = e / 2;
        slot.slot = 3 + e % 2;
    }
    return slot;
}

int param_index(const CircuitSpec& spec, const ParamSlot& slot) {
    const int w = spec.width();
    const int blocks = param_count(spec) / (5 * w);
    if (slot.block < 0 || slot.block >= blocks || slot.qubit < 0 || slot.qubit >= w ||
        slot.slot < 0 || slot.slot > 4) {
        throw std::out_of_range("parameter slot out of range");
    }
    const int off = slot.slot < 3 ? 3 * slot.qubit + slot.slot : 3 * w + 2 * slot.qubit + (slot.slot - 3);
    return slot.block * 5 * w + off;
}

void apply_layer(StateVector& state, int width, std::span<const double> layer_params) {
    if (width != state.num_qubits) {
        throw std::invalid_argument("layer width does not match register width");
    }
    if (layer_params.size() != static_cast<std::size_t>(5 * width)) {
        throw std::invalid_argument("layer expects " + std::to_string(5 * width) +
                                    " angles, got " + std::to_string(layer_params.size()));
    }
    for (int q = 0; q < width; ++q) {
        apply_single(state, q, rz_gate(layer_params[3 * q]));
        apply_single(state, q, rx_gate(layer_params[3 * q + 1]));
        apply_single(state, q, rz_gate(layer_params[3 * q + 2]));
    }
    if (width == 1) {
        return; // degenerate ring: control would equal target
    }
    for (int q = 0; q < width; ++q) {
        const int target = (q + 1) % width;
        apply_cp(state, q, target, layer_params[3 * width + 2 * q]);
        apply_single(state, target, rx_gate(layer_params[3 * width + 2 * q + 1]));
    }
}

StateVector run_layered(const CircuitSpec& spec, const ParamVector& theta) {
    if (spec.family != CircuitFamily::Layered) {
        throw std::invalid_argument("run_layered requires a layered circuit spec");
    }
    check_theta_size(spec, theta);
    StateVector state = zero_state(spec.num_bits);
    const int per_layer = 5 * spec.num_bits;
    for (int l = 0; l < spec.layers; ++l) {
        apply_layer(state, spec.num_bits,
                    std::span<const double>(theta).subspan(
                        static_cast<std::size_t>(l) * per_layer, per_layer));
    }
    return state;
}

Distribution layered_distribution(const CircuitSpec& spec, const ParamVector& theta) {
    return probabilities(run_layered(spec, theta));
}

std::uint64_t mps_sample(const CircuitSpec& spec, const ParamVector& theta, Rng& rng) {
    if (spec.family != CircuitFamily::Mps) {
        throw std::invalid_argument("mps_sample requires an MPS circuit spec");
    }
    check_theta_size(spec, theta);
    StateVector state = zero_state(spec.width());
    std::uint64_t outcome = 0;
    for (int node = 0; node < spec.num_bits; ++node) {
        apply_mps_node(state, spec, theta, node);
        const int bit = measure_and_reset(state, 0, rng);
        outcome = (outcome << 1) | static_cast<std::uint64_t>(bit);
    }
    return outcome;
}

Distribution mps_distribution(const CircuitSpec& spec, const ParamVector& theta) {
    if (spec.family != CircuitFamily::Mps) {
        throw std::invalid_argument("mps_distribution requires an MPS circuit spec");
    }
    check_theta_size(spec, theta);
    if (spec.num_bits > kMaxMpsEnumerationBits) {
        throw std::length_error("MPS enumeration supports at most " +
                                std::to_string(kMaxMpsEnumerationBits) + " output bits");
    }
    Distribution probs(std::size_t{1} << spec.num_bits, 0.0);
    mps_enumerate(zero_state(spec.width()), spec, theta, 0, 0, 1.0, probs);
    return probs;
}

Distribution exact_distribution(const CircuitSpec& spec, const ParamVector& theta) {
    return spec.family == CircuitFamily::Mps ? mps_distribution(spec, theta)
                                             : layered_distribution(spec, theta);
}

ParamVector shift_param(const ParamVector& theta, int index, double delta) {
    if (index < 0 || static_cast<std::size_t>(index) >= theta.size()) {
        throw std::out_of_range("parameter index out of range");
    }
    ParamVector shifted = theta;
    shifted[static_cast<std::size_t>(index)] += delta;
    return shifted;
}

ParamVector random_params(const CircuitSpec& spec, Rng& rng) {
    ParamVector theta(static_cast<std::size_t>(param_count(spec)));
    for (double& v : theta) {
        v = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return theta;
}

} // namespace qgan
