#include "qgan/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace qgan {

namespace {

constexpr int kMaxQubits = 24;

// Bit position of `qubit` within a basis index (qubit 0 is the MSB).
std::size_t bit_pos(int num_qubits, int qubit) {
    return static_cast<std::size_t>(num_qubits - 1 - qubit);
}

void check_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.num_qubits) +
                                " qubits");
    }
}

} // namespace

SingleQubitGate rx_gate(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {Complex(c, 0.0), Complex(0.0, -s), Complex(0.0, -s), Complex(c, 0.0)};
}

SingleQubitGate rz_gate(double theta) {
    return {std::polar(1.0, -theta / 2.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
            std::polar(1.0, theta / 2.0)};
}

StateVector zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::length_error("qubit count " + std::to_string(num_qubits) +
                                " outside supported range 1.." + std::to_string(kMaxQubits));
    }
    StateVector state;
    state.num_qubits = num_qubits;
    state.amps.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
    state.amps[0] = Complex(1.0, 0.0);
    return state;
}

void apply_single(StateVector& state, int qubit, const SingleQubitGate& gate) {
    check_qubit(state, qubit);
    const std::size_t stride = std::size_t{1} << bit_pos(state.num_qubits, qubit);
    const std::size_t dim = state.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const Complex a0 = state.amps[i0];
            const Complex a1 = state.amps[i1];
            state.amps[i0] = gate.u11 * a0 + gate.u12 * a1;
            state.amps[i1] = gate.u21 * a0 + gate.u22 * a1;
        }
    }
}

void apply_cp(StateVector& state, int control, int target, double theta) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw std::invalid_argument("controlled-phase control and target must differ");
    }
    const std::size_t mc = std::size_t{1} << bit_pos(state.num_qubits, control);
    const std::size_t mt = std::size_t{1} << bit_pos(state.num_qubits, target);
    const Complex phase = std::polar(1.0, theta);
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mc) && (i & mt)) {
            state.amps[i] *= phase;
        }
    }
}

Distribution probabilities(const StateVector& state) {
    Distribution probs(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        probs[i] = std::norm(state.amps[i]);
    }
    return probs;
}

double norm(const StateVector& state) {
    double total = 0.0;
    for (const Complex& a : state.amps) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

double marginal_prob(const StateVector& state, int qubit, int bit) {
    check_qubit(state, qubit);
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("bit value must be 0 or 1");
    }
    const std::size_t mask = std::size_t{1} << bit_pos(state.num_qubits, qubit);
    const std::size_t want = bit ? mask : 0;
    double total = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == want) {
            total += std::norm(state.amps[i]);
        }
    }
    return total;
}

std::uint64_t sample(const StateVector& state, Rng& rng) {
    const double r = rng.uniform();
    double cum = 0.0;
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        cum += std::norm(state.amps[i]);
        if (r < cum) {
            return i;
        }
    }
    return dim - 1;
}

void collapse_and_reset(StateVector& state, int qubit, int bit) {
    check_qubit(state, qubit);
    const double p = marginal_prob(state, qubit, bit);
    if (p < 1e-14) {
        throw std::runtime_error("collapse onto a branch of negligible probability");
    }
    const std::size_t mask = std::size_t{1} << bit_pos(state.num_qubits, qubit);
    const std::size_t want = bit ? mask : 0;
    const double scale = 1.0 / std::sqrt(p);
    std::vector<Complex> next(state.dim(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == want) {
            // Surviving amplitude, rescaled and moved to the qubit's |0> slot.
            next[i & ~mask] = state.amps[i] * scale;
        }
    }
    state.amps = std::move(next);
}

int measure_and_reset(StateVector& state, int qubit, Rng& rng) {
    check_qubit(state, qubit);
    const double p1 = marginal_prob(state, qubit, 1);
    const double p0 = marginal_prob(state, qubit, 0);
    if (p0 < 1e-14 && p1 < 1e-14) {
        throw std::runtime_error("state numerically degenerate: both marginals vanish");
    }
    int bit;
    if (p1 < 1e-14) {
        bit = 0;
    } else if (p0 < 1e-14) {
        bit = 1;
    } else {
        bit = rng.uniform() < p1 ? 1 : 0;
    }
    collapse_and_reset(state, qubit, bit);
    return bit;
}

std::uint64_t sample_index(const Distribution& dist, Rng& rng) {
    const double r = rng.uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        cum += dist[i];
        if (r < cum) {
            return i;
        }
    }
    return dist.size() - 1;
}

std::string to_bitstring(int num_bits, std::uint64_t index) {
    std::string bits(static_cast<std::size_t>(num_bits), '0');
    for (int q = 0; q < num_bits; ++q) {
        if (index & (std::uint64_t{1} << (num_bits - 1 - q))) {
            bits[static_cast<std::size_t>(q)] = '1';
        }
    }
    return bits;
}

std::uint64_t from_bitstring(const std::string& bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain 0 and 1");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return index;
}

} // namespace qgan
