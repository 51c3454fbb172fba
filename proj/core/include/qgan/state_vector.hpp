#pragma once

#include "qgan/rng.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qgan {

using Complex = std::complex<double>;

/// Probabilities over 2^N computational-basis outcomes, indexed by basis index.
using Distribution = std::vector<double>;

/// Dense n-qubit pure state.
///
/// Bit convention, fixed globally: qubit 0 is the most significant bit of
/// the basis-state index. A bitstring therefore reads qubit 0 .. qubit n-1
/// left to right and equals the index written in binary.
struct StateVector {
    int num_qubits = 0;
    std::vector<Complex> amps;

    std::size_t dim() const { return amps.size(); }
};

/// 2x2 unitary, row-major.
struct SingleQubitGate {
    Complex u11, u12, u21, u22;
};

SingleQubitGate rx_gate(double theta);
SingleQubitGate rz_gate(double theta);

/// |0...0> on num_qubits qubits. Guarded to 1..24 qubits.
StateVector zero_state(int num_qubits);

/// Applies a 2x2 unitary to one qubit, mixing amplitude pairs that differ
/// only in that qubit's bit.
void apply_single(StateVector& state, int qubit, const SingleQubitGate& gate);

/// Controlled phase: multiplies amplitudes whose control and target bits are
/// both 1 by e^{i theta}. Symmetric in (control, target).
void apply_cp(StateVector& state, int control, int target, double theta);

Distribution probabilities(const StateVector& state);

double norm(const StateVector& state);

/// Probability that `qubit` reads `bit`.
double marginal_prob(const StateVector& state, int qubit, int bit);

/// Draws a basis index with Born-rule probability |amp|^2.
std::uint64_t sample(const StateVector& state, Rng& rng);

/// Projects `qubit` onto `bit`, renormalizes, then resets the qubit to |0>.
/// The branch must have nonzero probability.
void collapse_and_reset(StateVector& state, int qubit, int bit);

/// Measures one qubit, collapses the state accordingly and resets the
/// measured qubit to |0>. Returns the observed bit. Renormalizes explicitly
/// so repeated measure/reset cycles do not accumulate drift.
int measure_and_reset(StateVector& state, int qubit, Rng& rng);

/// Draws an index from an explicit distribution (CDF walk).
std::uint64_t sample_index(const Distribution& dist, Rng& rng);

std::string to_bitstring(int num_bits, std::uint64_t index);
std::uint64_t from_bitstring(const std::string& bits);

} // namespace qgan
