#pragma once

#include "qgan/rng.hpp"
#include "qgan/state_vector.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qgan {

/// Flat vector of rotation/phase angles in radians. The index -> gate map is
/// defined by param_slot / param_index below.
using ParamVector = std::vector<double>;

enum class CircuitFamily { Layered, Mps };

/// Generator description.
///
/// Layered family: num_bits qubits, `layers` layers, samples read from a
/// single terminal measurement of all qubits.
///
/// MPS family: a chain of num_bits nodes on a register of ancillas+1 qubits;
/// each node applies `layers` layers, then qubit 0 is measured and reset
/// (qubit recycling), producing one output bit per node.
struct CircuitSpec {
    CircuitFamily family = CircuitFamily::Layered;
    int num_bits = 0;  // N: bits per generated sample
    int layers = 0;    // L: layers per block (per node for MPS)
    int ancillas = 0;  // V: MPS carry qubits (ignored for layered)

    /// Width of the simulated register.
    int width() const { return family == CircuitFamily::Mps ? ancillas + 1 : num_bits; }
};

void validate_spec(const CircuitSpec& spec);

/// 5NL for layered circuits, 5NL(V+1) for MPS circuits.
int param_count(const CircuitSpec& spec);

/// Where one parameter lives: block is the layer index (layered) or
/// node*L+layer (MPS); slot 0..2 are the Rz/Rx/Rz rotations on `qubit`,
/// slot 3 the controlled-phase angle with control `qubit`, slot 4 the Rx
/// that follows it on the ring target (qubit+1 mod width).
struct ParamSlot {
    int block;
    int qubit;
    int slot;

    bool operator==(const ParamSlot&) const = default;
};

ParamSlot param_slot(const CircuitSpec& spec, int index);
int param_index(const CircuitSpec& spec, const ParamSlot& slot);

/// One layer on a register of `width` qubits: per-qubit Rz, Rx, Rz rotations,
/// then the entangling ring of (CP, Rx) pairs in ascending control order.
/// Expects exactly 5*width angles. A one-qubit register has no ring; the two
/// entangler angles per qubit are still allocated but inert.
void apply_layer(StateVector& state, int width, std::span<const double> layer_params);

StateVector run_layered(const CircuitSpec& spec, const ParamVector& theta);

Distribution layered_distribution(const CircuitSpec& spec, const ParamVector& theta);

/// Draws one N-bit sample by running the node chain with qubit recycling.
/// Node k's measured bit becomes bit k of the result (qubit-0-first order).
std::uint64_t mps_sample(const CircuitSpec& spec, const ParamVector& theta, Rng& rng);

/// Exact outcome distribution of the MPS sampler, by depth-first enumeration
/// of the 2^N measurement branches. Guarded to N <= 16.
Distribution mps_distribution(const CircuitSpec& spec, const ParamVector& theta);

/// Exact output distribution for either family.
Distribution exact_distribution(const CircuitSpec& spec, const ParamVector& theta);

ParamVector shift_param(const ParamVector& theta, int index, double delta);

/// Fresh parameters, each uniform on (-pi, pi).
ParamVector random_params(const CircuitSpec& spec, Rng& rng);

} // namespace qgan
