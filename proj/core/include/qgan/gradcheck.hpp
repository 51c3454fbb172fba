#pragma once

#include "qgan/discriminator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qgan {

/// Result of the analytic-vs-numeric gradient verification suite.
struct GradcheckReport {
    int trials = 0;
    double param_shift_threshold = 1e-6; // absolute, per component
    double backprop_threshold = 1e-5;    // relative, per parameter
    double max_param_shift_dev = 0.0;
    double max_backprop_rel_dev = 0.0;

    bool param_shift_ok() const { return max_param_shift_dev < param_shift_threshold; }
    bool backprop_ok() const { return max_backprop_rel_dev < backprop_threshold; }
    bool passed() const { return param_shift_ok() && backprop_ok(); }
};

/// Runs `trials` parameter-shift checks (random small circuits of both
/// families against central finite differences of the generator loss) and
/// `trials` backprop checks (random discriminators and batches against
/// finite differences of the batch BCE). Deterministic given the seed.
GradcheckReport run_gradcheck(std::uint64_t seed, int trials);

/// All discriminator parameters in a fixed order (w1, b1, w2, b2), for code
/// that needs to perturb or read them one scalar at a time.
std::vector<double*> param_pointers(Discriminator& d);

/// Gradients flattened in the same order as param_pointers.
std::vector<double> flatten(const DiscGradients& grads);

} // namespace qgan
