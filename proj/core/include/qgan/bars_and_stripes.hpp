#pragma once

#include "qgan/rng.hpp"
#include "qgan/state_vector.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qgan {

/// The m x m Bars-and-Stripes dataset: every image whose rows are all equal
/// (stripes) or whose columns are all equal (bars), 2^{m+1} - 2 patterns in
/// total, weighted uniformly.
///
/// Pixel (r, c) maps to bit index r*m + c (row-major), and bit 0 is the most
/// significant bit of the pattern index, matching the global qubit ordering.
struct BasSpec {
    int m = 0;
    std::vector<std::uint64_t> patterns;   // sorted pattern indices
    Distribution target;                   // over all 2^{m*m} outcomes
    std::vector<bool> valid;               // membership mask, indexed by outcome
};

/// Enumerates the pattern set. Guarded to 1 <= m <= 4.
BasSpec bas_patterns(int m);

/// i.i.d. uniform draws from the pattern set.
std::vector<std::uint64_t> sample_real_batch(const BasSpec& spec, int batch, Rng& rng);

bool is_valid(const BasSpec& spec, std::uint64_t x);
bool is_valid(const BasSpec& spec, const std::string& bits);

/// Writes the pattern set, one bitstring per line.
void write_patterns(const BasSpec& spec, const std::string& path);

} // namespace qgan
