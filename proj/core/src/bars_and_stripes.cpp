#include "qgan/bars_and_stripes.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace qgan {

BasSpec bas_patterns(int m) {
    if (m < 1 || m > 4) {
        throw std::length_error("bars-and-stripes side length must be in 1..4");
    }
    BasSpec spec;
    spec.m = m;
    const int n = m * m;
    const std::size_t outcomes = std::size_t{1} << n;

    auto pixel_bit = [&](int r, int c) {
        return std::uint64_t{1} << (n - 1 - (r * m + c));
    };

    std::vector<std::uint64_t> set;
    for (std::uint64_t assignment = 0; assignment < (std::uint64_t{1} << m); ++assignment) {
        std::uint64_t bars = 0;
        std::uint64_t stripes = 0;
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) {
                if (assignment & (std::uint64_t{1} << c)) {
                    bars |= pixel_bit(r, c);
                }
                if (assignment & (std::uint64_t{1} << r)) {
                    stripes |= pixel_bit(r, c);
                }
            }
        }
        set.push_back(bars);
        set.push_back(stripes);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());

    spec.patterns = std::move(set);
    spec.valid.assign(outcomes, false);
    spec.target.assign(outcomes, 0.0);
    const double weight = 1.0 / static_cast<double>(spec.patterns.size());
    for (std::uint64_t p : spec.patterns) {
        spec.valid[p] = true;
        spec.target[p] = weight;
    }
    return spec;
}

std::vector<std::uint64_t> sample_real_batch(const BasSpec& spec, int batch, Rng& rng) {
    if (batch < 1) {
        throw std::invalid_argument("batch size must be >= 1");
    }
    std::vector<std::uint64_t> samples(static_cast<std::size_t>(batch));
    const double count = static_cast<double>(spec.patterns.size());
    for (auto& s : samples) {
        auto k = static_cast<std::size_t>(rng.uniform() * count);
        if (k >= spec.patterns.size()) {
            k = spec.patterns.size() - 1;
        }
        s = spec.patterns[k];
    }
    return samples;
}

bool is_valid(const BasSpec& spec, std::uint64_t x) {
    if (x >= spec.valid.size()) {
        throw std::invalid_argument("sample does not fit the m*m image size");
    }
    return spec.valid[x];
}

bool is_valid(const BasSpec& spec, const std::string& bits) {
    if (bits.size() != static_cast<std::size_t>(spec.m * spec.m)) {
        throw std::invalid_argument("bitstring length must equal m*m");
    }
    return is_valid(spec, from_bitstring(bits));
}

void write_patterns(const BasSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    for (std::uint64_t p : spec.patterns) {
        out << to_bitstring(spec.m * spec.m, p) << '\n';
    }
    if (!out.good()) {
        throw std::runtime_error("failed writing " + path);
    }
}

} // namespace qgan
