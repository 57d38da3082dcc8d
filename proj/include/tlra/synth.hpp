#pragma once

#include <cstdint>

#include "tlra/tables.hpp"

namespace tlra {

/// Controls for the synthetic benchmark generator. Rows draw one level per
/// covariate block uniformly; amounts are x_ij = base_j * exp(sum_k z_ik
/// theta_kj + noise), with theta ~ N(0, effect^2) and noise ~ N(0, noise_sd^2).
struct SyntheticOptions {
    std::uint64_t seed = 1;
    Index rows = 166;
    Index cols = 9;
    std::vector<Index> blocks = {2, 3, 3, 3};
    double effect = 0.5;
    double noise_sd = 0.1;
};

struct SyntheticData {
    ElementaryTable x;
    IndicatorMatrix z;
};

/// Deterministic for a given option set, independent of platform RNG
/// distributions (raw 64-bit draws plus explicit Box-Muller).
SyntheticData generate_synthetic(const SyntheticOptions& options);

}  // namespace tlra
