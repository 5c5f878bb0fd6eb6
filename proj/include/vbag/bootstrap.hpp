#pragma once

#include <cstdint>
#include <vector>

#include "vbag/rng.hpp"

namespace vbag {

// Multinomial bootstrap counts: counts[i] is the number of times
// observation i appears in the replicate; the counts sum to total exactly.
struct BootstrapWeights {
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    static BootstrapWeights unit(std::int64_t n);
};

// Draw Multinomial(M, uniform over n) counts.
BootstrapWeights resample(std::int64_t n, std::int64_t M, RngStream& rng);

// Inputs for bootstrap-size selection. v_n is the plain variational
// posterior variance of the chosen scalar functional, v_n_star the bagged
// variance at M = n, v0 the prior variance of the functional.
struct SizeSelectionInputs {
    double v_n = 0.0;
    double v_n_star = 0.0;
    double v0 = 0.0;
    std::int64_t n = 0;
};

// M* = v_n_star / (v_n_star - v_n) * n, rounded, floored at 1.
std::int64_t asymptotic_optimal_size(const SizeSelectionInputs& in);

// Intermediate quantities of the finite-sample size formula, exposed so
// callers can report them.
struct FiniteSampleSize {
    std::int64_t M = 0;
    double sigma_circ_sq = 0.0;
    double s_circ_sq = 0.0;
};

FiniteSampleSize finite_sample_optimal_size(const SizeSelectionInputs& in);

}  // namespace vbag
