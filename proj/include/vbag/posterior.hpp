#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vbag/linalg.hpp"
#include "vbag/rng.hpp"

namespace vbag {

// Raw i.i.d. sample: n rows by d columns, plus an optional response for
// regression models.
struct ObservationSet {
    Matrix x;
    std::optional<Vector> y;

    std::int64_t n() const { return x.rows(); }
    int d() const { return static_cast<int>(x.cols()); }
};

struct GaussianBlock {
    std::string label;
    Vector mean;
    Vector var;  // strictly positive, one entry per coordinate
};

struct BernoulliBlock {
    std::string label;
    Vector prob;  // inclusion probabilities in [0, 1]
};

struct InvGammaBlock {
    std::string label;
    Vector shape;
    Vector rate;
};

// Product of per-coordinate distributions, plus the ELBO trace of the fit
// that produced it. The flattened coordinate order is: all Gaussian blocks,
// then Bernoulli blocks, then inverse-gamma blocks, each in block order.
struct MeanFieldPosterior {
    std::vector<GaussianBlock> gaussian_blocks;
    std::vector<BernoulliBlock> bernoulli_blocks;
    std::vector<InvGammaBlock> invgamma_blocks;
    std::vector<double> elbo_trace;
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;

    int flat_dim() const;
    Vector flat_mean() const;
    // Marginal variance per flattened coordinate. Inverse-gamma coordinates
    // require shape > 2; DomainError otherwise.
    Vector flat_var() const;
    // Block layout signature used to detect mismatched components.
    std::string structure_signature() const;
    // One draw per flattened coordinate.
    Vector sample(RngStream& rng) const;
};

struct FitConfig {
    int max_iters = 500;
    double elbo_tol = 1e-6;
    double variance_floor = 1e-8;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream stream() const { return RngStream(seed, stream_id); }

    void validate() const {
        if (max_iters < 1) throw DomainError("FitConfig: max_iters must be >= 1");
        if (!(elbo_tol > 0.0)) throw DomainError("FitConfig: elbo_tol must be > 0");
        if (!(variance_floor > 0.0))
            throw DomainError("FitConfig: variance_floor must be > 0");
    }
};

}  // namespace vbag
