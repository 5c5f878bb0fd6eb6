#pragma once

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"

namespace vbag {

// Known-precision Gaussian mean model: X_i ~ N(mu, likelihood_precision^-1)
// with independent Gaussian priors per coordinate of mu.
struct GaussianMeanPrior {
    Vector prior_mean;
    Vector prior_precision_diag;
    SymMatrix likelihood_precision;
};

// Coordinate-wise mean-field fit of the weighted model. Coordinate j ends
// at variance 1/(M * Lambda_jj + prior_precision_j); the means are iterated
// to the fixed point of the coordinate updates (tolerance 1e-12).
MeanFieldPosterior fit_gaussian_mean_mfvb(const ObservationSet& data,
                                          const BootstrapWeights& weights,
                                          const GaussianMeanPrior& prior,
                                          const FitConfig& cfg);

// Conjugate posterior with unit weights: precision n * Lambda + diag(p0).
std::pair<Vector, SymMatrix> exact_gaussian_mean_posterior(
    const ObservationSet& data, const GaussianMeanPrior& prior);

}  // namespace vbag
