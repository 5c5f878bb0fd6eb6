#pragma once

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"

namespace vbag {

// Spike-and-slab linear regression:
//   y | X, Gamma, beta, sigma^2 ~ N(X Gamma beta, sigma^2 I)
//   beta ~ N(0, sigma_beta_sq I), sigma^2 ~ InvGamma(ig_A, ig_B),
//   gamma_j ~ Bernoulli(p_incl), Gamma = diag(gamma).
struct SpikeSlabPrior {
    double sigma_beta_sq = 10.0;
    double ig_A = 0.1;
    double ig_B = 0.1;
    double p_incl = 0.5;
};

// CAVI fit with q(beta) a full-covariance Gaussian within the beta block,
// independent Bernoulli q(gamma_j) and inverse-gamma q(sigma^2).
// Observation i enters every sufficient statistic with multiplicity
// weights.counts[i].
//
// Output blocks: gaussian "beta" (mean, diagonal of the q covariance),
// bernoulli "gamma", invgamma "sigma2".
MeanFieldPosterior fit_spike_slab_vb(const Matrix& X, const Vector& y,
                                     const BootstrapWeights& weights,
                                     const SpikeSlabPrior& prior,
                                     const FitConfig& cfg);

}  // namespace vbag
