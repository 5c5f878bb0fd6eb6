#pragma once

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"

namespace vbag {

// Univariate K-component Gaussian mixture with priors
//   pi ~ Dirichlet(alpha), mu_k | sigma_k^2 ~ N(0, nu0 sigma_k^2),
//   sigma_k^2 ~ InvGamma(ig_a, ig_b).
struct GmmPrior {
    int K = 2;
    Vector dirichlet_alpha;  // length K, entries > 0
    double nu0 = 100.0;
    double ig_a = 2.0;
    double ig_b = 2.0;
};

// CAVI fit of the weighted model. q factorizes over (pi, {mu_k, sigma_k^2},
// {z_i}); the (mu_k, sigma_k^2) block is normal-inverse-gamma. Bootstrap
// counts enter every sufficient statistic as observation multiplicities.
//
// Output blocks (components sorted by posterior mean of mu ascending):
//   gaussian "mu":      E[mu_k] and the exact marginal variance
//                       rate / ((shape - 1) lambda_k)
//   gaussian "pi":      moment-matched Dirichlet marginals (K >= 2 only)
//   invgamma "sigma2":  (shape_k, rate_k)
MeanFieldPosterior fit_gmm_cavi(const ObservationSet& data,
                                const BootstrapWeights& weights,
                                const GmmPrior& prior, const FitConfig& cfg);

}  // namespace vbag
