#pragma once

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"

namespace vbag {

// Two-component symmetric unit-variance Gaussian mixture with hard-assigned
// latent labels: the variational likelihood profiles the label out, leaving
// -(x - sign(x) theta)^2 / 2 - log(2 pi) / 2. sign(0) is +1 by convention.

double symmetric_mixture_vll(double x, double theta);

// Maximizer of the weighted variational likelihood: weighted mean of |x|.
double symmetric_mixture_mvle(const ObservationSet& data,
                              const BootstrapWeights& weights);

// (1/c) * (1 + empirical mean of (x - sign(x) theta0)^2).
double symmetric_mixture_asymptotic_var(const ObservationSet& data,
                                        double theta0, double c);

// Variational posterior of theta under a flat prior given weighted data:
// Gaussian with mean the weighted MVLE and variance 1/M.
MeanFieldPosterior fit_symmetric_mixture_vb(const ObservationSet& data,
                                            const BootstrapWeights& weights);

}  // namespace vbag
