#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"
#include "vbag/special.hpp"

namespace vbag {

// Uniform mixture of B variational fits to multinomial bootstrap replicates.
struct BaggedPosterior {
    std::vector<MeanFieldPosterior> components;
    std::int64_t bootstrap_size = 0;  // M
    std::int64_t base_n = 0;          // n
    double c_ratio = 0.0;             // M / n
    std::vector<std::uint64_t> replicate_seeds;  // stream ids, surviving fits
    int discarded = 0;
};

// Fitting contract shared by all models: data plus per-observation counts.
using WeightedFit =
    std::function<MeanFieldPosterior(const ObservationSet&, const BootstrapWeights&)>;

struct BagOptions {
    int workers = 1;
    // Test hook: every replicate sees unit weights instead of a bootstrap
    // draw (a B = 1 bag then equals the plain variational fit).
    bool force_unit_weights = false;
};

// Fit B replicates; replicate b draws its weights from rng.substream(b).
// Fits that fail to converge (or throw) are dropped and counted.
BaggedPosterior bag(const WeightedFit& fit, const ObservationSet& data, int B,
                    std::int64_t M, const RngStream& rng,
                    const BagOptions& opts = {});

// Exact moments of the uniform mixture over the flattened coordinates:
// mean of component means, average component covariance plus covariance of
// component means.
std::pair<Vector, SymMatrix> bagged_moments(const BaggedPosterior& bp);

enum class CovCorrection { WellSpecified, OffDiagonalOnly };

// All covariance views of one bagging run: the raw mixture covariance, the
// diagonal-halved correction, and optional sandwich / exact-posterior
// references for comparison.
struct CovarianceReport {
    Vector bagged_mean;
    SymMatrix bagged_cov;
    SymMatrix corrected_cov;
    std::optional<SymMatrix> sandwich_cov;
    std::optional<SymMatrix> exact_reference;
};

// Assembles the report from a bag; the corrected covariance is derived from
// the raw one, so its off-diagonals match exactly and its diagonal is
// exactly half.
CovarianceReport covariance_report(const BaggedPosterior& bp,
                                   std::optional<SymMatrix> sandwich = {},
                                   std::optional<SymMatrix> exact = {});

// WellSpecified halves the diagonal and keeps the off-diagonal entries.
// OffDiagonalOnly zeroes the diagonal, leaving the off-diagonal part for
// recombination with externally chosen marginal variances.
SymMatrix correct_covariance(const SymMatrix& raw, CovCorrection mode);

// Recombine extracted off-diagonals with a replacement diagonal, projecting
// to the nearest PD matrix (eigenvalues clipped at 1e-10) when needed.
SymMatrix recombine_covariance(const SymMatrix& offdiag_part,
                               const Vector& diagonal, bool* clipped = nullptr);

struct SandwichInputs {
    Matrix score_rows;      // n x d per-observation gradients at the fit
    SymMatrix hessian_mean; // estimate of V
};

// V^-1 (n^-1 sum_i s_i s_i') V^-1, symmetrized.
SymMatrix sandwich_covariance(const SandwichInputs& si);

// Ellipsoid {theta : n (theta-center)' shape^-1 (theta-center) <= radius_sq}
// with radius_sq the chi-square quantile at the requested level. The shape
// matrix lives on the sqrt(n) scale: pass n times a posterior covariance.
struct CredibleEllipsoid {
    Vector center;
    SymMatrix shape;
    double radius_sq = 0.0;
    double level = 0.0;
    std::int64_t n = 0;

    bool contains(const Vector& theta) const;
};

CredibleEllipsoid credible_ellipsoid(const Vector& center, const SymMatrix& sigma,
                                     double level, std::int64_t n);

// One replication of a coverage study: fresh data, a bagging pipeline, an
// ellipsoid, and a hit test against the true parameter.
struct CoverageScenario {
    std::function<ObservationSet(RngStream&)> generate;
    Vector theta0;
    WeightedFit fit;
    // Ellipsoid center, e.g. an exact posterior mean.
    std::function<Vector(const ObservationSet&)> center;
    int B = 30;
    std::int64_t M = 0;  // 0 means M = n
};

struct CoverageResult {
    double coverage = 0.0;
    int hits = 0;
    int completed = 0;
    int failed_reps = 0;
    double ci_low = 0.0;   // exact binomial 95% interval
    double ci_high = 0.0;
};

CoverageResult coverage_experiment(const CoverageScenario& sc, int reps,
                                   double level, const RngStream& rng,
                                   int workers = 1);

// k draws from the uniform mixture, one per row.
Matrix sample_bagged(const BaggedPosterior& bp, std::int64_t k, RngStream& rng);

// Exact (Clopper-Pearson) binomial confidence interval for hits/trials.
std::pair<double, double> binomial_exact_ci(int hits, int trials,
                                            double confidence = 0.95);

}  // namespace vbag
