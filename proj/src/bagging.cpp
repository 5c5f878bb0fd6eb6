#include "vbag/bagging.hpp"

#include <cmath>
#include <string>

#include "vbag/errors.hpp"
#include "vbag/parallel.hpp"

namespace vbag {

BaggedPosterior bag(const WeightedFit& fit, const ObservationSet& data, int B,
                    std::int64_t M, const RngStream& rng, const BagOptions& opts) {
    if (B < 1) throw InvalidSize("bag: B must be >= 1");
    if (M < 1) throw InvalidSize("bag: M must be >= 1");
    if (data.n() < 1) throw EmptyData("bag: empty data");

    const std::int64_t n = data.n();
    std::vector<std::optional<MeanFieldPosterior>> fits(B);
    parallel_for(B, opts.workers, [&](int b) {
        RngStream stream = rng.substream(static_cast<std::uint64_t>(b));
        BootstrapWeights w = opts.force_unit_weights
                                 ? BootstrapWeights::unit(n)
                                 : resample(n, M, stream);
        try {
            MeanFieldPosterior p = fit(data, w);
            if (p.converged) fits[b] = std::move(p);
        } catch (const Error&) {
            // dropped and counted below
        }
    });

    BaggedPosterior bp;
    bp.bootstrap_size = M;
    bp.base_n = n;
    bp.c_ratio = static_cast<double>(M) / static_cast<double>(n);
    for (int b = 0; b < B; ++b) {
        if (fits[b]) {
            bp.components.push_back(std::move(*fits[b]));
            bp.replicate_seeds.push_back(rng.stream_id() + b);
        } else {
            ++bp.discarded;
        }
    }
    if (bp.components.empty())
        throw AllReplicatesFailed("bag: all " + std::to_string(B) +
                                  " replicates failed or did not converge");
    return bp;
}

std::pair<Vector, SymMatrix> bagged_moments(const BaggedPosterior& bp) {
    const auto& comps = bp.components;
    const std::string sig = comps.front().structure_signature();
    for (const auto& c : comps)
        if (c.structure_signature() != sig)
            throw StructureMismatch("bagged_moments: components disagree: " +
                                    sig + " vs " + c.structure_signature());
    const int d = comps.front().flat_dim();
    const double B = static_cast<double>(comps.size());

    Vector mean = Vector::Zero(d);
    for (const auto& c : comps) mean += c.flat_mean();
    mean /= B;

    // Law of total variance: average within-component covariance (diagonal
    // for a mean-field component) plus covariance of component means.
    Matrix cov = Matrix::Zero(d, d);
    for (const auto& c : comps) {
        cov.diagonal() += c.flat_var();
        Vector dm = c.flat_mean() - mean;
        cov.noalias() += dm * dm.transpose();
    }
    cov /= B;
    return {mean, SymMatrix(0.5 * (cov + cov.transpose()))};
}

CovarianceReport covariance_report(const BaggedPosterior& bp,
                                   std::optional<SymMatrix> sandwich,
                                   std::optional<SymMatrix> exact) {
    auto [mean, cov] = bagged_moments(bp);
    SymMatrix corrected = correct_covariance(cov, CovCorrection::WellSpecified);
    return {mean, cov, corrected, std::move(sandwich), std::move(exact)};
}

SymMatrix correct_covariance(const SymMatrix& raw, CovCorrection mode) {
    Matrix m = raw.mat();
    if (mode == CovCorrection::WellSpecified)
        m.diagonal() *= 0.5;
    else
        m.diagonal().setZero();
    return SymMatrix(m);
}

SymMatrix recombine_covariance(const SymMatrix& offdiag_part,
                               const Vector& diagonal, bool* clipped) {
    if (diagonal.size() != offdiag_part.dim())
        throw DimensionMismatch("recombine_covariance: diagonal length mismatch");
    Matrix m = offdiag_part.mat();
    m.diagonal() = diagonal;
    return project_pd(SymMatrix(m), 1e-10, clipped);
}

SymMatrix sandwich_covariance(const SandwichInputs& si) {
    const int d = si.hessian_mean.dim();
    if (si.score_rows.cols() != d)
        throw DimensionMismatch("sandwich_covariance: score/hessian mismatch");
    const std::int64_t n = si.score_rows.rows();
    if (n == 0) throw EmptyData("sandwich_covariance: no score rows");

    Eigen::FullPivLU<Matrix> lu(si.hessian_mean.mat());
    if (!lu.isInvertible())
        throw SingularHessian("sandwich_covariance: hessian_mean is singular");
    Matrix vinv = lu.inverse();

    Matrix dmat = si.score_rows.transpose() * si.score_rows /
                  static_cast<double>(n);
    Matrix s = vinv * dmat * vinv.transpose();
    return SymMatrix(0.5 * (s + s.transpose()));
}

bool CredibleEllipsoid::contains(const Vector& theta) const {
    if (theta.size() != center.size())
        throw DimensionMismatch("CredibleEllipsoid: point dimension mismatch");
    Vector diff = theta - center;
    Matrix L = cholesky(shape);
    Vector z = L.triangularView<Eigen::Lower>().solve(diff);
    return static_cast<double>(n) * z.squaredNorm() <= radius_sq;
}

CredibleEllipsoid credible_ellipsoid(const Vector& center, const SymMatrix& sigma,
                                     double level, std::int64_t n) {
    if (!(level > 0.0 && level < 1.0))
        throw DomainError("credible_ellipsoid: level must lie in (0,1)");
    cholesky(sigma);  // PD check up front
    CredibleEllipsoid e{center, sigma, 0.0, level, n};
    e.radius_sq = chi2_quantile(level, static_cast<int>(center.size()));
    return e;
}

CoverageResult coverage_experiment(const CoverageScenario& sc, int reps,
                                   double level, const RngStream& rng,
                                   int workers) {
    if (reps < 1) throw InvalidSize("coverage_experiment: reps must be >= 1");

    std::vector<int> outcome(reps, -1);  // 1 hit, 0 miss, -1 failed
    parallel_for(reps, workers, [&](int rep) {
        // Disjoint stream blocks per replication: one stream for the data,
        // B for the bag replicates.
        std::uint64_t base =
            rng.stream_id() + static_cast<std::uint64_t>(rep) *
                                  (static_cast<std::uint64_t>(sc.B) + 1);
        RngStream data_stream = rng.substream(base - rng.stream_id());
        try {
            ObservationSet data = sc.generate(data_stream);
            std::int64_t M = sc.M > 0 ? sc.M : data.n();
            BaggedPosterior bp =
                bag(sc.fit, data, sc.B, M, data_stream.substream(1));
            auto [bmean, bcov] = bagged_moments(bp);
            // Shape: n times the bagged covariance, the sample-scale
            // estimate of the limiting covariance.
            SymMatrix shape(static_cast<double>(data.n()) * bcov.mat());
            CredibleEllipsoid ell =
                credible_ellipsoid(sc.center(data), shape, level, data.n());
            outcome[rep] = ell.contains(sc.theta0) ? 1 : 0;
        } catch (const AllReplicatesFailed&) {
            outcome[rep] = -1;
        }
    });

    CoverageResult res;
    for (int o : outcome) {
        if (o < 0) {
            ++res.failed_reps;
            continue;
        }
        ++res.completed;
        res.hits += o;
    }
    if (res.completed == 0)
        throw AllReplicatesFailed("coverage_experiment: no replication completed");
    res.coverage = static_cast<double>(res.hits) / res.completed;
    auto ci = binomial_exact_ci(res.hits, res.completed);
    res.ci_low = ci.first;
    res.ci_high = ci.second;
    return res;
}

Matrix sample_bagged(const BaggedPosterior& bp, std::int64_t k, RngStream& rng) {
    const int d = bp.components.front().flat_dim();
    Matrix out(k, d);
    const std::uint64_t B = bp.components.size();
    for (std::int64_t r = 0; r < k; ++r) {
        const auto& c = bp.components[rng.uniform_below(B)];
        out.row(r) = c.sample(rng).transpose();
    }
    return out;
}

namespace {
// log P(X <= h) for X ~ Binomial(n, p), by direct summation.
double binom_cdf(int h, int n, double p) {
    if (h < 0) return 0.0;
    if (h >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    double lp = std::log(p), lq = std::log1p(-p);
    double s = 0.0;
    for (int k = 0; k <= h; ++k) {
        double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(n - k + 1.0) + k * lp + (n - k) * lq;
        s += std::exp(lg);
    }
    return std::min(s, 1.0);
}

// Bisection for a function of p that is decreasing in p.
double bisect_p(const std::function<double(double)>& f, double target) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

std::pair<double, double> binomial_exact_ci(int hits, int trials,
                                            double confidence) {
    if (trials < 1) throw InvalidSize("binomial_exact_ci: trials must be >= 1");
    if (hits < 0 || hits > trials)
        throw DomainError("binomial_exact_ci: hits out of range");
    double alpha = 1.0 - confidence;
    double lo = 0.0, hi = 1.0;
    if (hits > 0)
        lo = bisect_p([&](double p) { return binom_cdf(hits - 1, trials, p); },
                      1.0 - alpha / 2.0);
    if (hits < trials)
        hi = bisect_p([&](double p) { return binom_cdf(hits, trials, p); },
                      alpha / 2.0);
    return {lo, hi};
}

}  // namespace vbag
