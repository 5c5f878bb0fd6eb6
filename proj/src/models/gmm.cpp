#include "vbag/models/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vbag/errors.hpp"
#include "vbag/special.hpp"

namespace vbag {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

struct NigParams {
    Vector lambda, m, a, b;
};

// Deterministic initialization: sort observations by value (ties broken by
// index) and split the cumulative bootstrap mass into K equal blocks. An
// observation straddling a block boundary gets fractional responsibilities
// proportional to the overlap, which keeps integer-weighted fits identical
// to fits of materialized resampled data.
Matrix quantile_init(const ObservationSet& data, const BootstrapWeights& weights,
                     int K) {
    const std::int64_t n = data.n();
    const double M = static_cast<double>(weights.total);
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int64_t i, std::int64_t j) {
        if (data.x(i, 0) != data.x(j, 0)) return data.x(i, 0) < data.x(j, 0);
        return i < j;
    });
    Matrix r = Matrix::Zero(n, K);
    const double block = M / K;
    double cum = 0.0;
    for (std::int64_t idx : order) {
        double w = static_cast<double>(weights.counts[idx]);
        if (w == 0.0) {
            int k = std::min<int>(K - 1, static_cast<int>(cum / block));
            r(idx, k) = 1.0;
            continue;
        }
        double lo = cum, hi = cum + w;
        for (int k = 0; k < K; ++k) {
            double blo = k * block;
            double bhi = (k == K - 1) ? M : (k + 1) * block;
            double ov = std::min(hi, bhi) - std::max(lo, blo);
            if (ov > 0.0) r(idx, k) = ov / w;
        }
        cum = hi;
    }
    return r;
}

}  // namespace

MeanFieldPosterior fit_gmm_cavi(const ObservationSet& data,
                                const BootstrapWeights& weights,
                                const GmmPrior& prior, const FitConfig& cfg) {
    cfg.validate();
    if (data.d() != 1)
        throw DimensionMismatch("fit_gmm_cavi: univariate data required");
    if (data.n() == 0) throw EmptyData("fit_gmm_cavi: empty data");
    if (static_cast<std::int64_t>(weights.counts.size()) != data.n())
        throw DimensionMismatch("fit_gmm_cavi: weights length != n");
    const int K = prior.K;
    if (K < 1) throw DomainError("fit_gmm_cavi: K must be >= 1");
    if (prior.dirichlet_alpha.size() != K ||
        (prior.dirichlet_alpha.array() <= 0.0).any())
        throw DomainError("fit_gmm_cavi: dirichlet_alpha must be positive, length K");
    if (!(prior.nu0 > 0.0) || !(prior.ig_a > 0.0) || !(prior.ig_b > 0.0))
        throw DomainError("fit_gmm_cavi: hyperparameters must be > 0");

    const std::int64_t n = data.n();
    const double lambda0 = 1.0 / prior.nu0;

    MeanFieldPosterior post;
    double xmin = data.x.col(0).minCoeff(), xmax = data.x.col(0).maxCoeff();
    if (K > 1 && xmin == xmax)
        post.warnings.push_back(
            "degenerate data: all observations identical with K > 1; "
            "variance floor engaged");

    Matrix r = quantile_init(data, weights, K);
    Vector alpha_t(K);
    NigParams nig{Vector(K), Vector(K), Vector(K), Vector(K)};

    auto update_globals = [&]() {
        for (int k = 0; k < K; ++k) {
            double nk = 0.0, sk = 0.0, ssk = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                double wr = static_cast<double>(weights.counts[i]) * r(i, k);
                if (wr == 0.0) continue;
                double x = data.x(i, 0);
                nk += wr;
                sk += wr * x;
                ssk += wr * x * x;
            }
            alpha_t(k) = prior.dirichlet_alpha(k) + nk;
            nig.lambda(k) = lambda0 + nk;
            nig.m(k) = sk / nig.lambda(k);
            nig.a(k) = prior.ig_a + 0.5 * nk;
            nig.b(k) = prior.ig_b + 0.5 * (ssk - nig.lambda(k) * nig.m(k) * nig.m(k));
            if (nig.b(k) < prior.ig_b) nig.b(k) = prior.ig_b;  // guard rounding
        }
    };

    auto update_resp = [&]() {
        double psi_sum = digamma(alpha_t.sum());
        Vector elog_pi(K), elog_s2(K), tau(K);
        for (int k = 0; k < K; ++k) {
            elog_pi(k) = digamma(alpha_t(k)) - psi_sum;
            elog_s2(k) = std::log(nig.b(k)) - digamma(nig.a(k));
            tau(k) = nig.a(k) / nig.b(k);
        }
        for (std::int64_t i = 0; i < n; ++i) {
            double x = data.x(i, 0);
            double mx = -1e300;
            Vector lr(K);
            for (int k = 0; k < K; ++k) {
                double d = x - nig.m(k);
                lr(k) = elog_pi(k) - 0.5 * kLog2Pi - 0.5 * elog_s2(k) -
                        0.5 * (tau(k) * d * d + 1.0 / nig.lambda(k));
                mx = std::max(mx, lr(k));
            }
            double z = 0.0;
            for (int k = 0; k < K; ++k) z += std::exp(lr(k) - mx);
            for (int k = 0; k < K; ++k) r(i, k) = std::exp(lr(k) - mx) / z;
        }
    };

    auto elbo = [&]() {
        double psi_sum = digamma(alpha_t.sum());
        double e = 0.0;
        Vector elog_pi(K), elog_s2(K), tau(K);
        for (int k = 0; k < K; ++k) {
            elog_pi(k) = digamma(alpha_t(k)) - psi_sum;
            elog_s2(k) = std::log(nig.b(k)) - digamma(nig.a(k));
            tau(k) = nig.a(k) / nig.b(k);
        }
        for (std::int64_t i = 0; i < n; ++i) {
            double w = static_cast<double>(weights.counts[i]);
            if (w == 0.0) continue;
            double x = data.x(i, 0);
            for (int k = 0; k < K; ++k) {
                if (r(i, k) == 0.0) continue;
                double d = x - nig.m(k);
                e += w * r(i, k) *
                     (elog_pi(k) - 0.5 * kLog2Pi - 0.5 * elog_s2(k) -
                      0.5 * (tau(k) * d * d + 1.0 / nig.lambda(k)) -
                      std::log(r(i, k)));
            }
        }
        // Dirichlet prior minus variational Dirichlet.
        double a0sum = prior.dirichlet_alpha.sum();
        e += std::lgamma(a0sum) - std::lgamma(alpha_t.sum());
        for (int k = 0; k < K; ++k) {
            e += -std::lgamma(prior.dirichlet_alpha(k)) + std::lgamma(alpha_t(k));
            e += (prior.dirichlet_alpha(k) - alpha_t(k)) * elog_pi(k);
        }
        // Normal-inverse-gamma prior minus variational factor, per component.
        for (int k = 0; k < K; ++k) {
            double emu2_over_s2 = tau(k) * nig.m(k) * nig.m(k) + 1.0 / nig.lambda(k);
            e += -0.5 * std::log(prior.nu0) - 0.5 * lambda0 * emu2_over_s2;
            e += prior.ig_a * std::log(prior.ig_b) - std::lgamma(prior.ig_a) -
                 (prior.ig_a - nig.a(k)) * elog_s2(k) - prior.ig_b * tau(k);
            e += -0.5 * std::log(nig.lambda(k)) + 0.5;
            e += -nig.a(k) * std::log(nig.b(k)) + std::lgamma(nig.a(k)) + nig.a(k);
        }
        return e;
    };

    update_globals();  // from the deterministic initial responsibilities
    double prev = -1e300;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        update_resp();
        update_globals();
        double cur = elbo();
        post.elbo_trace.push_back(cur);
        if (iter > 0 && std::fabs(cur - prev) < cfg.elbo_tol) {
            post.converged = true;
            ++iter;
            break;
        }
        prev = cur;
    }
    post.iterations = iter;

    // Sort components by posterior mean of mu so that bootstrap replicates
    // aggregate matching components.
    std::vector<int> ord(K);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(),
              [&](int i, int j) { return nig.m(i) < nig.m(j); });

    Vector mu_mean(K), mu_var(K), ig_a(K), ig_b(K);
    for (int k = 0; k < K; ++k) {
        int s = ord[k];
        if (nig.a(s) <= 1.0)
            throw DomainError("fit_gmm_cavi: marginal variance of mu undefined "
                              "for shape <= 1; increase ig_a");
        mu_mean(k) = nig.m(s);
        mu_var(k) = std::max(nig.b(s) / ((nig.a(s) - 1.0) * nig.lambda(s)),
                             cfg.variance_floor);
        ig_a(k) = nig.a(s);
        ig_b(k) = nig.b(s);
    }
    post.gaussian_blocks.push_back({"mu", mu_mean, mu_var});
    if (K >= 2) {
        double at_sum = alpha_t.sum();
        Vector pi_mean(K), pi_var(K);
        for (int k = 0; k < K; ++k) {
            double mean = alpha_t(ord[k]) / at_sum;
            pi_mean(k) = mean;
            pi_var(k) = std::max(mean * (1.0 - mean) / (at_sum + 1.0),
                                 cfg.variance_floor);
        }
        post.gaussian_blocks.push_back({"pi", pi_mean, pi_var});
    }
    post.invgamma_blocks.push_back({"sigma2", ig_a, ig_b});
    return post;
}

}  // namespace vbag
