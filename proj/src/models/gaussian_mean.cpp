#include "vbag/models/gaussian_mean.hpp"

#include <cmath>

#include "vbag/errors.hpp"

namespace vbag {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_inputs(const ObservationSet& data, const BootstrapWeights& weights,
                  const GaussianMeanPrior& prior) {
    const int d = data.d();
    if (prior.prior_mean.size() != d || prior.prior_precision_diag.size() != d ||
        prior.likelihood_precision.dim() != d)
        throw DimensionMismatch("gaussian mean: prior/data dimension mismatch");
    if (static_cast<std::int64_t>(weights.counts.size()) != data.n())
        throw DimensionMismatch("gaussian mean: weights length != n");
    if ((prior.prior_precision_diag.array() <= 0.0).any())
        throw DomainError("gaussian mean: prior precision entries must be > 0");
}

}  // namespace

MeanFieldPosterior fit_gaussian_mean_mfvb(const ObservationSet& data,
                                          const BootstrapWeights& weights,
                                          const GaussianMeanPrior& prior,
                                          const FitConfig& cfg) {
    cfg.validate();
    check_inputs(data, weights, prior);
    const int d = data.d();
    const Matrix& lam = prior.likelihood_precision.mat();
    const double logdet_lam = logdet_pd(prior.likelihood_precision);  // PD check

    // Weighted sufficient statistics.
    const double M = static_cast<double>(weights.total);
    Vector s = Vector::Zero(d);    // sum_i w_i x_i
    double t = 0.0;                // sum_i w_i x_i' Lam x_i
    for (std::int64_t i = 0; i < data.n(); ++i) {
        double w = static_cast<double>(weights.counts[i]);
        if (w == 0.0) continue;
        Vector xi = data.x.row(i).transpose();
        s += w * xi;
        t += w * xi.dot(lam * xi);
    }
    Vector lam_s = lam * s;

    Vector var(d);
    for (int j = 0; j < d; ++j)
        var(j) = 1.0 / (M * lam(j, j) + prior.prior_precision_diag(j));

    auto elbo = [&](const Vector& m) {
        double quad = t - 2.0 * m.dot(lam_s) +
                      M * (m.dot(lam * m) + (lam.diagonal().array() * var.array()).sum());
        double loglik = -0.5 * M * d * kLog2Pi + 0.5 * M * logdet_lam - 0.5 * quad;
        double prior_term = 0.0;
        double entropy = 0.0;
        for (int j = 0; j < d; ++j) {
            double p0 = prior.prior_precision_diag(j);
            double dm = m(j) - prior.prior_mean(j);
            prior_term += -0.5 * kLog2Pi + 0.5 * std::log(p0) -
                          0.5 * p0 * (dm * dm + var(j));
            entropy += 0.5 * (1.0 + kLog2Pi + std::log(var(j)));
        }
        return loglik + prior_term + entropy;
    };

    MeanFieldPosterior post;
    Vector m = prior.prior_mean;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        double max_delta = 0.0;
        for (int j = 0; j < d; ++j) {
            double cross = 0.0;
            for (int l = 0; l < d; ++l)
                if (l != j) cross += lam(j, l) * m(l);
            double nat = lam_s(j) - M * cross +
                         prior.prior_precision_diag(j) * prior.prior_mean(j);
            double mj = var(j) * nat;
            max_delta = std::max(max_delta, std::fabs(mj - m(j)));
            m(j) = mj;
        }
        post.elbo_trace.push_back(elbo(m));
        if (max_delta < 1e-12) {
            post.converged = true;
            ++iter;
            break;
        }
    }
    post.iterations = iter;
    post.gaussian_blocks.push_back({"mu", m, var});
    return post;
}

std::pair<Vector, SymMatrix> exact_gaussian_mean_posterior(
    const ObservationSet& data, const GaussianMeanPrior& prior) {
    auto w = BootstrapWeights::unit(data.n());
    check_inputs(data, w, prior);
    const int d = data.d();
    const Matrix& lam = prior.likelihood_precision.mat();
    cholesky(prior.likelihood_precision);  // PD check

    Vector s = data.x.colwise().sum().transpose();
    Matrix prec = static_cast<double>(data.n()) * lam;
    prec.diagonal() += prior.prior_precision_diag;
    SymMatrix post_prec{prec};
    Vector rhs = lam * s +
                 (prior.prior_precision_diag.array() * prior.prior_mean.array()).matrix();
    Matrix L = cholesky(post_prec);
    Vector mean = L.transpose().triangularView<Eigen::Upper>().solve(
        L.triangularView<Eigen::Lower>().solve(rhs));
    Matrix cov = L.transpose().triangularView<Eigen::Upper>().solve(
        L.triangularView<Eigen::Lower>().solve(Matrix::Identity(d, d)));
    return {mean, SymMatrix(0.5 * (cov + cov.transpose()))};
}

}  // namespace vbag
