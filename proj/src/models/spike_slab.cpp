#include "vbag/models/spike_slab.hpp"

#include <cmath>

#include "vbag/errors.hpp"
#include "vbag/special.hpp"

namespace vbag {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double bern_entropy(double g) {
    double h = 0.0;
    if (g > 0.0) h -= g * std::log(g);
    if (g < 1.0) h -= (1.0 - g) * std::log(1.0 - g);
    return h;
}
}  // namespace

MeanFieldPosterior fit_spike_slab_vb(const Matrix& X, const Vector& y,
                                     const BootstrapWeights& weights,
                                     const SpikeSlabPrior& prior,
                                     const FitConfig& cfg) {
    cfg.validate();
    const std::int64_t n = X.rows();
    const int q = static_cast<int>(X.cols());
    if (y.size() != n || static_cast<std::int64_t>(weights.counts.size()) != n)
        throw DimensionMismatch("fit_spike_slab_vb: X, y, weights sizes disagree");
    if (n == 0 || q == 0) throw EmptyData("fit_spike_slab_vb: empty design");
    if (!(prior.sigma_beta_sq > 0.0) || !(prior.ig_A > 0.0) || !(prior.ig_B > 0.0))
        throw DomainError("fit_spike_slab_vb: prior scales must be > 0");
    if (!(prior.p_incl > 0.0 && prior.p_incl < 1.0))
        throw DomainError("fit_spike_slab_vb: p_incl must lie in (0,1)");

    // Weighted sufficient statistics.
    Matrix G = Matrix::Zero(q, q);
    Vector h = Vector::Zero(q);
    double yy = 0.0;
    double Nw = static_cast<double>(weights.total);
    for (std::int64_t i = 0; i < n; ++i) {
        double w = static_cast<double>(weights.counts[i]);
        if (w == 0.0) continue;
        Vector xi = X.row(i).transpose();
        G.noalias() += w * xi * xi.transpose();
        h += w * y(i) * xi;
        yy += w * y(i) * y(i);
    }
    G = 0.5 * (G + G.transpose());

    // Rank check on the weighted Gram matrix, with a ridge-jitter tolerance
    // of 1e-8 * trace / q on the smallest eigenvalue.
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(G);
        double jitter = 1e-8 * G.trace() / q;
        if (es.eigenvalues().minCoeff() <= jitter)
            throw SingularDesign("fit_spike_slab_vb: weighted Gram matrix is "
                                 "rank deficient");
    }

    const double logit_p = std::log(prior.p_incl / (1.0 - prior.p_incl));

    Vector g = Vector::Constant(q, prior.p_incl);
    Vector m = Vector::Zero(q);
    Matrix S = prior.sigma_beta_sq * Matrix::Identity(q, q);
    double sa = prior.ig_A + 0.5 * Nw;
    double sb = prior.ig_B + 0.5 * yy;
    double tau = sa / sb;
    double logdet_S = q * std::log(prior.sigma_beta_sq);

    auto second_moment = [&]() -> Matrix { return S + m * m.transpose(); };

    auto expected_rss = [&](const Matrix& B2) {
        double lin = 0.0, quad = 0.0;
        for (int j = 0; j < q; ++j) {
            lin += g(j) * m(j) * h(j);
            quad += g(j) * B2(j, j) * G(j, j);
            for (int l = 0; l < q; ++l)
                if (l != j) quad += g(j) * g(l) * B2(j, l) * G(j, l);
        }
        return yy - 2.0 * lin + quad;
    };

    MeanFieldPosterior post;
    double prev = -1e300;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        // q(beta): precision tau * (Omega o G) + I / sigma_beta_sq, where
        // Omega_jl = g_j g_l off the diagonal and g_j on it.
        Matrix prec(q, q);
        for (int j = 0; j < q; ++j)
            for (int l = 0; l < q; ++l)
                prec(j, l) = tau * G(j, l) * (j == l ? g(j) : g(j) * g(l));
        prec.diagonal().array() += 1.0 / prior.sigma_beta_sq;
        Eigen::LLT<Matrix> llt(prec);
        if (llt.info() != Eigen::Success)
            throw SingularDesign("fit_spike_slab_vb: variational precision "
                                 "factorization failed");
        S = llt.solve(Matrix::Identity(q, q));
        S = 0.5 * (S + S.transpose());
        m = tau * (S * (g.array() * h.array()).matrix());
        logdet_S = -2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();

        // q(gamma_j), cycled with current g.
        Matrix B2 = second_moment();
        for (int j = 0; j < q; ++j) {
            double cross = 0.0;
            for (int l = 0; l < q; ++l)
                if (l != j) cross += g(l) * B2(j, l) * G(j, l);
            double eta = logit_p +
                         tau * (m(j) * h(j) - 0.5 * B2(j, j) * G(j, j) - cross);
            g(j) = sigmoid(eta);
        }

        // q(sigma^2).
        double erss = std::max(expected_rss(B2), 0.0);
        sa = prior.ig_A + 0.5 * Nw;
        sb = prior.ig_B + 0.5 * erss;
        tau = sa / sb;

        // ELBO.
        double elog_s2 = std::log(sb) - digamma(sa);
        double e = -0.5 * Nw * kLog2Pi - 0.5 * Nw * elog_s2 - 0.5 * tau * erss;
        e += -0.5 * q * std::log(2.0 * 3.14159265358979323846 * prior.sigma_beta_sq) -
             0.5 / prior.sigma_beta_sq * (S.trace() + m.squaredNorm());
        e += prior.ig_A * std::log(prior.ig_B) - std::lgamma(prior.ig_A) -
             (prior.ig_A + 1.0) * elog_s2 - prior.ig_B * tau;
        for (int j = 0; j < q; ++j)
            e += g(j) * std::log(prior.p_incl) +
                 (1.0 - g(j)) * std::log(1.0 - prior.p_incl) + bern_entropy(g(j));
        e += 0.5 * (q * (1.0 + kLog2Pi) + logdet_S);
        e += sa + std::log(sb) + std::lgamma(sa) - (1.0 + sa) * digamma(sa);
        post.elbo_trace.push_back(e);

        if (iter > 0 && std::fabs(e - prev) < cfg.elbo_tol) {
            post.converged = true;
            ++iter;
            break;
        }
        prev = e;
    }
    post.iterations = iter;

    post.gaussian_blocks.push_back({"beta", m, S.diagonal()});
    post.bernoulli_blocks.push_back({"gamma", g});
    Vector va(1), vb(1);
    va << sa;
    vb << sb;
    post.invgamma_blocks.push_back({"sigma2", va, vb});
    return post;
}

}  // namespace vbag
