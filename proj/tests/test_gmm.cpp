#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vbag/models/gmm.hpp"

using namespace vbag;

namespace {

GmmPrior prior_k(int K, double alpha = 1.0, double nu0 = 100.0, double a = 2.0,
                 double b = 2.0) {
    GmmPrior p;
    p.K = K;
    p.dirichlet_alpha = Vector::Constant(K, alpha);
    p.nu0 = nu0;
    p.ig_a = a;
    p.ig_b = b;
    return p;
}

ObservationSet two_clusters(std::int64_t n, std::uint64_t seed) {
    RngStream rng(seed, 0);
    ObservationSet d;
    d.x.resize(n, 1);
    for (std::int64_t i = 0; i < n; ++i) {
        double c = (i % 2 == 0) ? -5.0 : 5.0;
        d.x(i, 0) = c + rng.normal();
    }
    return d;
}

ObservationSet draw_dataset(std::int64_t n, std::uint64_t seed) {
    RngStream rng(seed, 1);
    ObservationSet d;
    d.x.resize(n, 1);
    for (std::int64_t i = 0; i < n; ++i) d.x(i, 0) = 3.0 * rng.normal();
    return d;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("K = 1 reduces to the conjugate normal-inverse-gamma posterior") {
    ObservationSet data = draw_dataset(80, 11);
    GmmPrior prior = prior_k(1, 1.0, 50.0, 3.0, 2.0);
    auto post = fit_gmm_cavi(data, BootstrapWeights::unit(80), prior, {});

    // Closed-form conjugate update with all responsibilities equal to one.
    double n = 80.0;
    double sx = data.x.col(0).sum();
    double sxx = data.x.col(0).squaredNorm();
    double lambda = 1.0 / prior.nu0 + n;
    double m = sx / lambda;
    double a = prior.ig_a + 0.5 * n;
    double b = prior.ig_b + 0.5 * (sxx - lambda * m * m);

    CHECK(post.gaussian_blocks.front().mean(0) == doctest::Approx(m).epsilon(1e-6));
    CHECK(post.invgamma_blocks.front().shape(0) == doctest::Approx(a).epsilon(1e-6));
    CHECK(post.invgamma_blocks.front().rate(0) == doctest::Approx(b).epsilon(1e-6));
    CHECK(post.gaussian_blocks.front().var(0) ==
          doctest::Approx(b / ((a - 1.0) * lambda)).epsilon(1e-6));
    CHECK(post.converged);
}

TEST_CASE("well-separated clusters are recovered and sorted") {
    ObservationSet data = two_clusters(400, 12);
    auto post = fit_gmm_cavi(data, BootstrapWeights::unit(400), prior_k(2), {});
    const auto& mu = post.gaussian_blocks.front();
    CHECK(std::fabs(mu.mean(0) + 5.0) < 0.2);
    CHECK(std::fabs(mu.mean(1) - 5.0) < 0.2);
    CHECK(mu.mean(0) < mu.mean(1));
}

TEST_CASE("ELBO trace is nondecreasing over 50 random datasets") {
    for (int trial = 0; trial < 50; ++trial) {
        ObservationSet data = draw_dataset(60 + trial, 300 + trial);
        auto post = fit_gmm_cavi(data, BootstrapWeights::unit(data.n()),
                                 prior_k(2 + trial % 2), {});
        CHECK(test::elbo_monotone(post.elbo_trace));
    }
}

TEST_CASE("identical observations with K > 1 warn instead of failing") {
    ObservationSet d;
    d.x = Matrix::Constant(30, 1, 1.25);
    auto post = fit_gmm_cavi(d, BootstrapWeights::unit(30), prior_k(2), {});
    REQUIRE(!post.warnings.empty());
    CHECK(post.warnings.front().find("degenerate") != std::string::npos);
    for (double v : post.gaussian_blocks.front().var) CHECK(v > 0.0);
}

TEST_CASE("integer weights match materialized resampled fits") {
    RngStream rng(13, 0);
    for (int trial = 0; trial < 5; ++trial) {
        ObservationSet data = draw_dataset(25, 400 + trial);
        auto w = resample(25, 40, rng);
        auto weighted = fit_gmm_cavi(data, w, prior_k(2), {});
        auto mat = fit_gmm_cavi(test::materialize(data, w),
                                BootstrapWeights::unit(w.total), prior_k(2), {});
        CHECK((weighted.flat_mean() - mat.flat_mean()).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((weighted.flat_var() - mat.flat_var()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("empty components collapse to the prior without error") {
    // K = 3 on tightly clustered data: at least one component ends up near
    // its prior. The fit must stay valid.
    RngStream rng(14, 0);
    ObservationSet d;
    d.x.resize(40, 1);
    for (int i = 0; i < 40; ++i) d.x(i, 0) = 0.01 * rng.normal();
    auto post = fit_gmm_cavi(d, BootstrapWeights::unit(40), prior_k(3), {});
    for (double v : post.gaussian_blocks.front().var) CHECK(v > 0.0);
    for (double b : post.invgamma_blocks.front().rate) CHECK(b > 0.0);
}

TEST_CASE("input validation") {
    ObservationSet d;
    d.x.resize(4, 2);
    d.x.setZero();
    CHECK_THROWS_AS(fit_gmm_cavi(d, BootstrapWeights::unit(4), prior_k(2), {}),
                    DimensionMismatch);
    GmmPrior bad = prior_k(2);
    bad.nu0 = -1.0;
    ObservationSet u = draw_dataset(10, 15);
    CHECK_THROWS_AS(fit_gmm_cavi(u, BootstrapWeights::unit(10), bad, {}),
                    DomainError);
}

}  // TEST_SUITE
