#include "vbag/models/symmetric_mixture.hpp"

#include <cmath>

#include "vbag/errors.hpp"

namespace vbag {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

void check(const ObservationSet& data, const BootstrapWeights& weights) {
    if (data.n() == 0) throw EmptyData("symmetric mixture: empty data");
    if (data.d() != 1)
        throw DimensionMismatch("symmetric mixture: univariate data required");
    if (static_cast<std::int64_t>(weights.counts.size()) != data.n())
        throw DimensionMismatch("symmetric mixture: weights length != n");
}
}  // namespace

double symmetric_mixture_vll(double x, double theta) {
    if (theta < 0.0) throw DomainError("symmetric_mixture_vll: theta must be >= 0");
    double r = x - sign_of(x) * theta;
    return -0.5 * r * r - 0.5 * kLog2Pi;
}

double symmetric_mixture_mvle(const ObservationSet& data,
                              const BootstrapWeights& weights) {
    check(data, weights);
    double s = 0.0;
    for (std::int64_t i = 0; i < data.n(); ++i)
        s += static_cast<double>(weights.counts[i]) * std::fabs(data.x(i, 0));
    return s / static_cast<double>(weights.total);
}

double symmetric_mixture_asymptotic_var(const ObservationSet& data,
                                        double theta0, double c) {
    if (data.n() == 0) throw EmptyData("symmetric mixture: empty data");
    if (theta0 < 0.0) throw DomainError("asymptotic var: theta0 must be >= 0");
    if (!(c > 0.0)) throw DomainError("asymptotic var: c must be > 0");
    double s = 0.0;
    for (std::int64_t i = 0; i < data.n(); ++i) {
        double x = data.x(i, 0);
        double r = x - sign_of(x) * theta0;
        s += r * r;
    }
    return (1.0 + s / static_cast<double>(data.n())) / c;
}

MeanFieldPosterior fit_symmetric_mixture_vb(const ObservationSet& data,
                                            const BootstrapWeights& weights) {
    check(data, weights);
    double theta_hat = symmetric_mixture_mvle(data, weights);
    double var = 1.0 / static_cast<double>(weights.total);

    // Profile value of the weighted variational likelihood at the maximizer.
    double vll = 0.0;
    for (std::int64_t i = 0; i < data.n(); ++i)
        vll += static_cast<double>(weights.counts[i]) *
               symmetric_mixture_vll(data.x(i, 0), theta_hat);

    MeanFieldPosterior post;
    Vector m(1), v(1);
    m << theta_hat;
    v << var;
    post.gaussian_blocks.push_back({"theta", m, v});
    post.elbo_trace.push_back(vll);
    post.converged = true;
    post.iterations = 1;
    return post;
}

}  // namespace vbag
