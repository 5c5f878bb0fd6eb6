#include "vbag/bootstrap.hpp"

#include <cmath>
#include <string>

#include "vbag/errors.hpp"

namespace vbag {

BootstrapWeights BootstrapWeights::unit(std::int64_t n) {
    BootstrapWeights w;
    w.counts.assign(static_cast<std::size_t>(n), 1);
    w.total = n;
    return w;
}

BootstrapWeights resample(std::int64_t n, std::int64_t M, RngStream& rng) {
    if (n < 1 || M < 1)
        throw InvalidSize("resample: n and M must be >= 1 (n=" +
                          std::to_string(n) + ", M=" + std::to_string(M) + ")");
    BootstrapWeights w;
    w.counts.assign(static_cast<std::size_t>(n), 0);
    w.total = M;
    for (std::int64_t k = 0; k < M; ++k)
        ++w.counts[rng.uniform_below(static_cast<std::uint64_t>(n))];
    return w;
}

std::int64_t asymptotic_optimal_size(const SizeSelectionInputs& in) {
    if (!(in.v_n > 0.0) || !(in.v_n_star > 0.0))
        throw DomainError("size selection: variances must be > 0");
    if (in.n < 1) throw InvalidSize("size selection: n must be >= 1");
    if (in.v_n_star <= in.v_n)
        throw DegenerateVariance(
            "asymptotic_optimal_size: bagged variance does not exceed the "
            "plain variance (v*=" + std::to_string(in.v_n_star) +
            ", v=" + std::to_string(in.v_n) + "); fall back to M = n");
    double m = in.v_n_star / (in.v_n_star - in.v_n) * static_cast<double>(in.n);
    return std::max<std::int64_t>(1, std::llround(m));
}

FiniteSampleSize finite_sample_optimal_size(const SizeSelectionInputs& in) {
    if (!(in.v_n > 0.0) || !(in.v_n_star > 0.0) || !(in.v0 > 0.0))
        throw DomainError("size selection: variances must be > 0");
    if (in.n < 1) throw InvalidSize("size selection: n must be >= 1");
    if (in.v_n_star <= in.v_n)
        throw DegenerateVariance(
            "finite_sample_optimal_size: bagged variance does not exceed the "
            "plain variance; fall back to M = n");
    if (in.v0 <= in.v_n)
        throw DegenerateVariance(
            "finite_sample_optimal_size: prior variance must exceed the "
            "posterior variance (v0=" + std::to_string(in.v0) +
            ", v=" + std::to_string(in.v_n) + ")");

    const double n = static_cast<double>(in.n);
    FiniteSampleSize out;
    out.sigma_circ_sq = n * in.v0 * in.v_n / (in.v0 - in.v_n);
    out.s_circ_sq = in.v0 * in.v0 / ((in.v0 - in.v_n) * (in.v0 - in.v_n)) *
                    (in.v_n_star - in.v_n) * n;

    double half = 0.5 * n + 0.5 * n * out.sigma_circ_sq / out.s_circ_sq;
    double bracket = half * half - n * out.sigma_circ_sq / in.v0;
    if (bracket < 0.0)
        throw NegativeDiscriminant(
            "finite_sample_optimal_size: negative discriminant (" +
            std::to_string(bracket) + ") for v0=" + std::to_string(in.v0) +
            ", v=" + std::to_string(in.v_n) + ", v*=" +
            std::to_string(in.v_n_star) + ", n=" + std::to_string(in.n) +
            "; fall back to the asymptotic formula");
    double m = half - out.sigma_circ_sq / in.v0 + std::sqrt(bracket);
    out.M = std::max<std::int64_t>(1, std::llround(m));
    return out;
}

}  // namespace vbag
