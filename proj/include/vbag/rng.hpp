#pragma once

#include <cmath>
#include <cstdint>

#include "vbag/errors.hpp"

namespace vbag {

// Seeded random stream based on PCG32. A stream is identified by
// (seed, stream_id); distinct stream ids select distinct PCG increments,
// giving statistically independent sequences that do not depend on how
// work is scheduled across threads. Replicate b of a bagging run draws
// from substream(b) of the run's base stream.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {
        inc_ = (stream_id << 1u) | 1u;
        state_ = 0u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Fresh stream (seed, stream_id + offset); used to hand replicate b
    // its own stream without sharing generator state.
    RngStream substream(std::uint64_t offset) const {
        return RngStream(seed_, stream_id_ + offset);
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted =
            static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer on [0, bound) by rejection (unbiased).
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw DomainError("uniform_below: bound must be > 0");
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Standard normal via Box-Muller (cos branch only).
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 via the boost identity
    // G(a) = G(a+1) * U^(1/a).
    double gamma(double shape) {
        if (shape <= 0.0) throw DomainError("gamma: shape must be > 0");
        if (shape < 1.0) {
            double u = 1.0 - uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = 1.0 - uniform();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Inverse-gamma(shape, rate): 1 / Gamma(shape, 1/rate).
    double inverse_gamma(double shape, double rate) {
        if (rate <= 0.0) throw DomainError("inverse_gamma: rate must be > 0");
        return rate / gamma(shape);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Student-t with df degrees of freedom (unit scale).
    double student_t(double df) {
        if (df <= 0.0) throw DomainError("student_t: df must be > 0");
        double z = normal();
        double chi2 = 2.0 * gamma(0.5 * df);
        return z * std::sqrt(df / chi2);
    }

    // Laplace with location 0 and the given scale.
    double laplace(double scale) {
        double u = uniform() - 0.5;
        double s = (u < 0.0) ? -1.0 : 1.0;
        return -scale * s * std::log(1.0 - 2.0 * std::fabs(u));
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace vbag
