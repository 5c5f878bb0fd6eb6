#include "vbag/posterior.hpp"

#include <sstream>

#include "vbag/errors.hpp"

namespace vbag {

int MeanFieldPosterior::flat_dim() const {
    std::int64_t d = 0;
    for (const auto& b : gaussian_blocks) d += b.mean.size();
    for (const auto& b : bernoulli_blocks) d += b.prob.size();
    for (const auto& b : invgamma_blocks) d += b.shape.size();
    return static_cast<int>(d);
}

Vector MeanFieldPosterior::flat_mean() const {
    Vector out(flat_dim());
    int k = 0;
    for (const auto& b : gaussian_blocks)
        for (int i = 0; i < b.mean.size(); ++i) out(k++) = b.mean(i);
    for (const auto& b : bernoulli_blocks)
        for (int i = 0; i < b.prob.size(); ++i) out(k++) = b.prob(i);
    for (const auto& b : invgamma_blocks)
        for (int i = 0; i < b.shape.size(); ++i) {
            if (b.shape(i) <= 1.0)
                throw DomainError("flat_mean: inverse-gamma mean needs shape > 1");
            out(k++) = b.rate(i) / (b.shape(i) - 1.0);
        }
    return out;
}

Vector MeanFieldPosterior::flat_var() const {
    Vector out(flat_dim());
    int k = 0;
    for (const auto& b : gaussian_blocks)
        for (int i = 0; i < b.var.size(); ++i) out(k++) = b.var(i);
    for (const auto& b : bernoulli_blocks)
        for (int i = 0; i < b.prob.size(); ++i)
            out(k++) = b.prob(i) * (1.0 - b.prob(i));
    for (const auto& b : invgamma_blocks)
        for (int i = 0; i < b.shape.size(); ++i) {
            double a = b.shape(i), r = b.rate(i);
            if (a <= 2.0)
                throw DomainError("flat_var: inverse-gamma variance needs shape > 2");
            out(k++) = r * r / ((a - 1.0) * (a - 1.0) * (a - 2.0));
        }
    return out;
}

std::string MeanFieldPosterior::structure_signature() const {
    std::ostringstream os;
    for (const auto& b : gaussian_blocks) os << "g:" << b.label << ":" << b.mean.size() << ";";
    for (const auto& b : bernoulli_blocks) os << "b:" << b.label << ":" << b.prob.size() << ";";
    for (const auto& b : invgamma_blocks) os << "i:" << b.label << ":" << b.shape.size() << ";";
    return os.str();
}

Vector MeanFieldPosterior::sample(RngStream& rng) const {
    Vector out(flat_dim());
    int k = 0;
    for (const auto& b : gaussian_blocks)
        for (int i = 0; i < b.mean.size(); ++i)
            out(k++) = rng.normal(b.mean(i), std::sqrt(b.var(i)));
    for (const auto& b : bernoulli_blocks)
        for (int i = 0; i < b.prob.size(); ++i)
            out(k++) = rng.bernoulli(b.prob(i)) ? 1.0 : 0.0;
    for (const auto& b : invgamma_blocks)
        for (int i = 0; i < b.shape.size(); ++i)
            out(k++) = rng.inverse_gamma(b.shape(i), b.rate(i));
    return out;
}

}  // namespace vbag
