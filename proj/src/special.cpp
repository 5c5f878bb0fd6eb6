#include "vbag/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vbag/errors.hpp"

namespace vbag {

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: x must be > 0");
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series with Bernoulli-number coefficients.
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    result -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return result;
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction (modified Lentz) for Q(a, x), valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    const double fpmin = std::numeric_limits<double>::min() / 1e-16;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw DomainError("gamma_p: a must be > 0");
    if (x < 0.0) throw DomainError("gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, int dof) {
    if (dof < 1) throw DomainError("chi2_cdf: dof must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x);
}

double chi2_quantile(double prob, int dof) {
    if (!(prob > 0.0 && prob < 1.0))
        throw DomainError("chi2_quantile: prob must lie in (0,1), got " +
                          std::to_string(prob));
    if (dof < 1) throw DomainError("chi2_quantile: dof must be >= 1");

    // Bracket, then bisect on the CDF. 200 halvings reach machine precision;
    // stop once the CDF is matched to 1e-12.
    double lo = 0.0;
    double hi = std::max(16.0, 4.0 * dof);
    while (chi2_cdf(hi, dof) < prob) hi *= 2.0;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        double c = chi2_cdf(mid, dof);
        if (std::fabs(c - prob) < 1e-12) break;
        if (c < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * std::max(1.0, mid)) break;
    }
    return mid;
}

}  // namespace vbag
