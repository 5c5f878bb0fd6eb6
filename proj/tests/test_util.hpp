#pragma once

#include <vector>

#include "vbag/bootstrap.hpp"
#include "vbag/posterior.hpp"

namespace vbag::test {

// Expand integer weights into a dataset where observation i appears
// counts[i] times, in index order. The weighted fitters must match fits of
// this expansion exactly.
inline ObservationSet materialize(const ObservationSet& data,
                                  const BootstrapWeights& w) {
    ObservationSet out;
    out.x.resize(w.total, data.x.cols());
    Vector y;
    if (data.y) y.resize(w.total);
    std::int64_t r = 0;
    for (std::int64_t i = 0; i < data.n(); ++i)
        for (std::int64_t k = 0; k < w.counts[i]; ++k) {
            out.x.row(r) = data.x.row(i);
            if (data.y) y(r) = (*data.y)(i);
            ++r;
        }
    if (data.y) out.y = y;
    return out;
}

inline bool elbo_monotone(const std::vector<double>& trace, double slack = 1e-8) {
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] < trace[i - 1] - slack) return false;
    return true;
}

}  // namespace vbag::test
