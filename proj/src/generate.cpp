#include <cmath>

#include "vbag/errors.hpp"
#include "vbag/scenario.hpp"

namespace vbag {

namespace {

double draw_error(ErrorFamily family, double t_df, double scale, RngStream& rng) {
    switch (family) {
        case ErrorFamily::Gaussian: return rng.normal(0.0, scale);
        case ErrorFamily::StudentT: return rng.student_t(t_df) * scale;
        case ErrorFamily::Laplace: return rng.laplace(scale);
    }
    throw ConfigError("error_family: invalid value");
}

double model_number(const Json& model, const char* key, double fallback) {
    if (!model.contains(key)) return fallback;
    if (!model.at(key).is_number())
        throw ConfigError(std::string("model.") + key + ": must be a number");
    return model.at(key).get<double>();
}

}  // namespace

ObservationSet generate_data(const ScenarioConfig& cfg, RngStream& rng) {
    cfg.validate();
    const std::int64_t n = cfg.n;
    ObservationSet data;

    switch (cfg.scenario) {
        case ScenarioKind::ToyGaussian:
        case ScenarioKind::ToyGaussianGrid:
        case ScenarioKind::Coverage: {
            Vector mu(2);
            mu << -1.0, 1.0;
            Matrix sigma(2, 2);
            sigma << 1.0, 0.5, 0.5, 1.0;
            if (cfg.model.contains("mu_true"))
                for (int j = 0; j < 2; ++j)
                    mu(j) = cfg.model.at("mu_true").at(j).get<double>();
            if (cfg.model.contains("sigma_true"))
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        sigma(i, j) = cfg.model.at("sigma_true").at(i).at(j).get<double>();
            data.x = sample_mvn(mu, SymMatrix(sigma), static_cast<int>(n), rng);
            return data;
        }
        case ScenarioKind::GmmMisspec: {
            double c1 = model_number(cfg.model, "center_low", -2.0);
            double c2 = model_number(cfg.model, "center_high", 2.0);
            double scale = model_number(cfg.model, "noise_scale", 1.0);
            double w = model_number(cfg.model, "mix_weight", 0.5);
            if (!(w > 0.0 && w < 1.0))
                throw ConfigError("model.mix_weight: must lie in (0,1)");
            data.x.resize(n, 1);
            for (std::int64_t i = 0; i < n; ++i) {
                double center = rng.uniform() < w ? c1 : c2;
                data.x(i, 0) = center + draw_error(cfg.error_family, cfg.t_df, scale, rng);
            }
            return data;
        }
        case ScenarioKind::SparseReg: {
            int q = static_cast<int>(model_number(cfg.model, "q", 10.0));
            if (q < 1) throw ConfigError("model.q: must be >= 1");
            double noise = model_number(cfg.model, "noise_scale", 1.0);
            Vector beta = Vector::Zero(q);
            if (cfg.model.contains("beta_true")) {
                const auto& arr = cfg.model.at("beta_true");
                if (!arr.is_array() || static_cast<int>(arr.size()) != q)
                    throw ConfigError("model.beta_true: must be an array of length q");
                for (int j = 0; j < q; ++j) beta(j) = arr.at(j).get<double>();
            } else {
                beta(0) = 3.0;
                if (q > 1) beta(1) = 1.5;
                if (q > 4) beta(4) = 2.0;
            }
            data.x.resize(n, q);
            Vector y(n);
            for (std::int64_t i = 0; i < n; ++i) {
                for (int j = 0; j < q; ++j) data.x(i, j) = rng.normal();
                y(i) = data.x.row(i).dot(beta) +
                       draw_error(cfg.error_family, cfg.t_df, noise, rng);
            }
            data.y = y;
            return data;
        }
        case ScenarioKind::MixtureExample: {
            double theta = model_number(cfg.model, "theta_true", 2.0);
            double scale = model_number(cfg.model, "noise_scale", 1.0);
            data.x.resize(n, 1);
            for (std::int64_t i = 0; i < n; ++i) {
                double s = rng.bernoulli(0.5) ? 1.0 : -1.0;
                data.x(i, 0) = s * theta +
                               draw_error(cfg.error_family, cfg.t_df, scale, rng);
            }
            return data;
        }
    }
    throw ConfigError("scenario: invalid kind");
}

double compute_rse(const Vector& beta_hat, const Vector& beta_ols) {
    if (beta_hat.size() != beta_ols.size())
        throw DimensionMismatch("compute_rse: length mismatch");
    double denom = beta_ols.squaredNorm();
    if (denom == 0.0) throw ZeroReference("compute_rse: ||beta_ols|| is zero");
    return (beta_hat - beta_ols).squaredNorm() / denom;
}

}  // namespace vbag
