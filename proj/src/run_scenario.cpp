#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vbag/bagging.hpp"
#include "vbag/errors.hpp"
#include "vbag/models/gaussian_mean.hpp"
#include "vbag/models/gmm.hpp"
#include "vbag/models/spike_slab.hpp"
#include "vbag/models/symmetric_mixture.hpp"
#include "vbag/parallel.hpp"
#include "vbag/scenario.hpp"

namespace vbag {

namespace {

// Stream-id block reserved per independent work unit (replication, grid
// cell, data seed); bag replicates live inside the block.
constexpr std::uint64_t kUnitStride = 1ull << 20;

Json vec_json(const Vector& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json mat_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Quantile of an equal-weight mixture of Gaussians by bisection.
double mixture_quantile(const std::vector<double>& means,
                        const std::vector<double>& sds, double p) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < means.size(); ++i) {
        lo = std::min(lo, means[i] - 12.0 * sds[i]);
        hi = std::max(hi, means[i] + 12.0 * sds[i]);
    }
    auto cdf = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < means.size(); ++i)
            s += normal_cdf((x - means[i]) / sds[i]);
        return s / static_cast<double>(means.size());
    };
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Json replicate_stats(const BaggedPosterior& bp, int requested) {
    Json iters = Json::array();
    for (const auto& c : bp.components) iters.push_back(c.iterations);
    Json j;
    j["requested"] = requested;
    j["surviving"] = bp.components.size();
    j["discarded"] = bp.discarded;
    j["iterations"] = iters;
    return j;
}

struct ResolvedM {
    std::int64_t M = 0;
    Json info;
};

// Resolve the bootstrap size per the configured policy. Degenerate variance
// falls back to M = n; a negative discriminant in the finite-sample formula
// falls back to the asymptotic formula. Both fallbacks are reported.
ResolvedM resolve_m(const ScenarioConfig& cfg, double v_n,
                    const std::function<double()>& prebag_var, double v0) {
    ResolvedM out;
    out.info["policy"] = cfg.to_json()["M_policy"];
    switch (cfg.m_policy) {
        case MPolicy::Fixed:
            out.M = cfg.m_fixed;
            return out;
        case MPolicy::EqualsN:
            out.M = cfg.n;
            return out;
        case MPolicy::Eq4:
        case MPolicy::FsOpt:
            break;
    }
    double v_star = prebag_var();
    out.info["v_n"] = v_n;
    out.info["v_n_star"] = v_star;
    SizeSelectionInputs in{v_n, v_star, v0, cfg.n};
    if (cfg.m_policy == MPolicy::Eq4) {
        try {
            out.M = asymptotic_optimal_size(in);
        } catch (const DegenerateVariance& e) {
            out.M = cfg.n;
            out.info["fallback"] = std::string("equals_n: ") + e.what();
        }
        return out;
    }
    out.info["v0"] = v0;
    try {
        FiniteSampleSize fs = finite_sample_optimal_size(in);
        out.M = fs.M;
        out.info["sigma_circ_sq"] = fs.sigma_circ_sq;
        out.info["s_circ_sq"] = fs.s_circ_sq;
    } catch (const DegenerateVariance& e) {
        out.M = cfg.n;
        out.info["fallback"] = std::string("equals_n: ") + e.what();
    } catch (const NegativeDiscriminant& e) {
        out.info["fallback"] = std::string("eq4: ") + e.what();
        try {
            out.M = asymptotic_optimal_size(in);
        } catch (const DegenerateVariance& e2) {
            out.M = cfg.n;
            out.info["fallback"] = std::string("equals_n: ") + e2.what();
        }
    }
    return out;
}

double model_number(const Json& model, const char* key, double fallback) {
    if (!model.contains(key)) return fallback;
    return model.at(key).get<double>();
}

// ---- toy-gaussian ---------------------------------------------------------

struct ToyGaussianSetup {
    Vector mu_true;
    Matrix sigma_true;
    GaussianMeanPrior prior;
};

ToyGaussianSetup toy_setup(const ScenarioConfig& cfg) {
    Vector mu(2);
    mu << -1.0, 1.0;
    Matrix sigma(2, 2);
    sigma << 1.0, 0.5, 0.5, 1.0;
    if (cfg.model.contains("mu_true"))
        for (int j = 0; j < 2; ++j) mu(j) = cfg.model.at("mu_true").at(j).get<double>();
    if (cfg.model.contains("sigma_true"))
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                sigma(i, j) = cfg.model.at("sigma_true").at(i).at(j).get<double>();
    double p0 = model_number(cfg.model, "prior_precision", 0.01);
    Matrix lam = sigma.inverse();
    ToyGaussianSetup s{mu, sigma,
                       GaussianMeanPrior{Vector::Zero(2),
                                         Vector::Constant(2, p0),
                                         SymMatrix(0.5 * (lam + lam.transpose()))}};
    return s;
}

// One toy-gaussian cell: bag, moments, errors against the exact posterior.
struct ToyCellResult {
    Vector bagged_mean;
    Matrix bagged_cov;
    Matrix corrected_cov;
    Vector exact_mean;
    Matrix exact_cov;
    double offdiag_rel_err = 0.0;
    Vector diag_rel_err;
    Json replicates;
    ResolvedM resolved;
};

ToyCellResult run_toy_cell(const ScenarioConfig& cfg, std::uint64_t unit_base) {
    ToyGaussianSetup setup = toy_setup(cfg);
    RngStream data_stream(cfg.seed, unit_base);
    ObservationSet data = generate_data(cfg, data_stream);

    FitConfig fit_cfg;
    WeightedFit fit = [&](const ObservationSet& d, const BootstrapWeights& w) {
        return fit_gaussian_mean_mfvb(d, w, setup.prior, fit_cfg);
    };

    auto plain = fit(data, BootstrapWeights::unit(data.n()));
    int f = cfg.functional_index;
    if (f >= plain.flat_dim()) throw ConfigError("functional_index: out of range");
    double v_n = plain.flat_var()(f);
    double v0 = 1.0 / setup.prior.prior_precision_diag(std::min(f, 1));

    bool needs_prebag =
        cfg.m_policy == MPolicy::Eq4 || cfg.m_policy == MPolicy::FsOpt;
    RngStream prebag_base(cfg.seed, unit_base + 1);
    ResolvedM rm = resolve_m(cfg, v_n, [&]() {
        BaggedPosterior pre = bag(fit, data, cfg.B, data.n(), prebag_base,
                                  {cfg.workers, false});
        return bagged_moments(pre).second(f, f);
    }, v0);

    RngStream bag_base(cfg.seed,
                       unit_base + 1 + (needs_prebag ? static_cast<std::uint64_t>(cfg.B) : 0));
    BaggedPosterior bp = bag(fit, data, cfg.B, rm.M, bag_base, {cfg.workers, false});
    auto [emean, ecov] = exact_gaussian_mean_posterior(data, setup.prior);
    CovarianceReport cr = covariance_report(bp, {}, ecov);

    ToyCellResult r;
    r.bagged_mean = cr.bagged_mean;
    r.bagged_cov = cr.bagged_cov.mat();
    r.corrected_cov = cr.corrected_cov.mat();
    r.exact_mean = emean;
    r.exact_cov = ecov.mat();
    r.offdiag_rel_err = (cr.bagged_cov(0, 1) - ecov(0, 1)) / ecov(0, 1);
    r.diag_rel_err.resize(2);
    for (int j = 0; j < 2; ++j)
        r.diag_rel_err(j) = (cr.corrected_cov(j, j) - ecov(j, j)) / ecov(j, j);
    r.replicates = replicate_stats(bp, cfg.B);
    r.resolved = rm;
    return r;
}

Json run_toy_gaussian(const ScenarioConfig& cfg) {
    ToyGaussianSetup setup = toy_setup(cfg);
    ToyCellResult cell = run_toy_cell(cfg, 0);

    RngStream data_stream(cfg.seed, 0);
    ObservationSet data = generate_data(cfg, data_stream);
    FitConfig fit_cfg;
    auto plain = fit_gaussian_mean_mfvb(data, BootstrapWeights::unit(data.n()),
                                        setup.prior, fit_cfg);

    // Robust sandwich estimate at the exact posterior mean: scores
    // Lambda (x_i - mu_hat), V = Lambda.
    auto [emean, ecov] = exact_gaussian_mean_posterior(data, setup.prior);
    Matrix scores(data.n(), 2);
    for (std::int64_t i = 0; i < data.n(); ++i)
        scores.row(i) = (setup.prior.likelihood_precision.mat() *
                         (data.x.row(i).transpose() - emean))
                            .transpose();
    SymMatrix sandwich =
        sandwich_covariance({scores, setup.prior.likelihood_precision});

    SymMatrix shape(static_cast<double>(cfg.n) * cell.bagged_cov);
    CredibleEllipsoid ell = credible_ellipsoid(emean, shape, cfg.level, cfg.n);

    Json res;
    res["resolved_M"] = cell.resolved.M;
    res["c_ratio"] = static_cast<double>(cell.resolved.M) / static_cast<double>(cfg.n);
    res["m_selection"] = cell.resolved.info;
    res["replicates"] = cell.replicates;
    res["plain_vb"] = {{"mean", vec_json(plain.flat_mean())},
                       {"var", vec_json(plain.flat_var())},
                       {"iterations", plain.iterations}};
    res["bagged_mean"] = vec_json(cell.bagged_mean);
    res["bagged_cov"] = mat_json(cell.bagged_cov);
    res["corrected_cov"] = mat_json(cell.corrected_cov);
    res["sandwich_cov"] = mat_json(sandwich.mat());
    res["exact_posterior"] = {{"mean", vec_json(cell.exact_mean)},
                              {"cov", mat_json(cell.exact_cov)}};
    res["errors_vs_exact"] = {{"offdiag_rel_err", cell.offdiag_rel_err},
                              {"corrected_diag_rel_err", vec_json(cell.diag_rel_err)}};
    res["ellipsoid"] = {{"center", vec_json(ell.center)},
                        {"shape", mat_json(ell.shape.mat())},
                        {"radius_sq", ell.radius_sq},
                        {"level", ell.level}};
    return res;
}

Json run_toy_gaussian_grid(const ScenarioConfig& cfg,
                           std::vector<std::pair<std::string, std::string>>* csvs) {
    struct Row {
        int B;
        std::int64_t n;
        int rep;
        double offdiag;
        double d0, d1;
        std::int64_t discarded;
    };
    const int n_cells = static_cast<int>(cfg.grid_B.size() * cfg.grid_n.size());
    const int units = n_cells * cfg.reps;
    std::vector<Row> rows(units);

    parallel_for(units, cfg.workers, [&](int u) {
        int cell = u / cfg.reps;
        int rep = u % cfg.reps;
        int bi = cell / static_cast<int>(cfg.grid_n.size());
        int ni = cell % static_cast<int>(cfg.grid_n.size());
        ScenarioConfig local = cfg;
        local.scenario = ScenarioKind::ToyGaussian;
        local.B = cfg.grid_B[bi];
        local.n = cfg.grid_n[ni];
        local.workers = 1;  // unit-level parallelism only
        ToyCellResult r =
            run_toy_cell(local, static_cast<std::uint64_t>(u) * kUnitStride);
        rows[u] = Row{local.B,
                      local.n,
                      rep,
                      r.offdiag_rel_err,
                      r.diag_rel_err(0),
                      r.diag_rel_err(1),
                      r.replicates.at("discarded").get<std::int64_t>()};
    });

    std::ostringstream csv;
    csv << "B,n,rep,offdiag_rel_err,diag0_rel_err,diag1_rel_err,discarded\n";
    csv.precision(17);
    for (const auto& r : rows)
        csv << r.B << "," << r.n << "," << r.rep << "," << r.offdiag << ","
            << r.d0 << "," << r.d1 << "," << r.discarded << "\n";
    if (csvs) csvs->emplace_back("toy-gaussian-grid", csv.str());

    Json cells = Json::array();
    for (int cell = 0; cell < n_cells; ++cell) {
        double off = 0.0, d0 = 0.0, d1 = 0.0;
        for (int rep = 0; rep < cfg.reps; ++rep) {
            const Row& r = rows[cell * cfg.reps + rep];
            off += r.offdiag;
            d0 += r.d0;
            d1 += r.d1;
        }
        const Row& first = rows[cell * cfg.reps];
        cells.push_back({{"B", first.B},
                         {"n", first.n},
                         {"mean_offdiag_rel_err", off / cfg.reps},
                         {"mean_diag_rel_err", Json::array({d0 / cfg.reps, d1 / cfg.reps})}});
    }
    Json res;
    res["cells"] = cells;
    return res;
}

// ---- gmm-misspec ----------------------------------------------------------

GmmPrior gmm_prior_from(const ScenarioConfig& cfg) {
    GmmPrior prior;
    prior.K = static_cast<int>(model_number(cfg.model, "K", 2.0));
    if (prior.K < 1) throw ConfigError("model.K: must be >= 1");
    prior.nu0 = model_number(cfg.model, "nu0", 100.0);
    prior.ig_a = model_number(cfg.model, "ig_a", 2.0);
    prior.ig_b = model_number(cfg.model, "ig_b", 2.0);
    double alpha = model_number(cfg.model, "dirichlet_alpha", 1.0);
    prior.dirichlet_alpha = Vector::Constant(prior.K, alpha);
    return prior;
}

Json run_gmm_misspec(const ScenarioConfig& cfg) {
    GmmPrior prior = gmm_prior_from(cfg);
    RngStream data_stream(cfg.seed, 0);
    ObservationSet data = generate_data(cfg, data_stream);

    FitConfig fit_cfg;
    WeightedFit fit = [&](const ObservationSet& d, const BootstrapWeights& w) {
        return fit_gmm_cavi(d, w, prior, fit_cfg);
    };
    auto plain = fit(data, BootstrapWeights::unit(data.n()));

    // Reference in place of an MCMC baseline: CAVI run to a much tighter
    // tolerance on the full data.
    FitConfig ref_cfg;
    ref_cfg.max_iters = 5000;
    ref_cfg.elbo_tol = 1e-10;
    auto reference =
        fit_gmm_cavi(data, BootstrapWeights::unit(data.n()), prior, ref_cfg);

    int f = cfg.functional_index;
    if (f >= plain.flat_dim()) throw ConfigError("functional_index: out of range");
    double v_n = plain.flat_var()(f);
    if (!(prior.ig_a > 1.0) && cfg.m_policy == MPolicy::FsOpt)
        throw ConfigError("model.ig_a: fs_opt needs ig_a > 1 for a finite prior variance");
    double v0 = prior.nu0 * prior.ig_b / std::max(prior.ig_a - 1.0, 1e-12);

    bool needs_prebag =
        cfg.m_policy == MPolicy::Eq4 || cfg.m_policy == MPolicy::FsOpt;
    RngStream prebag_base(cfg.seed, 1);
    ResolvedM rm = resolve_m(cfg, v_n, [&]() {
        BaggedPosterior pre =
            bag(fit, data, cfg.B, data.n(), prebag_base, {cfg.workers, false});
        return bagged_moments(pre).second(f, f);
    }, v0);

    RngStream bag_base(cfg.seed,
                       1 + (needs_prebag ? static_cast<std::uint64_t>(cfg.B) : 0));
    BaggedPosterior bp = bag(fit, data, cfg.B, rm.M, bag_base, {cfg.workers, false});
    CovarianceReport cr = covariance_report(bp);

    // Quartiles of each component mean under plain VB (Gaussian marginal)
    // and under the bagged mixture.
    Json quartiles = Json::array();
    const auto& plain_mu = plain.gaussian_blocks.front();
    for (int k = 0; k < prior.K; ++k) {
        std::vector<double> bm, bs;
        for (const auto& c : bp.components) {
            bm.push_back(c.gaussian_blocks.front().mean(k));
            bs.push_back(std::sqrt(c.gaussian_blocks.front().var(k)));
        }
        std::vector<double> pm{plain_mu.mean(k)}, ps{std::sqrt(plain_mu.var(k))};
        Json entry;
        entry["component"] = k;
        entry["vb"] = {{"q1", mixture_quantile(pm, ps, 0.25)},
                       {"median", mixture_quantile(pm, ps, 0.5)},
                       {"q3", mixture_quantile(pm, ps, 0.75)}};
        entry["vb_bagging"] = {{"q1", mixture_quantile(bm, bs, 0.25)},
                               {"median", mixture_quantile(bm, bs, 0.5)},
                               {"q3", mixture_quantile(bm, bs, 0.75)}};
        quartiles.push_back(entry);
    }

    Json res;
    res["resolved_M"] = rm.M;
    res["c_ratio"] = static_cast<double>(rm.M) / static_cast<double>(cfg.n);
    res["m_selection"] = rm.info;
    res["replicates"] = replicate_stats(bp, cfg.B);
    res["plain_vb"] = {{"mean", vec_json(plain.flat_mean())},
                       {"var", vec_json(plain.flat_var())},
                       {"converged", plain.converged},
                       {"iterations", plain.iterations},
                       {"warnings", plain.warnings}};
    res["reference_cavi"] = {{"mean", vec_json(reference.flat_mean())},
                             {"var", vec_json(reference.flat_var())},
                             {"iterations", reference.iterations}};
    res["bagged_mean"] = vec_json(bmean);
    res["bagged_cov"] = mat_json(bcov.mat());
    res["mu_quartiles"] = quartiles;
    return res;
}

// ---- sparse-reg -----------------------------------------------------------

Json run_sparse_reg(const ScenarioConfig& cfg) {
    SpikeSlabPrior prior;
    prior.sigma_beta_sq = model_number(cfg.model, "sigma_beta_sq", 10.0);
    prior.ig_A = model_number(cfg.model, "ig_A", 0.1);
    prior.ig_B = model_number(cfg.model, "ig_B", 0.1);
    prior.p_incl = model_number(cfg.model, "p_incl", 0.5);

    struct SeedRow {
        double rse_vb, rse_bag;
        std::int64_t M;
        std::int64_t discarded;
        Json m_info;
    };
    std::vector<SeedRow> rows(cfg.data_seeds);

    parallel_for(cfg.data_seeds, cfg.workers, [&](int ds) {
        std::uint64_t base = static_cast<std::uint64_t>(ds) * kUnitStride;
        RngStream data_stream(cfg.seed, base);
        ScenarioConfig local = cfg;
        ObservationSet data = generate_data(local, data_stream);
        const Matrix& X = data.x;
        const Vector& y = *data.y;
        const int q = static_cast<int>(X.cols());

        Vector beta_ols =
            (X.transpose() * X).ldlt().solve(X.transpose() * y);

        FitConfig fit_cfg;
        WeightedFit fit = [&](const ObservationSet& d, const BootstrapWeights& w) {
            return fit_spike_slab_vb(d.x, *d.y, w, prior, fit_cfg);
        };
        auto plain = fit(data, BootstrapWeights::unit(data.n()));
        auto beta_of = [&](const MeanFieldPosterior& p) {
            Vector b(q);
            for (int j = 0; j < q; ++j)
                b(j) = p.bernoulli_blocks.front().prob(j) *
                       p.gaussian_blocks.front().mean(j);
            return b;
        };

        int f = cfg.functional_index;
        double v_n = plain.gaussian_blocks.front().var(std::min(f, q - 1));
        RngStream prebag_base(cfg.seed, base + 1);
        ResolvedM rm = resolve_m(cfg, v_n, [&]() {
            BaggedPosterior pre =
                bag(fit, data, cfg.B, data.n(), prebag_base, {1, false});
            auto mom = bagged_moments(pre);
            return mom.second(std::min(f, q - 1), std::min(f, q - 1));
        }, prior.sigma_beta_sq);

        bool needs_prebag =
            cfg.m_policy == MPolicy::Eq4 || cfg.m_policy == MPolicy::FsOpt;
        RngStream bag_base(cfg.seed,
                           base + 1 +
                               (needs_prebag ? static_cast<std::uint64_t>(cfg.B) : 0));
        BaggedPosterior bp = bag(fit, data, cfg.B, rm.M, bag_base, {1, false});
        Vector beta_bag = Vector::Zero(q);
        for (const auto& c : bp.components) beta_bag += beta_of(c);
        beta_bag /= static_cast<double>(bp.components.size());

        rows[ds] = SeedRow{compute_rse(beta_of(plain), beta_ols),
                           compute_rse(beta_bag, beta_ols), rm.M, bp.discarded,
                           rm.info};
    });

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };
    std::vector<double> rse_vb, rse_bag;
    Json per_seed = Json::array();
    for (int ds = 0; ds < cfg.data_seeds; ++ds) {
        rse_vb.push_back(rows[ds].rse_vb);
        rse_bag.push_back(rows[ds].rse_bag);
        per_seed.push_back({{"data_seed", ds},
                            {"rse_vb", rows[ds].rse_vb},
                            {"rse_vb_bagging", rows[ds].rse_bag},
                            {"resolved_M", rows[ds].M},
                            {"m_selection", rows[ds].m_info},
                            {"discarded", rows[ds].discarded}});
    }
    Json res;
    res["per_seed"] = per_seed;
    res["rse"] = Json::array({Json{{"method", "vb"}, {"rse", median(rse_vb)}},
                              Json{{"method", "vb_bagging"}, {"rse", median(rse_bag)}}});
    return res;
}

// ---- mixture-example ------------------------------------------------------

Json run_mixture_example(const ScenarioConfig& cfg) {
    if (cfg.m_policy == MPolicy::FsOpt)
        throw ConfigError(
            "M_policy: fs_opt needs a proper prior variance; the symmetric "
            "mixture uses a flat prior (use eq4, equals_n or fixed)");

    struct SeedRow {
        double theta_hat, bagged_var, scaled_var, target, ratio;
        std::int64_t M, discarded;
    };
    std::vector<SeedRow> rows(cfg.reps);

    parallel_for(cfg.reps, cfg.workers, [&](int rep) {
        std::uint64_t base = static_cast<std::uint64_t>(rep) * kUnitStride;
        RngStream data_stream(cfg.seed, base);
        ScenarioConfig local = cfg;
        ObservationSet data = generate_data(local, data_stream);

        WeightedFit fit = [](const ObservationSet& d, const BootstrapWeights& w) {
            return fit_symmetric_mixture_vb(d, w);
        };
        double theta_hat =
            symmetric_mixture_mvle(data, BootstrapWeights::unit(data.n()));

        double v_n = 1.0 / static_cast<double>(data.n());
        RngStream prebag_base(cfg.seed, base + 1);
        ResolvedM rm = resolve_m(cfg, v_n, [&]() {
            BaggedPosterior pre =
                bag(fit, data, cfg.B, data.n(), prebag_base, {1, false});
            return bagged_moments(pre).second(0, 0);
        }, 0.0);

        bool needs_prebag = cfg.m_policy == MPolicy::Eq4;
        RngStream bag_base(cfg.seed,
                           base + 1 +
                               (needs_prebag ? static_cast<std::uint64_t>(cfg.B) : 0));
        BaggedPosterior bp = bag(fit, data, cfg.B, rm.M, bag_base, {1, false});
        auto [bmean, bcov] = bagged_moments(bp);

        double c = bp.c_ratio;
        double scaled = c * static_cast<double>(data.n()) * bcov(0, 0);
        double target = symmetric_mixture_asymptotic_var(data, theta_hat, 1.0);
        rows[rep] = SeedRow{theta_hat, bcov(0, 0), scaled, target,
                            scaled / target, rm.M, bp.discarded};
    });

    Json per_seed = Json::array();
    double mean_ratio = 0.0;
    for (int rep = 0; rep < cfg.reps; ++rep) {
        const SeedRow& r = rows[rep];
        mean_ratio += r.ratio;
        per_seed.push_back({{"rep", rep},
                            {"mvle", r.theta_hat},
                            {"bagged_var", r.bagged_var},
                            {"c_n_bagged_var", r.scaled_var},
                            {"target_1_plus_msr", r.target},
                            {"ratio", r.ratio},
                            {"resolved_M", r.M},
                            {"discarded", r.discarded}});
    }
    Json res;
    res["per_seed"] = per_seed;
    res["mean_ratio"] = mean_ratio / cfg.reps;
    return res;
}

// ---- coverage -------------------------------------------------------------

Json run_coverage(const ScenarioConfig& cfg) {
    ToyGaussianSetup setup = toy_setup(cfg);
    FitConfig fit_cfg;
    CoverageScenario sc;
    sc.generate = [cfg](RngStream& rs) {
        ScenarioConfig local = cfg;
        return generate_data(local, rs);
    };
    sc.theta0 = setup.mu_true;
    sc.fit = [setup, fit_cfg](const ObservationSet& d, const BootstrapWeights& w) {
        return fit_gaussian_mean_mfvb(d, w, setup.prior, fit_cfg);
    };
    sc.center = [setup](const ObservationSet& d) {
        return exact_gaussian_mean_posterior(d, setup.prior).first;
    };
    sc.B = cfg.B;
    sc.M = cfg.m_policy == MPolicy::Fixed ? cfg.m_fixed : 0;  // 0 -> M = n

    RngStream base(cfg.seed, 0);
    CoverageResult cr =
        coverage_experiment(sc, cfg.reps, cfg.level, base, cfg.workers);

    Json res;
    res["coverage"] = cr.coverage;
    res["hits"] = cr.hits;
    res["completed"] = cr.completed;
    res["failed_reps"] = cr.failed_reps;
    res["binomial_ci"] = Json::array({cr.ci_low, cr.ci_high});
    res["level"] = cfg.level;
    return res;
}

}  // namespace

ScenarioOutput run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();

    ScenarioOutput out;
    Json results;
    switch (cfg.scenario) {
        case ScenarioKind::ToyGaussian:
            results = run_toy_gaussian(cfg);
            break;
        case ScenarioKind::ToyGaussianGrid:
            results = run_toy_gaussian_grid(cfg, &out.csv_tables);
            break;
        case ScenarioKind::GmmMisspec:
            results = run_gmm_misspec(cfg);
            break;
        case ScenarioKind::SparseReg:
            results = run_sparse_reg(cfg);
            break;
        case ScenarioKind::MixtureExample:
            results = run_mixture_example(cfg);
            break;
        case ScenarioKind::Coverage:
            results = run_coverage(cfg);
            break;
    }

    auto t1 = std::chrono::steady_clock::now();
    Json report;
    report["schema_version"] = kReportSchemaVersion;
    report["config"] = cfg.to_json();
    report["results"] = results;
    report["execution"] = {
        {"workers", cfg.workers},
        {"wall_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
    out.report = report;
    return out;
}

std::vector<std::string> run_scenario_to_files(const ScenarioConfig& cfg,
                                               const std::string& out_dir) {
    ScenarioOutput out = run_scenario(cfg);
    namespace fs = std::filesystem;
    std::vector<std::string> written;

    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    fs::path report_path = cfg.output_path.empty()
                               ? dir / (scenario_name(cfg.scenario) + "-report.json")
                               : fs::path(cfg.output_path);
    std::ofstream rf(report_path);
    if (!rf) throw IoError("cannot write report to " + report_path.string());
    rf << out.report.dump(2) << "\n";
    written.push_back(report_path.string());

    for (const auto& [stem, text] : out.csv_tables) {
        fs::path p = dir / (stem + ".csv");
        std::ofstream cf(p);
        if (!cf) throw IoError("cannot write table to " + p.string());
        cf << text;
        written.push_back(p.string());
    }
    return written;
}

}  // namespace vbag
