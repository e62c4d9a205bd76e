#include "deltarad/survival.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "deltarad/parallel.hpp"
#include "deltarad/rng.hpp"

namespace deltarad {

double normal_sf_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }
double chi2_1df_sf(double x) { return std::erfc(std::sqrt(std::max(0.0, x) / 2.0)); }

// ------------------------------------------------------------------- KM ----

std::vector<KmPoint> km_estimate(const std::vector<SurvivalSample>& samples) {
    if (samples.empty()) throw DataError("EmptySample", "km_estimate");
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return samples[a].time < samples[b].time; });

    std::vector<KmPoint> out;
    double s = 1.0;
    std::size_t i = 0;
    std::int64_t at_risk = static_cast<std::int64_t>(samples.size());
    while (i < order.size()) {
        const double t = samples[order[i]].time;
        std::int64_t d = 0, removed = 0;
        while (i < order.size() && samples[order[i]].time == t) {
            d += samples[order[i]].event;
            ++removed;
            ++i;
        }
        if (d > 0) {
            s *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
            out.push_back({t, s, at_risk, d});
        }
        at_risk -= removed;
    }
    return out;
}

// -------------------------------------------------------------- log-rank ----

LogrankResult logrank_test(const std::vector<SurvivalSample>& group_a, const std::vector<SurvivalSample>& group_b) {
    std::int64_t total_events = 0;
    for (const auto& s : group_a) total_events += s.event;
    for (const auto& s : group_b) total_events += s.event;
    if (total_events == 0) throw DataError("NoEvents", "logrank_test needs at least one event");

    struct Row {
        double time;
        int event;
        int group;
    };
    std::vector<Row> rows;
    rows.reserve(group_a.size() + group_b.size());
    for (const auto& s : group_a) rows.push_back({s.time, s.event, 0});
    for (const auto& s : group_b) rows.push_back({s.time, s.event, 1});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.time < b.time; });

    double o_minus_e = 0, var = 0;
    std::int64_t n_a = static_cast<std::int64_t>(group_a.size());
    std::int64_t n = static_cast<std::int64_t>(rows.size());
    std::size_t i = 0;
    while (i < rows.size()) {
        const double t = rows[i].time;
        std::int64_t d = 0, d_a = 0, removed = 0, removed_a = 0;
        while (i < rows.size() && rows[i].time == t) {
            d += rows[i].event;
            if (rows[i].group == 0) {
                d_a += rows[i].event;
                ++removed_a;
            }
            ++removed;
            ++i;
        }
        if (d > 0) {
            const double fn = static_cast<double>(n), fna = static_cast<double>(n_a), fd = static_cast<double>(d);
            o_minus_e += static_cast<double>(d_a) - fd * fna / fn;
            if (n > 1) var += fd * (fna / fn) * (1.0 - fna / fn) * (fn - fd) / (fn - 1.0);
        }
        n -= removed;
        n_a -= removed_a;
    }

    LogrankResult r;
    r.chi2 = var > 0.0 ? o_minus_e * o_minus_e / var : 0.0;
    r.p = chi2_1df_sf(r.chi2);
    return r;
}

// ------------------------------------------------------------------ Cox ----

namespace {

struct PartialDerivatives {
    double loglik;
    Eigen::VectorXd score;
    Eigen::MatrixXd info;
};

// Efron-tie partial likelihood. Samples are processed by descending time so
// risk-set sums accumulate incrementally.
PartialDerivatives cox_derivatives(const std::vector<SurvivalSample>& samples, const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& beta) {
    const std::size_t n = samples.size();
    const Eigen::Index p = x.cols();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return samples[a].time > samples[b].time; });

    Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd w = eta.array().exp();

    PartialDerivatives out{0.0, Eigen::VectorXd::Zero(p), Eigen::MatrixXd::Zero(p, p)};
    double s_r = 0.0;
    Eigen::VectorXd g_r = Eigen::VectorXd::Zero(p);
    Eigen::MatrixXd h_r = Eigen::MatrixXd::Zero(p, p);

    std::size_t i = 0;
    while (i < n) {
        const double t = samples[order[i]].time;
        double s_d = 0.0;
        Eigen::VectorXd g_d = Eigen::VectorXd::Zero(p);
        Eigen::MatrixXd h_d = Eigen::MatrixXd::Zero(p, p);
        double event_eta = 0.0;
        Eigen::VectorXd event_x = Eigen::VectorXd::Zero(p);
        std::int64_t d = 0;

        while (i < n && samples[order[i]].time == t) {
            const std::size_t idx = order[i];
            const double wi = w[static_cast<Eigen::Index>(idx)];
            const auto xi = x.row(static_cast<Eigen::Index>(idx)).transpose();
            s_r += wi;
            g_r += wi * xi;
            h_r += wi * xi * xi.transpose();
            if (samples[idx].event) {
                ++d;
                s_d += wi;
                g_d += wi * xi;
                h_d += wi * xi * xi.transpose();
                event_eta += eta[static_cast<Eigen::Index>(idx)];
                event_x += xi;
            }
            ++i;
        }
        if (d == 0) continue;

        out.loglik += event_eta;
        out.score += event_x;
        for (std::int64_t l = 0; l < d; ++l) {
            const double frac = static_cast<double>(l) / static_cast<double>(d);
            const double phi = s_r - frac * s_d;
            const Eigen::VectorXd g = g_r - frac * g_d;
            const Eigen::MatrixXd h = h_r - frac * h_d;
            out.loglik -= std::log(phi);
            const Eigen::VectorXd z = g / phi;
            out.score -= z;
            out.info += h / phi - z * z.transpose();
        }
    }
    return out;
}

}  // namespace

CoxFit cox_fit(const std::vector<SurvivalSample>& samples, const std::vector<double>& xdata,
               const std::vector<std::string>& covariate_names) {
    const std::size_t n = samples.size();
    const std::size_t p = covariate_names.size();
    if (n == 0 || p == 0) throw DataError("EmptySample", "cox_fit needs samples and covariates");
    if (xdata.size() != n * p) throw DataError("LengthMismatch", "cox_fit design matrix shape");

    std::int64_t events = 0;
    for (const auto& s : samples) events += s.event;
    if (events == 0) throw DataError("NoEvents", "cox_fit needs at least one event");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < p; ++c) {
            const double v = xdata[r * p + c];
            if (!std::isfinite(v)) throw DataError("InvalidCovariate", "non-finite covariate value");
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    PartialDerivatives d = cox_derivatives(samples, x, beta);

    {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(d.info);
        if (lu.rank() < static_cast<Eigen::Index>(p))
            throw NumericError("Singular", "design matrix is rank deficient for the risk sets");
    }

    CoxFit fit;
    fit.null_loglik = d.loglik;
    double loglik = d.loglik;

    const int max_iter = 100;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const double max_score = d.score.cwiseAbs().maxCoeff();
        if (max_score < 1e-8) {
            fit.converged = true;
            break;
        }
        Eigen::VectorXd step = d.info.ldlt().solve(d.score);
        double scale = 1.0;
        Eigen::VectorXd beta_new;
        PartialDerivatives d_new{0, {}, {}};
        bool improved = false;
        for (int half = 0; half < 30; ++half) {
            beta_new = beta + scale * step;
            d_new = cox_derivatives(samples, x, beta_new);
            if (std::isfinite(d_new.loglik) && d_new.loglik >= loglik - 1e-12) {
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) break;
        const double delta_ll = d_new.loglik - loglik;
        beta = beta_new;
        loglik = d_new.loglik;
        d = std::move(d_new);
        if (beta.cwiseAbs().maxCoeff() > 50.0) {
            fit.separation = true;
            break;
        }
        if (std::abs(delta_ll) < 1e-10) {
            fit.converged = true;
            break;
        }
    }
    if (iter == max_iter) fit.converged = d.score.cwiseAbs().maxCoeff() < 1e-8;
    if (fit.separation) fit.converged = false;
    fit.iterations = iter;
    fit.loglik = loglik;

    Eigen::MatrixXd cov = d.info.ldlt().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                                                        static_cast<Eigen::Index>(p)));
    fit.covariates.resize(p);
    for (std::size_t c = 0; c < p; ++c) {
        CoxCovariate& cv = fit.covariates[c];
        cv.name = covariate_names[c];
        cv.beta = beta[static_cast<Eigen::Index>(c)];
        const double var = cov(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
        cv.se = var > 0 ? std::sqrt(var) : 0.0;
        cv.z = cv.se > 0 ? cv.beta / cv.se : 0.0;
        cv.p = cv.se > 0 ? normal_sf_two_sided(cv.z) : 1.0;
        cv.hr = std::exp(cv.beta);
        cv.ci_low = std::exp(cv.beta - 1.96 * cv.se);
        cv.ci_high = std::exp(cv.beta + 1.96 * cv.se);
    }

    Eigen::VectorXd eta = x * beta;
    std::vector<double> risk(n);
    for (std::size_t r = 0; r < n; ++r) risk[r] = eta[static_cast<Eigen::Index>(r)];
    fit.concordance = concordance_index(risk, samples);
    return fit;
}

// ------------------------------------------------------------------- BH ----

std::vector<double> bh_adjust(const std::vector<double>& p_values) {
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw DataError("OutOfRange", "p-values must lie in [0,1]");
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::vector<double> adjusted(m);
    double running_min = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double candidate = p_values[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
        running_min = std::min(running_min, candidate);
        adjusted[order[r]] = std::min(1.0, running_min);
    }
    return adjusted;
}

// ------------------------------------------------------------ RFE lasso ----

namespace {

// cyclic coordinate descent for (1/2n)||y - Xb||^2 + lambda*|b|_1 on
// standardized columns (unit population SD, so the curvature term is 1)
Eigen::VectorXd lasso_cd(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) {
    const Eigen::Index n = x.rows(), p = x.cols();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd resid = y;
    const double dn = static_cast<double>(n);
    for (int sweep = 0; sweep < 1000; ++sweep) {
        double max_delta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double old = beta[j];
            const double rho = x.col(j).dot(resid) / dn + old * (x.col(j).squaredNorm() / dn);
            const double cj = x.col(j).squaredNorm() / dn;
            double nb = 0.0;
            if (rho > lambda) nb = (rho - lambda) / cj;
            else if (rho < -lambda) nb = (rho + lambda) / cj;
            if (nb != old) {
                resid -= (nb - old) * x.col(j);
                max_delta = std::max(max_delta, std::abs(nb - old));
                beta[j] = nb;
            }
        }
        if (max_delta < 1e-7) break;
    }
    return beta;
}

}  // namespace

std::vector<int> rfe_lasso_rank(const std::vector<double>& xdata, std::size_t n_rows,
                                const std::vector<std::string>& names, const std::vector<double>& y,
                                std::uint64_t seed) {
    const std::size_t p = names.size();
    if (p < 2) throw DataError("TooFewSamples", "rfe_lasso_rank needs >= 2 features");
    if (n_rows < p) throw DataError("TooFewSamples", "rfe_lasso_rank needs samples >= features");
    if (xdata.size() != n_rows * p || y.size() != n_rows)
        throw DataError("LengthMismatch", "rfe_lasso_rank shapes");

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t c = 0; c < p; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = xdata[r * p + c];

    // standardize to zero mean, unit population SD
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double mu = x.col(c).mean();
        x.col(c).array() -= mu;
        const double sd = std::sqrt(x.col(c).squaredNorm() / static_cast<double>(n_rows));
        if (sd == 0.0) throw DataError("ConstantColumn", "feature '" + names[static_cast<std::size_t>(c)] + "' is constant");
        x.col(c) /= sd;
    }
    Eigen::VectorXd yv(static_cast<Eigen::Index>(n_rows));
    for (std::size_t r = 0; r < n_rows; ++r) yv[static_cast<Eigen::Index>(r)] = y[r];
    const double y_mean = yv.mean();
    yv.array() -= y_mean;

    // lambda grid down from the all-zero threshold, 5-fold CV squared error
    const double lambda_max = (x.transpose() * yv).cwiseAbs().maxCoeff() / static_cast<double>(n_rows);
    std::vector<double> grid;
    for (int g = 0; g < 30; ++g) grid.push_back(lambda_max * std::pow(10.0, -3.0 * g / 29.0));

    std::vector<std::size_t> fold(n_rows);
    {
        std::vector<std::size_t> idx(n_rows);
        std::iota(idx.begin(), idx.end(), 0);
        CounterRng rng(seed, "rfe-folds");
        rng.shuffle(idx);
        for (std::size_t i = 0; i < n_rows; ++i) fold[idx[i]] = i % 5;
    }

    double best_lambda = grid.front();
    double best_mse = std::numeric_limits<double>::infinity();
    for (const double lambda : grid) {
        double sse = 0.0;
        for (std::size_t f = 0; f < 5; ++f) {
            std::vector<Eigen::Index> train, test;
            for (std::size_t i = 0; i < n_rows; ++i)
                (fold[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
            if (test.empty() || train.size() < 2) continue;
            Eigen::MatrixXd xt(static_cast<Eigen::Index>(train.size()), x.cols());
            Eigen::VectorXd yt(static_cast<Eigen::Index>(train.size()));
            for (std::size_t r = 0; r < train.size(); ++r) {
                xt.row(static_cast<Eigen::Index>(r)) = x.row(train[r]);
                yt[static_cast<Eigen::Index>(r)] = yv[train[r]];
            }
            const Eigen::VectorXd beta = lasso_cd(xt, yt, lambda);
            for (const Eigen::Index t : test) {
                const double pred = x.row(t).dot(beta);
                sse += (yv[t] - pred) * (yv[t] - pred);
            }
        }
        if (sse < best_mse - 1e-15) {
            best_mse = sse;
            best_lambda = lambda;
        }
    }

    // recursive elimination: drop the smallest |coefficient| each round
    std::vector<std::size_t> active(p);
    std::iota(active.begin(), active.end(), 0);
    std::vector<int> rank(p, 0);
    while (active.size() > 1) {
        Eigen::MatrixXd xa(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(active.size()));
        for (std::size_t c = 0; c < active.size(); ++c) xa.col(static_cast<Eigen::Index>(c)) = x.col(static_cast<Eigen::Index>(active[c]));
        const Eigen::VectorXd beta = lasso_cd(xa, yv, best_lambda);
        std::size_t victim = 0;
        for (std::size_t c = 1; c < active.size(); ++c) {
            const double a = std::abs(beta[static_cast<Eigen::Index>(c)]);
            const double b = std::abs(beta[static_cast<Eigen::Index>(victim)]);
            if (a < b) victim = c;
            else if (a == b && names[active[c]] > names[active[victim]]) victim = c;  // tie: later name goes
        }
        rank[active[victim]] = static_cast<int>(active.size());
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    rank[active[0]] = 1;
    return rank;
}

RfeCoxResult multivariate_cox_with_rfe(const std::vector<SurvivalSample>& samples, const std::vector<double>& x,
                                       const std::vector<std::string>& names, int top_k, std::uint64_t seed,
                                       RfeResponse response) {
    if (top_k < 1) throw ConfigError("InvalidConfig", "top_k must be >= 1");
    const std::size_t n = samples.size();
    const std::size_t p = names.size();

    std::vector<double> y(n, 0.0);
    if (response == RfeResponse::EventIndicator) {
        for (std::size_t i = 0; i < n; ++i) y[i] = samples[i].event;
    } else {
        // event time among uncensored samples; censored rows carry the mean
        double sum = 0;
        std::size_t cnt = 0;
        for (const auto& s : samples)
            if (s.event) {
                sum += s.time;
                ++cnt;
            }
        const double mu = cnt ? sum / static_cast<double>(cnt) : 0.0;
        for (std::size_t i = 0; i < n; ++i) y[i] = samples[i].event ? samples[i].time : mu;
    }

    const std::vector<int> rank = rfe_lasso_rank(x, n, names, y, seed);

    const int k = std::min<int>(top_k, static_cast<int>(p));
    std::vector<std::size_t> chosen;
    for (int want = 1; want <= k; ++want)
        for (std::size_t c = 0; c < p; ++c)
            if (rank[c] == want) chosen.push_back(c);

    RfeCoxResult out;
    std::vector<double> xsel(n * chosen.size());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < chosen.size(); ++c) xsel[r * chosen.size() + c] = x[r * p + chosen[c]];
    for (std::size_t c = 0; c < chosen.size(); ++c) {
        out.selected.push_back(names[chosen[c]]);
        out.importance.push_back(rank[chosen[c]]);
    }
    out.fit = cox_fit(samples, xsel, out.selected);
    return out;
}

// --------------------------------------------------------------- ANCOVA ----

AncovaResult ancova(const std::vector<double>& y, const std::vector<int>& group, const std::vector<double>& covariates,
                    std::size_t n_covariates) {
    const std::size_t n = y.size();
    if (group.size() != n) throw DataError("LengthMismatch", "ancova: y and group lengths differ");
    if (n_covariates > 0 && covariates.size() != n * n_covariates)
        throw DataError("LengthMismatch", "ancova: covariate matrix shape");

    std::int64_t n1 = 0;
    for (int g : group) {
        if (g != 0 && g != 1) throw DataError("NonBinaryEvent", "ancova group must be binary");
        n1 += g;
    }
    if (n1 == 0 || n1 == static_cast<std::int64_t>(n))
        throw DataError("EmptySample", "ancova needs both groups nonempty");

    const std::size_t p_full = 2 + n_covariates;
    if (n <= p_full) throw DataError("TooFewSamples", "ancova: residual degrees of freedom < 1");

    Eigen::MatrixXd xf(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p_full));
    Eigen::MatrixXd xr(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p_full - 1));
    Eigen::VectorXd yv(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        yv[r] = y[i];
        xf(r, 0) = 1.0;
        xf(r, 1) = group[i];
        xr(r, 0) = 1.0;
        for (std::size_t c = 0; c < n_covariates; ++c) {
            xf(r, static_cast<Eigen::Index>(2 + c)) = covariates[i * n_covariates + c];
            xr(r, static_cast<Eigen::Index>(1 + c)) = covariates[i * n_covariates + c];
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_full(xf);
    if (qr_full.rank() < static_cast<Eigen::Index>(p_full))
        throw NumericError("RankDeficient", "ancova design matrix is rank deficient");
    const Eigen::VectorXd beta_full = qr_full.solve(yv);
    const double rss_full = (yv - xf * beta_full).squaredNorm();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_red(xr);
    const Eigen::VectorXd beta_red = qr_red.solve(yv);
    const double rss_red = (yv - xr * beta_red).squaredNorm();

    const double df_resid = static_cast<double>(n - p_full);
    AncovaResult out;
    out.group_effect = beta_full[1];
    if (rss_full <= 0.0) {
        out.f = std::numeric_limits<double>::infinity();
        out.p = 0.0;
        return out;
    }
    out.f = std::max(0.0, (rss_red - rss_full) / (rss_full / df_resid));
    const boost::math::fisher_f fdist(1.0, df_resid);
    out.p = boost::math::cdf(boost::math::complement(fdist, out.f));
    return out;
}

// ------------------------------------------------------ cutpoint search ----

namespace {

// log-rank scores a_i = e_i - cumulative hazard at t_i (Breslow); the
// two-group log-rank numerator equals the sum of scores in one group
std::vector<double> logrank_scores(const std::vector<SurvivalSample>& samples) {
    const std::size_t n = samples.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return samples[a].time < samples[b].time; });

    std::vector<double> scores(n);
    double cumhaz = 0.0;
    std::int64_t at_risk = static_cast<std::int64_t>(n);
    std::size_t i = 0;
    while (i < n) {
        const double t = samples[order[i]].time;
        std::size_t first = i;
        std::int64_t d = 0, removed = 0;
        while (i < n && samples[order[i]].time == t) {
            d += samples[order[i]].event;
            ++removed;
            ++i;
        }
        if (d > 0) cumhaz += static_cast<double>(d) / static_cast<double>(at_risk);
        for (std::size_t j = first; j < i; ++j) scores[order[j]] = samples[order[j]].event - cumhaz;
        at_risk -= removed;
    }
    return scores;
}

// maximum over candidate splits of the permutation-standardized |sum of
// scores below the cut|; scores arrive ordered by ascending x
double max_split_statistic(const std::vector<double>& scores_by_x, const std::vector<std::size_t>& split_positions,
                           double score_mean, double score_ss) {
    const double n = static_cast<double>(scores_by_x.size());
    double best = 0.0;
    double prefix = 0.0;
    std::size_t pos = 0;
    for (const std::size_t split : split_positions) {
        while (pos < split) prefix += scores_by_x[pos++];
        const double m = static_cast<double>(split);
        const double expect = m * score_mean;
        const double var = m * (n - m) / (n * (n - 1.0)) * score_ss;
        if (var <= 0.0) continue;
        const double z = std::abs(prefix - expect) / std::sqrt(var);
        best = std::max(best, z);
    }
    return best;
}

}  // namespace

CutpointResult cutpoint_search(const std::vector<double>& x, const std::vector<SurvivalSample>& samples,
                               int min_node, double alpha, int n_perm, std::uint64_t seed) {
    const std::size_t n = x.size();
    if (samples.size() != n) throw DataError("LengthMismatch", "cutpoint_search inputs");
    if (n < 2 * static_cast<std::size_t>(min_node))
        throw DataError("TooFewSamples", "cutpoint_search needs >= 2*min_node samples");
    std::int64_t events = 0;
    for (const auto& s : samples) events += s.event;
    if (events == 0) throw DataError("NoEvents", "cutpoint_search needs an event");

    const std::vector<double> scores = logrank_scores(samples);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> scores_by_x(n);
    for (std::size_t i = 0; i < n; ++i) scores_by_x[i] = scores[order[i]];

    // candidate splits between consecutive distinct x with both sides large
    // enough; split position s means "first s samples form the low group"
    std::vector<std::size_t> split_positions;
    std::vector<double> cutoffs;
    for (std::size_t s = static_cast<std::size_t>(min_node); s + static_cast<std::size_t>(min_node) <= n; ++s) {
        const double lo = x[order[s - 1]], hi = x[order[s]];
        if (lo == hi) continue;
        split_positions.push_back(s);
        cutoffs.push_back(0.5 * (lo + hi));
    }
    if (split_positions.empty()) throw DataError("NoValidCutpoint", "no split satisfies the min_node constraint");

    double score_mean = 0, score_ss = 0;
    for (double a : scores) score_mean += a;
    score_mean /= static_cast<double>(n);
    for (double a : scores) score_ss += (a - score_mean) * (a - score_mean);

    // observed: argmax, ties resolved toward the smaller cutoff
    double best_stat = -1.0;
    std::size_t best_idx = 0;
    {
        double prefix = 0.0;
        std::size_t pos = 0;
        for (std::size_t c = 0; c < split_positions.size(); ++c) {
            while (pos < split_positions[c]) prefix += scores_by_x[pos++];
            const double m = static_cast<double>(split_positions[c]);
            const double fn = static_cast<double>(n);
            const double var = m * (fn - m) / (fn * (fn - 1.0)) * score_ss;
            if (var <= 0.0) continue;
            const double z = std::abs(prefix - m * score_mean) / std::sqrt(var);
            if (z > best_stat + 1e-15) {
                best_stat = z;
                best_idx = c;
            }
        }
    }
    if (best_stat < 0.0) throw NumericError("NoValidCutpoint", "all candidate statistics degenerate");

    // seeded permutation null of the maximum statistic
    std::vector<std::int64_t> exceed(static_cast<std::size_t>(n_perm), 0);
    parallel_for(n_perm, [&](std::int64_t r) {
        std::vector<double> perm = scores_by_x;
        CounterRng rng(seed, fnv1a64("cutpoint-perm") ^ static_cast<std::uint64_t>(r) * 0x9e3779b97f4a7c15ull);
        rng.shuffle(perm);
        const double stat = max_split_statistic(perm, split_positions, score_mean, score_ss);
        if (stat >= best_stat - 1e-12) exceed[static_cast<std::size_t>(r)] = 1;
    });
    std::int64_t count = 0;
    for (std::int64_t e : exceed) count += e;

    CutpointResult out;
    out.cutoff = cutoffs[best_idx];
    out.n_low = static_cast<std::int64_t>(split_positions[best_idx]);
    out.n_high = static_cast<std::int64_t>(n) - out.n_low;
    out.statistic = best_stat;
    out.p_value = static_cast<double>(1 + count) / static_cast<double>(1 + n_perm);
    out.significant = out.p_value < alpha;
    return out;
}

// ---------------------------------------------------------- concordance ----

double concordance_index(const std::vector<double>& risk_scores, const std::vector<SurvivalSample>& samples) {
    const std::size_t n = samples.size();
    if (risk_scores.size() != n) throw DataError("LengthMismatch", "concordance_index inputs");

    double score = 0.0;
    std::int64_t usable = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto &si = samples[i], &sj = samples[j];
            std::size_t early, late;
            if (si.time < sj.time) {
                early = i;
                late = j;
            } else if (sj.time < si.time) {
                early = j;
                late = i;
            } else {
                // tied times usable only when exactly one is an event
                if (si.event == sj.event) continue;
                const std::size_t ev = si.event ? i : j;
                const std::size_t other = si.event ? j : i;
                ++usable;
                if (risk_scores[ev] > risk_scores[other]) score += 1.0;
                else if (risk_scores[ev] == risk_scores[other]) score += 0.5;
                continue;
            }
            if (!samples[early].event) continue;
            ++usable;
            if (risk_scores[early] > risk_scores[late]) score += 1.0;
            else if (risk_scores[early] == risk_scores[late]) score += 0.5;
        }
    if (usable == 0) throw DataError("NoComparablePairs", "concordance_index has no usable pairs");
    return score / static_cast<double>(usable);
}

}  // namespace deltarad
