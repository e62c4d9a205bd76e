#ifndef DELTARAD_SURVIVAL_HPP
#define DELTARAD_SURVIVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deltarad/core.hpp"

namespace deltarad {

struct SurvivalSample {
    double time = 0;
    int event = 0;
};

struct KmPoint {
    double time;
    double survival;       // S(t) just after the step
    std::int64_t at_risk;  // risk set size at t-
    std::int64_t events;
};

// product-limit estimator; steps only at event times, S(0) = 1
std::vector<KmPoint> km_estimate(const std::vector<SurvivalSample>& samples);

struct LogrankResult {
    double chi2 = 0;
    double p = 1;
};

LogrankResult logrank_test(const std::vector<SurvivalSample>& group_a, const std::vector<SurvivalSample>& group_b);

struct CoxCovariate {
    std::string name;
    double beta = 0, se = 0, z = 0, p = 1;
    double hr = 1, ci_low = 0, ci_high = 0;
};

struct CoxFit {
    std::vector<CoxCovariate> covariates;
    double loglik = 0;
    double null_loglik = 0;
    double concordance = 0.5;
    bool converged = false;
    bool separation = false;  // monotone likelihood flag
    int iterations = 0;
};

// Cox proportional hazards with Efron tie handling, Newton iterations with
// step halving, Wald p-values, Harrell concordance from the linear
// predictor. x is row-major n x p.
CoxFit cox_fit(const std::vector<SurvivalSample>& samples, const std::vector<double>& x,
               const std::vector<std::string>& covariate_names);

// Benjamini-Hochberg step-up adjustment, input order preserved.
std::vector<double> bh_adjust(const std::vector<double>& p_values);

enum class RfeResponse { EventIndicator, EventTimeUncensored };

// Recursive feature elimination backed by lasso coordinate descent at a
// 5-fold-CV-chosen penalty; returns rank per column (1 = eliminated last).
std::vector<int> rfe_lasso_rank(const std::vector<double>& x, std::size_t n_rows,
                                const std::vector<std::string>& names, const std::vector<double>& y,
                                std::uint64_t seed);

struct RfeCoxResult {
    CoxFit fit;
    std::vector<std::string> selected;   // fit order
    std::vector<int> importance;         // RFE rank per selected covariate
};

RfeCoxResult multivariate_cox_with_rfe(const std::vector<SurvivalSample>& samples, const std::vector<double>& x,
                                       const std::vector<std::string>& names, int top_k, std::uint64_t seed,
                                       RfeResponse response = RfeResponse::EventIndicator);

struct AncovaResult {
    double f = 0;
    double p = 1;
    double group_effect = 0;
};

// y ~ intercept + group + covariates, F-test against the model without the
// group term; covariates row-major n x c (may be empty).
AncovaResult ancova(const std::vector<double>& y, const std::vector<int>& group, const std::vector<double>& covariates,
                    std::size_t n_covariates);

struct CutpointResult {
    double cutoff = 0;
    std::int64_t n_low = 0, n_high = 0;
    double statistic = 0;  // standardized log-rank statistic at the cutoff
    double p_value = 1;    // permutation p
    bool significant = false;
};

// Maximally selected log-rank statistic over midpoint candidates with both
// sides >= min_node; significance by seeded permutation of x.
CutpointResult cutpoint_search(const std::vector<double>& x, const std::vector<SurvivalSample>& samples,
                               int min_node = 7, double alpha = 0.05, int n_perm = 10000, std::uint64_t seed = 0);

// Harrell's C over usable pairs; risk ties count 0.5.
double concordance_index(const std::vector<double>& risk_scores, const std::vector<SurvivalSample>& samples);

// distribution tails used across the statistics
double normal_sf_two_sided(double z);  // 2*(1-Phi(|z|))
double chi2_1df_sf(double x);

}  // namespace deltarad

#endif
