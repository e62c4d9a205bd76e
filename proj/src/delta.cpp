#include "deltarad/delta.hpp"

#include <algorithm>
#include <cmath>

#include "deltarad/stats.hpp"

namespace deltarad {

double relative_change(double f_k, double f_1) {
    if (f_1 == 0.0) throw NumericError("ZeroBaseline", "relative change undefined for F1 == 0");
    return (f_k - f_1) / f_1;
}

double delta_slope(double f_5, double f_1) {
    if (f_1 == 0.0) throw NumericError("ZeroBaseline", "ratio undefined for F1 == 0");
    return f_5 / f_1;
}

std::vector<DeltaSeries> delta_series(const std::vector<FractionValues>& cohort,
                                      const std::vector<std::string>& features,
                                      std::vector<std::string>* zero_baseline_log) {
    std::vector<DeltaSeries> out;
    for (const auto& course : cohort) {
        for (const auto& feature : features) {
            const auto it = course.values.find(feature);
            if (it == course.values.end())
                throw DataError("NameMismatch", "course " + course.course_id + " missing feature " + feature);
            const auto& v = it->second;  // F1..F5
            DeltaSeries s;
            s.course_id = course.course_id;
            s.feature_name = feature;
            if (v[0] == 0.0) {
                if (zero_baseline_log) zero_baseline_log->push_back(course.course_id + ":" + feature);
                s.direction_profile = "has_zero";
                out.push_back(std::move(s));
                continue;
            }
            bool all_pos = true, all_neg = true, any_zero = false;
            for (int f = 1; f < 5; ++f) {
                const double rc = relative_change(v[static_cast<std::size_t>(f)], v[0]);
                s.rel_change.push_back(rc);
                if (rc <= 0) all_pos = false;
                if (rc >= 0) all_neg = false;
                if (rc == 0) any_zero = true;
            }
            s.ratio_f5_f1 = delta_slope(v[4], v[0]);
            s.direction_profile = all_pos ? "all_positive" : all_neg ? "all_negative" : any_zero ? "has_zero" : "mixed";
            out.push_back(std::move(s));
        }
    }
    return out;
}

TrendTables trend_summary(const std::vector<FractionValues>& cohort, const std::vector<std::string>& features) {
    if (cohort.empty()) throw DataError("EmptyCohort", "trend_summary");

    TrendTables t;
    t.features = features;
    const std::size_t nf = features.size();
    t.abs_median.resize(nf);
    t.abs_q1.resize(nf);
    t.abs_q3.resize(nf);
    t.pct_positive.resize(nf);
    t.pct_negative.resize(nf);
    t.pct_zero.resize(nf);
    t.pct_all_positive.resize(nf);
    t.pct_all_negative.resize(nf);
    t.signed_median.resize(nf);

    for (std::size_t fi = 0; fi < nf; ++fi) {
        const auto& feature = features[fi];
        std::vector<std::vector<double>> per_fraction(4);  // F2..F5 relative changes, percent
        std::int64_t n_courses = 0, n_pos = 0, n_neg = 0, n_zero = 0, n_all_pos = 0, n_all_neg = 0;

        for (const auto& course : cohort) {
            const auto it = course.values.find(feature);
            if (it == course.values.end())
                throw DataError("NameMismatch", "course " + course.course_id + " missing feature " + feature);
            const auto& v = it->second;
            if (v[0] == 0.0) {
                t.zero_baseline_log.push_back(course.course_id + ":" + feature);
                continue;
            }
            ++n_courses;
            bool all_pos = true, all_neg = true;
            for (int f = 1; f < 5; ++f) {
                const double rc = 100.0 * relative_change(v[static_cast<std::size_t>(f)], v[0]);
                per_fraction[static_cast<std::size_t>(f - 1)].push_back(rc);
                if (rc <= 0) all_pos = false;
                if (rc >= 0) all_neg = false;
            }
            if (all_pos) ++n_all_pos;
            if (all_neg) ++n_all_neg;
            const double diff = v[4] - v[0];
            if (diff > 0) ++n_pos;
            else if (diff < 0) ++n_neg;
            else ++n_zero;
        }
        if (n_courses == 0) throw DataError("EmptyCohort", "all courses excluded by zero baseline for " + feature);

        for (int f = 0; f < 4; ++f) {
            std::vector<double> abs_rc = per_fraction[static_cast<std::size_t>(f)];
            for (double& x : abs_rc) x = std::abs(x);
            std::sort(abs_rc.begin(), abs_rc.end());
            t.abs_median[fi][static_cast<std::size_t>(f)] = quantile_sorted(abs_rc, 0.50);
            t.abs_q1[fi][static_cast<std::size_t>(f)] = quantile_sorted(abs_rc, 0.25);
            t.abs_q3[fi][static_cast<std::size_t>(f)] = quantile_sorted(abs_rc, 0.75);
            std::vector<double> raw = per_fraction[static_cast<std::size_t>(f)];
            std::sort(raw.begin(), raw.end());
            t.signed_median[fi][static_cast<std::size_t>(f)] = quantile_sorted(raw, 0.50);
        }
        const double nc = static_cast<double>(n_courses);
        t.pct_positive[fi] = 100.0 * static_cast<double>(n_pos) / nc;
        t.pct_negative[fi] = 100.0 * static_cast<double>(n_neg) / nc;
        t.pct_zero[fi] = 100.0 * static_cast<double>(n_zero) / nc;
        t.pct_all_positive[fi] = 100.0 * static_cast<double>(n_all_pos) / nc;
        t.pct_all_negative[fi] = 100.0 * static_cast<double>(n_all_neg) / nc;
    }

    t.median_all_positive = quantile(t.pct_all_positive, 0.50);
    t.median_all_negative = quantile(t.pct_all_negative, 0.50);
    return t;
}

}  // namespace deltarad
