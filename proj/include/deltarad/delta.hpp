#ifndef DELTARAD_DELTA_HPP
#define DELTARAD_DELTA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltarad/core.hpp"
#include "deltarad/features.hpp"

namespace deltarad {

// (f_k - f_1) / f_1
double relative_change(double f_k, double f_1);
// F5/F1 ratio
double delta_slope(double f_5, double f_1);

struct DeltaSeries {
    std::string course_id;
    std::string feature_name;
    // relative change per fraction F2..F5, in that order; empty when the
    // baseline is zero (course excluded and logged)
    std::vector<double> rel_change;
    double ratio_f5_f1 = 0.0;
    std::string direction_profile;  // all_positive | all_negative | mixed | has_zero
};

// input: per course, per feature, the F1..F5 values
struct FractionValues {
    std::string course_id;
    std::map<std::string, std::array<double, 5>> values;  // feature -> {F1..F5}
};

struct TrendTables {
    std::vector<std::string> features;
    // (a) median and IQR of |relative change| per feature per fraction F2..F5, percent
    std::vector<std::array<double, 4>> abs_median, abs_q1, abs_q3;
    // (b) percent positive / negative / zero of the F5-vs-F1 change
    std::vector<double> pct_positive, pct_negative, pct_zero;
    // (c) percent of courses with all-positive / all-negative F2..F5 changes
    std::vector<double> pct_all_positive, pct_all_negative;
    double median_all_positive = 0, median_all_negative = 0;  // column medians
    // (d) signed median relative change per fraction, percent
    std::vector<std::array<double, 4>> signed_median;
    std::vector<std::string> zero_baseline_log;  // "course:feature" exclusions
};

std::vector<DeltaSeries> delta_series(const std::vector<FractionValues>& cohort,
                                      const std::vector<std::string>& features,
                                      std::vector<std::string>* zero_baseline_log = nullptr);

TrendTables trend_summary(const std::vector<FractionValues>& cohort, const std::vector<std::string>& features);

}  // namespace deltarad

#endif
