#ifndef DELTARAD_STATS_HPP
#define DELTARAD_STATS_HPP

#include <vector>

namespace deltarad {

// linear interpolation between order statistics at rank q*(N-1);
// input must be sorted ascending and nonempty
double quantile_sorted(const std::vector<double>& sorted, double q);

// copy-sort convenience
double quantile(std::vector<double> values, double q);

double mean_of(const std::vector<double>& x);

// population (1/n) variance
double population_variance(const std::vector<double>& x);

// sample Pearson correlation; throws NumericError("ConstantFeature") when
// either side has zero variance
double pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace deltarad

#endif
