#include "deltarad/stats.hpp"

#include <algorithm>
#include <cmath>

#include "deltarad/core.hpp"

namespace deltarad {

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, q);
}

double mean_of(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double population_variance(const std::vector<double>& x) {
    const double mu = mean_of(x);
    double s = 0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size());
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw NumericError("LengthMismatch", "pearson needs two equal-length vectors of size >= 2");
    const double mx = mean_of(x), my = mean_of(y);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw NumericError("ConstantFeature", "pearson undefined for a zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace deltarad
