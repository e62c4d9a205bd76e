#include <algorithm>
#include <cmath>

#include "deltarad/features.hpp"
#include "deltarad/stats.hpp"

namespace deltarad {

namespace {

enum FoIdx {
    kP10 = 0,
    kP90,
    kEnergy,
    kEntropy,
    kIqr,
    kKurtosis,
    kMaximum,
    kMad,
    kMean,
    kMedian,
    kMinimum,
    kRange,
    kRobustMad,
    kRms,
    kSkewness,
    kTotalEnergy,
    kUniformity,
    kVariance
};

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

void extract_first_order(const VolumeGrid& v, const MaskROI& m, const DiscretizedVolume& d, FeatureVector& out) {
    require_same_grid(v, m, "extract_first_order");
    std::vector<double> x;
    x.reserve(m.count());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (m.voxels[i]) x.push_back(v.data[i]);
    if (x.empty()) throw DataError("EmptyMask", "extract_first_order");

    const int base = feature_class_spans()[1].begin;
    const double n = static_cast<double>(x.size());

    double sum = 0, sum2 = 0;
    for (double xi : x) {
        sum += xi;
        sum2 += xi * xi;
    }
    const double mean = sum / n;

    double m2 = 0, m3 = 0, m4 = 0, mad = 0;
    for (double xi : x) {
        const double dlt = xi - mean;
        m2 += dlt * dlt;
        m3 += dlt * dlt * dlt;
        m4 += dlt * dlt * dlt * dlt;
        mad += std::abs(dlt);
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    mad /= n;

    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double p10 = quantile_sorted(sorted, 0.10);
    const double p25 = quantile_sorted(sorted, 0.25);
    const double p75 = quantile_sorted(sorted, 0.75);
    const double p90 = quantile_sorted(sorted, 0.90);

    out[base + kMean] = mean;
    out[base + kMedian] = quantile_sorted(sorted, 0.50);
    out[base + kMinimum] = sorted.front();
    out[base + kMaximum] = sorted.back();
    out[base + kRange] = sorted.back() - sorted.front();
    out[base + kP10] = p10;
    out[base + kP90] = p90;
    out[base + kIqr] = p75 - p25;
    out[base + kEnergy] = sum2;
    out[base + kTotalEnergy] = sum2 * v.spacing[0] * v.spacing[1] * v.spacing[2];
    out[base + kRms] = std::sqrt(sum2 / n);
    out[base + kVariance] = m2;
    out[base + kMad] = mad;

    if (m2 > 0.0) {
        out[base + kSkewness] = m3 / std::pow(m2, 1.5);
        out[base + kKurtosis] = m4 / (m2 * m2);  // non-excess
    } else {
        out[base + kSkewness] = 0.0;
        out[base + kKurtosis] = 0.0;
        out.degenerate[base + kSkewness] = 1;
        out.degenerate[base + kKurtosis] = 1;
    }

    // MAD restricted to the 10th..90th percentile subrange
    double rsum = 0;
    std::size_t rcount = 0;
    for (double xi : sorted)
        if (xi >= p10 && xi <= p90) {
            rsum += xi;
            ++rcount;
        }
    if (rcount > 0) {
        const double rmean = rsum / static_cast<double>(rcount);
        double rmad = 0;
        for (double xi : sorted)
            if (xi >= p10 && xi <= p90) rmad += std::abs(xi - rmean);
        out[base + kRobustMad] = rmad / static_cast<double>(rcount);
    } else {
        out[base + kRobustMad] = 0.0;
        out.degenerate[base + kRobustMad] = 1;
    }

    // histogram features over discretized labels
    std::vector<std::int64_t> hist(static_cast<std::size_t>(d.bin_count) + 1, 0);
    for (std::size_t i = 0; i < d.labels.size(); ++i)
        if (m.voxels[i]) ++hist[d.labels[i]];
    double entropy = 0, uniformity = 0;
    for (int b = 1; b <= d.bin_count; ++b) {
        if (!hist[static_cast<std::size_t>(b)]) continue;
        const double p = static_cast<double>(hist[static_cast<std::size_t>(b)]) / n;
        entropy -= p * std::log2(p);
        uniformity += p * p;
    }
    out[base + kEntropy] = entropy;
    out[base + kUniformity] = uniformity;
}

}  // namespace deltarad
