#include "deltarad/collinearity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "deltarad/stats.hpp"

namespace deltarad {

CorrelationMatrix pearson_matrix(const FeatureMatrix& x) {
    if (x.rows() < 3) throw DataError("TooFewCourses", "pearson_matrix needs >= 3 samples");
    const std::size_t p = x.cols();

    CorrelationMatrix out;
    out.names = x.names;
    out.r.assign(p * p, 0.0);

    std::vector<std::vector<double>> cols(p);
    std::vector<bool> constant(p, false);
    for (std::size_t c = 0; c < p; ++c) {
        cols[c] = x.column_values(c);
        const double var = population_variance(cols[c]);
        if (var == 0.0) {
            constant[c] = true;
            out.constant_features.push_back(x.names[c]);
        }
    }

    for (std::size_t i = 0; i < p; ++i) {
        out.r[i * p + i] = 1.0;
        for (std::size_t j = i + 1; j < p; ++j) {
            double rij = 0.0;
            if (!constant[i] && !constant[j]) rij = pearson(cols[i], cols[j]);
            out.r[i * p + j] = rij;
            out.r[j * p + i] = rij;
        }
    }
    return out;
}

namespace {

std::vector<double> mean_abs_corr(const CorrelationMatrix& corr, const std::vector<bool>& live) {
    const std::size_t p = corr.names.size();
    std::vector<double> mean(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0;
        std::size_t n = 0;
        for (std::size_t j = 0; j < p; ++j) {
            if (j == i || !live[j]) continue;
            s += std::abs(corr.at(i, j));
            ++n;
        }
        mean[i] = n ? s / static_cast<double>(n) : 0.0;
    }
    return mean;
}

}  // namespace

CollinearityReport prune_collinear(const CorrelationMatrix& corr, double threshold, bool recompute_means) {
    const std::size_t p = corr.names.size();
    CollinearityReport rep;
    rep.corr = corr;

    std::vector<bool> prunable(p, true);
    for (const auto& name : corr.constant_features)
        for (std::size_t i = 0; i < p; ++i)
            if (corr.names[i] == name) prunable[i] = false;

    struct Pair {
        std::size_t i, j;
        double abs_r;
    };
    std::vector<Pair> offending;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            if (!prunable[i] || !prunable[j]) continue;
            const double a = std::abs(corr.at(i, j));
            if (a > threshold) offending.push_back({i, j, a});
        }
    std::sort(offending.begin(), offending.end(), [&](const Pair& a, const Pair& b) {
        if (a.abs_r != b.abs_r) return a.abs_r > b.abs_r;
        if (corr.names[a.i] != corr.names[b.i]) return corr.names[a.i] < corr.names[b.i];
        return corr.names[a.j] < corr.names[b.j];
    });

    std::vector<bool> live(p, true);
    std::vector<double> mean = mean_abs_corr(corr, live);

    for (const auto& pr : offending) {
        if (!live[pr.i] || !live[pr.j]) continue;
        if (recompute_means) mean = mean_abs_corr(corr, live);
        std::size_t drop;
        if (mean[pr.i] > mean[pr.j]) drop = pr.i;
        else if (mean[pr.j] > mean[pr.i]) drop = pr.j;
        else drop = corr.names[pr.i] < corr.names[pr.j] ? pr.j : pr.i;  // tie: later name goes
        const std::size_t keep = drop == pr.i ? pr.j : pr.i;
        live[drop] = false;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "mean|r| %.6f vs %.6f", mean[drop], mean[keep]);
        rep.dropped.push_back({corr.names[drop], corr.names[keep], pr.abs_r, buf});
    }

    for (std::size_t i = 0; i < p; ++i)
        if (live[i]) rep.kept.push_back(corr.names[i]);
    return rep;
}

}  // namespace deltarad
