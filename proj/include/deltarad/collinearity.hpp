#ifndef DELTARAD_COLLINEARITY_HPP
#define DELTARAD_COLLINEARITY_HPP

#include <string>
#include <vector>

#include "deltarad/features.hpp"

namespace deltarad {

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<double> r;  // names^2, symmetric, unit diagonal
    std::vector<std::string> constant_features;  // excluded from pruning

    double at(std::size_t i, std::size_t j) const { return r[i * names.size() + j]; }
};

// Sample Pearson correlation for every feature pair; zero-variance features
// are reported and carry correlation 0 against everything.
CorrelationMatrix pearson_matrix(const FeatureMatrix& x);

struct DropDecision {
    std::string dropped;
    std::string partner;
    double abs_r = 0;
    std::string reason;
};

struct CollinearityReport {
    CorrelationMatrix corr;
    std::vector<DropDecision> dropped;
    std::vector<std::string> kept;  // input order
};

// Literal reading of the published procedure: mean |r| computed once on the
// full matrix; offending pairs processed in descending |r| (ties by
// lexicographic pair); in each still-live pair the higher-mean member goes
// (ties: lexicographically later name). recompute_means=true re-derives the
// means over survivors before each drop, for sensitivity analysis.
CollinearityReport prune_collinear(const CorrelationMatrix& corr, double threshold = 0.90,
                                   bool recompute_means = false);

}  // namespace deltarad

#endif
