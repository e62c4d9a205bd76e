#ifndef DELTARAD_STABILITY_HPP
#define DELTARAD_STABILITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deltarad/core.hpp"
#include "deltarad/features.hpp"

namespace deltarad {

struct PerturbationSpec {
    std::uint64_t seed = 0;
    int repetitions = 5;
    std::vector<std::string> op_choices = {"erode", "dilate"};
    std::vector<int> connectivity_choices = {6, 18, 26};

    void validate() const {
        if (repetitions < 1) throw ConfigError("InvalidConfig", "repetitions must be >= 1");
        if (op_choices.empty() || connectivity_choices.empty())
            throw ConfigError("InvalidConfig", "need at least one op and one connectivity choice");
    }
};

struct PerturbedMask {
    MaskROI mask;
    std::string op;       // the op actually applied
    int connectivity = 0;
    bool fallback = false;  // erosion would have emptied the mask
};

// Deterministic draw keyed by (seed, course_key, rep_index); erosion that
// would empty the mask falls back to dilation and flags it.
PerturbedMask perturb_mask(const MaskROI& m, const PerturbationSpec& spec, const std::string& course_key,
                           int rep_index);

// Lin's concordance correlation coefficient with population (1/n) moments.
double lin_ccc(const std::vector<double>& x, const std::vector<double>& y);

// One CCC per feature across courses; matrices must be row-aligned on
// course_id and share column names.
std::vector<double> temporal_stability(const FeatureMatrix& features_sim, const FeatureMatrix& features_f1);

struct StabilityRow {
    std::string feature;
    double temporal_ccc = 0;
    std::vector<double> spatial_ccc;
    bool stable = false;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;  // canonical feature order
    double threshold = 0.90;
    const StabilityRow* find(const std::string& feature) const;
    std::vector<std::string> stable_features() const;
};

// stable iff temporal > threshold AND every spatial CCC > threshold
// (strict); feature name sets must agree.
StabilityReport stability_gate(const std::vector<std::string>& features, const std::vector<double>& temporal,
                               const std::vector<std::vector<double>>& spatial, double threshold = 0.90);

}  // namespace deltarad

#endif
