#ifndef DELTARAD_PHANTOM_HPP
#define DELTARAD_PHANTOM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "deltarad/cohort.hpp"
#include "deltarad/core.hpp"

namespace deltarad {

struct PhantomSpec {
    std::uint64_t seed = 7;
    int n_courses = 20;
    Index3 dims{48, 48, 32};
    Vec3 spacing{1.5, 1.5, 3.0};

    // ellipsoidal lesion, radii in mm
    Vec3 lesion_radii_mm{12.0, 10.0, 9.0};
    double intensity_mean = 100.0;
    double intensity_sd = 15.0;
    double skewness_start = 2.0;        // skew-normal shape at F1
    double skewness_drift = -0.5;       // added per fraction F2..F5
    double volume_drift = 0.0;          // relative radius change per fraction
    double background_mean = 20.0;
    double background_sd = 2.0;
    double sim_noise_sd = 1.0;          // SIM = F1 distribution + small noise
    bool heart_roi = true;
    double heart_intensity = 200.0;     // constant, so normalization is exact

    // survival model: hazard lambda0 * exp(sum beta*x)
    double baseline_hazard = 0.002;
    std::map<std::string, double> betas;
    double censoring_rate = 0.2;

    void validate() const;
};

struct PhantomCourse {
    std::string course_id;
    // SIM, F1..F5 in fraction_labels() order
    std::vector<std::pair<std::string, VolumeGrid>> images;
    std::vector<std::pair<std::string, MaskROI>> gtv_masks;
    MaskROI heart_mask;  // empty voxels when heart_roi is off
    bool has_heart = false;
};

PhantomCourse generate_phantom_course(const PhantomSpec& spec, int course_index);

// Event times from the exponential hazard by inverse CDF; censor times
// calibrated by bisection so the realized censoring rate lands near the
// configured one.
OutcomeTable generate_survival(const PhantomSpec& spec, const std::vector<std::string>& course_ids,
                               const std::vector<std::map<std::string, double>>& covariates);

// Writes NIfTI volumes, manifest.json and outcomes.csv under out_dir; the
// result is a cohort the pipeline consumes unchanged.
void write_phantom_cohort(const PhantomSpec& spec, const std::string& out_dir);

}  // namespace deltarad

#endif
