#include <cmath>

#include "deltarad/features.hpp"

namespace deltarad {

namespace {

// Fallback for masks so sparse that no direction yields a single voxel
// pair: emit the point-mass conventions at the mean in-mask label and flag
// everything in the class.
void glcm_no_pair_conventions(const DiscretizedVolume& d, const MaskROI& m, FeatureVector& out) {
    double sum = 0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < d.labels.size(); ++i)
        if (m.voxels[i] && d.labels[i]) {
            sum += d.labels[i];
            ++n;
        }
    const double v = n ? sum / static_cast<double>(n) : 1.0;

    auto set = [&](const char* name, double value) {
        const int idx = feature_index(std::string("original_glcm_") + name);
        out[idx] = value;
        out.degenerate[idx] = 1;
    };
    set("Autocorrelation", v * v);
    set("ClusterProminence", 0.0);
    set("ClusterShade", 0.0);
    set("ClusterTendency", 0.0);
    set("Contrast", 0.0);
    set("Correlation", 1.0);
    set("DifferenceAverage", 0.0);
    set("DifferenceEntropy", 0.0);
    set("DifferenceVariance", 0.0);
    set("Id", 1.0);
    set("Idm", 1.0);
    set("Idmn", 1.0);
    set("Idn", 1.0);
    set("Imc1", 0.0);
    set("Imc2", 0.0);
    set("InverseVariance", 0.0);
    set("JointAverage", v);
    set("JointEnergy", 1.0);
    set("JointEntropy", 0.0);
    set("MCC", 1.0);
    set("MaximumProbability", 1.0);
    set("SumAverage", 2.0 * v);
    set("SumEntropy", 0.0);
    set("SumSquares", 0.0);
}

}  // namespace

FeatureVector extract_all(const VolumeGrid& v, const MaskROI& m, const PreprocessConfig& cfg) {
    cfg.validate();
    v.validate();
    m.validate();
    require_same_grid(v, m, "extract_all");
    if (m.count() == 0) throw DataError("EmptyMask", "extract_all");

    const VolumeGrid* vol = &v;
    const MaskROI* mask = &m;
    VolumeGrid vres;
    MaskROI mres;
    if (cfg.resample_spacing) {
        auto [rv, rm] = resample(v, m, *cfg.resample_spacing);
        vres = std::move(rv);
        mres = std::move(rm);
        if (mres.count() == 0) throw DataError("EmptyMask", "extract_all: mask empty after resampling");
        vol = &vres;
        mask = &mres;
    }

    const DiscretizedVolume d = discretize(*vol, *mask, cfg.bin_count);

    FeatureVector out;
    extract_shape(*mask, out);
    extract_first_order(*vol, *mask, d, out);
    try {
        glcm_features(d, out);
    } catch (const NumericError& e) {
        if (e.tag() != "NoValidPairs") throw;
        glcm_no_pair_conventions(d, *mask, out);
    }
    gldm_features(d, out);
    glrlm_features(d, out);
    glszm_features(d, out);
    ngtdm_features(d, out);
    return out;
}

}  // namespace deltarad
