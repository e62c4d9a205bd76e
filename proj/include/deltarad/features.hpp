#ifndef DELTARAD_FEATURES_HPP
#define DELTARAD_FEATURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deltarad/core.hpp"
#include "deltarad/preprocess.hpp"

namespace deltarad {

// The 107 feature names, grouped by class in the canonical report order
// (shape, firstorder, glcm, gldm, glrlm, glszm, ngtdm; alphabetical within
// each class). Names carry the extraction-toolkit style prefix, e.g.
// "original_glcm_Imc2".
const std::vector<std::string>& feature_names();
int feature_index(const std::string& name);  // -1 when unknown
constexpr int kFeatureCount = 107;

struct FeatureClassSpan {
    const char* prefix;
    int begin;
    int end;
};
const std::vector<FeatureClassSpan>& feature_class_spans();

struct FeatureVector {
    std::string course_id;
    std::string fraction_label;
    std::uint64_t config_hash = 0;
    std::vector<double> values;             // kFeatureCount, registry order
    std::vector<std::uint8_t> degenerate;   // parallel flags

    FeatureVector() : values(kFeatureCount, 0.0), degenerate(kFeatureCount, 0) {}
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double at(const std::string& name) const;
};

struct FeatureMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> names;
    std::vector<double> data;  // row-major, rows x names

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return names.size(); }
    double at(std::size_t r, std::size_t c) const { return data[r * names.size() + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * names.size() + c]; }
    int column(const std::string& name) const;
    std::vector<double> column_values(std::size_t c) const;
};

// ---- texture matrix builders (exposed for tests and the benchmark) ----

// 13 unique distance-1 directions of the 26-neighborhood half-space
const std::vector<Index3>& texture_directions();

struct GlcmData {
    std::vector<int> gray_values;            // present labels, ascending
    // per direction: symmetric pair counts, gray_values^2, row-major
    std::vector<std::vector<std::int64_t>> counts;
};
GlcmData build_glcm(const DiscretizedVolume& d);

struct GlrlmData {
    std::vector<int> gray_values;
    int max_run = 0;
    std::vector<std::vector<std::int64_t>> counts;  // per direction: gray x run_length
    std::int64_t voxel_count = 0;
};
GlrlmData build_glrlm(const DiscretizedVolume& d);

struct GlszmData {
    std::vector<int> gray_values;
    std::int64_t max_zone = 0;
    std::vector<std::int64_t> counts;  // gray x zone_size, row-major
    std::int64_t voxel_count = 0;
};
GlszmData build_glszm(const DiscretizedVolume& d);

struct GldmData {
    std::vector<int> gray_values;
    int max_dependence = 0;
    std::vector<std::int64_t> counts;  // gray x dependence, row-major
};
GldmData build_gldm(const DiscretizedVolume& d, int alpha = 0);

struct NgtdmData {
    std::vector<int> gray_values;       // levels with n_i > 0
    std::vector<double> s;              // per present level
    std::vector<std::int64_t> n;        // voxels with a valid neighborhood
    std::int64_t nvp = 0;
};
NgtdmData build_ngtdm(const DiscretizedVolume& d);

// ---- per-class extractors; each writes its class span of the vector ----

void extract_shape(const MaskROI& m, FeatureVector& out);
void extract_first_order(const VolumeGrid& v, const MaskROI& m, const DiscretizedVolume& d, FeatureVector& out);
void glcm_features(const DiscretizedVolume& d, FeatureVector& out);
void glrlm_features(const DiscretizedVolume& d, FeatureVector& out);
void glszm_features(const DiscretizedVolume& d, FeatureVector& out);
void gldm_features(const DiscretizedVolume& d, FeatureVector& out, int alpha = 0);
void ngtdm_features(const DiscretizedVolume& d, FeatureVector& out);

// Full 107-feature extraction: optional resampling, shared discretization,
// shape from the (resampled) mask. Intensity normalization, when enabled,
// happens upstream because it needs the reference ROI.
FeatureVector extract_all(const VolumeGrid& v, const MaskROI& m, const PreprocessConfig& cfg);

}  // namespace deltarad

#endif
