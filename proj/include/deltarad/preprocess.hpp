#ifndef DELTARAD_PREPROCESS_HPP
#define DELTARAD_PREPROCESS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "deltarad/core.hpp"

namespace deltarad {

// Gray-level labels 1..bin_count over mask voxels, 0 outside.
struct DiscretizedVolume {
    Index3 dims{0, 0, 0};
    Vec3 spacing{1.0, 1.0, 1.0};
    std::vector<std::uint16_t> labels;
    int bin_count = 0;
    double bin_min = 0.0;
    double bin_width = 1.0;

    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k));
    }
    int label(int i, int j, int k) const { return labels[index(i, j, k)]; }
};

struct PreprocessConfig {
    bool normalize = true;
    int bin_count = 64;
    std::optional<Vec3> resample_spacing;  // trilinear image, nearest mask

    void validate() const {
        if (bin_count < 2) throw ConfigError("InvalidConfig", "bin_count must be >= 2");
        if (resample_spacing)
            for (double s : *resample_spacing)
                if (!(s > 0)) throw ConfigError("InvalidConfig", "resample spacing must be positive");
    }
};

// Divides every voxel by the median intensity over ref_mask. The output
// median over ref_mask is exactly 1 for odd counts and within 1e-12 of 1
// otherwise.
VolumeGrid normalize_by_reference(const VolumeGrid& v, const MaskROI& ref_mask);

double masked_median(const VolumeGrid& v, const MaskROI& m);

std::pair<VolumeGrid, MaskROI> resample(const VolumeGrid& v, const MaskROI& m, const Vec3& spacing);

DiscretizedVolume discretize(const VolumeGrid& v, const MaskROI& m, int bin_count);

}  // namespace deltarad

#endif
