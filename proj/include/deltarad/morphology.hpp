#ifndef DELTARAD_MORPHOLOGY_HPP
#define DELTARAD_MORPHOLOGY_HPP

#include <cstdint>
#include <vector>

#include "deltarad/core.hpp"

namespace deltarad {

// Radius-1 structuring element neighborhoods. connectivity 6: faces,
// 18: faces+edges, 26: full 3x3x3 shell.
std::vector<Index3> neighborhood_offsets(int connectivity);

MaskROI erode(const MaskROI& m, int connectivity);
MaskROI dilate(const MaskROI& m, int connectivity);

// 26-connected components of equal label over in-mask voxels.
// Returns component id per voxel (0 = background) and per-component sizes;
// component ids are assigned in scan order, so results are deterministic.
struct LabelComponents {
    std::vector<std::int32_t> component;        // size dims product
    std::vector<std::int64_t> component_size;   // index 0 unused
    std::vector<int> component_gray;            // gray level per component, index 0 unused
};

LabelComponents connected_components_by_label(const Index3& dims, const std::vector<std::uint16_t>& labels);

}  // namespace deltarad

#endif
