#ifndef DELTARAD_NIFTI_HPP
#define DELTARAD_NIFTI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deltarad/core.hpp"

namespace deltarad::nifti {

// NIfTI-1 single-file (.nii), little-endian. Supported on-disk datatypes:
// uint8 (2), int16 (4), int32 (8), float32 (16), float64 (64); all promoted
// to double with scl_slope/scl_inter applied when slope != 0.
VolumeGrid parse(const std::vector<std::uint8_t>& bytes);

// Canonical writer: float32, scl_slope=1, scl_inter=0, vox_offset=352,
// sform_code=1 carrying the axis-aligned spacing/origin.
std::vector<std::uint8_t> write(const VolumeGrid& v);

VolumeGrid read_file(const std::string& path);
void write_file(const std::string& path, const VolumeGrid& v);

// Loads a volume as a binary mask: nonzero voxels become 1.
MaskROI read_mask_file(const std::string& path, const std::string& label);

}  // namespace deltarad::nifti

#endif
