#include "deltarad/core.hpp"

#include <algorithm>
#include <numeric>

namespace deltarad {

void VolumeGrid::validate() const {
    if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0)
        throw DataError("InvalidVolume", "dims must be positive");
    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (n != data.size())
        throw DataError("InvalidVolume", "dims product " + std::to_string(n) + " != data length " +
                                             std::to_string(data.size()));
    for (int a = 0; a < 3; ++a)
        if (!(spacing[a] > 0.0))
            throw DataError("NonPositiveSpacing", "spacing[" + std::to_string(a) + "] = " + std::to_string(spacing[a]));
    for (double x : data)
        if (!std::isfinite(x)) throw DataError("InvalidVolume", "non-finite intensity");
}

std::size_t MaskROI::count() const {
    std::size_t c = 0;
    for (std::uint8_t v : voxels) c += v;
    return c;
}

void MaskROI::validate() const {
    if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0)
        throw DataError("InvalidMask", "dims must be positive");
    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (n != voxels.size())
        throw DataError("InvalidMask", "dims product != voxel array length");
    for (std::uint8_t v : voxels)
        if (v > 1) throw DataError("InvalidMask", "mask values must be 0 or 1");
}

bool same_grid(const Index3& dims_a, const Vec3& spacing_a, const Index3& dims_b, const Vec3& spacing_b) {
    if (dims_a != dims_b) return false;
    for (int a = 0; a < 3; ++a) {
        const double rel = std::abs(spacing_a[a] - spacing_b[a]) / std::max(std::abs(spacing_a[a]), 1e-300);
        if (rel > 1e-6) return false;
    }
    return true;
}

void require_same_grid(const VolumeGrid& v, const MaskROI& m, const std::string& context) {
    if (!same_grid(v, m))
        throw DataError("GridMismatch", context + ": mask grid does not match volume grid");
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed) { return fnv1a64(s.data(), s.size(), seed); }

}  // namespace deltarad
