#ifndef DELTARAD_CORE_HPP
#define DELTARAD_CORE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltarad {

inline constexpr const char* kVersion = "0.1.0";

// Exit-code categories used by the CLI: config=2, data=3, numeric=4.
// `tag` carries the short machine-readable reason (e.g. "BadMagic").
class Error : public std::runtime_error {
public:
    Error(int exit_code, std::string tag, const std::string& msg)
        : std::runtime_error(tag + ": " + msg), exit_code_(exit_code), tag_(std::move(tag)) {}
    int exit_code() const noexcept { return exit_code_; }
    const std::string& tag() const noexcept { return tag_; }

private:
    int exit_code_;
    std::string tag_;
};

struct ConfigError : Error {
    ConfigError(std::string tag, const std::string& msg) : Error(2, std::move(tag), msg) {}
};
struct DataError : Error {
    DataError(std::string tag, const std::string& msg) : Error(3, std::move(tag), msg) {}
};
struct NumericError : Error {
    NumericError(std::string tag, const std::string& msg) : Error(4, std::move(tag), msg) {}
};

using Index3 = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

// Dense 3D scalar image, x-fastest voxel order. Voxel (i,j,k) sits at
// physical position origin + (i,j,k) * spacing (axis-aligned).
struct VolumeGrid {
    Index3 dims{0, 0, 0};
    Vec3 spacing{1.0, 1.0, 1.0};
    Vec3 origin{0.0, 0.0, 0.0};
    std::vector<double> data;
    std::string intensity_unit;

    std::size_t size() const { return data.size(); }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k));
    }
    double at(int i, int j, int k) const { return data[index(i, j, k)]; }
    double& at(int i, int j, int k) { return data[index(i, j, k)]; }

    void validate() const;
};

// Binary region on the same grid as its companion volume.
struct MaskROI {
    Index3 dims{0, 0, 0};
    Vec3 spacing{1.0, 1.0, 1.0};
    Vec3 origin{0.0, 0.0, 0.0};
    std::vector<std::uint8_t> voxels;
    std::string label;

    std::size_t size() const { return voxels.size(); }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k));
    }
    bool in(int i, int j, int k) const { return voxels[index(i, j, k)] != 0; }
    std::size_t count() const;

    void validate() const;
};

// dims equal and spacing within 1e-6 relative.
bool same_grid(const Index3& dims_a, const Vec3& spacing_a, const Index3& dims_b, const Vec3& spacing_b);

inline bool same_grid(const VolumeGrid& v, const MaskROI& m) {
    return same_grid(v.dims, v.spacing, m.dims, m.spacing);
}

void require_same_grid(const VolumeGrid& v, const MaskROI& m, const std::string& context);

// FNV-1a, used for config hashes and counter-RNG key material.
std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace deltarad

#endif
