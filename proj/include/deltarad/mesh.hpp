#ifndef DELTARAD_MESH_HPP
#define DELTARAD_MESH_HPP

#include <vector>

#include "deltarad/core.hpp"

namespace deltarad {

struct TriangleMesh {
    // flat triangle soup: 9 doubles per triangle, outward-oriented
    std::vector<double> tris;
    std::size_t triangle_count() const { return tris.size() / 9; }
};

// Triangulated 0.5-isosurface of the mask padded with one layer of zeros.
// Cubes march over the 6-tetrahedra decomposition with a fixed diagonal,
// which keeps the surface watertight on binary data; crossing vertices land
// on edge midpoints between voxel centers.
TriangleMesh isosurface(const MaskROI& m);

struct MeshMeasure {
    double volume = 0.0;  // enclosed volume from signed tetrahedra
    double area = 0.0;
};

MeshMeasure measure(const TriangleMesh& mesh);

}  // namespace deltarad

#endif
