#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "deltarad/features.hpp"
#include "deltarad/mesh.hpp"
#include "deltarad/parallel.hpp"

namespace deltarad {

namespace {

enum ShapeIdx {
    kElongation = 0,
    kFlatness,
    kLeastAxisLength,
    kMajorAxisLength,
    kMax2DColumn,
    kMax2DRow,
    kMax2DSlice,
    kMax3D,
    kMeshVolume,
    kMinorAxisLength,
    kSphericity,
    kSurfaceArea,
    kSurfaceVolumeRatio,
    kVoxelVolume
};

struct SurfaceVoxel {
    int i, j, k;
    double x, y, z;
};

// in-mask voxels with any 6-neighbor outside the mask (or the grid)
std::vector<SurfaceVoxel> surface_voxels(const MaskROI& m) {
    std::vector<SurfaceVoxel> out;
    const int nx = m.dims[0], ny = m.dims[1], nz = m.dims[2];
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                if (!m.voxels[m.index(i, j, k)]) continue;
                bool boundary = false;
                static const int off[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
                for (const auto& o : off) {
                    const int x = i + o[0], y = j + o[1], z = k + o[2];
                    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz || !m.voxels[m.index(x, y, z)]) {
                        boundary = true;
                        break;
                    }
                }
                if (boundary)
                    out.push_back({i, j, k, m.origin[0] + i * m.spacing[0], m.origin[1] + j * m.spacing[1],
                                   m.origin[2] + k * m.spacing[2]});
            }
    return out;
}

struct Diameters {
    double d3 = 0, slice = 0, column = 0, row = 0;
};

Diameters max_diameters(const std::vector<SurfaceVoxel>& sv) {
    const std::int64_t n = static_cast<std::int64_t>(sv.size());
    const int nthreads = std::max(1, effective_threads());
    std::vector<Diameters> partial(static_cast<std::size_t>(n), Diameters{});
    parallel_for(n, [&](std::int64_t a) {
        Diameters d;
        const auto& p = sv[static_cast<std::size_t>(a)];
        for (std::int64_t b = a + 1; b < n; ++b) {
            const auto& q = sv[static_cast<std::size_t>(b)];
            const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 > d.d3) d.d3 = d2;
            if (p.k == q.k && dx * dx + dy * dy > d.slice) d.slice = dx * dx + dy * dy;
            if (p.j == q.j && dx * dx + dz * dz > d.column) d.column = dx * dx + dz * dz;
            if (p.i == q.i && dy * dy + dz * dz > d.row) d.row = dy * dy + dz * dz;
        }
        partial[static_cast<std::size_t>(a)] = d;
    });
    (void)nthreads;
    Diameters best;
    for (const auto& d : partial) {
        best.d3 = std::max(best.d3, d.d3);
        best.slice = std::max(best.slice, d.slice);
        best.column = std::max(best.column, d.column);
        best.row = std::max(best.row, d.row);
    }
    best.d3 = std::sqrt(best.d3);
    best.slice = std::sqrt(best.slice);
    best.column = std::sqrt(best.column);
    best.row = std::sqrt(best.row);
    return best;
}

}  // namespace

void extract_shape(const MaskROI& m, FeatureVector& out) {
    const std::size_t n = m.count();
    if (n == 0) throw DataError("EmptyMask", "extract_shape");
    const int base = feature_class_spans()[0].begin;

    const double voxel_volume = m.spacing[0] * m.spacing[1] * m.spacing[2];
    out[base + kVoxelVolume] = static_cast<double>(n) * voxel_volume;

    const auto mesh = isosurface(m);
    const auto mm = measure(mesh);
    out[base + kMeshVolume] = mm.volume;
    out[base + kSurfaceArea] = mm.area;
    out[base + kSurfaceVolumeRatio] = mm.area / mm.volume;
    out[base + kSphericity] = std::cbrt(36.0 * M_PI * mm.volume * mm.volume) / mm.area;

    // principal moments from the population covariance of voxel centers
    double mean[3] = {0, 0, 0};
    for (int k = 0; k < m.dims[2]; ++k)
        for (int j = 0; j < m.dims[1]; ++j)
            for (int i = 0; i < m.dims[0]; ++i) {
                if (!m.voxels[m.index(i, j, k)]) continue;
                mean[0] += i * m.spacing[0];
                mean[1] += j * m.spacing[1];
                mean[2] += k * m.spacing[2];
            }
    for (double& x : mean) x /= static_cast<double>(n);

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int k = 0; k < m.dims[2]; ++k)
        for (int j = 0; j < m.dims[1]; ++j)
            for (int i = 0; i < m.dims[0]; ++i) {
                if (!m.voxels[m.index(i, j, k)]) continue;
                const double c[3] = {i * m.spacing[0] - mean[0], j * m.spacing[1] - mean[1],
                                     k * m.spacing[2] - mean[2]};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) cov(a, b) += c[a] * c[b];
            }
    cov /= static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    double lam[3] = {std::max(0.0, es.eigenvalues()[2]), std::max(0.0, es.eigenvalues()[1]),
                     std::max(0.0, es.eigenvalues()[0])};  // descending

    out[base + kMajorAxisLength] = 4.0 * std::sqrt(lam[0]);
    out[base + kMinorAxisLength] = 4.0 * std::sqrt(lam[1]);
    out[base + kLeastAxisLength] = 4.0 * std::sqrt(lam[2]);
    if (lam[0] > 0.0) {
        out[base + kElongation] = std::sqrt(lam[1] / lam[0]);
        out[base + kFlatness] = std::sqrt(lam[2] / lam[0]);
    } else {
        // single voxel (or empty covariance): treated as isotropic
        out[base + kElongation] = 1.0;
        out[base + kFlatness] = 1.0;
        out.degenerate[base + kElongation] = 1;
        out.degenerate[base + kFlatness] = 1;
    }

    const auto sv = surface_voxels(m);
    const auto di = max_diameters(sv);
    out[base + kMax3D] = di.d3;
    out[base + kMax2DSlice] = di.slice;
    out[base + kMax2DColumn] = di.column;
    out[base + kMax2DRow] = di.row;
    if (sv.size() < 2) {
        for (int f : {kMax3D, kMax2DSlice, kMax2DColumn, kMax2DRow}) out.degenerate[base + f] = 1;
    }
}

}  // namespace deltarad
