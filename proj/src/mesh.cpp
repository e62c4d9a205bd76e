#include "deltarad/mesh.hpp"

#include <array>

#include "deltarad/parallel.hpp"

namespace deltarad {

namespace {

// cube corner offsets, Bourke ordering
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// six positively-oriented tetrahedra around the c0-c6 diagonal; the induced
// face diagonals agree between neighboring cubes, so the surface is closed
constexpr int kTet[6][4] = {{0, 5, 1, 6}, {0, 1, 2, 6}, {0, 2, 3, 6},
                            {0, 3, 7, 6}, {0, 7, 4, 6}, {0, 4, 5, 6}};

// even permutations bringing each single slot to the front
constexpr int kPermOne[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
// even permutations bringing each unordered pair to the front two slots
constexpr int kPermTwo[6][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 3, 0, 1}};
constexpr int kPairIndex[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};

struct P3 {
    double x, y, z;
};

inline P3 midpoint(const P3& a, const P3& b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y), 0.5 * (a.z + b.z)}; }

inline void emit(std::vector<double>& out, const P3& a, const P3& b, const P3& c) {
    out.insert(out.end(), {a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z});
}

void march_tet(const P3 pos[4], const bool inside[4], std::vector<double>& out) {
    int n_in = inside[0] + inside[1] + inside[2] + inside[3];
    if (n_in == 0 || n_in == 4) return;

    if (n_in == 1 || n_in == 3) {
        int slot = -1;
        const bool want = (n_in == 1);
        for (int s = 0; s < 4; ++s)
            if (inside[s] == want) slot = s;
        const int* pm = kPermOne[slot];
        const P3 m1 = midpoint(pos[pm[0]], pos[pm[1]]);
        const P3 m2 = midpoint(pos[pm[0]], pos[pm[2]]);
        const P3 m3 = midpoint(pos[pm[0]], pos[pm[3]]);
        if (n_in == 1)
            emit(out, m1, m2, m3);  // normal away from the inside vertex
        else
            emit(out, m1, m3, m2);  // outside vertex in front: flip
        return;
    }

    // two inside, two outside -> quad
    int a = -1, b = -1;
    for (int s = 0; s < 4; ++s)
        if (inside[s]) {
            if (a < 0) a = s;
            else b = s;
        }
    const int* pm = kPermTwo[kPairIndex[a][b]];
    const P3 q0 = midpoint(pos[pm[0]], pos[pm[2]]);
    const P3 q1 = midpoint(pos[pm[0]], pos[pm[3]]);
    const P3 q2 = midpoint(pos[pm[1]], pos[pm[3]]);
    const P3 q3 = midpoint(pos[pm[1]], pos[pm[2]]);
    emit(out, q0, q1, q2);
    emit(out, q0, q2, q3);
}

}  // namespace

TriangleMesh isosurface(const MaskROI& m) {
    const int nx = m.dims[0], ny = m.dims[1], nz = m.dims[2];
    auto sample = [&](int i, int j, int k) -> bool {
        if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return false;
        return m.voxels[m.index(i, j, k)] != 0;
    };

    // cells span the zero-padded lattice: corner (i,j,k) .. (i+1,j+1,k+1)
    const int ncell_z = nz + 1;
    std::vector<std::vector<double>> slab(static_cast<std::size_t>(ncell_z));

    parallel_for(ncell_z, [&](std::int64_t kk) {
        const int k = static_cast<int>(kk) - 1;
        auto& out = slab[static_cast<std::size_t>(kk)];
        for (int j = -1; j < ny; ++j)
            for (int i = -1; i < nx; ++i) {
                bool corner_in[8];
                int sum = 0;
                for (int c = 0; c < 8; ++c) {
                    corner_in[c] = sample(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]);
                    sum += corner_in[c];
                }
                if (sum == 0 || sum == 8) continue;

                P3 corner_pos[8];
                for (int c = 0; c < 8; ++c) {
                    corner_pos[c] = {m.origin[0] + (i + kCorner[c][0]) * m.spacing[0],
                                     m.origin[1] + (j + kCorner[c][1]) * m.spacing[1],
                                     m.origin[2] + (k + kCorner[c][2]) * m.spacing[2]};
                }
                for (const auto& tet : kTet) {
                    const P3 pos[4] = {corner_pos[tet[0]], corner_pos[tet[1]], corner_pos[tet[2]], corner_pos[tet[3]]};
                    const bool in[4] = {corner_in[tet[0]], corner_in[tet[1]], corner_in[tet[2]], corner_in[tet[3]]};
                    march_tet(pos, in, out);
                }
            }
    });

    TriangleMesh mesh;
    std::size_t total = 0;
    for (const auto& s : slab) total += s.size();
    mesh.tris.reserve(total);
    for (const auto& s : slab) mesh.tris.insert(mesh.tris.end(), s.begin(), s.end());
    return mesh;
}

MeshMeasure measure(const TriangleMesh& mesh) {
    MeshMeasure mm;
    const std::size_t n = mesh.triangle_count();
    for (std::size_t t = 0; t < n; ++t) {
        const double* p = &mesh.tris[9 * t];
        const double ax = p[0], ay = p[1], az = p[2];
        const double bx = p[3], by = p[4], bz = p[5];
        const double cx = p[6], cy = p[7], cz = p[8];
        // signed tetrahedron against the coordinate origin
        mm.volume += (ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx)) / 6.0;
        const double ux = bx - ax, uy = by - ay, uz = bz - az;
        const double vx = cx - ax, vy = cy - ay, vz = cz - az;
        const double nxs = uy * vz - uz * vy, nys = uz * vx - ux * vz, nzs = ux * vy - uy * vx;
        mm.area += 0.5 * std::sqrt(nxs * nxs + nys * nys + nzs * nzs);
    }
    mm.volume = std::abs(mm.volume);
    return mm;
}

}  // namespace deltarad
