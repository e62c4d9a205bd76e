#include "deltarad/ref_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "deltarad/morphology.hpp"
#include "deltarad/preprocess.hpp"

namespace deltarad::ref {

namespace {

bool inside(const Index3& dims, int i, int j, int k) {
    return i >= 0 && j >= 0 && k >= 0 && i < dims[0] && j < dims[1] && k < dims[2];
}

struct Ranks {
    std::vector<int> values;
    std::vector<int> rank;
};

Ranks ranks_of(const DiscretizedVolume& d) {
    Ranks r;
    r.rank.assign(static_cast<std::size_t>(d.bin_count) + 1, -1);
    std::vector<bool> seen(static_cast<std::size_t>(d.bin_count) + 1, false);
    for (auto l : d.labels)
        if (l) seen[l] = true;
    for (int l = 1; l <= d.bin_count; ++l)
        if (seen[static_cast<std::size_t>(l)]) {
            r.rank[static_cast<std::size_t>(l)] = static_cast<int>(r.values.size());
            r.values.push_back(l);
        }
    return r;
}

}  // namespace

MaskROI erode(const MaskROI& m, int connectivity) {
    const auto offsets = neighborhood_offsets(connectivity);
    MaskROI out = m;
    for (int k = 0; k < m.dims[2]; ++k)
        for (int j = 0; j < m.dims[1]; ++j)
            for (int i = 0; i < m.dims[0]; ++i) {
                bool keep = m.voxels[m.index(i, j, k)] != 0;
                for (std::size_t o = 0; keep && o < offsets.size(); ++o) {
                    const int x = i + offsets[o][0], y = j + offsets[o][1], z = k + offsets[o][2];
                    if (!inside(m.dims, x, y, z) || !m.voxels[m.index(x, y, z)]) keep = false;
                }
                out.voxels[out.index(i, j, k)] = keep ? 1 : 0;
            }
    return out;
}

MaskROI dilate(const MaskROI& m, int connectivity) {
    const auto offsets = neighborhood_offsets(connectivity);
    MaskROI out = m;
    for (int k = 0; k < m.dims[2]; ++k)
        for (int j = 0; j < m.dims[1]; ++j)
            for (int i = 0; i < m.dims[0]; ++i) {
                bool set = m.voxels[m.index(i, j, k)] != 0;
                for (std::size_t o = 0; !set && o < offsets.size(); ++o) {
                    const int x = i + offsets[o][0], y = j + offsets[o][1], z = k + offsets[o][2];
                    if (inside(m.dims, x, y, z) && m.voxels[m.index(x, y, z)]) set = true;
                }
                out.voxels[out.index(i, j, k)] = set ? 1 : 0;
            }
    return out;
}

VolumeGrid normalize_by_reference(const VolumeGrid& v, const MaskROI& ref_mask) {
    const double med = masked_median(v, ref_mask);
    if (med == 0.0) throw DataError("ZeroMedian", "reference-region median is zero");
    VolumeGrid out = v;
    for (double& x : out.data) x /= med;
    return out;
}

GlcmData build_glcm(const DiscretizedVolume& d) {
    const Ranks r = ranks_of(d);
    const auto& dirs = texture_directions();
    const std::size_t m = r.values.size();
    GlcmData out;
    out.gray_values = r.values;
    out.counts.assign(dirs.size(), std::vector<std::int64_t>(m * m, 0));
    for (std::size_t di = 0; di < dirs.size(); ++di)
        for (int k = 0; k < d.dims[2]; ++k)
            for (int j = 0; j < d.dims[1]; ++j)
                for (int i = 0; i < d.dims[0]; ++i) {
                    const auto a = d.labels[d.index(i, j, k)];
                    if (!a) continue;
                    const int x = i + dirs[di][0], y = j + dirs[di][1], z = k + dirs[di][2];
                    if (!inside(d.dims, x, y, z)) continue;
                    const auto b = d.labels[d.index(x, y, z)];
                    if (!b) continue;
                    out.counts[di][static_cast<std::size_t>(r.rank[a]) * m + static_cast<std::size_t>(r.rank[b])]++;
                    out.counts[di][static_cast<std::size_t>(r.rank[b]) * m + static_cast<std::size_t>(r.rank[a])]++;
                }
    return out;
}

GlrlmData build_glrlm(const DiscretizedVolume& d) {
    const Ranks r = ranks_of(d);
    const auto& dirs = texture_directions();
    const std::size_t m = r.values.size();
    const int max_run = std::max({d.dims[0], d.dims[1], d.dims[2]});
    GlrlmData out;
    out.gray_values = r.values;
    out.max_run = max_run;
    for (auto l : d.labels)
        if (l) ++out.voxel_count;
    out.counts.assign(dirs.size(), std::vector<std::int64_t>(m * static_cast<std::size_t>(max_run), 0));
    for (std::size_t di = 0; di < dirs.size(); ++di) {
        std::vector<bool> used(d.labels.size(), false);
        for (int k = 0; k < d.dims[2]; ++k)
            for (int j = 0; j < d.dims[1]; ++j)
                for (int i = 0; i < d.dims[0]; ++i) {
                    const std::size_t idx = d.index(i, j, k);
                    if (!d.labels[idx] || used[idx]) continue;
                    const int pi = i - dirs[di][0], pj = j - dirs[di][1], pk = k - dirs[di][2];
                    if (inside(d.dims, pi, pj, pk) && d.labels[d.index(pi, pj, pk)] == d.labels[idx]) continue;
                    int len = 0;
                    int ci = i, cj = j, ck = k;
                    while (inside(d.dims, ci, cj, ck) && d.labels[d.index(ci, cj, ck)] == d.labels[idx]) {
                        used[d.index(ci, cj, ck)] = true;
                        ++len;
                        ci += dirs[di][0];
                        cj += dirs[di][1];
                        ck += dirs[di][2];
                    }
                    out.counts[di][static_cast<std::size_t>(r.rank[d.labels[idx]]) * static_cast<std::size_t>(max_run) +
                                   static_cast<std::size_t>(len - 1)]++;
                }
    }
    return out;
}

GldmData build_gldm(const DiscretizedVolume& d, int alpha) {
    const Ranks r = ranks_of(d);
    const std::size_t m = r.values.size();
    const auto offsets = neighborhood_offsets(26);
    GldmData out;
    out.gray_values = r.values;
    out.max_dependence = 27;
    out.counts.assign(m * 27, 0);
    for (int k = 0; k < d.dims[2]; ++k)
        for (int j = 0; j < d.dims[1]; ++j)
            for (int i = 0; i < d.dims[0]; ++i) {
                const auto a = d.labels[d.index(i, j, k)];
                if (!a) continue;
                int dep = 1;
                for (const auto& o : offsets) {
                    const int x = i + o[0], y = j + o[1], z = k + o[2];
                    if (!inside(d.dims, x, y, z)) continue;
                    const auto b = d.labels[d.index(x, y, z)];
                    if (b && std::abs(static_cast<int>(b) - static_cast<int>(a)) <= alpha) ++dep;
                }
                out.counts[static_cast<std::size_t>(r.rank[a]) * 27 + static_cast<std::size_t>(dep - 1)]++;
            }
    return out;
}

NgtdmData build_ngtdm(const DiscretizedVolume& d) {
    const auto offsets = neighborhood_offsets(26);
    std::vector<double> s(static_cast<std::size_t>(d.bin_count) + 1, 0.0);
    std::vector<std::int64_t> n(static_cast<std::size_t>(d.bin_count) + 1, 0);
    NgtdmData out;
    for (int k = 0; k < d.dims[2]; ++k)
        for (int j = 0; j < d.dims[1]; ++j)
            for (int i = 0; i < d.dims[0]; ++i) {
                const auto a = d.labels[d.index(i, j, k)];
                if (!a) continue;
                double sum = 0;
                int count = 0;
                for (const auto& o : offsets) {
                    const int x = i + o[0], y = j + o[1], z = k + o[2];
                    if (!inside(d.dims, x, y, z)) continue;
                    const auto b = d.labels[d.index(x, y, z)];
                    if (b) {
                        sum += b;
                        ++count;
                    }
                }
                if (count > 0) {
                    s[a] += std::abs(static_cast<double>(a) - sum / count);
                    n[a] += 1;
                    ++out.nvp;
                }
            }
    for (int l = 1; l <= d.bin_count; ++l)
        if (n[static_cast<std::size_t>(l)] > 0) {
            out.gray_values.push_back(l);
            out.s.push_back(s[static_cast<std::size_t>(l)]);
            out.n.push_back(n[static_cast<std::size_t>(l)]);
        }
    return out;
}

Diameters max_diameters(const MaskROI& m) {
    struct P {
        int i, j, k;
        double x, y, z;
    };
    std::vector<P> pts;
    static const int off[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (int k = 0; k < m.dims[2]; ++k)
        for (int j = 0; j < m.dims[1]; ++j)
            for (int i = 0; i < m.dims[0]; ++i) {
                if (!m.voxels[m.index(i, j, k)]) continue;
                bool surf = false;
                for (const auto& o : off)
                    if (!inside(m.dims, i + o[0], j + o[1], k + o[2]) ||
                        !m.voxels[m.index(i + o[0], j + o[1], k + o[2])]) {
                        surf = true;
                        break;
                    }
                if (surf)
                    pts.push_back({i, j, k, m.origin[0] + i * m.spacing[0], m.origin[1] + j * m.spacing[1],
                                   m.origin[2] + k * m.spacing[2]});
            }
    Diameters best;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const double dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y, dz = pts[a].z - pts[b].z;
            best.d3 = std::max(best.d3, dx * dx + dy * dy + dz * dz);
            if (pts[a].k == pts[b].k) best.slice = std::max(best.slice, dx * dx + dy * dy);
            if (pts[a].j == pts[b].j) best.column = std::max(best.column, dx * dx + dz * dz);
            if (pts[a].i == pts[b].i) best.row = std::max(best.row, dy * dy + dz * dz);
        }
    best.d3 = std::sqrt(best.d3);
    best.slice = std::sqrt(best.slice);
    best.column = std::sqrt(best.column);
    best.row = std::sqrt(best.row);
    return best;
}

}  // namespace deltarad::ref
