#include "deltarad/morphology.hpp"

#include <cstdlib>

#include "deltarad/parallel.hpp"

namespace deltarad {

std::vector<Index3> neighborhood_offsets(int connectivity) {
    if (connectivity != 6 && connectivity != 18 && connectivity != 26)
        throw ConfigError("InvalidConfig", "connectivity must be 6, 18 or 26");
    std::vector<Index3> out;
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int l1 = std::abs(dx) + std::abs(dy) + std::abs(dz);
                if (l1 == 0) continue;
                if (connectivity == 6 && l1 > 1) continue;
                if (connectivity == 18 && l1 > 2) continue;
                out.push_back({dx, dy, dz});
            }
    return out;
}

namespace {

MaskROI morph(const MaskROI& m, int connectivity, bool erode_op) {
    const auto offsets = neighborhood_offsets(connectivity);
    MaskROI out = m;
    const int nx = m.dims[0], ny = m.dims[1], nz = m.dims[2];
    parallel_for(static_cast<std::int64_t>(nz), [&](std::int64_t kk) {
        const int k = static_cast<int>(kk);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t idx = m.index(i, j, k);
                bool hit;
                if (erode_op) {
                    // voxel survives only if all neighbors (inside the grid)
                    // are set; grid boundary counts as background
                    hit = m.voxels[idx] != 0;
                    if (hit)
                        for (const auto& o : offsets) {
                            const int x = i + o[0], y = j + o[1], z = k + o[2];
                            if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz || !m.voxels[m.index(x, y, z)]) {
                                hit = false;
                                break;
                            }
                        }
                } else {
                    hit = m.voxels[idx] != 0;
                    if (!hit)
                        for (const auto& o : offsets) {
                            const int x = i + o[0], y = j + o[1], z = k + o[2];
                            if (x >= 0 && y >= 0 && z >= 0 && x < nx && y < ny && z < nz && m.voxels[m.index(x, y, z)]) {
                                hit = true;
                                break;
                            }
                        }
                }
                out.voxels[idx] = hit ? 1 : 0;
            }
    });
    return out;
}

}  // namespace

MaskROI erode(const MaskROI& m, int connectivity) { return morph(m, connectivity, true); }
MaskROI dilate(const MaskROI& m, int connectivity) { return morph(m, connectivity, false); }

LabelComponents connected_components_by_label(const Index3& dims, const std::vector<std::uint16_t>& labels) {
    const int nx = dims[0], ny = dims[1], nz = dims[2];
    const auto offsets = neighborhood_offsets(26);

    LabelComponents lc;
    lc.component.assign(labels.size(), 0);
    lc.component_size.push_back(0);
    lc.component_gray.push_back(0);

    std::vector<std::size_t> stack;
    std::int32_t next_id = 1;
    auto index = [&](int i, int j, int k) {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * k);
    };

    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t seed = index(i, j, k);
                if (labels[seed] == 0 || lc.component[seed] != 0) continue;
                const std::uint16_t gray = labels[seed];
                const std::int32_t id = next_id++;
                std::int64_t size = 0;
                stack.clear();
                stack.push_back(seed);
                lc.component[seed] = id;
                while (!stack.empty()) {
                    const std::size_t cur = stack.back();
                    stack.pop_back();
                    ++size;
                    const int ci = static_cast<int>(cur % nx);
                    const int cj = static_cast<int>((cur / nx) % ny);
                    const int ck = static_cast<int>(cur / (static_cast<std::size_t>(nx) * ny));
                    for (const auto& o : offsets) {
                        const int x = ci + o[0], y = cj + o[1], z = ck + o[2];
                        if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) continue;
                        const std::size_t nidx = index(x, y, z);
                        if (labels[nidx] == gray && lc.component[nidx] == 0) {
                            lc.component[nidx] = id;
                            stack.push_back(nidx);
                        }
                    }
                }
                lc.component_size.push_back(size);
                lc.component_gray.push_back(gray);
            }
    return lc;
}

}  // namespace deltarad
