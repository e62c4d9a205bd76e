#include "deltarad/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "deltarad/parallel.hpp"

namespace deltarad {

double masked_median(const VolumeGrid& v, const MaskROI& m) {
    std::vector<double> vals;
    vals.reserve(m.count());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (m.voxels[i]) vals.push_back(v.data[i]);
    if (vals.empty()) throw DataError("EmptyReferenceMask", "reference mask has no voxels");
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    return n % 2 ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

VolumeGrid normalize_by_reference(const VolumeGrid& v, const MaskROI& ref_mask) {
    require_same_grid(v, ref_mask, "normalize_by_reference");
    const double med = masked_median(v, ref_mask);
    if (med == 0.0) throw DataError("ZeroMedian", "reference-region median is zero");

    VolumeGrid out = v;
    const std::int64_t n = static_cast<std::int64_t>(out.data.size());
    parallel_for(n, [&](std::int64_t i) { out.data[static_cast<std::size_t>(i)] = v.data[static_cast<std::size_t>(i)] / med; });
    return out;
}

namespace {

int output_dim(int n_in, double sp_in, double sp_out) {
    const double extent = static_cast<double>(n_in) * sp_in;
    const int n = static_cast<int>(std::ceil(extent / sp_out - 1e-9));
    return n;
}

}  // namespace

std::pair<VolumeGrid, MaskROI> resample(const VolumeGrid& v, const MaskROI& m, const Vec3& spacing) {
    require_same_grid(v, m, "resample");
    for (double s : spacing)
        if (!(s > 0)) throw ConfigError("InvalidConfig", "resample spacing must be positive");

    bool identity = true;
    for (int a = 0; a < 3; ++a)
        if (spacing[a] != v.spacing[a]) identity = false;
    if (identity) return {v, m};

    Index3 od;
    for (int a = 0; a < 3; ++a) {
        od[a] = output_dim(v.dims[a], v.spacing[a], spacing[a]);
        if (od[a] <= 0) throw DataError("DegenerateOutputGrid", "output dim along axis " + std::to_string(a) + " is 0");
    }

    VolumeGrid ov;
    ov.dims = od;
    ov.spacing = spacing;
    ov.origin = v.origin;  // first voxel centers coincide
    ov.intensity_unit = v.intensity_unit;
    ov.data.resize(static_cast<std::size_t>(od[0]) * od[1] * od[2]);

    MaskROI om;
    om.dims = od;
    om.spacing = spacing;
    om.origin = m.origin;
    om.label = m.label;
    om.voxels.resize(ov.data.size());

    const std::int64_t total = static_cast<std::int64_t>(ov.data.size());
    parallel_for(total, [&](std::int64_t t) {
        const int i = static_cast<int>(t % od[0]);
        const int j = static_cast<int>((t / od[0]) % od[1]);
        const int k = static_cast<int>(t / (static_cast<std::int64_t>(od[0]) * od[1]));

        // continuous input-index coordinates of this output voxel center
        double c[3];
        const int out_ijk[3] = {i, j, k};
        for (int a = 0; a < 3; ++a) c[a] = out_ijk[a] * spacing[a] / v.spacing[a];

        // trilinear with edge clamping
        int i0[3];
        double f[3];
        for (int a = 0; a < 3; ++a) {
            double fl = std::floor(c[a]);
            i0[a] = static_cast<int>(fl);
            f[a] = c[a] - fl;
            if (i0[a] < 0) {
                i0[a] = 0;
                f[a] = 0.0;
            }
            if (i0[a] >= v.dims[a] - 1) {
                i0[a] = std::max(0, v.dims[a] - 2);
                f[a] = (v.dims[a] == 1) ? 0.0 : 1.0;
                if (c[a] <= i0[a]) f[a] = 0.0;  // single-voxel axis
            }
        }
        double acc = 0.0;
        for (int dz = 0; dz < 2; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    const double w = (dx ? f[0] : 1 - f[0]) * (dy ? f[1] : 1 - f[1]) * (dz ? f[2] : 1 - f[2]);
                    if (w == 0.0) continue;
                    const int xi = std::min(i0[0] + dx, v.dims[0] - 1);
                    const int yi = std::min(i0[1] + dy, v.dims[1] - 1);
                    const int zi = std::min(i0[2] + dz, v.dims[2] - 1);
                    acc += w * v.at(xi, yi, zi);
                }
        ov.data[static_cast<std::size_t>(t)] = acc;

        int ni[3];
        for (int a = 0; a < 3; ++a) {
            ni[a] = static_cast<int>(std::lround(c[a]));
            ni[a] = std::clamp(ni[a], 0, v.dims[a] - 1);
        }
        om.voxels[static_cast<std::size_t>(t)] = m.voxels[m.index(ni[0], ni[1], ni[2])];
    });

    return {std::move(ov), std::move(om)};
}

DiscretizedVolume discretize(const VolumeGrid& v, const MaskROI& m, int bin_count) {
    require_same_grid(v, m, "discretize");
    if (bin_count < 2) throw ConfigError("InvalidConfig", "bin_count must be >= 2");

    double lo = 0, hi = 0;
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!m.voxels[i]) continue;
        const double x = v.data[i];
        if (!any) {
            lo = hi = x;
            any = true;
        } else {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    if (!any) throw DataError("EmptyMask", "discretize: mask has no voxels");

    DiscretizedVolume d;
    d.dims = v.dims;
    d.spacing = v.spacing;
    d.bin_count = bin_count;
    d.bin_min = lo;
    d.labels.assign(v.size(), 0);

    if (hi == lo) {
        d.bin_width = 1.0;  // constant region convention: one occupied bin
        for (std::size_t i = 0; i < v.size(); ++i)
            if (m.voxels[i]) d.labels[i] = 1;
        return d;
    }

    const double width = (hi - lo) / bin_count;
    d.bin_width = width;
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    parallel_for(n, [&](std::int64_t ii) {
        const auto i = static_cast<std::size_t>(ii);
        if (!m.voxels[i]) return;
        int lab = static_cast<int>(std::floor((v.data[i] - lo) / width)) + 1;
        if (lab > bin_count) lab = bin_count;  // x == hi lands in the top bin
        if (lab < 1) lab = 1;
        d.labels[i] = static_cast<std::uint16_t>(lab);
    });
    return d;
}

}  // namespace deltarad
