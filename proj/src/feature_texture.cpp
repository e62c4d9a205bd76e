#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "deltarad/features.hpp"
#include "deltarad/morphology.hpp"
#include "deltarad/parallel.hpp"

namespace deltarad {

const std::vector<Index3>& texture_directions() {
    // 13 unique direction offsets: lexicographically positive half of the
    // 26-neighborhood, distance 1 per axis
    static const std::vector<Index3> dirs = [] {
        std::vector<Index3> out;
        for (int dz = -1; dz <= 1; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    if (dz > 0 || (dz == 0 && dy > 0) || (dz == 0 && dy == 0 && dx > 0)) out.push_back({dx, dy, dz});
                }
        return out;
    }();
    return dirs;
}

namespace {

struct GrayInfo {
    std::vector<int> values;        // present labels ascending
    std::vector<int> rank;          // label value -> rank, -1 when absent
    std::int64_t voxel_count = 0;
};

GrayInfo gray_info(const DiscretizedVolume& d) {
    GrayInfo g;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(d.bin_count) + 1, 0);
    for (std::uint16_t l : d.labels)
        if (l) {
            ++hist[l];
            ++g.voxel_count;
        }
    if (g.voxel_count == 0) throw DataError("EmptyMask", "texture extraction on empty mask");
    g.rank.assign(static_cast<std::size_t>(d.bin_count) + 1, -1);
    for (int l = 1; l <= d.bin_count; ++l)
        if (hist[static_cast<std::size_t>(l)]) {
            g.rank[static_cast<std::size_t>(l)] = static_cast<int>(g.values.size());
            g.values.push_back(l);
        }
    return g;
}

inline double plog2(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

// ---------------------------------------------------------------- GLCM ----

GlcmData build_glcm(const DiscretizedVolume& d) {
    const GrayInfo g = gray_info(d);
    const auto& dirs = texture_directions();
    const std::size_t m = g.values.size();

    GlcmData out;
    out.gray_values = g.values;
    out.counts.assign(dirs.size(), std::vector<std::int64_t>(m * m, 0));

    const int nx = d.dims[0], ny = d.dims[1], nz = d.dims[2];
    parallel_for(static_cast<std::int64_t>(dirs.size()), [&](std::int64_t di) {
        const auto& dir = dirs[static_cast<std::size_t>(di)];
        auto& counts = out.counts[static_cast<std::size_t>(di)];
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    const std::uint16_t a = d.labels[d.index(i, j, k)];
                    if (!a) continue;
                    const int x = i + dir[0], y = j + dir[1], z = k + dir[2];
                    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) continue;
                    const std::uint16_t b = d.labels[d.index(x, y, z)];
                    if (!b) continue;
                    const std::size_t ra = static_cast<std::size_t>(g.rank[a]);
                    const std::size_t rb = static_cast<std::size_t>(g.rank[b]);
                    ++counts[ra * m + rb];
                    ++counts[rb * m + ra];
                }
    });
    return out;
}

namespace {

struct GlcmDirFeatures {
    double autocorr, prominence, shade, tendency, contrast, correlation, diff_avg, diff_entropy, diff_var, id, idm,
        idmn, idn, imc1, imc2, inv_var, joint_avg, joint_energy, joint_entropy, mcc, max_prob, sum_avg, sum_entropy,
        sum_squares;
    bool correlation_degenerate = false;
};

GlcmDirFeatures glcm_direction_features(const std::vector<std::int64_t>& counts, const std::vector<int>& vals,
                                        double total, int ng_max_value) {
    const std::size_t m = vals.size();
    GlcmDirFeatures f{};

    std::vector<double> p(m * m);
    for (std::size_t i = 0; i < m * m; ++i) p[i] = static_cast<double>(counts[i]) / total;

    std::vector<double> px(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) px[i] += p[i * m + j];
    // symmetric matrix: py == px

    double mu = 0;
    for (std::size_t i = 0; i < m; ++i) mu += vals[i] * px[i];
    double sig2 = 0;
    for (std::size_t i = 0; i < m; ++i) sig2 += (vals[i] - mu) * (vals[i] - mu) * px[i];
    const double sig = std::sqrt(sig2);

    double hx = 0;
    for (std::size_t i = 0; i < m; ++i) hx -= plog2(px[i]);

    // k-distributions over value differences and sums
    std::vector<double> pdiff(static_cast<std::size_t>(vals.back() - vals.front()) + 1, 0.0);
    std::vector<double> psum(static_cast<std::size_t>(2 * vals.back()) + 1, 0.0);
    double hxy = 0, hxy1 = 0, autocorr = 0, cp = 0, cs = 0, ct = 0, contrast = 0, ss = 0, joint_energy = 0,
           max_prob = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double pij = p[i * m + j];
            if (pij == 0.0) continue;
            const double vi = vals[i], vj = vals[j];
            pdiff[static_cast<std::size_t>(std::abs(vals[i] - vals[j]))] += pij;
            psum[static_cast<std::size_t>(vals[i] + vals[j])] += pij;
            autocorr += pij * vi * vj;
            const double c = vi + vj - 2 * mu;
            ct += pij * c * c;
            cs += pij * c * c * c;
            cp += pij * c * c * c * c;
            contrast += pij * (vi - vj) * (vi - vj);
            ss += pij * (vi - mu) * (vi - mu);
            joint_energy += pij * pij;
            hxy -= plog2(pij);
            hxy1 -= pij * std::log2(px[i] * px[j]);
            max_prob = std::max(max_prob, pij);
        }

    double hxy2 = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double q = px[i] * px[j];
            hxy2 -= plog2(q);
        }

    f.autocorr = autocorr;
    f.prominence = cp;
    f.shade = cs;
    f.tendency = ct;
    f.contrast = contrast;
    f.sum_squares = ss;
    f.joint_energy = joint_energy;
    f.joint_entropy = hxy;
    f.max_prob = max_prob;
    f.joint_avg = mu;

    if (sig2 > 0.0) {
        f.correlation = (autocorr - mu * mu) / sig2;
    } else {
        f.correlation = 1.0;
        f.correlation_degenerate = true;
    }

    double da = 0;
    for (std::size_t k = 0; k < pdiff.size(); ++k) da += static_cast<double>(k) * pdiff[k];
    f.diff_avg = da;
    double de = 0, dv = 0, id = 0, idm = 0, idmn = 0, idn = 0, iv = 0;
    const double ng = static_cast<double>(ng_max_value);
    for (std::size_t k = 0; k < pdiff.size(); ++k) {
        const double pk = pdiff[k];
        if (pk == 0.0) continue;
        const double kd = static_cast<double>(k);
        de -= plog2(pk);
        dv += (kd - da) * (kd - da) * pk;
        id += pk / (1.0 + kd);
        idm += pk / (1.0 + kd * kd);
        idmn += pk / (1.0 + (kd * kd) / (ng * ng));
        idn += pk / (1.0 + kd / ng);
        if (k > 0) iv += pk / (kd * kd);
    }
    f.diff_entropy = de;
    f.diff_var = dv;
    f.id = id;
    f.idm = idm;
    f.idmn = idmn;
    f.idn = idn;
    f.inv_var = iv;

    double sa = 0, se = 0;
    for (std::size_t k = 0; k < psum.size(); ++k) {
        const double pk = psum[k];
        if (pk == 0.0) continue;
        sa += static_cast<double>(k) * pk;
        se -= plog2(pk);
    }
    f.sum_avg = sa;
    f.sum_entropy = se;

    const double hmax = hx;  // hy == hx for the symmetric matrix
    f.imc1 = hmax > 0.0 ? (hxy - hxy1) / hmax : 0.0;
    const double imc2_arg = 1.0 - std::exp(-2.0 * (hxy2 - hxy));
    f.imc2 = imc2_arg > 0.0 ? std::sqrt(imc2_arg) : 0.0;

    // MCC via the symmetric similarity D^{-1/2} P D^{-1/2} restricted to
    // rows with px > 0; eigenvalues mu give Q eigenvalues mu^2
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < m; ++i)
        if (px[i] > 0.0) live.push_back(i);
    if (live.size() <= 1) {
        f.mcc = 1.0;
    } else {
        Eigen::MatrixXd s(static_cast<Eigen::Index>(live.size()), static_cast<Eigen::Index>(live.size()));
        for (std::size_t a = 0; a < live.size(); ++a)
            for (std::size_t b = 0; b < live.size(); ++b)
                s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    p[live[a] * m + live[b]] / std::sqrt(px[live[a]] * px[live[b]]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
        std::vector<double> lam2;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            lam2.push_back(es.eigenvalues()[i] * es.eigenvalues()[i]);
        std::sort(lam2.begin(), lam2.end(), std::greater<double>());
        f.mcc = std::sqrt(std::max(0.0, std::min(1.0, lam2[1])));
    }
    return f;
}

}  // namespace

void glcm_features(const DiscretizedVolume& d, FeatureVector& out) {
    const GlcmData data = build_glcm(d);
    const auto span = feature_class_spans()[2];
    const int base = span.begin;
    const int ng_max_value = data.gray_values.back();

    std::vector<GlcmDirFeatures> per_dir;
    bool all_correlation_degenerate = true;
    for (const auto& counts : data.counts) {
        std::int64_t total = 0;
        for (std::int64_t c : counts) total += c;
        if (total == 0) continue;
        per_dir.push_back(glcm_direction_features(counts, data.gray_values, static_cast<double>(total), ng_max_value));
        if (!per_dir.back().correlation_degenerate) all_correlation_degenerate = false;
    }
    if (per_dir.empty()) throw NumericError("NoValidPairs", "no direction yields a voxel pair");

    const double n = static_cast<double>(per_dir.size());
    auto avg = [&](double GlcmDirFeatures::*field) {
        double s = 0;
        for (const auto& f : per_dir) s += f.*field;
        return s / n;
    };

    out[base + 0] = avg(&GlcmDirFeatures::autocorr);
    out[base + 1] = avg(&GlcmDirFeatures::prominence);
    out[base + 2] = avg(&GlcmDirFeatures::shade);
    out[base + 3] = avg(&GlcmDirFeatures::tendency);
    out[base + 4] = avg(&GlcmDirFeatures::contrast);
    out[base + 5] = avg(&GlcmDirFeatures::correlation);
    out[base + 6] = avg(&GlcmDirFeatures::diff_avg);
    out[base + 7] = avg(&GlcmDirFeatures::diff_entropy);
    out[base + 8] = avg(&GlcmDirFeatures::diff_var);
    out[base + 9] = avg(&GlcmDirFeatures::id);
    out[base + 10] = avg(&GlcmDirFeatures::idm);
    out[base + 11] = avg(&GlcmDirFeatures::idmn);
    out[base + 12] = avg(&GlcmDirFeatures::idn);
    out[base + 13] = avg(&GlcmDirFeatures::imc1);
    out[base + 14] = avg(&GlcmDirFeatures::imc2);
    out[base + 15] = avg(&GlcmDirFeatures::inv_var);
    out[base + 16] = avg(&GlcmDirFeatures::joint_avg);
    out[base + 17] = avg(&GlcmDirFeatures::joint_energy);
    out[base + 18] = avg(&GlcmDirFeatures::joint_entropy);
    out[base + 19] = avg(&GlcmDirFeatures::mcc);
    out[base + 20] = avg(&GlcmDirFeatures::max_prob);
    out[base + 21] = avg(&GlcmDirFeatures::sum_avg);
    out[base + 22] = avg(&GlcmDirFeatures::sum_entropy);
    out[base + 23] = avg(&GlcmDirFeatures::sum_squares);

    if (all_correlation_degenerate) {
        out.degenerate[base + 5] = 1;   // Correlation := 1
        out.degenerate[base + 13] = 1;  // Imc1 := 0
        out.degenerate[base + 14] = 1;  // Imc2 := 0
    }
}

// --------------------------------------------------------------- GLRLM ----

GlrlmData build_glrlm(const DiscretizedVolume& d) {
    const GrayInfo g = gray_info(d);
    const auto& dirs = texture_directions();
    const std::size_t m = g.values.size();
    const int nx = d.dims[0], ny = d.dims[1], nz = d.dims[2];
    const int max_run = std::max(nx, std::max(ny, nz));

    GlrlmData out;
    out.gray_values = g.values;
    out.max_run = max_run;
    out.voxel_count = g.voxel_count;
    out.counts.assign(dirs.size(), std::vector<std::int64_t>(m * static_cast<std::size_t>(max_run), 0));

    parallel_for(static_cast<std::int64_t>(dirs.size()), [&](std::int64_t di) {
        const auto& dir = dirs[static_cast<std::size_t>(di)];
        auto& counts = out.counts[static_cast<std::size_t>(di)];
        auto inside = [&](int i, int j, int k) { return i >= 0 && j >= 0 && k >= 0 && i < nx && j < ny && k < nz; };
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    const std::uint16_t a = d.labels[d.index(i, j, k)];
                    if (!a) continue;
                    // run starts where the predecessor breaks
                    const int pi = i - dir[0], pj = j - dir[1], pk = k - dir[2];
                    if (inside(pi, pj, pk) && d.labels[d.index(pi, pj, pk)] == a) continue;
                    int len = 1;
                    int ci = i + dir[0], cj = j + dir[1], ck = k + dir[2];
                    while (inside(ci, cj, ck) && d.labels[d.index(ci, cj, ck)] == a) {
                        ++len;
                        ci += dir[0];
                        cj += dir[1];
                        ck += dir[2];
                    }
                    ++counts[static_cast<std::size_t>(g.rank[a]) * static_cast<std::size_t>(max_run) +
                             static_cast<std::size_t>(len - 1)];
                }
    });
    return out;
}

void glrlm_features(const DiscretizedVolume& d, FeatureVector& out) {
    const GlrlmData data = build_glrlm(d);
    const auto span = feature_class_spans()[4];
    const int base = span.begin;
    const std::size_t m = data.gray_values.size();
    const std::size_t nr_len = static_cast<std::size_t>(data.max_run);

    double acc[16] = {0};
    int valid = 0;
    for (const auto& counts : data.counts) {
        double nr = 0;
        for (std::int64_t c : counts) nr += static_cast<double>(c);
        if (nr == 0) continue;
        ++valid;

        std::vector<double> pg(m, 0.0), pr(nr_len, 0.0);
        double gln = 0, rln = 0, hgl = 0, lgl = 0, lre = 0, sre = 0, lrhgl = 0, lrlgl = 0, srhgl = 0, srlgl = 0,
               entropy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double gi = data.gray_values[i];
            for (std::size_t r = 0; r < nr_len; ++r) {
                const double c = static_cast<double>(counts[i * nr_len + r]);
                if (c == 0) continue;
                const double rj = static_cast<double>(r + 1);
                const double p = c / nr;
                pg[i] += c;
                pr[r] += c;
                hgl += c * gi * gi;
                lgl += c / (gi * gi);
                lre += c * rj * rj;
                sre += c / (rj * rj);
                lrhgl += c * gi * gi * rj * rj;
                lrlgl += c * rj * rj / (gi * gi);
                srhgl += c * gi * gi / (rj * rj);
                srlgl += c / (gi * gi * rj * rj);
                entropy -= plog2(p);
            }
        }
        for (double& x : pg) x /= nr;
        for (double& x : pr) x /= nr;
        for (std::size_t i = 0; i < m; ++i) gln += pg[i] * pg[i];
        for (std::size_t r = 0; r < nr_len; ++r) rln += pr[r] * pr[r];

        double mu_g = 0, mu_r = 0;
        for (std::size_t i = 0; i < m; ++i) mu_g += data.gray_values[i] * pg[i];
        for (std::size_t r = 0; r < nr_len; ++r) mu_r += static_cast<double>(r + 1) * pr[r];
        double var_g = 0, var_r = 0;
        for (std::size_t i = 0; i < m; ++i) var_g += (data.gray_values[i] - mu_g) * (data.gray_values[i] - mu_g) * pg[i];
        for (std::size_t r = 0; r < nr_len; ++r) var_r += (static_cast<double>(r + 1) - mu_r) * (static_cast<double>(r + 1) - mu_r) * pr[r];

        acc[0] += gln * nr;        // GrayLevelNonUniformity: sum_i n_i^2 / Nr
        acc[1] += gln;             // normalized
        acc[2] += var_g;
        acc[3] += hgl / nr;
        acc[4] += lre / nr;
        acc[5] += lrhgl / nr;
        acc[6] += lrlgl / nr;
        acc[7] += lgl / nr;
        acc[8] += entropy;
        acc[9] += rln * nr;
        acc[10] += rln;
        acc[11] += nr / static_cast<double>(data.voxel_count);
        acc[12] += var_r;
        acc[13] += sre / nr;
        acc[14] += srhgl / nr;
        acc[15] += srlgl / nr;
    }

    for (int f = 0; f < 16; ++f) out[base + f] = acc[f] / static_cast<double>(valid);
}

// --------------------------------------------------------------- GLSZM ----

GlszmData build_glszm(const DiscretizedVolume& d) {
    const GrayInfo g = gray_info(d);
    const auto lc = connected_components_by_label(d.dims, d.labels);

    GlszmData out;
    out.gray_values = g.values;
    out.voxel_count = g.voxel_count;
    out.max_zone = 0;
    for (std::size_t c = 1; c < lc.component_size.size(); ++c)
        out.max_zone = std::max(out.max_zone, lc.component_size[c]);

    const std::size_t m = g.values.size();
    out.counts.assign(m * static_cast<std::size_t>(out.max_zone), 0);
    for (std::size_t c = 1; c < lc.component_size.size(); ++c) {
        const int rank = g.rank[static_cast<std::size_t>(lc.component_gray[c])];
        out.counts[static_cast<std::size_t>(rank) * static_cast<std::size_t>(out.max_zone) +
                   static_cast<std::size_t>(lc.component_size[c] - 1)] += 1;
    }
    return out;
}

void glszm_features(const DiscretizedVolume& d, FeatureVector& out) {
    const GlszmData data = build_glszm(d);
    const auto span = feature_class_spans()[5];
    const int base = span.begin;
    const std::size_t m = data.gray_values.size();
    const std::size_t ns = static_cast<std::size_t>(data.max_zone);

    double nz = 0;
    for (std::int64_t c : data.counts) nz += static_cast<double>(c);

    std::vector<double> pg(m, 0.0), ps(ns, 0.0);
    double hgl = 0, lgl = 0, lae = 0, sae = 0, lahgl = 0, lalgl = 0, sahgl = 0, salgl = 0, entropy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double gi = data.gray_values[i];
        for (std::size_t s = 0; s < ns; ++s) {
            const double c = static_cast<double>(data.counts[i * ns + s]);
            if (c == 0) continue;
            const double sj = static_cast<double>(s + 1);
            const double p = c / nz;
            pg[i] += c;
            ps[s] += c;
            hgl += c * gi * gi;
            lgl += c / (gi * gi);
            lae += c * sj * sj;
            sae += c / (sj * sj);
            lahgl += c * gi * gi * sj * sj;
            lalgl += c * sj * sj / (gi * gi);
            sahgl += c * gi * gi / (sj * sj);
            salgl += c / (gi * gi * sj * sj);
            entropy -= plog2(p);
        }
    }
    for (double& x : pg) x /= nz;
    for (double& x : ps) x /= nz;
    double gln = 0, szn = 0;
    for (double x : pg) gln += x * x;
    for (double x : ps) szn += x * x;
    double mu_g = 0, mu_s = 0;
    for (std::size_t i = 0; i < m; ++i) mu_g += data.gray_values[i] * pg[i];
    for (std::size_t s = 0; s < ns; ++s) mu_s += static_cast<double>(s + 1) * ps[s];
    double var_g = 0, var_s = 0;
    for (std::size_t i = 0; i < m; ++i) var_g += (data.gray_values[i] - mu_g) * (data.gray_values[i] - mu_g) * pg[i];
    for (std::size_t s = 0; s < ns; ++s)
        var_s += (static_cast<double>(s + 1) - mu_s) * (static_cast<double>(s + 1) - mu_s) * ps[s];

    out[base + 0] = gln * nz;
    out[base + 1] = gln;
    out[base + 2] = var_g;
    out[base + 3] = hgl / nz;
    out[base + 4] = lae / nz;
    out[base + 5] = lahgl / nz;
    out[base + 6] = lalgl / nz;
    out[base + 7] = lgl / nz;
    out[base + 8] = szn * nz;
    out[base + 9] = szn;
    out[base + 10] = sae / nz;
    out[base + 11] = sahgl / nz;
    out[base + 12] = salgl / nz;
    out[base + 13] = entropy;
    out[base + 14] = nz / static_cast<double>(data.voxel_count);
    out[base + 15] = var_s;
}

// ---------------------------------------------------------------- GLDM ----

GldmData build_gldm(const DiscretizedVolume& d, int alpha) {
    const GrayInfo g = gray_info(d);
    const std::size_t m = g.values.size();
    const int nx = d.dims[0], ny = d.dims[1], nz = d.dims[2];
    const auto offsets = neighborhood_offsets(26);

    // dependence value per voxel computed in parallel, counted serially in
    // scan order
    std::vector<std::uint8_t> dep(d.labels.size(), 0);
    parallel_for(static_cast<std::int64_t>(nz), [&](std::int64_t kk) {
        const int k = static_cast<int>(kk);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t idx = d.index(i, j, k);
                const std::uint16_t a = d.labels[idx];
                if (!a) continue;
                int count = 1;
                for (const auto& o : offsets) {
                    const int x = i + o[0], y = j + o[1], z = k + o[2];
                    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) continue;
                    const std::uint16_t b = d.labels[d.index(x, y, z)];
                    if (b && std::abs(static_cast<int>(b) - static_cast<int>(a)) <= alpha) ++count;
                }
                dep[idx] = static_cast<std::uint8_t>(count);
            }
    });

    GldmData out;
    out.gray_values = g.values;
    out.max_dependence = 27;
    out.counts.assign(m * 27, 0);
    for (std::size_t idx = 0; idx < d.labels.size(); ++idx) {
        if (!d.labels[idx]) continue;
        const std::size_t rank = static_cast<std::size_t>(g.rank[d.labels[idx]]);
        out.counts[rank * 27 + static_cast<std::size_t>(dep[idx] - 1)] += 1;
    }
    return out;
}

void gldm_features(const DiscretizedVolume& d, FeatureVector& out, int alpha) {
    const GldmData data = build_gldm(d, alpha);
    const auto span = feature_class_spans()[3];
    const int base = span.begin;
    const std::size_t m = data.gray_values.size();
    const std::size_t nd = static_cast<std::size_t>(data.max_dependence);

    double nz = 0;
    for (std::int64_t c : data.counts) nz += static_cast<double>(c);

    std::vector<double> pg(m, 0.0), pd(nd, 0.0);
    double hgl = 0, lgl = 0, lde = 0, sde = 0, ldhgl = 0, ldlgl = 0, sdhgl = 0, sdlgl = 0, entropy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double gi = data.gray_values[i];
        for (std::size_t dd = 0; dd < nd; ++dd) {
            const double c = static_cast<double>(data.counts[i * nd + dd]);
            if (c == 0) continue;
            const double dj = static_cast<double>(dd + 1);
            const double p = c / nz;
            pg[i] += c;
            pd[dd] += c;
            hgl += c * gi * gi;
            lgl += c / (gi * gi);
            lde += c * dj * dj;
            sde += c / (dj * dj);
            ldhgl += c * gi * gi * dj * dj;
            ldlgl += c * dj * dj / (gi * gi);
            sdhgl += c * gi * gi / (dj * dj);
            sdlgl += c / (gi * gi * dj * dj);
            entropy -= plog2(p);
        }
    }
    for (double& x : pg) x /= nz;
    for (double& x : pd) x /= nz;
    double gln = 0, dn = 0;
    for (double x : pg) gln += x * x;
    for (double x : pd) dn += x * x;
    double mu_g = 0, mu_d = 0;
    for (std::size_t i = 0; i < m; ++i) mu_g += data.gray_values[i] * pg[i];
    for (std::size_t dd = 0; dd < nd; ++dd) mu_d += static_cast<double>(dd + 1) * pd[dd];
    double var_g = 0, var_d = 0;
    for (std::size_t i = 0; i < m; ++i) var_g += (data.gray_values[i] - mu_g) * (data.gray_values[i] - mu_g) * pg[i];
    for (std::size_t dd = 0; dd < nd; ++dd)
        var_d += (static_cast<double>(dd + 1) - mu_d) * (static_cast<double>(dd + 1) - mu_d) * pd[dd];

    out[base + 0] = entropy;
    out[base + 1] = dn * nz;
    out[base + 2] = dn;
    out[base + 3] = var_d;
    out[base + 4] = gln * nz;
    out[base + 5] = var_g;
    out[base + 6] = hgl / nz;
    out[base + 7] = lde / nz;
    out[base + 8] = ldhgl / nz;
    out[base + 9] = ldlgl / nz;
    out[base + 10] = lgl / nz;
    out[base + 11] = sde / nz;
    out[base + 12] = sdhgl / nz;
    out[base + 13] = sdlgl / nz;
}

// --------------------------------------------------------------- NGTDM ----

NgtdmData build_ngtdm(const DiscretizedVolume& d) {
    const GrayInfo g = gray_info(d);
    const int nx = d.dims[0], ny = d.dims[1], nz = d.dims[2];
    const auto offsets = neighborhood_offsets(26);

    // per-voxel |i - mean(neighbors)| filled in parallel, accumulated in a
    // fixed scan order so results do not depend on the thread count
    std::vector<double> contrib(d.labels.size(), -1.0);
    parallel_for(static_cast<std::int64_t>(nz), [&](std::int64_t kk) {
        const int k = static_cast<int>(kk);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t idx = d.index(i, j, k);
                const std::uint16_t a = d.labels[idx];
                if (!a) continue;
                double sum = 0;
                int count = 0;
                for (const auto& o : offsets) {
                    const int x = i + o[0], y = j + o[1], z = k + o[2];
                    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) continue;
                    const std::uint16_t b = d.labels[d.index(x, y, z)];
                    if (b) {
                        sum += b;
                        ++count;
                    }
                }
                if (count > 0) contrib[idx] = std::abs(static_cast<double>(a) - sum / count);
            }
    });

    NgtdmData out;
    std::vector<double> s(static_cast<std::size_t>(d.bin_count) + 1, 0.0);
    std::vector<std::int64_t> n(static_cast<std::size_t>(d.bin_count) + 1, 0);
    for (std::size_t idx = 0; idx < d.labels.size(); ++idx) {
        if (!d.labels[idx] || contrib[idx] < 0.0) continue;
        s[d.labels[idx]] += contrib[idx];
        n[d.labels[idx]] += 1;
        ++out.nvp;
    }
    for (int l = 1; l <= d.bin_count; ++l)
        if (n[static_cast<std::size_t>(l)] > 0) {
            out.gray_values.push_back(l);
            out.s.push_back(s[static_cast<std::size_t>(l)]);
            out.n.push_back(n[static_cast<std::size_t>(l)]);
        }
    return out;
}

void ngtdm_features(const DiscretizedVolume& d, FeatureVector& out) {
    const NgtdmData data = build_ngtdm(d);
    const auto span = feature_class_spans()[6];
    const int base = span.begin;

    if (data.nvp == 0) {
        // isolated voxels only: no neighborhood anywhere
        out[base + 0] = 0.0;
        out[base + 1] = 1e6;
        out[base + 2] = 0.0;
        out[base + 3] = 0.0;
        out[base + 4] = 0.0;
        for (int f = 0; f < 5; ++f) out.degenerate[base + f] = 1;
        return;
    }

    const std::size_t m = data.gray_values.size();
    const double nvp = static_cast<double>(data.nvp);
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<double>(data.n[i]) / nvp;

    double sum_ps = 0, sum_s = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sum_ps += p[i] * data.s[i];
        sum_s += data.s[i];
    }

    // Coarseness
    if (sum_ps == 0.0) {
        out[base + 1] = 1e6;
        out.degenerate[base + 1] = 1;
    } else {
        out[base + 1] = 1.0 / sum_ps;
    }

    // Contrast
    if (m == 1) {
        out[base + 3] = 0.0;
        out.degenerate[base + 3] = 1;
    } else {
        double pij = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double diff = static_cast<double>(data.gray_values[i] - data.gray_values[j]);
                pij += p[i] * p[j] * diff * diff;
            }
        const double ngp = static_cast<double>(m);
        out[base + 3] = (pij / (ngp * (ngp - 1.0))) * (sum_s / nvp);
    }

    // Busyness
    double denom_busy = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            denom_busy += std::abs(data.gray_values[i] * p[i] - data.gray_values[j] * p[j]);
        }
    if (denom_busy == 0.0) {
        out[base + 0] = 0.0;
        out.degenerate[base + 0] = 1;
    } else {
        out[base + 0] = sum_ps / denom_busy;
    }

    // Complexity
    double complexity = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const double diff = std::abs(static_cast<double>(data.gray_values[i] - data.gray_values[j]));
            complexity += diff * (p[i] * data.s[i] + p[j] * data.s[j]) / (p[i] + p[j]);
        }
    out[base + 2] = complexity / nvp;

    // Strength
    if (sum_s == 0.0) {
        out[base + 4] = 0.0;
        out.degenerate[base + 4] = 1;
    } else {
        double num = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                const double diff = static_cast<double>(data.gray_values[i] - data.gray_values[j]);
                num += (p[i] + p[j]) * diff * diff;
            }
        out[base + 4] = num / sum_s;
    }
}

}  // namespace deltarad
