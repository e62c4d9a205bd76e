#include "deltarad/stability.hpp"

#include <algorithm>
#include <cmath>

#include "deltarad/morphology.hpp"
#include "deltarad/rng.hpp"

namespace deltarad {

PerturbedMask perturb_mask(const MaskROI& m, const PerturbationSpec& spec, const std::string& course_key,
                           int rep_index) {
    spec.validate();
    if (m.count() == 0) throw DataError("EmptyMask", "perturb_mask");

    CounterRng rng(spec.seed, fnv1a64(course_key, fnv1a64("perturb")) ^ static_cast<std::uint64_t>(rep_index) * 0x9e3779b97f4a7c15ull);
    PerturbedMask out;
    out.op = spec.op_choices[static_cast<std::size_t>(rng.next_below(spec.op_choices.size()))];
    out.connectivity =
        spec.connectivity_choices[static_cast<std::size_t>(rng.next_below(spec.connectivity_choices.size()))];

    if (out.op == "erode") {
        MaskROI eroded = erode(m, out.connectivity);
        if (eroded.count() == 0) {
            out.op = "dilate";
            out.fallback = true;
            out.mask = dilate(m, out.connectivity);
        } else {
            out.mask = std::move(eroded);
        }
    } else if (out.op == "dilate") {
        out.mask = dilate(m, out.connectivity);
    } else {
        throw ConfigError("InvalidConfig", "unknown perturbation op '" + out.op + "'");
    }
    return out;
}

double lin_ccc(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw NumericError("LengthMismatch", "lin_ccc inputs differ in length");
    if (x.size() < 2) throw NumericError("LengthMismatch", "lin_ccc needs length >= 2");

    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sx += dx * dx;
        sy += dy * dy;
        sxy += dx * dy;
    }
    sx /= n;
    sy /= n;
    sxy /= n;

    if (sx == 0.0 && sy == 0.0) {
        if (mx == my) return 1.0;  // identical constant vectors
        throw NumericError("BothConstant", "both inputs constant with different means");
    }
    return 2.0 * sxy / (sx + sy + (mx - my) * (mx - my));
}

std::vector<double> temporal_stability(const FeatureMatrix& features_sim, const FeatureMatrix& features_f1) {
    if (features_sim.rows() < 2) throw DataError("TooFewCourses", "temporal stability needs >= 2 courses");
    if (features_sim.row_ids != features_f1.row_ids)
        throw DataError("MisalignedRows", "SIM and F1 matrices must be aligned on course_id");
    if (features_sim.names != features_f1.names)
        throw DataError("NameMismatch", "SIM and F1 matrices must share feature names");

    std::vector<double> out(features_sim.cols());
    for (std::size_t c = 0; c < features_sim.cols(); ++c) {
        const auto x = features_sim.column_values(c);
        const auto y = features_f1.column_values(c);
        try {
            out[c] = lin_ccc(x, y);
        } catch (const NumericError&) {
            out[c] = 1.0;  // constant feature across the cohort in both scans
        }
    }
    return out;
}

const StabilityRow* StabilityReport::find(const std::string& feature) const {
    for (const auto& r : rows)
        if (r.feature == feature) return &r;
    return nullptr;
}

std::vector<std::string> StabilityReport::stable_features() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.stable) out.push_back(r.feature);
    return out;
}

StabilityReport stability_gate(const std::vector<std::string>& features, const std::vector<double>& temporal,
                               const std::vector<std::vector<double>>& spatial, double threshold) {
    if (features.size() != temporal.size() || features.size() != spatial.size())
        throw DataError("NameMismatch", "stability_gate inputs differ in length");

    StabilityReport rep;
    rep.threshold = threshold;
    rep.rows.resize(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        StabilityRow& r = rep.rows[i];
        r.feature = features[i];
        r.temporal_ccc = temporal[i];
        r.spatial_ccc = spatial[i];
        bool ok = r.temporal_ccc > threshold;
        for (double s : r.spatial_ccc)
            if (!(s > threshold)) ok = false;
        r.stable = ok && !r.spatial_ccc.empty();
    }

    // canonical feature order when the names are registry features
    std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const StabilityRow& a, const StabilityRow& b) {
        const int ia = feature_index(a.feature), ib = feature_index(b.feature);
        if (ia >= 0 && ib >= 0) return ia < ib;
        if (ia >= 0 || ib >= 0) return ia >= 0;
        return false;
    });
    return rep;
}

}  // namespace deltarad
