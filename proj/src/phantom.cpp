#include "deltarad/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "deltarad/nifti.hpp"
#include "deltarad/parallel.hpp"
#include "deltarad/rng.hpp"

namespace deltarad {

void PhantomSpec::validate() const {
    if (n_courses < 1) throw ConfigError("InvalidConfig", "n_courses must be >= 1");
    if (!(censoring_rate >= 0.0 && censoring_rate < 1.0))
        throw ConfigError("InvalidConfig", "censoring_rate must lie in [0,1)");
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 8) throw ConfigError("InvalidConfig", "phantom grid too small");
        const double extent = dims[a] * spacing[a];
        if (2.0 * lesion_radii_mm[a] > 0.6 * extent)
            throw ConfigError("LesionExceedsGrid", "lesion radii do not fit the grid");
    }
}

namespace {

std::string course_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C%03d", index);
    return buf;
}

MaskROI ellipsoid_mask(const PhantomSpec& spec, const Vec3& center_mm, const Vec3& radii_mm, const std::string& label) {
    MaskROI m;
    m.dims = spec.dims;
    m.spacing = spec.spacing;
    m.label = label;
    m.voxels.assign(static_cast<std::size_t>(spec.dims[0]) * spec.dims[1] * spec.dims[2], 0);
    for (int k = 0; k < spec.dims[2]; ++k)
        for (int j = 0; j < spec.dims[1]; ++j)
            for (int i = 0; i < spec.dims[0]; ++i) {
                const double dx = (i * spec.spacing[0] - center_mm[0]) / radii_mm[0];
                const double dy = (j * spec.spacing[1] - center_mm[1]) / radii_mm[1];
                const double dz = (k * spec.spacing[2] - center_mm[2]) / radii_mm[2];
                if (dx * dx + dy * dy + dz * dz <= 1.0) m.voxels[m.index(i, j, k)] = 1;
            }
    return m;
}

}  // namespace

PhantomCourse generate_phantom_course(const PhantomSpec& spec, int course_index) {
    spec.validate();

    PhantomCourse course;
    course.course_id = course_name(course_index);
    const std::uint64_t course_key = fnv1a64(course.course_id);

    const Vec3 extent{spec.dims[0] * spec.spacing[0], spec.dims[1] * spec.spacing[1], spec.dims[2] * spec.spacing[2]};
    const Vec3 lesion_center{0.42 * extent[0], 0.55 * extent[1], 0.5 * extent[2]};
    const Vec3 heart_center{0.72 * extent[0], 0.3 * extent[1], 0.5 * extent[2]};
    const Vec3 heart_radii{0.12 * extent[0], 0.12 * extent[1], 0.2 * extent[2]};

    if (spec.heart_roi) {
        course.heart_mask = ellipsoid_mask(spec, heart_center, heart_radii, "HEART");
        course.has_heart = true;
    }

    // fraction order: SIM shares F1's lesion parameters
    for (const auto& label : fraction_labels()) {
        int drift_steps = 0;  // SIM and F1 sit at the baseline
        if (label[0] == 'F') drift_steps = label[1] - '1';
        const double skew = spec.skewness_start + spec.skewness_drift * drift_steps;
        const double radius_scale = std::pow(1.0 + spec.volume_drift, drift_steps);

        Vec3 radii{spec.lesion_radii_mm[0] * radius_scale, spec.lesion_radii_mm[1] * radius_scale,
                   spec.lesion_radii_mm[2] * radius_scale};
        MaskROI gtv = ellipsoid_mask(spec, lesion_center, radii, "GTV");
        if (gtv.count() == 0) throw DataError("LesionExceedsGrid", "lesion mask empty");

        VolumeGrid v;
        v.dims = spec.dims;
        v.spacing = spec.spacing;
        v.data.resize(gtv.size());

        const bool is_sim = label == "SIM";
        const std::uint64_t frac_key = fnv1a64(is_sim ? std::string("F1") : label, course_key);
        parallel_for(static_cast<std::int64_t>(v.data.size()), [&](std::int64_t ii) {
            const auto idx = static_cast<std::size_t>(ii);
            CounterRng rng(spec.seed, frac_key ^ static_cast<std::uint64_t>(idx) * 0x9e3779b97f4a7c15ull);
            double value;
            if (course.has_heart && course.heart_mask.voxels[idx]) {
                value = spec.heart_intensity;
            } else if (gtv.voxels[idx]) {
                value = rng.next_skew_normal(spec.intensity_mean, spec.intensity_sd, skew);
            } else {
                value = spec.background_mean + spec.background_sd * rng.next_normal();
            }
            if (is_sim) {
                CounterRng noise(spec.seed, fnv1a64("sim-noise", course_key) ^
                                                static_cast<std::uint64_t>(idx) * 0x9e3779b97f4a7c15ull);
                value += spec.sim_noise_sd * noise.next_normal();
            }
            v.data[idx] = value;
        });

        course.images.emplace_back(label, std::move(v));
        course.gtv_masks.emplace_back(label, std::move(gtv));
    }
    return course;
}

OutcomeTable generate_survival(const PhantomSpec& spec, const std::vector<std::string>& course_ids,
                               const std::vector<std::map<std::string, double>>& covariates) {
    if (course_ids.size() != covariates.size())
        throw DataError("LengthMismatch", "generate_survival inputs");

    const std::size_t n = course_ids.size();
    std::vector<double> event_time(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lp = 0.0;
        for (const auto& [feature, beta] : spec.betas) {
            const auto it = covariates[i].find(feature);
            if (it == covariates[i].end())
                throw DataError("NameMismatch", "survival covariate '" + feature + "' missing for " + course_ids[i]);
            lp += beta * it->second;
        }
        const double rate = spec.baseline_hazard * std::exp(lp);
        CounterRng rng(spec.seed, fnv1a64("event-time", fnv1a64(course_ids[i])));
        event_time[i] = rng.next_exponential(rate);
    }

    // censor times c ~ U(0, M); pick M by bisection on the expected rate
    // E[1/n sum min(t_i/M, 1)]
    std::vector<double> censor_u(n);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(spec.seed, fnv1a64("censor-time", fnv1a64(course_ids[i])));
        censor_u[i] = rng.next_double();
    }

    std::vector<double> times(n);
    std::vector<int> events(n);
    if (spec.censoring_rate <= 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            times[i] = event_time[i];
            events[i] = 1;
        }
    } else {
        auto expected_rate = [&](double m_max) {
            double r = 0;
            for (double t : event_time) r += std::min(t / m_max, 1.0);
            return r / static_cast<double>(n);
        };
        double lo = 1e-6, hi = 1e-6;
        for (double t : event_time) hi = std::max(hi, t);
        hi *= 100.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (expected_rate(mid) > spec.censoring_rate) lo = mid;
            else hi = mid;
        }
        const double m_max = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < n; ++i) {
            const double c = censor_u[i] * m_max;
            if (c < event_time[i]) {
                times[i] = c;
                events[i] = 0;
            } else {
                times[i] = event_time[i];
                events[i] = 1;
            }
        }
    }

    OutcomeTable out;
    for (std::size_t i = 0; i < n; ++i) {
        OutcomeRow row;
        row.course_id = course_ids[i];
        row.os_time = row.pfs_time = row.lffs_time = row.ilffs_time = times[i];
        row.os_event = row.pfs_event = row.lffs_event = row.ilffs_event = events[i];
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_phantom_cohort(const PhantomSpec& spec, const std::string& out_dir) {
    spec.validate();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    CohortManifest manifest;
    manifest.base_dir = out_dir;
    std::vector<std::string> course_ids;
    std::vector<std::map<std::string, double>> covariates;

    for (int c = 0; c < spec.n_courses; ++c) {
        PhantomCourse course = generate_phantom_course(spec, c);
        CourseEntry entry;
        entry.course_id = course.course_id;
        entry.patient_id = "P" + course.course_id.substr(1);

        std::string heart_path;
        if (course.has_heart) {
            heart_path = course.course_id + "_heart.nii";
            VolumeGrid hv;
            hv.dims = course.heart_mask.dims;
            hv.spacing = course.heart_mask.spacing;
            hv.origin = course.heart_mask.origin;
            hv.data.assign(course.heart_mask.size(), 0.0);
            for (std::size_t i = 0; i < hv.data.size(); ++i) hv.data[i] = course.heart_mask.voxels[i];
            nifti::write_file((fs::path(out_dir) / heart_path).string(), hv);
        }

        for (std::size_t f = 0; f < course.images.size(); ++f) {
            const auto& label = course.images[f].first;
            const std::string img = course.course_id + "_" + label + ".nii";
            const std::string gtv = course.course_id + "_" + label + "_gtv.nii";
            nifti::write_file((fs::path(out_dir) / img).string(), course.images[f].second);

            VolumeGrid gv;
            const MaskROI& gm = course.gtv_masks[f].second;
            gv.dims = gm.dims;
            gv.spacing = gm.spacing;
            gv.origin = gm.origin;
            gv.data.assign(gm.size(), 0.0);
            for (std::size_t i = 0; i < gv.data.size(); ++i) gv.data[i] = gm.voxels[i];
            nifti::write_file((fs::path(out_dir) / gtv).string(), gv);

            FractionFiles ff;
            ff.image = img;
            ff.gtv = gtv;
            if (course.has_heart) ff.heart = heart_path;
            entry.fractions.emplace_back(label, std::move(ff));
        }
        manifest.courses.push_back(std::move(entry));
        course_ids.push_back(course.course_id);

        // hazard covariate: configured betas refer to per-course scalar
        // markers; the default uses the skewness drift step as a proxy
        std::map<std::string, double> cov;
        CounterRng rng(spec.seed, fnv1a64("marker", fnv1a64(course_ids.back())));
        for (const auto& [feature, beta] : spec.betas) {
            (void)beta;
            cov[feature] = rng.next_normal();
        }
        covariates.push_back(std::move(cov));
    }

    save_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
    save_outcomes((fs::path(out_dir) / "outcomes.csv").string(), generate_survival(spec, course_ids, covariates));
}

}  // namespace deltarad
