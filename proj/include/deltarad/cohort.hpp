#ifndef DELTARAD_COHORT_HPP
#define DELTARAD_COHORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltarad/core.hpp"

namespace deltarad {

inline const std::vector<std::string>& fraction_labels() {
    static const std::vector<std::string> labels = {"SIM", "F1", "F2", "F3", "F4", "F5"};
    return labels;
}

struct FractionFiles {
    std::string image;
    std::string gtv;
    std::optional<std::string> heart;  // null in the manifest for phantom cohorts
};

struct CourseEntry {
    std::string course_id;
    std::string patient_id;
    // insertion order follows fraction_labels(); loader never reorders
    std::vector<std::pair<std::string, FractionFiles>> fractions;

    const FractionFiles* fraction(const std::string& label) const {
        for (const auto& [l, f] : fractions)
            if (l == label) return &f;
        return nullptr;
    }
};

struct CohortManifest {
    std::vector<CourseEntry> courses;
    std::string base_dir;  // relative paths resolve against the manifest's directory

    const CourseEntry* course(const std::string& id) const {
        for (const auto& c : courses)
            if (c.course_id == id) return &c;
        return nullptr;
    }
    std::string resolve(const std::string& path) const;
};

CohortManifest load_manifest(const std::string& path, bool validate_paths = false);
void save_manifest(const std::string& path, const CohortManifest& m);

struct OutcomeRow {
    std::string course_id;
    double os_time = 0, pfs_time = 0, lffs_time = 0, ilffs_time = 0;
    int os_event = 0, pfs_event = 0, lffs_event = 0, ilffs_event = 0;

    double time_for(const std::string& endpoint) const;
    int event_for(const std::string& endpoint) const;
};

struct OutcomeTable {
    std::vector<OutcomeRow> rows;
    const OutcomeRow* find(const std::string& course_id) const {
        for (const auto& r : rows)
            if (r.course_id == course_id) return &r;
        return nullptr;
    }
};

inline const std::vector<std::string>& endpoint_names() {
    static const std::vector<std::string> names = {"OS", "PFS", "LFFS", "iLFFS"};
    return names;
}

OutcomeTable load_outcomes(const std::string& path);
void save_outcomes(const std::string& path, const OutcomeTable& t);

}  // namespace deltarad

#endif
