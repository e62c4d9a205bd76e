#include "deltarad/cohort.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "deltarad/csv.hpp"

namespace deltarad {

using nlohmann::json;

std::string CohortManifest::resolve(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

CohortManifest load_manifest(const std::string& path, bool validate_paths) {
    std::ifstream f(path);
    if (!f) throw DataError("FileNotFound", path);

    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw DataError("SchemaError", path + ": " + e.what());
    }

    if (!j.is_object() || j.value("schema_version", "") != "1")
        throw DataError("SchemaError", path + ": missing or unsupported schema_version (expected \"1\")");
    if (!j.contains("courses") || !j["courses"].is_array())
        throw DataError("SchemaError", path + ": missing courses array");

    CohortManifest m;
    m.base_dir = std::filesystem::path(path).parent_path().string();

    std::set<std::string> seen;
    for (const auto& jc : j["courses"]) {
        CourseEntry c;
        if (!jc.contains("course_id") || !jc["course_id"].is_string())
            throw DataError("SchemaError", path + ": course missing course_id");
        c.course_id = jc["course_id"].get<std::string>();
        c.patient_id = jc.value("patient_id", "");
        if (!seen.insert(c.course_id).second)
            throw DataError("DuplicateCourse", "course_id '" + c.course_id + "' appears twice");

        if (!jc.contains("fractions") || !jc["fractions"].is_object())
            throw DataError("SchemaError", "course '" + c.course_id + "' missing fractions object");

        // keep canonical order SIM,F1..F5 regardless of JSON key order
        for (const auto& label : fraction_labels()) {
            if (!jc["fractions"].contains(label)) continue;
            const auto& jf = jc["fractions"][label];
            FractionFiles ff;
            if (!jf.contains("image") || !jf.contains("gtv"))
                throw DataError("SchemaError",
                                "course '" + c.course_id + "' fraction " + label + " missing image/gtv path");
            ff.image = jf["image"].get<std::string>();
            ff.gtv = jf["gtv"].get<std::string>();
            if (jf.contains("heart") && !jf["heart"].is_null()) ff.heart = jf["heart"].get<std::string>();
            c.fractions.emplace_back(label, std::move(ff));
        }
        for (const auto& [key, val] : jc["fractions"].items()) {
            (void)val;
            if (std::find(fraction_labels().begin(), fraction_labels().end(), key) == fraction_labels().end())
                throw DataError("SchemaError", "course '" + c.course_id + "': unknown fraction label '" + key + "'");
        }
        if (!c.fraction("F1"))
            throw DataError("MissingF1", "course '" + c.course_id + "' has no F1 fraction");
        m.courses.push_back(std::move(c));
    }

    if (validate_paths) {
        for (const auto& c : m.courses)
            for (const auto& [label, ff] : c.fractions) {
                for (const std::string* p : {&ff.image, &ff.gtv}) {
                    if (!std::filesystem::exists(m.resolve(*p)))
                        throw DataError("FileNotFound", "course '" + c.course_id + "' " + label + ": " + *p);
                }
                if (ff.heart && !std::filesystem::exists(m.resolve(*ff.heart)))
                    throw DataError("FileNotFound", "course '" + c.course_id + "' " + label + ": " + *ff.heart);
            }
    }
    return m;
}

void save_manifest(const std::string& path, const CohortManifest& m) {
    json j;
    j["schema_version"] = "1";
    j["courses"] = json::array();
    for (const auto& c : m.courses) {
        json jc;
        jc["course_id"] = c.course_id;
        jc["patient_id"] = c.patient_id;
        json jf = json::object();
        for (const auto& [label, ff] : c.fractions) {
            json e;
            e["image"] = ff.image;
            e["gtv"] = ff.gtv;
            e["heart"] = ff.heart ? json(*ff.heart) : json(nullptr);
            jf[label] = e;
        }
        jc["fractions"] = jf;
        j["courses"].push_back(jc);
    }
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw DataError("FileWriteFailed", path);
    f << j.dump(2) << "\n";
}

double OutcomeRow::time_for(const std::string& endpoint) const {
    if (endpoint == "OS") return os_time;
    if (endpoint == "PFS") return pfs_time;
    if (endpoint == "LFFS") return lffs_time;
    if (endpoint == "iLFFS") return ilffs_time;
    throw ConfigError("UnknownEndpoint", endpoint);
}

int OutcomeRow::event_for(const std::string& endpoint) const {
    if (endpoint == "OS") return os_event;
    if (endpoint == "PFS") return pfs_event;
    if (endpoint == "LFFS") return lffs_event;
    if (endpoint == "iLFFS") return ilffs_event;
    throw ConfigError("UnknownEndpoint", endpoint);
}

namespace {
const std::vector<std::string> kOutcomeColumns = {"course_id",  "os_time",   "os_event",   "pfs_time",  "pfs_event",
                                                  "lffs_time",  "lffs_event", "ilffs_time", "ilffs_event"};
}

OutcomeTable load_outcomes(const std::string& path) {
    const auto t = csv::read_file(path);
    if (t.header != kOutcomeColumns) {
        std::string want;
        for (const auto& c : kOutcomeColumns) want += (want.empty() ? "" : ",") + c;
        throw DataError("ParseError", path + ": header must be exactly '" + want + "'");
    }
    OutcomeTable out;
    std::set<std::string> seen;
    for (const auto& r : t.rows) {
        if (r.size() != kOutcomeColumns.size())
            throw DataError("ParseError", path + ": row with " + std::to_string(r.size()) + " fields");
        OutcomeRow row;
        row.course_id = r[0];
        if (!seen.insert(row.course_id).second)
            throw DataError("DuplicateCourse", path + ": course_id '" + row.course_id + "' appears twice");
        const std::string ctx = path + " course " + row.course_id;
        auto read_pair = [&](int ti, int ei, double& time, int& event) {
            time = csv::to_double(r[ti], ctx);
            event = csv::to_int(r[ei], ctx);
            if (time < 0) throw DataError("NegativeTime", ctx + ": time " + r[ti]);
            if (event != 0 && event != 1) throw DataError("NonBinaryEvent", ctx + ": event " + r[ei]);
        };
        read_pair(1, 2, row.os_time, row.os_event);
        read_pair(3, 4, row.pfs_time, row.pfs_event);
        read_pair(5, 6, row.lffs_time, row.lffs_event);
        read_pair(7, 8, row.ilffs_time, row.ilffs_event);
        out.rows.push_back(std::move(row));
    }
    return out;
}

void save_outcomes(const std::string& path, const OutcomeTable& t) {
    csv::Table out;
    out.header = kOutcomeColumns;
    for (const auto& r : t.rows) {
        out.rows.push_back({r.course_id, csv::fmt(r.os_time), std::to_string(r.os_event), csv::fmt(r.pfs_time),
                            std::to_string(r.pfs_event), csv::fmt(r.lffs_time), std::to_string(r.lffs_event),
                            csv::fmt(r.ilffs_time), std::to_string(r.ilffs_event)});
    }
    csv::write_file(path, out);
}

}  // namespace deltarad
