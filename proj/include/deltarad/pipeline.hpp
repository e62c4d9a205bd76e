#ifndef DELTARAD_PIPELINE_HPP
#define DELTARAD_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltarad/preprocess.hpp"
#include "deltarad/stability.hpp"

namespace deltarad {

struct PipelineConfig {
    std::string manifest_path;
    std::string outcomes_path;
    std::string output_dir = "out";
    int threads = 0;

    PreprocessConfig preprocess;

    struct Stability {
        double threshold = 0.90;
        PerturbationSpec perturbation;
    } stability;

    struct Collinearity {
        double threshold = 0.90;
        std::string mode = "literal";  // literal | recompute
    } collinearity;

    struct Delta {
        std::string baseline = "F1";
    } delta;

    struct Survival {
        std::vector<std::string> endpoints = {"OS", "PFS", "LFFS", "iLFFS"};
        int top_k = 4;
        std::vector<double> skewness_cutoffs = {0.973, 0.951};
        double alpha = 0.05;
        std::uint64_t seed = 7;
        int cutpoint_min_node = 7;
        int cutpoint_n_perm = 10000;
    } survival;

    void validate() const;
    std::uint64_t hash() const;
    std::string to_json() const;
    static PipelineConfig from_json_file(const std::string& path);
    static PipelineConfig from_json_text(const std::string& text);
};

// Each stage reads prior-stage artifacts from config.output_dir and writes
// its own; run_pipeline chains them and records run_metadata.json.
void stage_extract(const PipelineConfig& cfg);
void stage_stability(const PipelineConfig& cfg);
void stage_prune(const PipelineConfig& cfg);
void stage_delta(const PipelineConfig& cfg);
void stage_survive(const PipelineConfig& cfg);
void stage_report(const PipelineConfig& cfg);

void run_pipeline(const PipelineConfig& cfg);

// assumption log shared by the stages; flushed into run_metadata.json
void record_assumption(const PipelineConfig& cfg, const std::string& note);

}  // namespace deltarad

#endif
