#include <map>

#include "deltarad/features.hpp"

namespace deltarad {

namespace {

std::vector<std::string> make_names() {
    const char* shape[] = {"Elongation", "Flatness", "LeastAxisLength", "MajorAxisLength",
                           "Maximum2DDiameterColumn", "Maximum2DDiameterRow", "Maximum2DDiameterSlice",
                           "Maximum3DDiameter", "MeshVolume", "MinorAxisLength", "Sphericity",
                           "SurfaceArea", "SurfaceVolumeRatio", "VoxelVolume"};
    const char* firstorder[] = {"10Percentile", "90Percentile", "Energy", "Entropy", "InterquartileRange",
                                "Kurtosis", "Maximum", "MeanAbsoluteDeviation", "Mean", "Median", "Minimum",
                                "Range", "RobustMeanAbsoluteDeviation", "RootMeanSquared", "Skewness",
                                "TotalEnergy", "Uniformity", "Variance"};
    const char* glcm[] = {"Autocorrelation", "ClusterProminence", "ClusterShade", "ClusterTendency",
                          "Contrast", "Correlation", "DifferenceAverage", "DifferenceEntropy",
                          "DifferenceVariance", "Id", "Idm", "Idmn", "Idn", "Imc1", "Imc2",
                          "InverseVariance", "JointAverage", "JointEnergy", "JointEntropy", "MCC",
                          "MaximumProbability", "SumAverage", "SumEntropy", "SumSquares"};
    const char* gldm[] = {"DependenceEntropy", "DependenceNonUniformity", "DependenceNonUniformityNormalized",
                          "DependenceVariance", "GrayLevelNonUniformity", "GrayLevelVariance",
                          "HighGrayLevelEmphasis", "LargeDependenceEmphasis",
                          "LargeDependenceHighGrayLevelEmphasis", "LargeDependenceLowGrayLevelEmphasis",
                          "LowGrayLevelEmphasis", "SmallDependenceEmphasis",
                          "SmallDependenceHighGrayLevelEmphasis", "SmallDependenceLowGrayLevelEmphasis"};
    const char* glrlm[] = {"GrayLevelNonUniformity", "GrayLevelNonUniformityNormalized", "GrayLevelVariance",
                           "HighGrayLevelRunEmphasis", "LongRunEmphasis", "LongRunHighGrayLevelEmphasis",
                           "LongRunLowGrayLevelEmphasis", "LowGrayLevelRunEmphasis", "RunEntropy",
                           "RunLengthNonUniformity", "RunLengthNonUniformityNormalized", "RunPercentage",
                           "RunVariance", "ShortRunEmphasis", "ShortRunHighGrayLevelEmphasis",
                           "ShortRunLowGrayLevelEmphasis"};
    const char* glszm[] = {"GrayLevelNonUniformity", "GrayLevelNonUniformityNormalized", "GrayLevelVariance",
                           "HighGrayLevelZoneEmphasis", "LargeAreaEmphasis", "LargeAreaHighGrayLevelEmphasis",
                           "LargeAreaLowGrayLevelEmphasis", "LowGrayLevelZoneEmphasis", "SizeZoneNonUniformity",
                           "SizeZoneNonUniformityNormalized", "SmallAreaEmphasis",
                           "SmallAreaHighGrayLevelEmphasis", "SmallAreaLowGrayLevelEmphasis", "ZoneEntropy",
                           "ZonePercentage", "ZoneVariance"};
    const char* ngtdm[] = {"Busyness", "Coarseness", "Complexity", "Contrast", "Strength"};

    std::vector<std::string> out;
    out.reserve(kFeatureCount);
    for (const char* n : shape) out.push_back(std::string("original_shape_") + n);
    for (const char* n : firstorder) out.push_back(std::string("original_firstorder_") + n);
    for (const char* n : glcm) out.push_back(std::string("original_glcm_") + n);
    for (const char* n : gldm) out.push_back(std::string("original_gldm_") + n);
    for (const char* n : glrlm) out.push_back(std::string("original_glrlm_") + n);
    for (const char* n : glszm) out.push_back(std::string("original_glszm_") + n);
    for (const char* n : ngtdm) out.push_back(std::string("original_ngtdm_") + n);
    return out;
}

}  // namespace

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = make_names();
    return names;
}

int feature_index(const std::string& name) {
    static const std::map<std::string, int> index = [] {
        std::map<std::string, int> m;
        const auto& names = feature_names();
        for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = static_cast<int>(i);
        return m;
    }();
    const auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

const std::vector<FeatureClassSpan>& feature_class_spans() {
    static const std::vector<FeatureClassSpan> spans = {
        {"original_shape_", 0, 14},   {"original_firstorder_", 14, 32}, {"original_glcm_", 32, 56},
        {"original_gldm_", 56, 70},   {"original_glrlm_", 70, 86},      {"original_glszm_", 86, 102},
        {"original_ngtdm_", 102, 107}};
    return spans;
}

double FeatureVector::at(const std::string& name) const {
    const int i = feature_index(name);
    if (i < 0) throw ConfigError("UnknownFeature", name);
    return values[static_cast<std::size_t>(i)];
}

int FeatureMatrix::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> FeatureMatrix::column_values(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
    return out;
}

}  // namespace deltarad
