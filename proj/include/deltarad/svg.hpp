#ifndef DELTARAD_SVG_HPP
#define DELTARAD_SVG_HPP

#include <string>
#include <vector>

namespace deltarad::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// step plot (KM curves): survival in [0,1] against time
std::string km_plot(const std::vector<Series>& curves, const std::string& title);

// one small-multiple panel per feature of per-course trajectories
struct Panel {
    std::string title;
    std::vector<Series> lines;
};
std::string small_multiples(const std::vector<Panel>& panels, const std::string& title);

// correlation heatmap, blue (-1) .. white (0) .. red (+1)
std::string heatmap(const std::vector<std::string>& names, const std::vector<double>& matrix,
                    const std::string& title);

}  // namespace deltarad::svg

#endif
