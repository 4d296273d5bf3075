#ifndef DROPCHAIN_CLI_SVG_PLOT_HPP
#define DROPCHAIN_CLI_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace dropchain::cli
{

struct PlotSeries
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#c0392b";
    bool dotted = false;
};

// Minimal standalone SVG line plot: polylines, linear or log10 y axis, tick
// labels, axis titles and a few lines of parameter text under the title.
class SvgPlot
{
public:
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<std::string> notes;

    void add(PlotSeries series) { series_.push_back(std::move(series)); }
    std::string render() const;

private:
    std::vector<PlotSeries> series_;
};

}  // namespace dropchain::cli

#endif  // DROPCHAIN_CLI_SVG_PLOT_HPP
