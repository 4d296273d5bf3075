#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dropchain::cli
{
namespace
{

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 70.0;
constexpr double kBottom = 60.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string xml_escape(const std::string &s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c; break;
        }
    }
    return out;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
std::vector<double> nice_ticks(double lo, double hi, int target = 6)
{
    std::vector<double> ticks;
    if (!(hi > lo))
        return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw)
        {
            step = m * mag;
            break;
        }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

}  // namespace

std::string SvgPlot::render() const
{
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;

    auto transform_y = [&](double y) {
        if (!log_y)
            return y;
        return std::log10(std::max(y, 1e-300));
    };

    // Smallest positive value, used to clip zeros on a log axis.
    double floor_y = std::numeric_limits<double>::infinity();
    if (log_y)
        for (const auto &s : series_)
            for (double y : s.y)
                if (y > 0.0)
                    floor_y = std::min(floor_y, y);
    if (!std::isfinite(floor_y))
        floor_y = 1e-12;

    for (const auto &s : series_)
    {
        for (double x : s.x)
        {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (double y : s.y)
        {
            const double ty = transform_y(log_y ? std::max(y, floor_y) : y);
            ymin = std::min(ymin, ty);
            ymax = std::max(ymax, ty);
        }
    }
    if (!std::isfinite(xmin))
    {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin)
        ymax = ymin + 1.0;
    if (!log_y)
    {
        ymin = std::min(ymin, 0.0);
        const double pad = 0.05 * (ymax - ymin);
        ymax += pad;
    }
    else
    {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double ty) { return kTop + ph - (ty - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
    for (std::size_t i = 0; i < notes.size(); ++i)
        svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(42 + 14 * static_cast<double>(i))
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">"
            << xml_escape(notes[i]) << "</text>\n";

    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : nice_ticks(xmin, xmax))
    {
        const double x = px(t);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(t)
            << "</text>\n";
    }
    const auto yticks = log_y ? [&] {
        std::vector<double> t;
        for (double e = ymin; e <= ymax + 1e-9; e += 1.0)
            t.push_back(e);
        return t;
    }()
                              : nice_ticks(ymin, ymax);
    for (double t : yticks)
    {
        const double y = py(t);
        const std::string label = log_y ? "1e" + tick_label(t) : tick_label(t);
        svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
    }

    svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(x_label)
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 18 " << num(kTop + ph / 2) << ")\">" << xml_escape(y_label)
        << "</text>\n";

    double legend_y = kTop + 16;
    for (const auto &s : series_)
    {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dotted)
            svg << " stroke-dasharray=\"2,3\"";
        svg << " points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i)
        {
            const double ty = transform_y(log_y ? std::max(s.y[i], floor_y) : s.y[i]);
            if (i != 0)
                svg << ' ';
            svg << num(px(s.x[i])) << ',' << num(py(ty));
        }
        svg << "\"/>\n";

        if (!s.label.empty())
        {
            svg << "<line x1=\"" << num(kLeft + pw - 150) << "\" y1=\"" << num(legend_y - 4) << "\" x2=\""
                << num(kLeft + pw - 120) << "\" y2=\"" << num(legend_y - 4) << "\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\"" << (s.dotted ? " stroke-dasharray=\"2,3\"" : "") << "/>\n"
                << "<text x=\"" << num(kLeft + pw - 114) << "\" y=\"" << num(legend_y)
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.label) << "</text>\n";
            legend_y += 16;
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace dropchain::cli
