#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "flatlab/experiment.hpp"
#include "flatlab/util.hpp"

namespace flatlab {

namespace {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
};

const char* kPalette[] = {"#1f6feb", "#d03050", "#207a3c", "#9150c0", "#b58700", "#00777a"};

} // namespace

std::string svg_loglog_from_csv(const std::string& csv_text, const std::string& x_column,
                                const std::vector<std::string>& y_columns,
                                const std::string& title) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("svg: empty csv");
    auto header = split_csv_line(line);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::invalid_argument("svg: missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t xc = col(x_column);
    std::vector<std::size_t> ycs;
    for (const auto& y : y_columns) ycs.push_back(col(y));

    std::vector<Series> series(y_columns.size());
    for (std::size_t s = 0; s < y_columns.size(); ++s) series[s].name = y_columns[s];
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        double x = std::stod(f[xc]);
        for (std::size_t s = 0; s < ycs.size(); ++s) {
            double y = std::stod(f[ycs[s]]);
            if (x > 0.0 && y > 0.0) series[s].pts.emplace_back(std::log10(x), std::log10(y));
        }
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) throw std::invalid_argument("svg: no positive data");
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"#333\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = xmin + (xmax - xmin) * i / 4.0;
        double y = ymin + (ymax - ymin) * i / 4.0;
        char xb[32], yb[32];
        std::snprintf(xb, sizeof(xb), "%.3g", std::pow(10.0, x));
        std::snprintf(yb, sizeof(yb), "%.3g", std::pow(10.0, y));
        svg << "<text x=\"" << px(x) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << xb
            << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << yb
            << "</text>\n";
    }
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_column
        << " (log)</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 6];
        std::ostringstream pts;
        auto sorted = series[s].pts;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& [x, y] : sorted) pts << px(x) << ',' << py(y) << ' ';
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        for (const auto& [x, y] : sorted)
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        svg << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * s
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
            << "\">" << series[s].name << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace flatlab
