// SPDX-License-Identifier: Apache-2.0
//
// fama-bench: link-level simulator for fluid antenna multiple access
// Copyright (C) 2026 The fama-bench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FAMA_SVG_PLOT_HPP
#define FAMA_SVG_PLOT_HPP

#include "fama/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fama {

struct PlotSeries
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions
{
    std::string title;
    std::string x_label = "x";
    std::string y_label = "SER";
    int width = 720;
    int height = 460;
};

namespace detail {

inline std::string xml_escape(std::string_view text)
{
    std::string out;
    for (char c : text)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string tick_label(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace detail

/// Line plot with a logarithmic y axis. Nonpositive y values are not drawn.
inline std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options)
{
    static constexpr std::string_view palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
        {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            if (s.y[i] > 0.0)
            {
                y_min = std::min(y_min, s.y[i]);
                y_max = std::max(y_max, s.y[i]);
            }
        }
    if (!std::isfinite(x_min))
        x_min = 0.0, x_max = 1.0;
    if (x_max == x_min)
        x_max = x_min + 1.0;
    if (!std::isfinite(y_min))
        y_min = 1e-3, y_max = 1.0;
    const int decade_lo = static_cast<int>(std::floor(std::log10(y_min)));
    int decade_hi = static_cast<int>(std::ceil(std::log10(y_max)));
    if (decade_hi == decade_lo)
        ++decade_hi;

    const double left = 80, right = 180, top = 40, bottom = 60;
    const double pw = options.width - left - right;
    const double ph = options.height - top - bottom;
    const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
    const auto py = [&](double y) {
        return top + (decade_hi - std::log10(y)) / static_cast<double>(decade_hi - decade_lo) * ph;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
           << detail::xml_escape(options.title) << "</text>\n";

    for (int d = decade_lo; d <= decade_hi; ++d)
    {
        const double y = py(std::pow(10.0, d));
        os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i)
    {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double x = px(xv);
        os << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
           << "\" stroke=\"#eeeeee\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << detail::tick_label(xv) << "</text>\n";
    }
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << options.height - 15 << "\" text-anchor=\"middle\">"
       << detail::xml_escape(options.x_label) << "</text>\n";
    os << "<text transform=\"translate(20," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << detail::xml_escape(options.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si)
    {
        const auto& s = series[si];
        const std::string_view colour = palette[si % std::size(palette)];
        std::ostringstream points;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (s.y[i] > 0.0)
                points << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"" << points.str()
           << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (s.y[i] > 0.0)
                os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << colour
                   << "\"/>\n";
        const double ly = top + 10 + 20.0 * static_cast<double>(si);
        os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40 << "\" y2=\"" << ly
           << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">" << detail::xml_escape(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Value of a named sweep column for a CSV row. "blocklength" is symbols per trial.
inline double csv_column(const CsvRecord& r, std::string_view column)
{
    if (column == "U")
        return r.users;
    if (column == "K")
        return r.ports;
    if (column == "W")
        return r.aperture;
    if (column == "d")
        return r.d;
    if (column == "cbr")
        return r.cbr;
    if (column == "snr_db")
        return r.snr_db;
    if (column == "blocklength")
        return r.trials > 0 ? static_cast<double>(r.symbols) / static_cast<double>(r.trials) : 0.0;
    throw std::invalid_argument("unknown plot column '" + std::string(column) + "'");
}

/// First column among U, K, W, d, cbr, blocklength, snr_db that varies.
inline std::string detect_sweep_column(const std::vector<CsvRecord>& rows)
{
    for (std::string_view column : {"U", "K", "W", "d", "cbr", "blocklength", "snr_db"})
    {
        std::set<double> seen;
        for (const auto& r : rows)
            seen.insert(csv_column(r, column));
        if (seen.size() > 1)
            return std::string(column);
    }
    return "U";
}

/// One series per scheme (and spacing rule when several appear), ordered by x.
inline std::vector<PlotSeries> series_from_csv(const std::vector<CsvRecord>& rows, std::string_view column)
{
    std::set<std::string> spacings;
    for (const auto& r : rows)
        spacings.insert(r.spacing);
    std::map<std::string, std::vector<std::pair<double, double>>> grouped;
    std::vector<std::string> order;
    for (const auto& r : rows)
    {
        std::string label = r.scheme;
        if (spacings.size() > 1 && r.scheme.starts_with("turbo"))
            label += " (" + r.spacing + ")";
        if (!grouped.contains(label))
            order.push_back(label);
        grouped[label].emplace_back(csv_column(r, column), r.ser);
    }
    std::vector<PlotSeries> out;
    for (const auto& label : order)
    {
        auto pts = grouped[label];
        std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        PlotSeries s{label, {}, {}};
        for (const auto& [x, y] : pts)
        {
            s.x.push_back(x);
            s.y.push_back(y);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace fama

#endif // FAMA_SVG_PLOT_HPP
