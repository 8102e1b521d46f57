#include "aoi/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace aoi {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

Series collect(const ResultTable& t, const std::string& label, const std::string& color,
               double ResultRow::*field) {
    Series s{label, color, {}};
    for (const ResultRow& r : t.rows) {
        const double v = r.*field;
        if (std::isfinite(v) && v > 0.0) s.points.emplace_back(r.sweep_value, v);
    }
    return s;
}

}  // namespace

std::string render_svg(const ResultTable& table) {
    if (table.rows.empty()) throw std::invalid_argument("cannot plot an empty table");

    std::vector<Series> series;
    Series main = collect(table, "exact", "#1f77b4", &ResultRow::analytic_p);
    if (main.points.empty()) main = collect(table, "simulated", "#1f77b4", &ResultRow::sim_p);
    if (!main.points.empty()) series.push_back(main);
    Series bound = collect(table, table.bound_label.empty() ? "bound" : table.bound_label, "#d62728",
                           &ResultRow::phi);
    if (!bound.points.empty()) series.push_back(bound);

    double xmin = table.rows.front().sweep_value, xmax = xmin;
    for (const ResultRow& r : table.rows) {
        xmin = std::min(xmin, r.sweep_value);
        xmax = std::max(xmax, r.sweep_value);
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    double ymin = 1.0, ymax = 1.0;
    bool any = false;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            ymin = any ? std::min(ymin, y) : y;
            ymax = any ? std::max(ymax, y) : y;
            any = true;
        }
    }
    int dlo = static_cast<int>(std::floor(std::log10(ymin)));
    int dhi = static_cast<int>(std::ceil(std::log10(ymax)));
    if (dhi <= dlo) dhi = dlo + 1;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (dhi - std::log10(y)) / (dhi - dlo) * ph; };

    std::string o;
    o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(table.title) + "</text>\n";

    for (int e = dlo; e <= dhi; ++e) {
        const double y = py(std::pow(10.0, e));
        o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(y) +
             "\" stroke=\"#dddddd\"/>\n";
        o += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">1e" +
             std::to_string(e) + "</text>\n";
    }
    constexpr int kXTicks = 5;
    for (int i = 0; i <= kXTicks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / kXTicks;
        const double x = px(xv);
        o += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" + tick(xv) +
             "</text>\n";
    }
    o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         std::string(table.sweep == SweepKind::lambda ? "lambda" : "d") + "</text>\n";
    o += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + ph / 2) + ")\">P(age &gt; d)</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        o += "<g class=\"series\" data-label=\"" + escape(s.label) + "\">\n";
        o += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            if (j) o += ' ';
            o += num(px(s.points[j].first)) + "," + num(py(s.points[j].second));
        }
        o += "\"/>\n";
        for (const auto& [x, y] : s.points) {
            o += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
        }
        o += "</g>\n";
        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        o += "<line x1=\"" + num(kLeft + pw + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(kLeft + pw + 40) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
        o += "<text x=\"" + num(kLeft + pw + 46) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) + "</text>\n";
    }
    o += "</svg>\n";
    return o;
}

void plot(const ResultTable& table, const std::filesystem::path& path) {
    const std::string svg = render_svg(table);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << svg;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace aoi
