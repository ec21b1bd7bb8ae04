#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cli/csv.hpp"

namespace abcmc::cli {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0, hi = 1;

    double transform(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::floor(lo); e <= std::ceil(hi) + 1e-9; e += 1)
                if (e >= lo - 1e-9 && e <= hi + 1e-9) out.push_back(e);
            if (out.size() >= 2) return out;
            out.clear();
        }
        for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
        return out;
    }

    std::string label(double t) const { return fmt(log ? std::pow(10.0, t) : t, "%.3g"); }
};

void fit(Axis& axis, const std::vector<double>& values) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values) {
        if (!axis.usable(v)) continue;
        lo = std::min(lo, axis.transform(v));
        hi = std::max(hi, axis.transform(v));
    }
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    axis.lo = lo - pad;
    axis.hi = hi + pad;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
    Axis ax{spec.log_x}, ay{spec.log_y};
    std::vector<double> all_x, all_y;
    for (const auto& s : spec.series) {
        all_x.insert(all_x.end(), s.xs.begin(), s.xs.end());
        all_y.insert(all_y.end(), s.ys.begin(), s.ys.end());
    }
    fit(ax, all_x);
    fit(ay, all_y);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double t) { return kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double t) { return kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks()) {
        const double x = px(t);
        o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x)
          << "\" y2=\"" << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18)
          << "\" text-anchor=\"middle\">" << ax.label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        o << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft)
          << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
          << ay.label(t) << "</text>\n";
    }
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(16," << fmt(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        std::ostringstream points;
        std::size_t n = 0;
        for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
            if (!ax.usable(s.xs[i]) || !ay.usable(s.ys[i])) continue;
            points << (n++ ? " " : "") << fmt(px(ax.transform(s.xs[i]))) << ','
                   << fmt(py(ay.transform(s.ys[i])));
        }
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
          << points.str() << "\"/>\n";
        const double ly = kTop + 10 + 16.0 * k;
        o << "<line x1=\"" << fmt(kWidth - kRight + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
          << fmt(kWidth - kRight + 32) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << colour
          << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << fmt(kWidth - kRight + 36) << "\" y=\"" << fmt(ly + 4) << "\">"
          << escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void chart_from_csv(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                    const std::string& group_column, const std::string& x_column,
                    const std::string& y_column, ChartSpec spec) {
    const CsvTable table = read_csv(csv_path);
    const std::size_t g = table.column(group_column), x = table.column(x_column),
                      y = table.column(y_column);
    spec.series.clear();
    for (const auto& row : table.rows) {
        std::string name = group_column + "=" + row[g];
        try {
            name = group_column + "=" + fmt(std::stod(row[g]), "%g");
        } catch (const std::exception&) {
        }
        auto it = std::find_if(spec.series.begin(), spec.series.end(),
                               [&](const ChartSeries& s) { return s.name == name; });
        if (it == spec.series.end()) {
            spec.series.push_back({name, {}, {}});
            it = spec.series.end() - 1;
        }
        it->xs.push_back(std::stod(row[x]));
        it->ys.push_back(std::stod(row[y]));
    }
    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot write " + svg_path.string());
    out << render_line_chart(spec);
}

}  // namespace abcmc::cli
