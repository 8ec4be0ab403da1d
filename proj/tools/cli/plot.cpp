#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

#include "tailrisk/error.hpp"

namespace tailrisk::cli {

namespace {

struct Curve {
    std::vector<double> y;
    const char* name;
    const char* colour;
    const char* dash;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
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

std::vector<double> column(const CsvTable& t, const char* name, bool required, bool& present) {
    present = false;
    const auto idx = t.find_column(name);
    if (!idx) {
        if (required) throw DataError(std::string("plot input lacks a '") + name + "' column");
        return {};
    }
    std::vector<double> v;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto x = parse_double(t.rows[i][*idx]);
        if (!x) {
            if (required) throw DataError(std::string("row ") + std::to_string(i + 1) + ": bad " + name);
            return {};
        }
        v.push_back(*x);
    }
    present = true;
    return v;
}

}  // namespace

void write_plot_svg(std::ostream& out, const CsvTable& table, const PlotOptions& opts) {
    if (table.rows.empty()) throw DataError("no rows to plot");
    bool ok = false, lo_ok = false, hi_ok = false;
    const auto k = column(table, "k", true, ok);
    std::vector<Curve> curves;
    curves.push_back({column(table, "estimate", true, ok), "estimate", "#1f4e9a", ""});
    auto lo = column(table, "ci_lower", false, lo_ok);
    auto hi = column(table, "ci_upper", false, hi_ok);
    if (lo_ok && hi_ok) {
        curves.push_back({std::move(lo), "ci_lower", "#b03a2e", "6,4"});
        curves.push_back({std::move(hi), "ci_upper", "#b03a2e", "6,4"});
    }

    double x0 = *std::min_element(k.begin(), k.end()), x1 = *std::max_element(k.begin(), k.end());
    double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
    for (const auto& c : curves) {
        for (double v : c.y) {
            if (!std::isfinite(v)) throw DataError("non-finite value in plot input");
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    }
    if (x1 == x0) x0 -= 1, x1 += 1;
    if (y1 == y0) {
        const double pad = y0 == 0.0 ? 1.0 : 0.05 * std::abs(y0);
        y0 -= pad, y1 += pad;
    }

    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opts.width - left - right, ph = opts.height - top - bottom;
    const auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    const auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opts.width)
        << "\" height=\"" << num(opts.height) << "\" viewBox=\"0 0 " << num(opts.width) << ' '
        << num(opts.height) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        out << "<text x=\"" << num(opts.width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << escape(opts.title) << "</text>\n";

    out << "<g stroke=\"#444\" stroke-width=\"1\">\n"
        << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw)
        << "\" y2=\"" << num(top + ph) << "\"/>\n"
        << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(top + ph) << "\"/>\n</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
        out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 16)
            << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n"
            << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(opts.height - 10)
        << "\" text-anchor=\"middle\">k</text>\n</g>\n";

    for (const auto& c : curves) {
        if (k.size() == 1) {
            out << "<circle class=\"" << c.name << "\" cx=\"" << num(sx(k[0])) << "\" cy=\""
                << num(sy(c.y[0])) << "\" r=\"3\" fill=\"" << c.colour << "\"/>\n";
            continue;
        }
        out << "<polyline class=\"" << c.name << "\" fill=\"none\" stroke=\"" << c.colour
            << "\" stroke-width=\"1.5\"";
        if (*c.dash) out << " stroke-dasharray=\"" << c.dash << '"';
        out << " points=\"";
        for (std::size_t i = 0; i < k.size(); ++i) out << (i ? " " : "") << num(sx(k[i])) << ',' << num(sy(c.y[i]));
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace tailrisk::cli
