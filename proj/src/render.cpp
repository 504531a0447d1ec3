#include "pizza/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pizza {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct Canvas {
    double size, margin;
    double px(const Q& x) const { return margin + x.to_double() * size; }
    double py(const Q& y) const { return margin + (1.0 - y.to_double()) * size; }
    double px(double x) const { return margin + x * size; }
    double py(double y) const { return margin + (1.0 - y) * size; }
};

std::string chain_path(const Canvas& cv, const Chain& c) {
    std::string d;
    for (std::size_t i = 0; i < c.size(); ++i)
        d += (i ? " L " : "M ") + fmt(cv.px(c[i].x)) + " " + fmt(cv.py(c[i].y));
    return d + " Z";
}

void segment(std::ostringstream& out, const Canvas& cv, double x0, double y0, double x1, double y1, bool dashed) {
    out << "  <line x1=\"" << fmt(cv.px(x0)) << "\" y1=\"" << fmt(cv.py(y0)) << "\" x2=\"" << fmt(cv.px(x1)) << "\" y2=\""
        << fmt(cv.py(y1)) << "\" stroke=\"black\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "")
        << "/>\n";
}

}  // namespace

std::string render_svg(const PizzaInstance& inst, const RenderOptions& opt) {
    Canvas cv{static_cast<double>(opt.size), 16.0};
    const double full = cv.size + 2 * cv.margin;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(full) << "\" height=\"" << fmt(full)
        << "\" viewBox=\"0 0 " << fmt(full) << " " << fmt(full) << "\">\n";
    out << "  <rect x=\"" << fmt(cv.margin) << "\" y=\"" << fmt(cv.margin) << "\" width=\"" << fmt(cv.size) << "\" height=\""
        << fmt(cv.size) << "\" fill=\"white\" stroke=\"#888\"/>\n";

    for (std::size_t i = 0; i < inst.masses.size(); ++i) {
        const auto& m = inst.masses[i];
        Q wmax = 0;
        for (const auto& p : m.polygons) wmax = max(wmax, p.weight);
        const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
        out << "  <g fill=\"" << color << "\" fill-rule=\"evenodd\" data-color=\"" << m.color_id << "\">\n";
        for (const auto& p : m.polygons) {
            std::string d = chain_path(cv, p.outer);
            for (const auto& h : p.holes) d += " " + chain_path(cv, h);
            double alpha = wmax.is_zero() ? 0.5 : 0.2 + 0.4 * (p.weight / wmax).to_double();
            out << "    <path d=\"" << d << "\" fill-opacity=\"" << fmt(alpha) << "\"/>\n";
        }
        out << "  </g>\n";
    }

    if (opt.path) {
        for (const auto& s : solution_to_path(*opt.path).segments) {
            double x0 = s.x0.to_double(), y0 = s.y0.to_double(), x1 = s.x1.to_double(), y1 = s.y1.to_double();
            if (s.wraps) {
                double edge_out = s.dir < 0 ? 0.0 : 1.0, edge_in = 1.0 - edge_out;
                segment(out, cv, x0, y0, edge_out, y0, true);
                segment(out, cv, edge_in, y1, x1, y1, true);
            } else {
                segment(out, cv, x0, y0, x1, y1, false);
            }
        }
    }

    if (opt.lines) {
        for (const auto& l : *opt.lines) {
            double a = l.a.to_double(), b = l.b.to_double(), c = l.c.to_double();
            std::vector<std::pair<double, double>> hits;
            if (b != 0) {
                for (double x : {0.0, 1.0}) {
                    double y = (c - a * x) / b;
                    if (y >= 0 && y <= 1) hits.emplace_back(x, y);
                }
            }
            if (a != 0) {
                for (double y : {0.0, 1.0}) {
                    double x = (c - b * y) / a;
                    if (x >= 0 && x <= 1) hits.emplace_back(x, y);
                }
            }
            std::sort(hits.begin(), hits.end());
            if (hits.size() >= 2) {
                out << "  <line x1=\"" << fmt(cv.px(hits.front().first)) << "\" y1=\"" << fmt(cv.py(hits.front().second))
                    << "\" x2=\"" << fmt(cv.px(hits.back().first)) << "\" y2=\"" << fmt(cv.py(hits.back().second))
                    << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace pizza
