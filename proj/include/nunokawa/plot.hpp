#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nunokawa/analytic_map.hpp"
#include "nunokawa/contact_search.hpp"
#include "nunokawa/serialize.hpp"

namespace nunokawa {

/// Image of one circle |z| = r under p, sampled at theta = 2 pi i / n for
/// i = 0..n-1 plus a closing row that repeats the first point exactly.
struct CircleSamples {
    double radius = 0.0;
    std::vector<double> theta;
    std::vector<Complex> values;
};

inline CircleSamples sample_circle(const AnalyticMap& p, double r, int samples) {
    require_finite(r, "radius");
    if (!(r > 0.0 && r <= 1.0))
        throw DomainError("plot radius must satisfy 0 < r <= 1");
    if (samples < 256) throw DomainError("plots need samples_per_circle >= 256");
    CircleSamples out;
    out.radius = r;
    out.theta.reserve(static_cast<std::size_t>(samples) + 1);
    out.values.reserve(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i < samples; ++i) {
        const double theta =
            two_pi * static_cast<double>(i) / static_cast<double>(samples);
        const Complex v = p.value_at(r * std::polar(1.0, theta));
        require_finite(v, "plot sample");
        out.theta.push_back(theta);
        out.values.push_back(v);
    }
    out.theta.push_back(two_pi);
    out.values.push_back(out.values.front());
    return out;
}

/// CSV with one "theta,re,im" block per circle, LF line endings, '.'
/// decimal separator, shortest round-trip numbers.
inline std::string render_csv(const std::vector<CircleSamples>& circles) {
    std::string out;
    for (const CircleSamples& c : circles) {
        out += "theta,re,im\n";
        for (std::size_t i = 0; i < c.theta.size(); ++i) {
            out += format_shortest(c.theta[i]);
            out += ',';
            out += format_shortest(c.values[i].real());
            out += ',';
            out += format_shortest(c.values[i].imag());
            out += '\n';
        }
    }
    return out;
}

/// Parse render_csv output back into sample blocks (radii are not part of
/// the format and come back as 0).
inline std::vector<CircleSamples> parse_csv(const std::string& text) {
    std::vector<CircleSamples> circles;
    std::istringstream in(text);
    std::string line;
    const auto parse_field = [](const std::string& s) {
        double v = 0.0;
        const std::from_chars_result res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw DomainError("unparsable CSV number: \"" + s + "\"");
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "theta,re,im") {
            circles.emplace_back();
            continue;
        }
        if (circles.empty()) throw DomainError("CSV data before header line");
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw DomainError("CSV row needs three fields");
        circles.back().theta.push_back(parse_field(line.substr(0, c1)));
        circles.back().values.emplace_back(parse_field(line.substr(c1 + 1, c2 - c1 - 1)),
                                           parse_field(line.substr(c2 + 1)));
    }
    if (circles.empty()) throw DomainError("CSV carries no circle block");
    return circles;
}

/// SVG 1.1 overlay of the image curves. Fixed styling: two stroke colors
/// cycling over circles, contact markers as filled circles of radius 1% of
/// the viewbox, optional vertical line Re = alpha. The viewbox is the curve
/// bounding box with a 5% margin.
inline std::string render_svg(const std::vector<CircleSamples>& circles,
                              const std::vector<Complex>& markers,
                              std::optional<double> level_alpha) {
    if (circles.empty()) throw DomainError("nothing to plot");
    double min_x = circles[0].values[0].real();
    double max_x = min_x;
    double min_y = -circles[0].values[0].imag();
    double max_y = min_y;
    for (const CircleSamples& c : circles) {
        for (const Complex& v : c.values) {
            min_x = std::min(min_x, v.real());
            max_x = std::max(max_x, v.real());
            min_y = std::min(min_y, -v.imag());
            max_y = std::max(max_y, -v.imag());
        }
    }
    if (level_alpha) {
        min_x = std::min(min_x, *level_alpha);
        max_x = std::max(max_x, *level_alpha);
    }
    const double span = std::max(max_x - min_x, max_y - min_y);
    const double pad = span > 0.0 ? 0.05 * span : 0.5;
    const double vx = min_x - pad;
    const double vy = min_y - pad;
    const double vw = max_x - min_x + 2.0 * pad;
    const double vh = max_y - min_y + 2.0 * pad;
    const double marker_r = 0.01 * std::max(vw, vh);
    const double stroke = 0.004 * std::max(vw, vh);

    static const char* const palette[2] = {"#1f77b4", "#d62728"};

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    svg += format_shortest(vx) + " " + format_shortest(vy) + " " +
           format_shortest(vw) + " " + format_shortest(vh);
    svg += "\">\n";
    if (level_alpha) {
        svg += "  <line x1=\"" + format_shortest(*level_alpha) + "\" y1=\"" +
               format_shortest(vy) + "\" x2=\"" + format_shortest(*level_alpha) +
               "\" y2=\"" + format_shortest(vy + vh) + "\" stroke=\"#555555\" " +
               "stroke-width=\"" + format_shortest(0.5 * stroke) +
               "\" stroke-dasharray=\"" + format_shortest(4.0 * stroke) + "\"/>\n";
    }
    for (std::size_t ci = 0; ci < circles.size(); ++ci) {
        svg += "  <polyline fill=\"none\" stroke=\"";
        svg += palette[ci % 2];
        svg += "\" stroke-width=\"" + format_shortest(stroke) + "\" points=\"";
        const CircleSamples& c = circles[ci];
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (i > 0) svg += ' ';
            svg += format_shortest(c.values[i].real());
            svg += ',';
            svg += format_shortest(-c.values[i].imag());
        }
        svg += "\"/>\n";
    }
    for (const Complex& m : markers) {
        svg += "  <circle cx=\"" + format_shortest(m.real()) + "\" cy=\"" +
               format_shortest(-m.imag()) + "\" r=\"" + format_shortest(marker_r) +
               "\" fill=\"#000000\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace nunokawa
