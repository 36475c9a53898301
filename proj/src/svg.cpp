#include "lpoly/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace lpoly {

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;

std::string escape(std::string const& s) {
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

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

double as_double(Rational const& r) { return double(r.numerator()) / double(r.denominator()); }

std::string label(Vertex const& v) { return "(" + std::to_string(v.x) + ", " + pretty(v.y) + ")"; }

} // namespace

std::string render_svg(NewtonPolygon const& np, NewtonPolygon const& hp, std::string const& title) {
    double const x_max = std::max(1, np.d - 1);
    double y_max = 1;
    for (auto const* poly : {&np, &hp})
        for (auto const& v : poly->vertices)
            y_max = std::max(y_max, as_double(v.y));

    auto sx = [&](double x) { return kMargin + x / x_max * (kWidth - 2 * kMargin); };
    auto sy = [&](double y) { return kHeight - kMargin - y / y_max * (kHeight - 2 * kMargin); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<title>" << escape(title) << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kMargin << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">" << escape(title)
      << "</text>\n";

    // axes
    o << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(x_max)) << "\" y2=\""
      << num(sy(0)) << "\"/>\n"
      << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(0)) << "\" y2=\""
      << num(sy(y_max)) << "\"/>\n</g>\n";
    for (int x = 0; x <= int(x_max); ++x)
        o << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(sy(0) + 18)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x << "</text>\n";

    auto path = [&](NewtonPolygon const& p, char const* style) {
        o << "<polyline fill=\"none\" " << style << " points=\"";
        for (std::size_t k = 0; k < p.vertices.size(); ++k)
            o << (k ? " " : "") << num(sx(double(p.vertices[k].x))) << ',' << num(sy(as_double(p.vertices[k].y)));
        o << "\"/>\n";
    };
    path(hp, "stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
    path(np, "stroke=\"#1f4e9c\" stroke-width=\"2.5\"");

    std::set<std::pair<std::int64_t, Rational>> labelled;
    for (auto const& v : np.vertices) {
        o << "<circle cx=\"" << num(sx(double(v.x))) << "\" cy=\"" << num(sy(as_double(v.y)))
          << "\" r=\"4\" fill=\"#1f4e9c\"/>\n"
          << "<text x=\"" << num(sx(double(v.x)) + 6) << "\" y=\"" << num(sy(as_double(v.y)) - 8)
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1f4e9c\">" << escape(label(v)) << "</text>\n";
        labelled.insert({v.x, v.y});
    }
    for (auto const& v : hp.vertices) {
        if (labelled.count({v.x, v.y}))
            continue;
        o << "<circle cx=\"" << num(sx(double(v.x))) << "\" cy=\"" << num(sy(as_double(v.y)))
          << "\" r=\"3\" fill=\"#888888\"/>\n"
          << "<text x=\"" << num(sx(double(v.x)) + 6) << "\" y=\"" << num(sy(as_double(v.y)) + 16)
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#888888\">" << escape(label(v)) << "</text>\n";
    }

    o << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<line x1=\"" << kWidth - 180 << "\" y1=\"50\" x2=\"" << kWidth - 150
      << "\" y2=\"50\" stroke=\"#1f4e9c\" stroke-width=\"2.5\"/>"
      << "<text x=\"" << kWidth - 140 << "\" y=\"54\">Newton polygon</text>\n"
      << "<line x1=\"" << kWidth - 180 << "\" y1=\"70\" x2=\"" << kWidth - 150
      << "\" y2=\"70\" stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>"
      << "<text x=\"" << kWidth - 140 << "\" y=\"74\">Hodge polygon</text>\n</g>\n";
    o << "</svg>\n";
    return o.str();
}

} // namespace lpoly
