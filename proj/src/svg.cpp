#include "tlra/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tlra/errors.hpp"

namespace tlra {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

}  // namespace

std::string principal_map_svg(const PrincipalMap& map, const SvgOptions& options) {
    const double w = options.width;
    const double h = options.height;
    const double margin = 48.0;

    // Extent over all points, always including the origin.
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto* points : {&map.row_points, &map.col_points}) {
        for (const auto& p : *points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    double span_x = max_x - min_x;
    double span_y = max_y - min_y;
    if (span_x <= 0.0) span_x = 1.0;
    if (span_y <= 0.0) span_y = 1.0;
    min_x -= 0.08 * span_x;
    max_x += 0.08 * span_x;
    min_y -= 0.08 * span_y;
    max_y += 0.08 * span_y;

    auto sx = [&](double x) { return margin + (x - min_x) / (max_x - min_x) * (w - 2 * margin); };
    auto sy = [&](double y) { return h - margin - (y - min_y) / (max_y - min_y) * (h - 2 * margin); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"" << num(w / 2)
            << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
            << escape(options.title) << "</text>\n";

    out << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(sx(0))
        << "\" y2=\"" << num(h - margin)
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(w - margin)
        << "\" y2=\"" << num(sy(0))
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";

    out << "<text x=\"" << num(w - margin) << "\" y=\"" << num(h - margin / 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">axis " << map.axis_x
        << "</text>\n";
    out << "<text x=\"" << num(margin / 3) << "\" y=\"" << num(margin)
        << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 " << num(margin / 3)
        << " " << num(margin) << ")\" text-anchor=\"end\">axis " << map.axis_y << "</text>\n";

    for (const auto& p : map.row_points) {
        out << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
            << "\" r=\"4\" fill=\"#33679b\"/>\n";
        out << "<text x=\"" << num(sx(p.x) + 6) << "\" y=\"" << num(sy(p.y) - 5)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#33679b\">" << escape(p.label)
            << "</text>\n";
    }
    for (const auto& p : map.col_points) {
        const double cx = sx(p.x), cy = sy(p.y);
        out << "<polygon points=\"" << num(cx) << "," << num(cy - 5.5) << " " << num(cx - 5)
            << "," << num(cy + 4) << " " << num(cx + 5) << "," << num(cy + 4)
            << "\" fill=\"none\" stroke=\"#a8352c\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << num(cx + 7) << "\" y=\"" << num(cy + 11)
            << "\" font-family=\"sans-serif\" font-size=\"11\" font-style=\"italic\" "
               "fill=\"#a8352c\">"
            << escape(p.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_principal_map_svg(const std::filesystem::path& path, const PrincipalMap& map,
                             const SvgOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << principal_map_svg(map, options);
}

}  // namespace tlra
