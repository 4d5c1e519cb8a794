#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pac/geometry.hpp"
#include "pac/union.hpp"

namespace pac {

using json = nlohmann::ordered_json;

/// Malformed configuration input; the message carries line/field details.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed 12-significant-digit text for a real.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// A real rounded to 12 significant digits, so that the JSON serializer's
/// shortest round-trip output is at most 12 digits long.
inline json json_real(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_real(v).c_str(), nullptr);
}

inline json to_json(const Configuration& c) {
    json squares = json::array();
    for (const auto& s : c.squares) {
        squares.push_back({{"cx", json_real(s.center().x)}, {"cy", json_real(s.center().y)}, {"theta", json_real(s.theta())}});
    }
    return {{"oriented", c.oriented}, {"label", c.label}, {"squares", std::move(squares)}};
}

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + "." + key + ": missing");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number, got " + std::string(v.type_name()));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + "." + key + ": not finite");
    return d;
}

}  // namespace detail

inline Configuration configuration_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration: top level must be an object");
    Configuration c;
    if (doc.contains("oriented")) {
        if (!doc["oriented"].is_boolean()) throw ConfigError("oriented: expected a boolean");
        c.oriented = doc["oriented"].get<bool>();
    }
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw ConfigError("label: expected a string");
        c.label = doc["label"].get<std::string>();
    }
    if (!doc.contains("squares")) throw ConfigError("squares: missing");
    const json& squares = doc["squares"];
    if (!squares.is_array()) throw ConfigError("squares: expected an array");
    if (squares.empty()) throw ConfigError("squares: must not be empty");
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const std::string where = "squares[" + std::to_string(i) + "]";
        const json& s = squares[i];
        if (!s.is_object()) throw ConfigError(where + ": expected an object");
        const double cx = detail::number_field(s, "cx", where);
        const double cy = detail::number_field(s, "cy", where);
        const double theta = s.contains("theta") ? detail::number_field(s, "theta", where) : 0.0;
        c.squares.emplace_back(Point{cx, cy}, theta);
        if (c.oriented && c.squares.back().theta() != 0.0) {
            throw ConfigError(where + ".theta: must be 0 (mod pi/2) in an oriented configuration");
        }
    }
    return c;
}

inline Configuration parse_configuration(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    return configuration_from_json(doc);
}

inline Configuration load_configuration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_configuration(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// SVG

inline constexpr double kSvgScale = 100.0;  // pixels per plane unit
inline constexpr double kSvgMargin = 1.0;   // plane units around the region

/// One <path> per shell, its holes as extra subpaths with even-odd fill.
/// The y axis points up in the plane and down in the image.
inline std::string render_svg(const Region& region, const std::string& title = "") {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
    bool first = true;
    for (const auto& shell : region.shells) {
        for (Point p : shell) {
            if (first) {
                min_x = max_x = p.x;
                min_y = max_y = p.y;
                first = false;
            }
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    }
    const double width = (max_x - min_x + 2.0 * kSvgMargin) * kSvgScale;
    const double height = (max_y - min_y + 2.0 * kSvgMargin) * kSvgScale;
    auto px = [&](Point p) {
        return format_real((p.x - min_x + kSvgMargin) * kSvgScale) + "," + format_real((max_y - p.y + kSvgMargin) * kSvgScale);
    };
    auto subpath = [&](const Polygon& ring) {
        std::string d = "M" + px(ring.front());
        for (std::size_t i = 1; i < ring.size(); ++i) d += " L" + px(ring[i]);
        return d + " Z";
    };

    const double p = perimeter(region);
    const double a = area(region);
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<!-- perimeter=" << format_real(p) << " area=" << format_real(a) << " ratio=" << format_real(a > 0.0 ? p / a : 0.0)
       << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_real(width) << "\" height=\"" << format_real(height)
       << "\" viewBox=\"0 0 " << format_real(width) << ' ' << format_real(height) << "\">\n";
    if (!title.empty()) os << "  <title>" << title << "</title>\n";
    for (std::size_t s = 0; s < region.shells.size(); ++s) {
        std::string d = subpath(region.shells[s]);
        for (const auto& hole : region.holes) {
            if (hole.shell == s) d += " " + subpath(hole.ring);
        }
        os << "  <path fill=\"#9bb7d4\" fill-rule=\"evenodd\" stroke=\"#1f3b57\" stroke-width=\"1\" d=\"" << d << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pac
