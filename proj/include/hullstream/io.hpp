#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hullstream/geom.hpp"

namespace hullstream {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
    std::size_t line;
};

// "3", "-4", "2.50" (exact), or "7/3"
Rational parse_coordinate(const std::string& token);

// One point per line, "x y"; '#' starts a comment; blank lines skipped.
std::vector<Point> parse_points(std::istream& in);
std::vector<Point> load_point_file(const std::string& path);

// integer when the denominator is 1, otherwise num/den
std::string format_coordinate(const Rational& v);
std::string format_point(const Point& p);

void write_point_file(const std::string& path, const std::vector<Point>& points);

}  // namespace hullstream
