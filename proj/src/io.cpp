#include "hullstream/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hullstream {

namespace {

bool valid_integer(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_coordinate(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty coordinate");

    auto slash = token.find('/');
    if (slash != std::string::npos) {
        std::string num = token.substr(0, slash);
        std::string den = token.substr(slash + 1);
        if (!valid_integer(num) || !valid_integer(den))
            throw std::invalid_argument("bad rational '" + token + "'");
        Rational r(mpq_class(num + "/" + den));
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + token + "'");
        r.canonicalize();
        return r;
    }

    auto dot = token.find('.');
    if (dot != std::string::npos) {
        std::string head = token.substr(0, dot);
        std::string frac = token.substr(dot + 1);
        if (head.empty() || head == "-" || head == "+") head += "0";
        if (!valid_integer(head)) throw std::invalid_argument("bad decimal '" + token + "'");
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad decimal '" + token + "'");
        bool negative = token[0] == '-';
        mpz_class whole(head);
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class fpart = frac.empty() ? mpz_class(0) : mpz_class(frac);
        mpz_class num = whole * scale + (negative ? -fpart : fpart);
        Rational r(num, scale);
        r.canonicalize();
        return r;
    }

    if (!valid_integer(token)) throw std::invalid_argument("bad integer '" + token + "'");
    return Rational(mpz_class(token));
}

std::vector<Point> parse_points(std::istream& in) {
    std::vector<Point> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string xs, ys, extra;
        if (!(ls >> xs)) continue;  // blank or comment-only
        if (!(ls >> ys)) throw ParseError(lineno, "expected two coordinates");
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
        try {
            out.emplace_back(parse_coordinate(xs), parse_coordinate(ys));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

std::vector<Point> load_point_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_points(in);
}

std::string format_coordinate(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_point(const Point& p) {
    return format_coordinate(p.x) + " " + format_coordinate(p.y);
}

void write_point_file(const std::string& path, const std::vector<Point>& points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const Point& p : points) out << format_point(p) << "\n";
}

}  // namespace hullstream
