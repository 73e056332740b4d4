#include "gtl/rational.hpp"

#include <stdexcept>

namespace gtl {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto strip = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    };
    strip(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    strip(num);
    strip(den);
    auto valid = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(num.begin());
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace gtl
