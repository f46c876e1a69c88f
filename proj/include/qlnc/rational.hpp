#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlnc {

// Exact rates. Link rates and throughputs are rationals end to end; nothing
// in the toolkit goes through floating point.
using Rational = boost::rational<std::int64_t>;

// Canonical wire form is always "p/q", including integral values ("2/1").
inline std::string rational_str(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(text));
        }
        const std::int64_t num = std::stoll(text.substr(0, slash));
        const std::int64_t den = std::stoll(text.substr(slash + 1));
        return Rational(num, den);  // boost throws bad_rational on den == 0
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

// ceil(p/q) for nonnegative rationals.
inline std::int64_t ceil_rational(const Rational& r) {
    const std::int64_t num = r.numerator();
    const std::int64_t den = r.denominator();
    return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

}  // namespace qlnc
