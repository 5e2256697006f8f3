#pragma once

#include <charconv>
#include <complex>
#include <string>

namespace qpsc {

/// %.<digits>g formatting through std::to_chars (locale independent).
inline std::string format_significant(double x, int digits)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(std::complex<double> z, int digits)
{
    if (z.imag() == 0.0) return format_significant(z.real(), digits);
    std::string s = format_significant(z.real(), digits);
    s += z.imag() < 0.0 ? "-" : "+";
    s += format_significant(std::abs(z.imag()), digits) + "i";
    return s;
}

}  // namespace qpsc
