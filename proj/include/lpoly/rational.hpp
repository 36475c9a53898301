#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace lpoly {

using Rational = boost::rational<std::int64_t>;

/* Always "a/b" with b > 0, including integers ("1/1"). */
std::string to_string(Rational const& r);

/* Accepts "a/b" or a bare integer. Throws InputError. */
Rational parse_rational(std::string_view text);

/* Same as to_string but integers print without denominator. */
std::string pretty(Rational const& r);

std::int64_t floor(Rational const& r);
std::int64_t ceil(Rational const& r);

} // namespace lpoly
