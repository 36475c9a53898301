#include "lpoly/rational.hpp"

#include <charconv>

#include "lpoly/errors.hpp"

namespace lpoly {

std::string to_string(Rational const& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string pretty(Rational const& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return to_string(r);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InputError("malformed rational: '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto const slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    std::int64_t const num = parse_int(text.substr(0, slash), text);
    std::int64_t const den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw InputError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

std::int64_t floor(Rational const& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
        --q;
    return q;
}

std::int64_t ceil(Rational const& r) { return -floor(-r); }

} // namespace lpoly
