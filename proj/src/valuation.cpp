#include "lpoly/valuation.hpp"

#include "lpoly/errors.hpp"

namespace lpoly {

Rational const& Valuation::value() const {
    if (kind_ == Kind::Infinite)
        throw InternalError("value() of an infinite valuation");
    return value_;
}

Valuation Valuation::scaled_down(std::int64_t m) const {
    if (kind_ == Kind::Infinite)
        return *this;
    return Valuation(kind_, value_ / m);
}

bool Valuation::admits(Valuation const& exact) const {
    switch (kind_) {
    case Kind::Finite:
        return exact == *this;
    case Kind::Infinite:
        return exact.is_infinite();
    case Kind::AtLeast:
        return exact.is_infinite() || (exact.is_finite() && exact.value_ >= value_) ||
               (exact.is_lower_bound());
    }
    return false;
}

std::string Valuation::to_string() const {
    switch (kind_) {
    case Kind::Finite:
        return lpoly::to_string(value_);
    case Kind::Infinite:
        return "inf";
    case Kind::AtLeast:
        return ">=" + lpoly::to_string(value_);
    }
    return {};
}

Valuation Valuation::parse(std::string_view text) {
    if (text == "inf")
        return infinite();
    if (text.starts_with(">="))
        return at_least(parse_rational(text.substr(2)));
    return finite(parse_rational(text));
}

} // namespace lpoly
