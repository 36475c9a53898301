#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "lpoly/rational.hpp"

namespace lpoly {

/* A p-adic order normalized by ord(p) = 1.
 *
 * Three states: an exact finite value, the valuation of zero (infinity),
 * and the truncated-arithmetic marker "at least `value`" produced when
 * every certified digit vanishes. */
class Valuation {
public:
    enum class Kind { Finite, Infinite, AtLeast };

    Valuation() : kind_(Kind::Infinite) {}

    static Valuation finite(Rational v) { return Valuation(Kind::Finite, v); }
    static Valuation infinite() { return Valuation(); }
    static Valuation at_least(Rational bound) { return Valuation(Kind::AtLeast, bound); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_lower_bound() const { return kind_ == Kind::AtLeast; }

    /* The exact value (Finite) or the bound (AtLeast). */
    Rational const& value() const;

    /* Divide a finite value or bound by a positive integer (ord_p -> ord_q). */
    Valuation scaled_down(std::int64_t m) const;

    /* True when `exact` (finite or infinite) is compatible with *this. */
    bool admits(Valuation const& exact) const;

    bool operator==(Valuation const& other) const = default;

    /* "a/b", "inf" or ">=a/b" */
    std::string to_string() const;
    static Valuation parse(std::string_view text);

private:
    Valuation(Kind k, Rational v) : kind_(k), value_(v) {}

    Kind kind_;
    Rational value_{0};
};

} // namespace lpoly
