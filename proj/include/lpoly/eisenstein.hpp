#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpoly/rational.hpp"
#include "lpoly/valuation.hpp"

namespace lpoly {

/* Truncated element of Q_p(pi), pi^{p-1} = -p.
 *
 * The value is p^shift * (c_0 + c_1 pi + ... + c_{p-2} pi^{p-2}) modulo
 * pi^prec, with every c_i stored modulo p^K. Valuations and precisions are
 * integers in units of 1/(p-1), so ord(pi) = 1 unit and ord(p) = p-1 units.
 *
 * The representation is kept canonical: digits at or beyond prec are
 * cleared, and shift is maximal (some c_i is a p-adic unit) unless the
 * stored value is zero. Two elements with equal prec are therefore equal
 * mod pi^prec iff their coefficient vectors and shifts coincide.
 *
 * Requires p^K < 2^125. */
class PiAdic {
public:
    using Units = std::int64_t;
    using Digit = unsigned __int128;
    static constexpr Units kExact = Units(1) << 50;

    PiAdic(std::uint32_t p, std::uint32_t K); // exact zero

    static PiAdic from_int(std::uint32_t p, std::uint32_t K, std::int64_t n);
    static PiAdic pi(std::uint32_t p, std::uint32_t K);
    static PiAdic pi_power(std::uint32_t p, std::uint32_t K, std::int64_t e);
    /* Raw constructor; c_i are reduced mod p^K. */
    static PiAdic from_coeffs(std::uint32_t p, std::uint32_t K, std::vector<std::int64_t> const& c,
                              std::int64_t shift, Units prec);
    static PiAdic from_digits(std::uint32_t p, std::uint32_t K, std::vector<Digit> c,
                              std::int64_t shift, Units prec);

    std::uint32_t prime() const { return p_; }
    std::uint32_t digits() const { return K_; }
    std::int64_t shift() const { return shift_; }
    std::vector<Digit> const& coeffs() const { return c_; }
    /* Known pi-adic accuracy in units; the value is known mod pi^prec. */
    Units prec() const { return prec_; }
    Rational known_prec() const { return Rational(std::min(prec_, kExact), p_ - 1); }

    /* True when no digit below prec is nonzero. */
    bool is_zero() const;
    /* Valuation in units, or prec when is_zero(). */
    Units valuation_units() const { return val_; }
    /* Finite exact valuation, or AtLeast(known_prec) for a truncated zero. */
    Valuation valuation() const;

    PiAdic& operator+=(PiAdic const& o);
    PiAdic& operator-=(PiAdic const& o);
    friend PiAdic operator+(PiAdic a, PiAdic const& b) { return a += b; }
    friend PiAdic operator-(PiAdic a, PiAdic const& b) { return a -= b; }
    friend PiAdic operator*(PiAdic const& a, PiAdic const& b);
    PiAdic operator-() const;

    PiAdic times_int(std::int64_t n) const;
    /* Exact division by a nonzero integer; known precision drops by
     * (p-1) ord_p(n). Throws ComputeError if it would fall below zero. */
    PiAdic div_int(std::int64_t n) const;
    PiAdic times_pi() const;
    PiAdic div_pi() const;

    /* Lower the known precision (never raises it). */
    PiAdic truncated(Units prec) const;

    /* Same value stored with K digits per coefficient; shrinking K may lower prec. */
    PiAdic resized(std::uint32_t K) const;

    /* this == other modulo pi^units (both must be known that far); the
     * digit budgets of the two operands may differ. */
    bool agrees_with(PiAdic const& other, Units units) const;

    /* sum_t a_t * b_t in one pass: terms that vanish modulo the final
     * precision are skipped and reduction happens once per coefficient. */
    static PiAdic dot(std::vector<PiAdic const*> const& a, std::vector<PiAdic const*> const& b);

    /* Low-to-high digit string: digit u is the p-adic digit of p^{floor(u/(p-1))}
     * in the coefficient of pi^{u mod (p-1)}; ends with "+ O(pi^prec)". */
    std::string debug_string() const;

private:
    PiAdic(std::uint32_t p, std::uint32_t K, Digit pk);
    void normalize();
    Units coverage() const { return Units(p_ - 1) * (shift_ + K_); }

    std::uint32_t p_;
    std::uint32_t K_;
    Digit pk_; // p^K
    std::int64_t shift_ = 0;
    Units prec_ = kExact;
    Units val_ = kExact;
    std::vector<Digit> c_;
};

PiAdic pi_add(PiAdic const& x, PiAdic const& y);
PiAdic pi_mul(PiAdic const& x, PiAdic const& y);
PiAdic pi_div_int(PiAdic const& x, std::int64_t n);
Valuation pi_valuation(PiAdic const& x);

/* p-adic valuation of an integer (n != 0). */
int ord_p(std::int64_t n, std::uint32_t p);

/* Largest K with p^K < 2^125. */
std::uint32_t max_digits(std::uint32_t p);

/* Unique root of unity (or zero) congruent to a mod p, to K digits, by
 * iterating x <- x^p. */
PiAdic::Digit teichmuller_residue(std::uint32_t p, std::int64_t a, std::uint32_t K);
PiAdic teichmuller(std::uint32_t p, std::int64_t a, std::uint32_t K);

struct PrecisionLoss {
    std::string source;
    Rational amount;
};

/* Accuracy claim for a truncated computation: everything certified is
 * correct modulo pi^{target * (p-1)}. */
struct PrecisionCertificate {
    Rational initial;
    std::vector<PrecisionLoss> losses;

    Rational target() const;
    /* A Newton polygon of L with degree d-1 is certified when target > d-1. */
    bool certifies_degree(int d) const { return target() > Rational(d - 1); }

    /* Record the drop from the running target down to `achieved`. */
    void record(std::string source, Rational achieved);
};

/* b_0..b_{i_max} of theta(x) = exp(pi x - pi x^p) from
 * i b_i = pi b_{i-1} - p pi b_{i-p}. Division losses go to `cert` if given. */
std::vector<PiAdic> theta_coeffs(std::uint32_t p, std::size_t i_max, std::uint32_t K,
                                 PrecisionCertificate* cert = nullptr);

} // namespace lpoly
