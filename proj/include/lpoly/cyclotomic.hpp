#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lpoly/valuation.hpp"

namespace lpoly {

/* Element of Z[zeta_p] in the power basis zeta^0 .. zeta^{p-2}. Products are
 * folded back with zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}). */
class CycInt {
public:
    explicit CycInt(std::uint32_t p);

    static CycInt integer(std::uint32_t p, mpz_class const& n);
    static CycInt from_coeffs(std::uint32_t p, std::vector<mpz_class> coeffs);
    /* sum_t counts[t] zeta^t for t in [0, p) */
    static CycInt from_histogram(std::uint32_t p, std::span<std::uint64_t const> counts);

    std::uint32_t prime() const { return p_; }
    std::vector<mpz_class> const& coeffs() const { return coeffs_; }

    bool is_zero() const;
    /* Image under zeta -> 1, i.e. the coefficient sum. */
    mpz_class augmentation() const;

    CycInt& operator+=(CycInt const& o);
    CycInt& operator-=(CycInt const& o);
    CycInt& operator*=(mpz_class const& n);

    friend CycInt operator+(CycInt a, CycInt const& b) { return a += b; }
    friend CycInt operator-(CycInt a, CycInt const& b) { return a -= b; }
    friend CycInt operator*(CycInt const& a, CycInt const& b);
    friend CycInt operator*(CycInt a, mpz_class const& n) { return a *= n; }
    CycInt operator-() const;

    bool operator==(CycInt const& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }

    /* Coefficientwise exact division; throws InternalError when inexact. */
    CycInt divided_exactly(mpz_class const& n) const;
    bool divisible_by(mpz_class const& n) const;

    /* The automorphism zeta -> zeta^a, gcd(a, p) = 1. */
    CycInt galois(std::uint32_t a) const;

private:
    std::uint32_t p_;
    std::vector<mpz_class> coeffs_;
};

CycInt zeta_pow(std::uint32_t p, std::int64_t k);
CycInt cyc_add(CycInt const& x, CycInt const& y);
CycInt cyc_mul(CycInt const& x, CycInt const& y);

/* y with (1 - zeta) y = x. Throws InputError("not divisible") unless the
 * augmentation of x is divisible by p. */
CycInt lambda_divide(CycInt const& x);

/* ord_p(x) with ord_p(p) = 1; infinite iff x = 0. */
Valuation valuation(CycInt const& x);

/* |sigma_k(x)| for the embedding zeta -> exp(2 pi i k / p), 1 <= k <= p-1. */
double complex_abs(CycInt const& x, std::uint32_t k);

} // namespace lpoly
