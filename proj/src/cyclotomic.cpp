#include "lpoly/cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "lpoly/errors.hpp"

namespace lpoly {

namespace {

void require_same(CycInt const& a, CycInt const& b) {
    if (a.prime() != b.prime())
        throw InputError("cyclotomic operands over different primes");
}

/* Fold a length-p vector over zeta^0..zeta^{p-1} into the power basis. */
std::vector<mpz_class> fold(std::vector<mpz_class>&& full, std::uint32_t p) {
    mpz_class const top = full[p - 1];
    full.pop_back();
    if (top != 0)
        for (auto& c : full)
            c -= top;
    return std::move(full);
}

} // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), coeffs_(p - 1) {
    if (p < 3)
        throw InputError("cyclotomic arithmetic requires an odd prime");
}

CycInt CycInt::integer(std::uint32_t p, mpz_class const& n) {
    CycInt x(p);
    x.coeffs_[0] = n;
    return x;
}

CycInt CycInt::from_coeffs(std::uint32_t p, std::vector<mpz_class> coeffs) {
    CycInt x(p);
    if (coeffs.size() != p - 1)
        throw InputError("cyclotomic integer needs exactly p-1 coefficients");
    x.coeffs_ = std::move(coeffs);
    return x;
}

CycInt CycInt::from_histogram(std::uint32_t p, std::span<std::uint64_t const> counts) {
    if (counts.size() != p)
        throw InputError("histogram length must equal p");
    std::vector<mpz_class> full(p);
    for (std::uint32_t t = 0; t < p; ++t)
        full[t] = static_cast<unsigned long>(counts[t]);
    CycInt x(p);
    x.coeffs_ = fold(std::move(full), p);
    return x;
}

bool CycInt::is_zero() const {
    for (auto const& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

mpz_class CycInt::augmentation() const {
    mpz_class s = 0;
    for (auto const& c : coeffs_)
        s += c;
    return s;
}

CycInt& CycInt::operator+=(CycInt const& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(CycInt const& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator*=(mpz_class const& n) {
    for (auto& c : coeffs_)
        c *= n;
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

CycInt operator*(CycInt const& a, CycInt const& b) {
    require_same(a, b);
    std::uint32_t const p = a.p_;
    std::vector<mpz_class> full(p);
    for (std::uint32_t i = 0; i + 1 < p; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::uint32_t j = 0; j + 1 < p; ++j) {
            if (b.coeffs_[j] == 0)
                continue;
            mpz_addmul(full[(i + j) % p].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    CycInt r(p);
    r.coeffs_ = fold(std::move(full), p);
    return r;
}

bool CycInt::divisible_by(mpz_class const& n) const {
    for (auto const& c : coeffs_)
        if (!mpz_divisible_p(c.get_mpz_t(), n.get_mpz_t()))
            return false;
    return true;
}

CycInt CycInt::divided_exactly(mpz_class const& n) const {
    if (!divisible_by(n))
        throw InternalError("inexact division of a cyclotomic integer by " + n.get_str());
    CycInt r(p_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        mpz_divexact(r.coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(), n.get_mpz_t());
    return r;
}

CycInt CycInt::galois(std::uint32_t a) const {
    if (a % p_ == 0)
        throw InputError("Galois exponent must be prime to p");
    std::vector<mpz_class> full(p_);
    for (std::uint32_t i = 0; i + 1 < p_; ++i)
        full[(std::uint64_t(i) * a) % p_] += coeffs_[i];
    CycInt r(p_);
    r.coeffs_ = fold(std::move(full), p_);
    return r;
}

CycInt zeta_pow(std::uint32_t p, std::int64_t k) {
    std::int64_t e = k % static_cast<std::int64_t>(p);
    if (e < 0)
        e += p;
    std::vector<mpz_class> full(p);
    full[e] = 1;
    return CycInt::from_coeffs(p, fold(std::move(full), p));
}

CycInt cyc_add(CycInt const& x, CycInt const& y) { return x + y; }
CycInt cyc_mul(CycInt const& x, CycInt const& y) { return x * y; }

CycInt lambda_divide(CycInt const& x) {
    // Solving (1 - zeta) y = x in the power basis gives
    //   y_{p-2} = s = (sum x_i) / p,   y_i = (x_0 + ... + x_i) - (i+1) s.
    // This is the same element as x * prod_{i=2}^{p-1} (1 - zeta^i) / p.
    std::uint32_t const p = x.prime();
    mpz_class s = x.augmentation();
    if (!mpz_divisible_ui_p(s.get_mpz_t(), p))
        throw InputError("not divisible by (1 - zeta)");
    mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), p);
    std::vector<mpz_class> y(p - 1);
    mpz_class prefix = 0;
    for (std::uint32_t i = 0; i + 1 < p; ++i) {
        prefix += x.coeffs()[i];
        y[i] = prefix - s * (i + 1);
    }
    return CycInt::from_coeffs(p, std::move(y));
}

Valuation valuation(CycInt const& x) {
    if (x.is_zero())
        return Valuation::infinite();
    std::uint32_t const p = x.prime();
    mpz_class const pz = p;
    CycInt y = x;
    std::int64_t steps = 0;
    // p = unit * (1 - zeta)^{p-1}: strip whole powers of p first.
    while (y.divisible_by(pz)) {
        y = y.divided_exactly(pz);
        steps += p - 1;
    }
    while (mpz_divisible_ui_p(y.augmentation().get_mpz_t(), p)) {
        y = lambda_divide(y);
        ++steps;
    }
    return Valuation::finite(Rational(steps, p - 1));
}

double complex_abs(CycInt const& x, std::uint32_t k) {
    std::uint32_t const p = x.prime();
    if (k == 0 || k >= p)
        throw InputError("embedding index must be in [1, p-1]");
    double re = 0, im = 0;
    for (std::uint32_t i = 0; i + 1 < p; ++i) {
        double const c = x.coeffs()[i].get_d();
        double const angle = 2.0 * std::numbers::pi * double((std::uint64_t(k) * i) % p) / double(p);
        re += c * std::cos(angle);
        im += c * std::sin(angle);
    }
    return std::hypot(re, im);
}

} // namespace lpoly
