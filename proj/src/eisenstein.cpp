#include "lpoly/eisenstein.hpp"

#include <algorithm>
#include <array>

#include <gmp.h>

#include "lpoly/errors.hpp"

namespace lpoly {

using Digit = PiAdic::Digit;
using Units = PiAdic::Units;

namespace {

constexpr Digit kOne = 1;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

Digit ipow(std::uint32_t p, std::uint32_t e) {
    Digit r = 1;
    for (std::uint32_t i = 0; i < e; ++i)
        r *= p;
    return r;
}

/* 256-bit accumulator as four 64-bit limbs, little endian. */
struct Acc256 {
    std::array<mp_limb_t, 4> limb{};

    void add(Digit lo, Digit hi) {
        unsigned __int128 s = (unsigned __int128)limb[0] + (std::uint64_t)lo;
        limb[0] = (mp_limb_t)s;
        s = (s >> 64) + limb[1] + (std::uint64_t)(lo >> 64);
        limb[1] = (mp_limb_t)s;
        s = (s >> 64) + limb[2] + (std::uint64_t)hi;
        limb[2] = (mp_limb_t)s;
        s = (s >> 64) + limb[3] + (std::uint64_t)(hi >> 64);
        limb[3] = (mp_limb_t)s;
    }

    void add_product(Digit a, Digit b) {
        std::uint64_t const a0 = (std::uint64_t)a, a1 = (std::uint64_t)(a >> 64);
        std::uint64_t const b0 = (std::uint64_t)b, b1 = (std::uint64_t)(b >> 64);
        if ((a1 | b1) == 0) {
            add((Digit)a0 * b0, 0);
            return;
        }
        Digit const p00 = (Digit)a0 * b0;
        Digit const p01 = (Digit)a0 * b1;
        Digit const p10 = (Digit)a1 * b0;
        Digit const p11 = (Digit)a1 * b1;
        Digit const mid = p01 + p10;
        Digit const mid_carry = mid < p01 ? 1 : 0;
        Digit lo = p00 + (mid << 64);
        Digit const lo_carry = lo < p00 ? 1 : 0;
        Digit hi = p11 + (mid >> 64) + (mid_carry << 64) + lo_carry;
        add(lo, hi);
    }

    Digit mod(Digit m) const {
        mp_limb_t d[2] = {(mp_limb_t)m, (mp_limb_t)(m >> 64)};
        mp_size_t const dn = d[1] ? 2 : 1;
        mp_size_t nn = 4;
        while (nn > 0 && limb[nn - 1] == 0)
            --nn;
        if (nn < dn) {
            Digit v = (Digit)limb[0] | ((Digit)limb[1] << 64);
            return v % m;
        }
        mp_limb_t q[4];
        mp_limb_t r[2] = {0, 0};
        mpn_tdiv_qr(q, r, 0, limb.data(), nn, d, dn);
        return (Digit)r[0] | (dn == 2 ? ((Digit)r[1] << 64) : 0);
    }

    void reset_to(Digit v) {
        limb = {(mp_limb_t)v, (mp_limb_t)(v >> 64), 0, 0};
    }
};

Digit mulmod(Digit a, Digit b, Digit m) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
        return ((Digit)(std::uint64_t)a * (std::uint64_t)b) % m;
    Acc256 acc;
    acc.add_product(a, b);
    return acc.mod(m);
}

Digit powmod(Digit a, std::uint64_t e, Digit m) {
    Digit r = 1 % m, b = a % m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

Digit reduce_signed(std::int64_t n, Digit m) {
    if (n >= 0)
        return Digit(std::uint64_t(n)) % m;
    Digit const r = Digit(std::uint64_t(-(n + 1)) + 1) % m;
    return r == 0 ? 0 : m - r;
}

/* Inverse of a unit modulo m = p^K by Newton iteration x <- x (2 - a x). */
Digit inverse_mod(Digit a, std::uint32_t p, Digit m) {
    Digit x = powmod(a % p, p - 2, p); // inverse mod p
    Digit modulus = p;
    while (modulus < m) {
        modulus = (modulus > m / modulus) ? m : modulus * modulus;
        Digit const ax = mulmod(a % modulus, x, modulus);
        Digit const two_minus = (2 + modulus - ax) % modulus;
        x = mulmod(x, two_minus, modulus);
    }
    return x % m;
}

int ord_digit(Digit c, std::uint32_t p) {
    int v = 0;
    while (c != 0 && c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

std::string digit_to_string(Digit v) {
    if (v == 0)
        return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace

int ord_p(std::int64_t n, std::uint32_t p) {
    if (n == 0)
        throw InputError("ord_p(0)");
    int v = 0;
    while (n % static_cast<std::int64_t>(p) == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint32_t max_digits(std::uint32_t p) {
    std::uint32_t K = 0;
    Digit v = 1;
    Digit const limit = kOne << 125;
    while (v <= limit / p && v * p < limit) {
        v *= p;
        ++K;
    }
    return K;
}

PiAdic::PiAdic(std::uint32_t p, std::uint32_t K, Digit pk) : p_(p), K_(K), pk_(pk), c_(p - 1, 0) {}

PiAdic::PiAdic(std::uint32_t p, std::uint32_t K) : PiAdic(p, K, Digit(0)) {
    if (p < 3)
        throw InputError("Eisenstein arithmetic requires an odd prime");
    if (K < 1 || K > max_digits(p))
        throw ComputeError("precision budget exceeded: K = " + std::to_string(K) + " digits not supported for p = " +
                           std::to_string(p));
    pk_ = ipow(p, K);
    normalize();
}

PiAdic PiAdic::from_int(std::uint32_t p, std::uint32_t K, std::int64_t n) {
    PiAdic x(p, K);
    if (n == 0)
        return x;
    int const t = ord_p(n, p);
    std::int64_t u = n;
    for (int i = 0; i < t; ++i)
        u /= static_cast<std::int64_t>(p);
    x.c_[0] = reduce_signed(u, x.pk_);
    x.shift_ = t;
    x.prec_ = kExact;
    x.normalize();
    return x;
}

PiAdic PiAdic::pi(std::uint32_t p, std::uint32_t K) { return pi_power(p, K, 1); }

PiAdic PiAdic::pi_power(std::uint32_t p, std::uint32_t K, std::int64_t e) {
    PiAdic x(p, K);
    std::int64_t const q = floor_div(e, p - 1);
    std::int64_t const r = e - q * (p - 1);
    // pi^e = pi^r * pi^{(p-1) q} = (-1)^q p^q pi^r
    x.c_[r] = (q % 2 == 0) ? 1 : x.pk_ - 1;
    x.shift_ = q;
    x.prec_ = kExact;
    x.normalize();
    return x;
}

PiAdic PiAdic::from_coeffs(std::uint32_t p, std::uint32_t K, std::vector<std::int64_t> const& c,
                           std::int64_t shift, Units prec) {
    PiAdic x(p, K);
    if (c.size() != p - 1)
        throw InputError("pi-adic element needs exactly p-1 coefficients");
    for (std::size_t i = 0; i < c.size(); ++i)
        x.c_[i] = reduce_signed(c[i], x.pk_);
    x.shift_ = shift;
    x.prec_ = prec;
    x.normalize();
    return x;
}

PiAdic PiAdic::from_digits(std::uint32_t p, std::uint32_t K, std::vector<Digit> c, std::int64_t shift,
                           Units prec) {
    PiAdic x(p, K);
    if (c.size() != p - 1)
        throw InputError("pi-adic element needs exactly p-1 coefficients");
    for (auto& v : c)
        v %= x.pk_;
    x.c_ = std::move(c);
    x.shift_ = shift;
    x.prec_ = prec;
    x.normalize();
    return x;
}

void PiAdic::normalize() {
    Units const pm1 = p_ - 1;
    prec_ = std::min({prec_, kExact, coverage()});

    // Clear digits at unit positions >= prec.
    for (std::uint32_t i = 0; i + 1 < p_; ++i) {
        std::int64_t const keep = ceil_div(prec_ - Units(i), pm1) - shift_;
        if (keep <= 0)
            c_[i] = 0;
        else if (keep < std::int64_t(K_))
            c_[i] %= ipow(p_, std::uint32_t(keep));
    }

    bool const zero = std::all_of(c_.begin(), c_.end(), [](Digit v) { return v == 0; });
    if (zero) {
        shift_ = ceil_div(prec_, pm1);
        val_ = prec_;
        return;
    }
    for (;;) {
        bool all_divisible = true;
        for (Digit v : c_)
            if (v % p_ != 0) {
                all_divisible = false;
                break;
            }
        if (!all_divisible)
            break;
        for (auto& v : c_)
            v /= p_;
        ++shift_;
    }
    val_ = prec_;
    for (std::uint32_t i = 0; i + 1 < p_; ++i)
        if (c_[i] != 0)
            val_ = std::min(val_, pm1 * (shift_ + ord_digit(c_[i], p_)) + Units(i));
}

bool PiAdic::is_zero() const { return val_ >= prec_; }

Valuation PiAdic::valuation() const {
    if (!is_zero())
        return Valuation::finite(Rational(val_, p_ - 1));
    if (prec_ >= kExact)
        return Valuation::infinite();
    return Valuation::at_least(Rational(prec_, p_ - 1));
}

PiAdic& PiAdic::operator+=(PiAdic const& o) {
    if (p_ != o.p_ || K_ != o.K_)
        throw InputError("pi-adic operands with different p or K");
    if (o.is_zero()) {
        prec_ = std::min(prec_, o.prec_);
        normalize();
        return *this;
    }
    if (is_zero()) {
        Units const pr = std::min(prec_, o.prec_);
        *this = o;
        prec_ = pr;
        normalize();
        return *this;
    }
    std::int64_t const s = std::min(shift_, o.shift_);
    std::int64_t const da = shift_ - s, db = o.shift_ - s;
    Digit const fa = da >= std::int64_t(K_) ? 0 : ipow(p_, std::uint32_t(da));
    Digit const fb = db >= std::int64_t(K_) ? 0 : ipow(p_, std::uint32_t(db));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        Digit const a = fa == 1 ? c_[i] : mulmod(c_[i], fa, pk_);
        Digit const b = fb == 1 ? o.c_[i] : mulmod(o.c_[i], fb, pk_);
        Digit sum = a + b;
        if (sum >= pk_)
            sum -= pk_;
        c_[i] = sum;
    }
    shift_ = s;
    prec_ = std::min(prec_, o.prec_);
    normalize();
    return *this;
}

PiAdic PiAdic::operator-() const {
    PiAdic r = *this;
    for (auto& v : r.c_)
        v = v == 0 ? 0 : pk_ - v;
    r.normalize();
    return r;
}

PiAdic& PiAdic::operator-=(PiAdic const& o) { return *this += -o; }

PiAdic operator*(PiAdic const& a, PiAdic const& b) { return PiAdic::dot({&a}, {&b}); }

PiAdic PiAdic::dot(std::vector<PiAdic const*> const& a, std::vector<PiAdic const*> const& b) {
    if (a.empty() || a.size() != b.size())
        throw InputError("dot product needs equally many nonempty operands");
    std::uint32_t const p = a[0]->p_;
    std::uint32_t const K = a[0]->K_;
    Units const pm1 = p - 1;

    // Precision of the sum and the terms that survive it.
    Units prec = kExact;
    for (std::size_t t = 0; t < a.size(); ++t) {
        PiAdic const& x = *a[t];
        PiAdic const& y = *b[t];
        if (x.p_ != p || y.p_ != p || x.K_ != K || y.K_ != K)
            throw InputError("pi-adic operands with different p or K");
        prec = std::min(prec, std::min(x.prec_ + y.val_, y.prec_ + x.val_));
    }
    prec = std::min(prec, kExact);

    std::int64_t base_shift = 0;
    bool any = false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        PiAdic const& x = *a[t];
        PiAdic const& y = *b[t];
        if (x.is_zero() || y.is_zero() || x.val_ + y.val_ >= prec)
            continue;
        std::int64_t const s = x.shift_ + y.shift_;
        base_shift = any ? std::min(base_shift, s) : s;
        any = true;
    }

    PiAdic r(p, K, a[0]->pk_);
    if (!any) {
        r.prec_ = prec;
        r.normalize();
        return r;
    }
    Digit const pk = r.pk_;

    std::vector<Acc256> lo(p - 1), hi(p - 1);
    int pending = 0;
    int const max_pending = (pk >> 62) == 0 ? 1 << 30 : 32;
    std::vector<Digit> scaled(p - 1);

    for (std::size_t t = 0; t < a.size(); ++t) {
        PiAdic const& x = *a[t];
        PiAdic const& y = *b[t];
        if (x.is_zero() || y.is_zero() || x.val_ + y.val_ >= prec)
            continue;
        std::int64_t const delta = x.shift_ + y.shift_ - base_shift;
        if (delta >= std::int64_t(K))
            continue;
        Digit const f = ipow(p, std::uint32_t(delta));
        for (std::uint32_t i = 0; i + 1 < p; ++i)
            scaled[i] = f == 1 ? x.c_[i] : mulmod(x.c_[i], f, pk);
        for (std::uint32_t i = 0; i + 1 < p; ++i) {
            if (scaled[i] == 0)
                continue;
            for (std::uint32_t j = 0; j + 1 < p; ++j) {
                if (y.c_[j] == 0)
                    continue;
                std::uint32_t const k = i + j;
                if (k < p - 1)
                    lo[k].add_product(scaled[i], y.c_[j]);
                else
                    hi[k - (p - 1)].add_product(scaled[i], y.c_[j]);
            }
        }
        pending += int(p - 1);
        if (pending >= max_pending) {
            for (std::uint32_t k = 0; k + 1 < p; ++k) {
                lo[k].reset_to(lo[k].mod(pk));
                hi[k].reset_to(hi[k].mod(pk));
            }
            pending = 0;
        }
    }
    // pi^{p-1+k} = -p pi^k
    for (std::uint32_t k = 0; k + 1 < p; ++k) {
        Digit const l = lo[k].mod(pk);
        Digit const h = mulmod(hi[k].mod(pk), p, pk);
        r.c_[k] = l >= h ? l - h : pk - (h - l);
    }
    r.shift_ = base_shift;
    r.prec_ = std::min(prec, pm1 * (base_shift + K));
    r.normalize();
    return r;
}

PiAdic PiAdic::times_int(std::int64_t n) const {
    if (n == 0)
        return PiAdic(p_, K_).truncated(prec_ + kExact);
    int const t = ord_p(n, p_);
    std::int64_t u = n;
    for (int i = 0; i < t; ++i)
        u /= static_cast<std::int64_t>(p_);
    PiAdic r = *this;
    Digit const uu = reduce_signed(u, pk_);
    for (auto& v : r.c_)
        v = mulmod(v, uu, pk_);
    r.shift_ += t;
    r.prec_ = std::min(prec_ + Units(p_ - 1) * t, kExact);
    r.normalize();
    return r;
}

PiAdic PiAdic::div_int(std::int64_t n) const {
    if (n == 0)
        throw InputError("pi-adic division by zero");
    int const t = ord_p(n, p_);
    std::int64_t u = n;
    for (int i = 0; i < t; ++i)
        u /= static_cast<std::int64_t>(p_);
    Units const new_prec = prec_ >= kExact ? kExact : prec_ - Units(p_ - 1) * t;
    if (new_prec < 0)
        throw ComputeError("precision budget exceeded: division by " + std::to_string(n) +
                           " leaves negative known precision");
    PiAdic r = *this;
    Digit const inv = inverse_mod(reduce_signed(u, pk_), p_, pk_);
    for (auto& v : r.c_)
        v = mulmod(v, inv, pk_);
    r.shift_ -= t;
    r.prec_ = new_prec;
    r.normalize();
    return r;
}

PiAdic PiAdic::times_pi() const {
    PiAdic r = *this;
    std::uint32_t const n = p_ - 1;
    Digit const top = c_[n - 1];
    for (std::uint32_t i = n - 1; i > 0; --i)
        r.c_[i] = c_[i - 1];
    Digit const t = mulmod(top, p_, pk_);
    r.c_[0] = t == 0 ? 0 : pk_ - t;
    r.prec_ = std::min(prec_ + 1, kExact);
    r.normalize();
    return r;
}

PiAdic PiAdic::div_pi() const {
    PiAdic r = *this;
    std::uint32_t const n = p_ - 1;
    Digit const c0 = c_[0];
    if (c0 % p_ == 0) {
        for (std::uint32_t i = 1; i < n; ++i)
            r.c_[i - 1] = c_[i];
        Digit const q = c0 / p_;
        r.c_[n - 1] = q == 0 ? 0 : pk_ - q;
    } else {
        for (std::uint32_t i = 1; i < n; ++i)
            r.c_[i - 1] = mulmod(c_[i], p_, pk_);
        r.c_[n - 1] = pk_ - c0;
        r.shift_ -= 1;
    }
    r.prec_ = prec_ >= kExact ? kExact : prec_ - 1;
    r.normalize();
    return r;
}

PiAdic PiAdic::truncated(Units prec) const {
    PiAdic r = *this;
    r.prec_ = std::min(prec_, prec);
    r.normalize();
    return r;
}

PiAdic PiAdic::resized(std::uint32_t K) const {
    PiAdic r(p_, K);
    r.shift_ = shift_;
    r.prec_ = prec_;
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = c_[i] % r.pk_;
    r.normalize();
    return r;
}

bool PiAdic::agrees_with(PiAdic const& other, Units units) const {
    if (prec_ < units || other.prec_ < units)
        return false;
    if (other.K_ != K_) {
        std::uint32_t const k = std::max(K_, other.K_);
        return resized(k).agrees_with(other.resized(k), units);
    }
    return (*this - other).valuation_units() >= units;
}

std::string PiAdic::debug_string() const {
    Units const pm1 = p_ - 1;
    Units const end = std::min(prec_, coverage());
    Units const start = std::min<Units>(0, pm1 * shift_);
    std::string s = "p=" + std::to_string(p_) + " K=" + std::to_string(K_) + " [" + std::to_string(start) + ":] ";
    for (Units u = start; u < end; ++u) {
        std::int64_t const j = floor_div(u, pm1);
        std::uint32_t const i = std::uint32_t(u - j * pm1);
        std::int64_t const rel = j - shift_;
        Digit digit = 0;
        if (rel >= 0 && rel < std::int64_t(K_))
            digit = (c_[i] / ipow(p_, std::uint32_t(rel))) % p_;
        s += digit_to_string(digit);
        s += u + 1 < end ? " " : "";
    }
    s += " + O(pi^" + (prec_ >= kExact ? std::string("inf") : std::to_string(prec_)) + ")";
    return s;
}

PiAdic pi_add(PiAdic const& x, PiAdic const& y) { return x + y; }
PiAdic pi_mul(PiAdic const& x, PiAdic const& y) { return x * y; }
PiAdic pi_div_int(PiAdic const& x, std::int64_t n) { return x.div_int(n); }
Valuation pi_valuation(PiAdic const& x) { return x.valuation(); }

Digit teichmuller_residue(std::uint32_t p, std::int64_t a, std::uint32_t K) {
    Digit const m = ipow(p, K);
    Digit x = reduce_signed(a, p);
    // Each step x <- x^p fixes one more p-adic digit.
    for (std::uint32_t i = 1; i < K; ++i)
        x = powmod(x, p, ipow(p, i + 1));
    return x % m;
}

PiAdic teichmuller(std::uint32_t p, std::int64_t a, std::uint32_t K) {
    std::vector<Digit> c(p - 1, 0);
    c[0] = teichmuller_residue(p, a, K);
    return PiAdic::from_digits(p, K, std::move(c), 0, PiAdic::kExact);
}

Rational PrecisionCertificate::target() const {
    Rational t = initial;
    for (auto const& l : losses)
        t -= l.amount;
    return t;
}

void PrecisionCertificate::record(std::string source, Rational achieved) {
    Rational const running = target();
    if (achieved < running)
        losses.push_back({std::move(source), running - achieved});
}

std::vector<PiAdic> theta_coeffs(std::uint32_t p, std::size_t i_max, std::uint32_t K, PrecisionCertificate* cert) {
    if (cert && cert->losses.empty() && cert->initial == Rational(0))
        cert->initial = Rational(K);
    std::vector<PiAdic> b;
    b.reserve(i_max + 1);
    b.push_back(PiAdic::from_int(p, K, 1));
    for (std::size_t i = 1; i <= i_max; ++i) {
        PiAdic rhs = b[i - 1].times_pi();
        if (i >= p)
            rhs -= b[i - p].times_pi().times_int(p);
        b.push_back(rhs.div_int(static_cast<std::int64_t>(i)));
        if (cert && i % p == 0)
            cert->record("theta: division by " + std::to_string(i), b.back().known_prec());
    }
    return b;
}

} // namespace lpoly
