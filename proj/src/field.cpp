#include "lpoly/field.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "lpoly/errors.hpp"

namespace lpoly {

namespace {

using Poly = std::vector<std::uint64_t>; // ascending, over F_p

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

Poly poly_mod(Poly a, Poly const& m, std::uint64_t p) {
    trim(a);
    std::size_t const dm = m.size() - 1;
    std::uint64_t const lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        std::uint64_t const c = a.back() * lead_inv % p;
        std::size_t const shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j)
            a[shift + j] = (a[shift + j] + (p - c) * m[j]) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(Poly const& a, Poly const& b, Poly const& m, std::uint64_t p) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, Poly const& m, std::uint64_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1)
            result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(x^{p^i} - x, f) = 1, i <= k/2.
bool is_irreducible(Poly const& f, std::uint64_t p) {
    std::size_t const k = f.size() - 1;
    Poly x_power{0, 1};
    for (std::size_t i = 1; i <= k / 2; ++i) {
        x_power = poly_powmod(x_power, p, f, p);
        Poly diff = x_power;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty())
            return false;
        if (poly_gcd(f, diff, p).size() > 1)
            return false;
    }
    return true;
}

std::uint64_t checked_power(std::uint64_t p, std::uint64_t k, std::uint64_t ceiling) {
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (q > ceiling / p)
            return 0;
        q *= p;
    }
    return q;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool ExtElem::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](Residue c) { return c == 0; });
}

Field Field::build(std::uint32_t p, std::uint32_t k, std::uint64_t ceiling) {
    if (!is_prime(p))
        throw InputError("not prime: " + std::to_string(p));
    if (k < 1)
        throw InputError("extension degree must be >= 1");
    if (k > 32)
        throw ComputeError("field too large: extension degree above 32");
    std::uint64_t const order = checked_power(p, k, ceiling);
    if (order == 0)
        throw ComputeError("field too large: " + std::to_string(p) + "^" + std::to_string(k) +
                           " exceeds enumeration ceiling " + std::to_string(ceiling));

    Field field;
    field.p_ = p;
    field.k_ = k;
    field.order_ = order;
    field.ceiling_ = ceiling;

    if (k == 1) {
        field.modulus_ = {0, 1};
    } else {
        // Candidates c_0..c_{k-1} with c_0 the most significant digit.
        for (std::uint64_t idx = 0; idx < order; ++idx) {
            Poly f(k + 1, 0);
            std::uint64_t rest = idx;
            for (std::uint32_t j = k; j-- > 0;) {
                f[j] = rest % p;
                rest /= p;
            }
            f[k] = 1;
            if (f[0] != 0 && is_irreducible(f, p)) {
                field.modulus_.assign(f.begin(), f.end());
                break;
            }
        }
        if (field.modulus_.empty())
            throw InternalError("no irreducible polynomial found");
    }

    field.trace_form_.resize(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        ExtElem basis = field.zero();
        basis.coeffs[j] = 1;
        field.trace_form_[j] = trace_to_prime(field, basis);
    }
    return field;
}

Field build_field(std::uint32_t p, std::uint32_t k, std::uint64_t ceiling) {
    return Field::build(p, k, ceiling);
}

ExtElem Field::zero() const { return ExtElem{std::vector<Residue>(k_, 0)}; }

ExtElem Field::one() const {
    ExtElem e = zero();
    e.coeffs[0] = 1;
    return e;
}

ExtElem Field::generator() const {
    if (k_ == 1)
        return from_prime(static_cast<std::int64_t>(p_ - modulus_[0]) % p_);
    ExtElem e = zero();
    e.coeffs[1] = 1;
    return e;
}

ExtElem Field::from_prime(std::int64_t c) const {
    ExtElem e = zero();
    std::int64_t const r = c % static_cast<std::int64_t>(p_);
    e.coeffs[0] = static_cast<Residue>(r < 0 ? r + p_ : r);
    return e;
}

ExtElem Field::from_index(std::uint64_t index) const {
    if (index >= order_)
        throw InputError("element index " + std::to_string(index) + " out of range for field of order " +
                         std::to_string(order_));
    ExtElem e = zero();
    for (std::uint32_t j = 0; j < k_; ++j) {
        e.coeffs[j] = static_cast<Residue>(index % p_);
        index /= p_;
    }
    return e;
}

std::uint64_t Field::index(ExtElem const& x) const {
    std::uint64_t idx = 0;
    for (std::uint32_t j = k_; j-- > 0;)
        idx = idx * p_ + x.coeffs[j];
    return idx;
}

bool Field::contains(ExtElem const& x) const {
    return x.coeffs.size() == k_ &&
           std::all_of(x.coeffs.begin(), x.coeffs.end(), [&](Residue c) { return c < p_; });
}

ExtElem Field::add(ExtElem const& a, ExtElem const& b) const {
    ExtElem r = zero();
    for (std::uint32_t j = 0; j < k_; ++j)
        r.coeffs[j] = (a.coeffs[j] + b.coeffs[j]) % p_;
    return r;
}

ExtElem Field::sub(ExtElem const& a, ExtElem const& b) const {
    ExtElem r = zero();
    for (std::uint32_t j = 0; j < k_; ++j)
        r.coeffs[j] = (a.coeffs[j] + p_ - b.coeffs[j]) % p_;
    return r;
}

ExtElem Field::neg(ExtElem const& a) const { return sub(zero(), a); }

void Field::mul_into(std::span<Residue const> a, std::span<Residue const> b,
                     std::span<Residue> out) const {
    // Schoolbook product into 2k-1 slots, then fold the top down with the
    // monic modulus: t^k = -(m_0 + ... + m_{k-1} t^{k-1}).
    std::uint64_t prod[64];
    std::uint64_t const p = p_;
    std::size_t const n = 2 * k_ - 1;
    std::fill(prod, prod + n, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (a[i] == 0)
            continue;
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
    for (std::size_t top = n; top-- > k_;) {
        std::uint64_t const c = prod[top];
        if (c == 0)
            continue;
        std::size_t const shift = top - k_;
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[shift + j] = (prod[shift + j] + (p - c) * modulus_[j]) % p;
    }
    for (std::uint32_t j = 0; j < k_; ++j)
        out[j] = static_cast<Residue>(prod[j]);
}

ExtElem Field::mul(ExtElem const& a, ExtElem const& b) const {
    ExtElem r = zero();
    mul_into(a.coeffs, b.coeffs, r.coeffs);
    return r;
}

ExtElem Field::pow(ExtElem const& a, std::uint64_t e) const {
    ExtElem result = one();
    ExtElem base = a;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

ExtElem Field::inv(ExtElem const& a) const {
    if (a.is_zero())
        throw InputError("inverse of zero");
    return pow(a, order_ - 2);
}

Residue Field::trace_of(std::span<Residue const> x) const {
    std::uint64_t acc = 0;
    for (std::uint32_t j = 0; j < k_; ++j)
        acc = (acc + std::uint64_t(x[j]) * trace_form_[j]) % p_;
    return static_cast<Residue>(acc);
}

Residue Field::trace(ExtElem const& x) const { return trace_of(x.coeffs); }

Residue trace_to_prime(Field const& field, ExtElem const& x) {
    ExtElem acc = field.zero();
    ExtElem conj = x;
    for (std::uint32_t i = 0; i < field.degree(); ++i) {
        acc = field.add(acc, conj);
        conj = field.frobenius(conj);
    }
    for (std::uint32_t j = 1; j < field.degree(); ++j)
        if (acc.coeffs[j] != 0)
            throw InternalError("trace left the prime field");
    return acc.coeffs[0];
}

FieldElements::iterator::iterator(std::uint32_t p, std::uint32_t k, std::uint64_t position)
    : p_(p), position_(position), current_{std::vector<Residue>(k, 0)} {}

FieldElements::iterator& FieldElements::iterator::operator++() {
    ++position_;
    for (auto& c : current_.coeffs) {
        if (++c < p_)
            break;
        c = 0;
    }
    return *this;
}

FieldElements::FieldElements(Field const& field)
    : p_(field.characteristic()), k_(field.degree()), order_(field.order()) {}

FieldElements enumerate_field(Field const& field) {
    if (field.order() > field.ceiling())
        throw ComputeError("field too large to enumerate");
    return FieldElements(field);
}

PolySpec make_poly(Field const& field, std::vector<ExtElem> coeffs) {
    if (coeffs.empty())
        throw InputError("polynomial has no coefficients");
    for (auto const& c : coeffs)
        if (!field.contains(c))
            throw InputError("coefficient is not an element of the base field");
    if (coeffs.back().is_zero())
        throw InputError("leading coefficient must be nonzero");
    if (coeffs.size() >= field.characteristic())
        throw InputError("degree must be < p (degree " + std::to_string(coeffs.size()) + ", p = " +
                         std::to_string(field.characteristic()) + ")");
    return PolySpec{field, std::move(coeffs)};
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
    std::vector<std::int64_t> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t const comma = std::min(text.find(',', pos), text.size());
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty() && item.front() == '+')
            item.remove_prefix(1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw InputError("malformed integer list: '" + std::string(text) + "'");
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

PolySpec parse_poly(Field const& field, std::string_view text) {
    std::vector<ExtElem> coeffs;
    for (std::int64_t v : parse_int_list(text)) {
        if (field.degree() == 1 || v < 0)
            coeffs.push_back(field.from_prime(v));
        else
            coeffs.push_back(field.from_index(static_cast<std::uint64_t>(v)));
    }
    return make_poly(field, std::move(coeffs));
}

PolySpec poly_from_pattern(std::vector<std::int64_t> const& pattern, Field const& prime_field) {
    std::size_t d = pattern.size();
    while (d > 0 && pattern[d - 1] == 0)
        --d;
    if (d > 0 && pattern[d - 1] % std::int64_t(prime_field.characteristic()) == 0)
        throw InputError("pattern loses its leading term mod " + std::to_string(prime_field.characteristic()));
    std::vector<ExtElem> coeffs;
    for (std::size_t j = 0; j < d; ++j)
        coeffs.push_back(prime_field.from_prime(pattern[j]));
    return make_poly(prime_field, std::move(coeffs));
}

Embedding::Embedding(Field const& base, Field const& ext) : ext_(&ext) {
    if (base.characteristic() != ext.characteristic() || ext.degree() % base.degree() != 0)
        throw InputError("field mismatch: extension does not contain the base field");
    std::uint32_t const k = base.degree();
    ExtElem root;
    if (base == ext) {
        root = ext.generator();
    } else if (k == 1) {
        root = ext.from_prime(static_cast<std::int64_t>(ext.characteristic() - base.modulus()[0]));
    } else {
        // Smallest-index root of the base modulus. Any root gives a
        // Frobenius-conjugate embedding, which leaves traces unchanged.
        bool found = false;
        for (ExtElem const& x : FieldElements(ext)) {
            ExtElem acc = ext.zero();
            for (std::size_t j = base.modulus().size(); j-- > 0;)
                acc = ext.add(ext.mul(acc, x), ext.from_prime(base.modulus()[j]));
            if (acc.is_zero()) {
                root = x;
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalError("base modulus has no root in extension");
    }
    ExtElem power = ext.one();
    for (std::uint32_t j = 0; j < k; ++j) {
        basis_images_.push_back(power);
        power = ext.mul(power, root);
    }
}

ExtElem Embedding::operator()(ExtElem const& a) const {
    ExtElem r = ext_->zero();
    for (std::size_t j = 0; j < basis_images_.size(); ++j) {
        if (a.coeffs[j] == 0)
            continue;
        ExtElem term = ext_->mul(ext_->from_prime(a.coeffs[j]), basis_images_[j]);
        r = ext_->add(r, term);
    }
    return r;
}

ExtElem eval_poly(PolySpec const& f, Field const& ext, ExtElem const& x) {
    if (!ext.contains(x))
        throw InputError("field mismatch: point is not an element of the extension");
    Embedding embed(f.field, ext);
    ExtElem acc = ext.zero();
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        acc = ext.mul(ext.add(acc, embed(f.coeffs[i])), x);
    return acc;
}

} // namespace lpoly
