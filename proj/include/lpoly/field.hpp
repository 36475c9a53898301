#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <string_view>
#include <vector>

namespace lpoly {

using Residue = std::uint32_t;

/* Default bound on the number of elements of a field we are willing to
 * enumerate (one exponential sum walks the whole field once). */
inline constexpr std::uint64_t kDefaultCeiling = 100'000'000;

bool is_prime(std::uint64_t n);

/* Element of F_{p^k} in the power basis 1, t, ..., t^{k-1} of
 * F_p[t]/(modulus). Coefficients are reduced residues. */
struct ExtElem {
    std::vector<Residue> coeffs;

    bool operator==(ExtElem const&) const = default;
    bool is_zero() const;
};

/* F_{p^k} realized as F_p[t]/(modulus) where modulus is the smallest monic
 * irreducible of degree k, coefficients compared from the constant term
 * upwards. Immutable once built. */
class Field {
public:
    /* Throws InputError("not prime") or ComputeError("field too large"). */
    static Field build(std::uint32_t p, std::uint32_t k,
                       std::uint64_t ceiling = kDefaultCeiling);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t ceiling() const { return ceiling_; }

    /* Ascending, monic, size degree()+1. */
    std::vector<Residue> const& modulus() const { return modulus_; }

    bool operator==(Field const& other) const {
        return p_ == other.p_ && modulus_ == other.modulus_;
    }

    ExtElem zero() const;
    ExtElem one() const;
    ExtElem generator() const; // the class of t
    ExtElem from_prime(std::int64_t c) const;

    /* Index encoding: sum c_i p^i. Element order of enumerate_field. */
    ExtElem from_index(std::uint64_t index) const;
    std::uint64_t index(ExtElem const& x) const;

    bool contains(ExtElem const& x) const;

    ExtElem add(ExtElem const& a, ExtElem const& b) const;
    ExtElem sub(ExtElem const& a, ExtElem const& b) const;
    ExtElem neg(ExtElem const& a) const;
    ExtElem mul(ExtElem const& a, ExtElem const& b) const;
    ExtElem pow(ExtElem const& a, std::uint64_t e) const;
    ExtElem inv(ExtElem const& a) const; // throws InputError on zero
    ExtElem frobenius(ExtElem const& a) const { return pow(a, p_); }

    /* Absolute trace to F_p through the precomputed linear form. */
    Residue trace(ExtElem const& x) const;

    /* Allocation-free kernels on raw coefficient spans of length degree().
     * `out` may alias neither input. */
    void mul_into(std::span<Residue const> a, std::span<Residue const> b,
                  std::span<Residue> out) const;
    Residue trace_of(std::span<Residue const> x) const;

private:
    Field() = default;

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t order_ = 0;
    std::uint64_t ceiling_ = kDefaultCeiling;
    std::vector<Residue> modulus_;
    std::vector<Residue> trace_form_; // Tr(t^j), j < k
};

Field build_field(std::uint32_t p, std::uint32_t k,
                  std::uint64_t ceiling = kDefaultCeiling);

/* Sum_{i<k} x^{p^i}, computed literally by Frobenius powers. */
Residue trace_to_prime(Field const& field, ExtElem const& x);

/* Odometer over all p^k elements in index order (constant coefficient
 * varies fastest). */
class FieldElements {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = ExtElem;
        using difference_type = std::ptrdiff_t;
        using pointer = ExtElem const*;
        using reference = ExtElem const&;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(iterator const& o) const { return position_ == o.position_; }

    private:
        friend class FieldElements;
        iterator(std::uint32_t p, std::uint32_t k, std::uint64_t position);

        std::uint32_t p_ = 0;
        std::uint64_t position_ = 0;
        ExtElem current_;
    };

    explicit FieldElements(Field const& field);

    iterator begin() const { return iterator(p_, k_, 0); }
    iterator end() const { return iterator(p_, k_, order_); }
    std::uint64_t size() const { return order_; }

private:
    std::uint32_t p_;
    std::uint32_t k_;
    std::uint64_t order_;
};

/* Throws ComputeError("field too large") above the field's ceiling. */
FieldElements enumerate_field(Field const& field);

/* f = alpha_1 x + ... + alpha_d x^d over F_q, alpha_d != 0, d < p. */
struct PolySpec {
    Field field;
    std::vector<ExtElem> coeffs; // alpha_1 .. alpha_d

    int degree() const { return static_cast<int>(coeffs.size()); }
};

/* Validates alpha_d != 0 and d < p; throws InputError. */
PolySpec make_poly(Field const& field, std::vector<ExtElem> coeffs);

/* "a1,a2,...,ad": each integer is an element index of F_q (for q = p,
 * simply a residue; negative values are reduced mod p). */
PolySpec parse_poly(Field const& field, std::string_view text);

/* Integer pattern reduced mod p, over F_p. Trailing zero entries are dropped;
 * InputError when the leading entry vanishes mod p. */
PolySpec poly_from_pattern(std::vector<std::int64_t> const& pattern, Field const& prime_field);

std::vector<std::int64_t> parse_int_list(std::string_view text);

/* Image of the base-field element `a` in `ext`, through the smallest-index
 * root of the base modulus. Requires base degree | ext degree. */
class Embedding {
public:
    Embedding(Field const& base, Field const& ext);
    ExtElem operator()(ExtElem const& a) const;

private:
    Field const* ext_;
    std::vector<ExtElem> basis_images_; // images of t^j
};

/* Horner evaluation of f at x in an extension of f's base field.
 * Throws InputError on field mismatch. */
ExtElem eval_poly(PolySpec const& f, Field const& ext, ExtElem const& x);

} // namespace lpoly
