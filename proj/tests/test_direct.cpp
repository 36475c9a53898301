#include <doctest.h>

#include <cmath>
#include <random>

#include "lpoly/direct.hpp"
#include "lpoly/errors.hpp"
#include "test_support.hpp"

using namespace lpoly;
using lpoly::testing::cyc;
using lpoly::testing::poly;
using lpoly::testing::q;

namespace {

std::vector<Valuation> ords(std::vector<NewtonPoint> const& pts) {
    std::vector<Valuation> out;
    for (auto const& pt : pts)
        out.push_back(pt.ord);
    return out;
}

Valuation fin(std::int64_t a, std::int64_t b = 1) { return Valuation::finite(Rational(a, b)); }

} // namespace

// Expected values below were produced by the independent Python oracle in
// tests/oracles/direct_oracle.py (plain enumeration, no shared code).

TEST_CASE("x^2 over F_5") {
    LPolynomial const L = l_coeffs(poly(5, {0, 1}));
    CHECK(L.sums[0] == cyc(5, {-1, 0, -2, -2}));
    CHECK(L.coeffs[0] == L.sums[0]);
    CHECK(ords(newton_points(L)) == std::vector{fin(1, 2)});
}

TEST_CASE("x^3 over F_5: M_1 vanishes") {
    LPolynomial const L = l_coeffs(poly(5, {0, 0, 1}));
    CHECK(L.sums[0].is_zero());
    CHECK(L.sums[1] == cyc(5, {10}));
    CHECK(L.coeffs[1] == cyc(5, {5}));
    CHECK(ords(newton_points(L)) == std::vector{Valuation::infinite(), fin(1)});
}

TEST_CASE("x^3 + x over F_7") {
    LPolynomial const L = l_coeffs(poly(7, {1, 0, 1}));
    CHECK(L.sums[0] == cyc(7, {1, 0, 2, 1, 1, 2}));
    CHECK(L.sums[1] == cyc(7, {8, 0, -3, -1, -1, -3}));
    CHECK(L.coeffs[1] == cyc(7, {7}));
    CHECK(ords(newton_points(L)) == std::vector{fin(1, 3), fin(1)});
}

TEST_CASE("x^3 + x over F_5 and F_11") {
    LPolynomial const L5 = l_coeffs(poly(5, {1, 0, 1}));
    CHECK(L5.sums[0] == cyc(5, {3, 0, 1, 1}));
    CHECK(L5.sums[1] == cyc(5, {0, 0, -5, -5}));
    CHECK(L5.coeffs[1] == cyc(5, {5}));
    CHECK(ords(newton_points(L5)) == std::vector{fin(1, 2), fin(1)});

    LPolynomial const L11 = l_coeffs(poly(11, {1, 0, 1}));
    CHECK(L11.sums[0] == cyc(11, {0, 0, 2, 0, -1, -1, -1, -1, 0, 2}));
    CHECK(L11.coeffs[1] == cyc(11, {11}));
    CHECK(ords(newton_points(L11)) == std::vector{fin(2, 5), fin(1)});
}

TEST_CASE("x^4 over F_5") {
    LPolynomial const L = l_coeffs(poly(5, {0, 0, 0, 1}));
    CHECK(L.sums[0] == cyc(5, {1, 4}));
    CHECK(L.sums[1] == cyc(5, {-7, 0, -4, -4}));
    CHECK(L.sums[2] == cyc(5, {1, 12, -12, 4}));
    CHECK(L.coeffs[1] == cyc(5, {-3, 4, 6, -2}));
    CHECK(L.coeffs[2] == cyc(5, {5, 0, 10, 10}));
    CHECK(ords(newton_points(L)) == std::vector{fin(1, 4), fin(3, 4), fin(3, 2)});
}

TEST_CASE("x^4 + x over F_5 and F_7") {
    LPolynomial const L5 = l_coeffs(poly(5, {1, 0, 0, 1}));
    CHECK(L5.sums[0] == cyc(5, {1, -1}));
    CHECK(L5.coeffs[1] == cyc(5, {2, -1, 1, 3}));
    CHECK(L5.coeffs[2] == cyc(5, {5, 0, 10, 10}));
    CHECK(ords(newton_points(L5)) == std::vector{fin(1, 4), fin(3, 4), fin(3, 2)});

    LPolynomial const L7 = l_coeffs(poly(7, {1, 0, 0, 1}));
    CHECK(L7.coeffs[0] == cyc(7, {4, 1, 1, 0, 1, 0}));
    CHECK(L7.coeffs[1] == cyc(7, {7, 7, 7, 0, 7, 0}));
    CHECK(L7.coeffs[2] == cyc(7, {7, 14, 14, 0, 14, 0}));
    CHECK(ords(newton_points(L7)) == std::vector{fin(1, 2), fin(1), fin(3, 2)});
}

TEST_CASE("x^3 + 3x^2 + 2x over F_11") {
    LPolynomial const L = l_coeffs(poly(11, {2, 3, 1}));
    CHECK(L.sums[0] == cyc(11, {2, 0, 0, -1, -1, 1, 1, -1, -1, 0}));
    CHECK(ords(newton_points(L)) == std::vector{fin(2, 5), fin(1)});
}

TEST_CASE("quintic over F_7") {
    LPolynomial const L = l_coeffs(poly(7, {1, 2, 0, 3, 1}));
    CHECK(L.sums[0] == cyc(7, {1, 1, -1, 1, -1, -1}));
    CHECK(L.coeffs[1] == cyc(7, {2, 3, 3, 2, 0, -3}));
    CHECK(L.coeffs[2] == cyc(7, {14, 0, 14, 14, 7, 0}));
    CHECK(L.coeffs[3] == cyc(7, {0, 0, 0, 49, 0, 0}));
    CHECK(ords(newton_points(L)) == std::vector{fin(1, 2), fin(2, 3), fin(3, 2), fin(2)});
}

TEST_CASE("extension fields: ord_q = ord_p / m") {
    Field const f9 = build_field(3, 2);
    LPolynomial const L9 = l_coeffs(parse_poly(f9, "0,3")); // t x^2
    CHECK(L9.sums[0] == cyc(3, {3, 0}));
    CHECK(ords(newton_points(L9)) == std::vector{fin(1, 2)});

    Field const f25 = build_field(5, 2);
    LPolynomial const L25 = l_coeffs(parse_poly(f25, "5,0,1")); // x^3 + t x
    CHECK(L25.sums[0] == cyc(5, {0, 0, -5, -5}));
    CHECK(L25.sums[1] == cyc(5, {25, 0, 25, 25}));
    CHECK(L25.coeffs[1] == cyc(5, {25}));
    CHECK(ords(newton_points(L25)) == std::vector{fin(1, 2), fin(1)});
}

TEST_CASE("S_r over F_{p^m} equals S_{mr} over F_p for f defined over F_p") {
    for (auto [p, m] : {std::pair{5u, 2u}, {7u, 2u}, {3u, 3u}}) {
        Field const base = build_field(p, 1);
        Field const ext = build_field(p, m);
        Embedding const emb(base, ext);
        std::vector<std::int64_t> const pat = p == 3 ? std::vector<std::int64_t>{1, 1} : std::vector<std::int64_t>{1, 0, 1};
        PolySpec const f = poly_from_pattern(pat, base);
        std::vector<ExtElem> lifted;
        for (auto const& c : f.coeffs)
            lifted.push_back(emb(c));
        PolySpec const g = make_poly(ext, lifted);
        for (int r = 1; r <= 2; ++r)
            CHECK(exp_sum(g, r) == exp_sum(f, static_cast<int>(m) * r));
    }
}

TEST_CASE("Newton points are invariant under x -> cx and f -> sf") {
    std::mt19937_64 rng(23);
    for (std::uint32_t p : {7u, 11u}) {
        for (int t = 0; t < 5; ++t) {
            std::uniform_int_distribution<int> pick(0, static_cast<int>(p) - 1);
            std::vector<std::int64_t> a = {pick(rng), pick(rng), 1};
            auto const base = newton_points_direct(poly(p, a));
            for (std::int64_t c = 2; c < p; ++c) {
                std::vector<std::int64_t> b(3);
                std::int64_t cj = 1;
                for (int j = 0; j < 3; ++j) {
                    cj = cj * c % p;
                    b[j] = a[j] * cj % p;
                }
                CHECK(newton_points_direct(poly(p, b)) == base);
            }
            // multiplying f by a nonzero constant permutes zeta: Galois action
            for (std::int64_t s = 2; s < p; ++s) {
                std::vector<std::int64_t> b = a;
                for (auto& x : b)
                    x = x * s % p;
                CHECK(newton_points_direct(poly(p, b)) == base);
            }
        }
    }
}

TEST_CASE("consistency check and Weil bound") {
    for (auto [p, a] : {std::pair<std::uint32_t, std::vector<std::int64_t>>{7, {1, 0, 1}},
                        {5, {1, 0, 0, 1}},
                        {7, {1, 2, 0, 3, 1}},
                        {11, {3, 1, 4, 1}}}) {
        PolySpec const f = poly(p, a);
        LPolynomial const L = l_coeffs(f);
        int const d = f.degree();
        ConsistencyReport const rep = consistency_check(L, f, 2);
        CHECK(rep.entries.size() == 2);
        CHECK(rep.pass());
        for (int r = 1; r < d; ++r)
            for (std::uint32_t k = 1; k < p; ++k)
                CHECK(complex_abs(L.sums[r - 1], k) <= (d - 1) * std::pow(double(p), r / 2.0) + 1e-6);
    }
}

TEST_CASE("endpoint valuation is (d-1)/2") {
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        for (int d = 2; d < static_cast<int>(p) && d <= 5; ++d) {
            std::vector<std::int64_t> a(d, 0);
            a[0] = 1;
            a[d - 1] = 1;
            auto const pts = newton_points_direct(poly(p, a));
            CHECK(pts.back().ord == fin(d - 1, 2));
        }
    }
}

TEST_CASE("direct engine errors") {
    CHECK_THROWS_AS(exp_sum(poly(5, {1, 1}), 0), InputError);
}
