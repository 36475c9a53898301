#include <doctest.h>

#include <random>
#include <set>

#include "lpoly/errors.hpp"
#include "lpoly/field.hpp"

using namespace lpoly;

TEST_CASE("build_field picks the smallest irreducible modulus") {
    CHECK(build_field(7, 1).modulus() == std::vector<Residue>{0, 1});
    CHECK(build_field(3, 2).modulus() == std::vector<Residue>{1, 0, 1});
    CHECK(build_field(5, 2).modulus() == std::vector<Residue>{1, 1, 1});
    CHECK(build_field(3, 3).modulus() == std::vector<Residue>{1, 0, 2, 1});
    CHECK(build_field(7, 3).modulus() == std::vector<Residue>{1, 0, 1, 1});
    CHECK(build_field(3, 2).modulus() == build_field(3, 2).modulus());
}

TEST_CASE("build_field errors") {
    CHECK_THROWS_WITH_AS(build_field(4, 1), doctest::Contains("not prime"), InputError);
    CHECK_THROWS_WITH_AS(build_field(1, 1), doctest::Contains("not prime"), InputError);
    CHECK_THROWS_WITH_AS(build_field(101, 5), doctest::Contains("field too large"), ComputeError);
    CHECK_THROWS_WITH_AS(build_field(5, 3, 100), doctest::Contains("field too large"), ComputeError);
    CHECK_THROWS_AS(build_field(5, 0), InputError);
}

TEST_CASE("trace on small fields") {
    Field const f9 = build_field(3, 2);
    ExtElem const alpha = f9.generator(); // alpha^2 = -1
    CHECK(trace_to_prime(f9, alpha) == 0);
    CHECK(f9.trace(alpha) == 0);
    CHECK(f9.trace(f9.zero()) == 0);
    for (int c = 0; c < 3; ++c)
        CHECK(f9.trace(f9.from_prime(c)) == (2 * c) % 3);

    Field const f27 = build_field(3, 3);
    for (int c = 0; c < 3; ++c)
        CHECK(f27.trace(f27.from_prime(c)) == 0); // 3c = 0
}

TEST_CASE("trace is additive and Frobenius invariant") {
    for (auto [p, k] : {std::pair{3u, 3u}, {5u, 2u}, {7u, 2u}, {2u, 5u}}) {
        Field const F = build_field(p, k);
        std::mt19937_64 rng(p * 100 + k);
        std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
        for (int t = 0; t < 50; ++t) {
            ExtElem const x = F.from_index(pick(rng));
            ExtElem const y = F.from_index(pick(rng));
            CHECK(F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % p);
            CHECK(F.trace(F.frobenius(x)) == F.trace(x));
            CHECK(F.trace(x) == trace_to_prime(F, x));
        }
    }
}

TEST_CASE("field axioms on random triples") {
    Field const F = build_field(5, 3);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
    for (int t = 0; t < 200; ++t) {
        ExtElem a = F.from_index(pick(rng)), b = F.from_index(pick(rng)), c = F.from_index(pick(rng));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        CHECK(F.add(a, F.neg(a)) == F.zero());
        if (!a.is_zero())
            CHECK(F.mul(a, F.inv(a)) == F.one());
    }
    CHECK_THROWS_AS(F.inv(F.zero()), InputError);
}

TEST_CASE("enumerate_field") {
    Field const f5 = build_field(5, 1);
    std::vector<std::uint64_t> seen;
    for (auto const& x : enumerate_field(f5))
        seen.push_back(f5.index(x));
    CHECK(seen == std::vector<std::uint64_t>{0, 1, 2, 3, 4});

    Field const f9 = build_field(3, 2);
    auto range = enumerate_field(f9);
    CHECK(range.size() == 9);
    CHECK((*range.begin()).is_zero());

    Field const f27 = build_field(3, 3);
    std::set<std::uint64_t> distinct;
    for (auto const& x : enumerate_field(f27))
        distinct.insert(f27.index(x));
    CHECK(distinct.size() == 27);
}

TEST_CASE("eval_poly") {
    Field const f7 = build_field(7, 1);
    PolySpec const f = parse_poly(f7, "1,0,1");
    CHECK(eval_poly(f, f7, f7.from_prime(2)) == f7.from_prime(3));
    CHECK(eval_poly(f, f7, f7.zero()).is_zero());

    Field const f9 = build_field(3, 2);
    PolySpec const sq = parse_poly(f9, "0,1");
    CHECK(eval_poly(sq, f9, f9.generator()) == f9.from_prime(2));

    // f over F_7 evaluated in F_49 agrees with F_7 on the prime subfield
    Field const f49 = build_field(7, 2);
    CHECK(eval_poly(f, f49, f49.from_prime(2)) == f49.from_prime(3));
    CHECK_THROWS_AS(eval_poly(f, build_field(5, 1), build_field(5, 1).one()), InputError);
}

TEST_CASE("polynomial validation") {
    Field const f5 = build_field(5, 1);
    CHECK(parse_poly(f5, "1,2,3").degree() == 3);
    CHECK(parse_poly(f5, "1,-1").coeffs[1] == f5.from_prime(4));
    CHECK_THROWS_AS(parse_poly(f5, "1,5"), InputError); // 5 = 0 mod 5
    CHECK_THROWS_WITH_AS(parse_poly(f5, "0,0"), doctest::Contains("leading coefficient"), InputError);
    CHECK_THROWS_WITH_AS(parse_poly(f5, "1,1,1,1,1"), doctest::Contains("degree must be < p"), InputError);
    CHECK_THROWS_AS(parse_poly(f5, "1,x"), InputError);
    CHECK(poly_from_pattern({1, 0, 6}, f5).coeffs[2] == f5.from_prime(1));
}

TEST_CASE("embedding of the base field") {
    Field const f9 = build_field(3, 2);
    Field const f81 = build_field(3, 4);
    Embedding const emb(f9, f81);
    // a ring homomorphism: check on all pairs
    for (std::uint64_t i = 0; i < 9; ++i)
        for (std::uint64_t j = 0; j < 9; ++j) {
            ExtElem const a = f9.from_index(i), b = f9.from_index(j);
            CHECK(emb(f9.mul(a, b)) == f81.mul(emb(a), emb(b)));
            CHECK(emb(f9.add(a, b)) == f81.add(emb(a), emb(b)));
        }
    CHECK_THROWS_AS(Embedding(build_field(3, 3), f81), InputError);
}
