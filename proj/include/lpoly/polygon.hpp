#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpoly/direct.hpp"
#include "lpoly/engine.hpp"
#include "lpoly/rational.hpp"

namespace lpoly {

struct Vertex {
    std::int64_t x;
    Rational y;

    bool operator==(Vertex const&) const = default;
};

/* Lower convex hull through (0,0); vertices strictly convex. */
struct NewtonPolygon {
    int d = 0;
    std::vector<Vertex> vertices;
    std::vector<Rational> slopes; // d-1 entries, nondecreasing

    bool operator==(NewtonPolygon const&) const = default;

    /* Piecewise-linear value at 0 <= x <= d-1. */
    Rational at(Rational const& x) const;
};

/* Points n = 1..d-1; (0,0) is implicit. Infinite points are left out and
 * ">=" points must lie on or above the hull of the exact ones, otherwise
 * ComputeError (the direct engine is needed). InputError when the endpoint
 * n = d-1 is not finite. */
NewtonPolygon lower_hull(std::vector<NewtonPoint> const& points, int d);

/* Vertices (n, n(n+1)/(2d)), 0 <= n <= d-1. */
NewtonPolygon hodge_polygon(int d);

/* a >= b at every abscissa 0..d-1. */
bool lies_above(NewtonPolygon const& a, NewtonPolygon const& b);

/* ord_p M_n = (u p - v) / (D (p-1)) on one residue class of p mod D. */
struct SlopeForm {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t D = 1;
    std::optional<std::int64_t> residue;

    bool operator==(SlopeForm const&) const = default;
};

/* Throws InputError on p1 == p2 or different classes, and
 * InputError("modulus D too small for this family") when u or v is not integral. */
SlopeForm fit_slope_form(Rational r1, std::int64_t p1, Rational r2, std::int64_t p2, std::int64_t D);

/* (u p - v) / (D (p-1)). A class mismatch is reported through `warning`. */
Rational predict_ord(SlopeForm const& form, std::int64_t p, std::string* warning = nullptr);

/* Limit of predict_ord as p grows: u/D. */
inline Rational limit_ord(SlopeForm const& form) { return Rational(form.u, form.D); }

struct CoefficientFit {
    int n = 0;
    std::optional<SlopeForm> form; // empty when M_n vanishes at both fit primes
    bool vanishes = false;
};

struct PrimeCheck {
    std::int64_t p = 0;
    int n = 0;
    Valuation predicted;
    Valuation observed;
    bool match = false;
};

struct ClassReport {
    std::int64_t residue = 0;
    std::vector<std::int64_t> primes;
    std::vector<std::int64_t> fit_primes;
    /* "validated", "unstable at tested primes", "D too small",
     * "skipped: fewer than 3 primes" */
    std::string status;
    std::vector<CoefficientFit> fits;
    std::vector<PrimeCheck> checks;
    std::vector<std::optional<Rational>> limit_ords; // u_n/D; empty when M_n has no form
};

struct ClassificationReport {
    std::vector<std::int64_t> pattern;
    int d = 0;
    std::int64_t D = 0;
    std::vector<std::int64_t> tried_moduli;
    Engine engine = Engine::Direct;
    std::map<std::int64_t, std::vector<NewtonPoint>> valuations; // ord_p M_n per prime
    std::vector<ClassReport> classes;
    std::vector<std::string> notices;

    bool all_validated() const;
};

/* Valuations of the pattern reduced mod p through the chosen engine. A
 * ">=" marker from the Dwork engine is resolved with the direct engine. */
std::vector<NewtonPoint> family_points(std::vector<std::int64_t> const& pattern, std::int64_t p, Engine engine);

/* Without D the ladder d, 2d, lcm(1..d) is tried until every class fits
 * integrally. Per-prime work is spread over `jobs` threads. */
ClassificationReport classify_family(std::vector<std::int64_t> const& pattern, std::vector<std::int64_t> const& primes,
                                     std::optional<std::int64_t> D, Engine engine, int jobs = 1);

/* Build a report from valuations already in hand. */
ClassificationReport classify_points(std::vector<std::int64_t> const& pattern,
                                     std::map<std::int64_t, std::vector<NewtonPoint>> const& valuations,
                                     std::optional<std::int64_t> D, Engine engine);

} // namespace lpoly
