#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpoly/direct.hpp"
#include "lpoly/eisenstein.hpp"
#include "lpoly/field.hpp"

namespace lpoly {

/* Coefficients h_0..h_{n_max} of F(x) = prod_j theta(a_j x^j), together
 * with the Teichmuller lifts a_1..a_d. */
struct HSeries {
    std::vector<PiAdic> h;
    std::vector<PiAdic> lifts; // a_1 .. a_d
};

HSeries h_coeffs(PolySpec const& f, std::size_t n_max, std::uint32_t K,
                 PrecisionCertificate* cert = nullptr);

/* x^n = sum_i a_{n,i} x^i in cohomology, rows n = 0..n_max, i = 0..d-1. */
struct ReductionTable {
    int d = 0;
    std::vector<std::vector<PiAdic>> rows;

    PiAdic const& at(std::size_t n, int i) const { return rows.at(n).at(i); }
};

ReductionTable reduction_coeffs(PolySpec const& f, std::size_t n_max, std::uint32_t K,
                                PrecisionCertificate* cert = nullptr);

/* Lower bound (in ord_p) for the term h_{rp-j} a_{r,i}:
 * (p-1)(rp-j)/(dp^2) - (r-i)/(d(p-1)). Increasing in r. */
Rational tail_bound(std::uint32_t p, int d, std::int64_t r, int i, int j);

/* Smallest r >= d with tail_bound(r, i, j) > target for all 1 <= i,j <= d-1. */
std::int64_t truncation_index(std::uint32_t p, int d, Rational const& target);

/* Default accuracy goal: d-1 plus guard, guard = ceil(r0 p / (p-1)) + 4 units
 * of 1/(p-1), r0 the truncation index for d-1 itself. In units. */
PiAdic::Units precision_target_units(std::uint32_t p, int d);

/* A starting K large enough for the target once the reduction losses are paid. */
std::uint32_t default_digits(std::uint32_t p, int d);

struct FrobMatrix {
    std::uint32_t p = 0;
    std::uint32_t K = 0;
    int d = 0;
    std::int64_t r_max = 0;
    std::vector<std::vector<PiAdic>> m; // m[i-1][j-1] = m_ij
    PrecisionCertificate certificate;
};

/* Gamma truncated at the r_max guaranteeing `target_units`. */
FrobMatrix frobenius_matrix(PolySpec const& f, std::uint32_t K, PiAdic::Units target_units);
FrobMatrix frobenius_matrix(PolySpec const& f, std::uint32_t K);

/* M_1..M_{d-1} of det(I - T Gamma) via principal minors (no divisions). */
std::vector<PiAdic> char_poly_coeffs(FrobMatrix const& gamma);

struct DworkResult {
    FrobMatrix gamma;
    std::vector<PiAdic> theta; // b_0 .. b_{n_max}
    HSeries series;
    ReductionTable table;
    std::vector<PiAdic> coeffs;     // M_1 .. M_{d-1}
    std::vector<NewtonPoint> points; // exact or ">= target"
    int attempts = 1;
};

/* Full pipeline. Without `K` the precision starts at default_digits and is
 * escalated until the goal is met; with `K` escalation happens only while
 * the certificate fails to reach d-1. */
DworkResult run_dwork(PolySpec const& f, std::optional<std::uint32_t> K = std::nullopt);

std::vector<NewtonPoint> newton_points_dwork(PolySpec const& f,
                                             std::optional<std::uint32_t> K = std::nullopt);

/* True when every certified digit of `a` equals the corresponding digit of `b`. */
bool digit_identical(DworkResult const& a, DworkResult const& b);

struct BoundReport {
    int checked = 0;
    std::vector<std::string> violations;
    /* Nonzero a_{r,i} with ord > 0. Kept apart: the reduction recursion
     * multiplies by (n-d), which is divisible by p once r reaches p + d. */
    std::vector<std::string> positive_reductions;

    bool lower_bounds_ok() const { return violations.empty(); }
    bool ok() const { return violations.empty() && positive_reductions.empty(); }
};

/* Checks ord b_i >= i/(p-1) (i <= p^2-1), ord h_i >= i/(d(p-1)) (i <= p^2-1)
 * and 0 >= ord a_{r,i} >= -(r-i)/(d(p-1)) on the series of one Dwork run. */
BoundReport check_valuation_bounds(PolySpec const& f, DworkResult const& run);

} // namespace lpoly
