#pragma once

#include <vector>

#include "lpoly/cyclotomic.hpp"
#include "lpoly/field.hpp"
#include "lpoly/valuation.hpp"

namespace lpoly {

/* One abscissa of a Newton polygon: (n, ord M_n). */
struct NewtonPoint {
    int n;
    Valuation ord;

    bool operator==(NewtonPoint const&) const = default;
};

/* L(f, T) = 1 + M_1 T + ... + M_{d-1} T^{d-1} with exact coefficients. */
struct LPolynomial {
    PolySpec f;
    std::vector<CycInt> sums;   // S_1 .. S_{d-1}
    std::vector<CycInt> coeffs; // M_1 .. M_{d-1}

    int degree() const { return f.degree(); }
};

/* S_r(f) = sum over x in F_{q^r} of zeta^{Tr(f(x))}, by histogram of traces. */
CycInt exp_sum(PolySpec const& f, int r);

/* S_1..S_{d-1} and the Newton-identity recursion n M_n = sum_r S_r M_{n-r},
 * every division by n checked for exactness. */
LPolynomial l_coeffs(PolySpec const& f);

struct ConsistencyEntry {
    int r;
    CycInt predicted;
    CycInt brute_force;
    bool pass;
};

struct ConsistencyReport {
    std::vector<ConsistencyEntry> entries;
    bool pass() const;
};

/* Predict S_d .. S_{d-1+extra} from L alone and compare with brute force. */
ConsistencyReport consistency_check(LPolynomial const& L, PolySpec const& f, int extra);

/* (n, ord_q M_n) for n = 1..d-1 where ord_q = ord_p / m. */
std::vector<NewtonPoint> newton_points(LPolynomial const& L);
std::vector<NewtonPoint> newton_points_direct(PolySpec const& f);

} // namespace lpoly
