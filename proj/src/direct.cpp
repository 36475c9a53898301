#include "lpoly/direct.hpp"

#include <string>

#include "lpoly/errors.hpp"

namespace lpoly {

CycInt exp_sum(PolySpec const& f, int r) {
    if (r < 1)
        throw InputError("exp_sum needs r >= 1");
    Field const& base = f.field;
    std::uint32_t const p = base.characteristic();
    Field const ext = Field::build(p, base.degree() * static_cast<std::uint32_t>(r), base.ceiling());
    Embedding const embed(base, ext);

    std::size_t const k = ext.degree();
    std::vector<std::vector<Residue>> alpha;
    for (auto const& a : f.coeffs)
        alpha.push_back(embed(a).coeffs);

    std::vector<std::uint64_t> histogram(p, 0);
    std::vector<Residue> acc(k), tmp(k);
    for (ExtElem const& x : enumerate_field(ext)) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t i = alpha.size(); i-- > 0;) {
            for (std::size_t j = 0; j < k; ++j) {
                Residue const s = acc[j] + alpha[i][j];
                acc[j] = s >= p ? s - p : s;
            }
            ext.mul_into(acc, x.coeffs, tmp);
            acc.swap(tmp);
        }
        ++histogram[ext.trace_of(acc)];
    }
    return CycInt::from_histogram(p, histogram);
}

LPolynomial l_coeffs(PolySpec const& f) {
    int const d = f.degree();
    std::uint32_t const p = f.field.characteristic();
    if (static_cast<std::uint32_t>(d) >= p)
        throw InputError("degree must be < p");

    LPolynomial L{f, {}, {}};
    for (int r = 1; r < d; ++r)
        L.sums.push_back(exp_sum(f, r));

    std::vector<CycInt> M{CycInt::integer(p, 1)};
    for (int n = 1; n < d; ++n) {
        CycInt acc(p);
        for (int r = 1; r <= n; ++r)
            acc += L.sums[r - 1] * M[n - r];
        if (!acc.divisible_by(n))
            throw InternalError("Newton recursion: coefficient of n*M_n not divisible by n = " +
                                std::to_string(n));
        M.push_back(acc.divided_exactly(n));
    }
    L.coeffs.assign(M.begin() + 1, M.end());
    if (d > 1 && L.coeffs.back().is_zero())
        throw InternalError("M_{d-1} vanished; L(f,T) must have degree d-1");
    return L;
}

bool ConsistencyReport::pass() const {
    for (auto const& e : entries)
        if (!e.pass)
            return false;
    return true;
}

ConsistencyReport consistency_check(LPolynomial const& L, PolySpec const& f, int extra) {
    int const d = L.degree();
    std::uint32_t const p = f.field.characteristic();
    // Power sums of the reciprocal roots: r M_r = sum_{j=1}^{r} S_j M_{r-j}
    // with M_r = 0 for r >= d, so S_r = -sum_{j=r-d+1}^{r-1} S_j M_{r-j}.
    std::vector<CycInt> S = L.sums;
    auto coeff = [&](int n) -> CycInt {
        if (n == 0)
            return CycInt::integer(p, 1);
        return L.coeffs[n - 1];
    };
    ConsistencyReport report;
    for (int r = d; r < d + extra; ++r) {
        CycInt predicted(p);
        for (int j = std::max(1, r - d + 1); j < r; ++j)
            predicted -= S[j - 1] * coeff(r - j);
        S.push_back(predicted);
        CycInt brute = exp_sum(f, r);
        bool const ok = brute == predicted;
        report.entries.push_back({r, std::move(predicted), std::move(brute), ok});
    }
    return report;
}

std::vector<NewtonPoint> newton_points(LPolynomial const& L) {
    std::vector<NewtonPoint> points;
    std::int64_t const m = L.f.field.degree();
    for (std::size_t n = 0; n < L.coeffs.size(); ++n)
        points.push_back({static_cast<int>(n + 1), valuation(L.coeffs[n]).scaled_down(m)});
    return points;
}

std::vector<NewtonPoint> newton_points_direct(PolySpec const& f) { return newton_points(l_coeffs(f)); }

} // namespace lpoly
