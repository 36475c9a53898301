#include "lpoly/dwork.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "lpoly/errors.hpp"

namespace lpoly {

namespace {

using Units = PiAdic::Units;

void require_prime_field(PolySpec const& f) {
    if (f.field.degree() != 1)
        throw InputError("dwork engine requires m=1");
    if (static_cast<std::uint32_t>(f.degree()) >= f.field.characteristic())
        throw InputError("degree must be < p");
}

std::int64_t residue(PolySpec const& f, int k) { return f.coeffs[k - 1].coeffs[0]; }

Rational units_to_ord(Units u, std::uint32_t p) { return Rational(std::min(u, PiAdic::kExact), p - 1); }

Units min_prec(std::vector<PiAdic> const& xs, std::size_t from = 0) {
    Units m = PiAdic::kExact;
    for (std::size_t i = from; i < xs.size(); ++i)
        m = std::min(m, xs[i].prec());
    return m;
}

HSeries splitting_series(PolySpec const& f, std::vector<PiAdic> const& b, std::size_t n_max, std::uint32_t K) {
    std::uint32_t const p = f.field.characteristic();
    int const d = f.degree();
    HSeries s;
    for (int k = 1; k <= d; ++k)
        s.lifts.push_back(teichmuller(p, residue(f, k), K));

    s.h.assign(n_max + 1, PiAdic(p, K));
    s.h[0] = PiAdic::from_int(p, K, 1);
    for (int j = 1; j <= d; ++j) {
        std::int64_t const alpha = residue(f, j);
        if (alpha == 0)
            continue;
        // theta(a_j x^j) = sum_k b_k a_j^k x^{jk}
        std::size_t const kmax = n_max / j;
        std::vector<PiAdic> g;
        g.reserve(kmax + 1);
        std::int64_t power = 1;
        for (std::size_t k = 0; k <= kmax; ++k) {
            g.push_back(b[k] * teichmuller(p, power, K));
            power = power * alpha % p;
        }
        std::vector<PiAdic> next;
        next.reserve(n_max + 1);
        std::vector<PiAdic const*> lhs, rhs;
        for (std::size_t n = 0; n <= n_max; ++n) {
            lhs.clear();
            rhs.clear();
            for (std::size_t k = 0; k * j <= n; ++k) {
                lhs.push_back(&g[k]);
                rhs.push_back(&s.h[n - k * j]);
            }
            next.push_back(PiAdic::dot(lhs, rhs));
        }
        s.h = std::move(next);
    }
    return s;
}

ReductionTable reduction_table(PolySpec const& f, std::size_t n_max, std::uint32_t K) {
    std::uint32_t const p = f.field.characteristic();
    int const d = f.degree();
    ReductionTable t;
    t.d = d;

    std::vector<PiAdic> lifts;
    for (int k = 1; k <= d; ++k)
        lifts.push_back(teichmuller(p, residue(f, k), K));

    // -1/(d a_d); a_d is a root of unity, so 1/a_d is the lift of 1/alpha_d.
    std::int64_t const alpha_d = residue(f, d);
    std::int64_t inv = 1;
    for (std::uint32_t e = 0; e + 2 < p; ++e)
        inv = inv * alpha_d % p;
    PiAdic const scale = -teichmuller(p, inv, K).div_int(d);

    // weights of (n-d) x^{n-d} + pi sum_k k a_k x^{n-d+k}
    std::vector<PiAdic> weights;
    for (int k = 1; k < d; ++k)
        weights.push_back(lifts[k - 1].times_pi().times_int(k));

    for (std::size_t n = 0; n <= n_max; ++n) {
        std::vector<PiAdic> row;
        if (n < static_cast<std::size_t>(d)) {
            for (int i = 0; i < d; ++i)
                row.push_back(i == static_cast<int>(n) ? PiAdic::from_int(p, K, 1) : PiAdic(p, K));
            t.rows.push_back(std::move(row));
            continue;
        }
        std::size_t const base = n - d;
        PiAdic const lead = PiAdic::from_int(p, K, static_cast<std::int64_t>(base));
        for (int i = 0; i < d; ++i) {
            std::vector<PiAdic const*> lhs{&lead}, rhs{&t.rows[base][i]};
            for (int k = 1; k < d; ++k) {
                lhs.push_back(&weights[k - 1]);
                rhs.push_back(&t.rows[base + k][i]);
            }
            row.push_back((PiAdic::dot(lhs, rhs) * scale).div_pi());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct Pipeline {
    std::vector<PiAdic> theta;
    HSeries series;
    ReductionTable table;
    FrobMatrix gamma;
};

Pipeline build(PolySpec const& f, std::uint32_t K, Units target_units) {
    require_prime_field(f);
    std::uint32_t const p = f.field.characteristic();
    int const d = f.degree();
    if (K > max_digits(p))
        throw ComputeError("precision budget exceeded: K = " + std::to_string(K) + " digits not supported for p = " +
                           std::to_string(p));

    Pipeline out;
    FrobMatrix& g = out.gamma;
    g.p = p;
    g.K = K;
    g.d = d;
    g.r_max = truncation_index(p, d, Rational(target_units, p - 1));
    g.certificate.initial = Rational(K);

    std::size_t const n_max = static_cast<std::size_t>((g.r_max - 1) * p - 1);
    out.theta = theta_coeffs(p, n_max, K, &g.certificate);
    g.certificate.record("theta series", units_to_ord(min_prec(out.theta), p));

    out.series = splitting_series(f, out.theta, n_max, K);
    g.certificate.record("splitting series", units_to_ord(min_prec(out.series.h), p));

    out.table = reduction_table(f, static_cast<std::size_t>(g.r_max - 1), K);
    // What a row contributes is a_{r,i} h_{rp-j}: its precision is shifted by ord h.
    Units table_prec = PiAdic::kExact;
    for (std::int64_t r = d; r < g.r_max; ++r)
        for (int i = 1; i < d; ++i)
            for (int j = 1; j < d; ++j) {
                PiAdic const& h = out.series.h[r * p - j];
                table_prec = std::min(table_prec, out.table.at(r, i).prec() + h.valuation_units());
            }
    g.certificate.record("reduction table", units_to_ord(table_prec, p));

    Units entry_prec = PiAdic::kExact;
    Units tail_prec = PiAdic::kExact;
    g.m.assign(d - 1, std::vector<PiAdic>(d - 1, PiAdic(p, K)));
    std::vector<PiAdic const*> lhs, rhs;
    for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j) {
            lhs.clear();
            rhs.clear();
            for (std::int64_t r = 1; r < g.r_max; ++r) {
                lhs.push_back(&out.series.h[r * p - j]);
                rhs.push_back(&out.table.at(r, i));
            }
            PiAdic entry = PiAdic::dot(lhs, rhs);
            entry_prec = std::min(entry_prec, entry.prec());
            Units const tail = ceil(tail_bound(p, d, g.r_max, i, j) * Rational(p - 1));
            tail_prec = std::min(tail_prec, tail);
            g.m[i - 1][j - 1] = entry.truncated(tail);
        }
    g.certificate.record("frobenius entries", units_to_ord(entry_prec, p));
    g.certificate.record("truncation tail", units_to_ord(tail_prec, p));
    return out;
}

/* det of the minor on rows R and columns C (|R| = |C|), Laplace along the
 * lowest row, memoized. */
class MinorExpansion {
public:
    explicit MinorExpansion(FrobMatrix const& g) : g_(g) {}

    PiAdic const& det(std::uint32_t rows, std::uint32_t cols) {
        std::uint64_t const key = (std::uint64_t(rows) << 32) | cols;
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        PiAdic value(g_.p, g_.K);
        if (rows == 0) {
            value = PiAdic::from_int(g_.p, g_.K, 1);
        } else {
            int const r0 = std::countr_zero(rows);
            std::uint32_t const rest = rows & (rows - 1);
            std::vector<PiAdic> cof;
            std::vector<PiAdic const*> lhs, rhs;
            int position = 0;
            for (std::uint32_t c = cols; c; c &= c - 1, ++position) {
                int const c0 = std::countr_zero(c);
                PiAdic const& sub = det(rest, cols & ~(1u << c0));
                cof.push_back(position % 2 == 0 ? sub : -sub);
                lhs.push_back(&g_.m[r0][c0]);
            }
            for (auto const& x : cof)
                rhs.push_back(&x);
            value = PiAdic::dot(lhs, rhs);
        }
        return memo_.emplace(key, std::move(value)).first->second;
    }

private:
    FrobMatrix const& g_;
    std::map<std::uint64_t, PiAdic> memo_;
};

} // namespace

HSeries h_coeffs(PolySpec const& f, std::size_t n_max, std::uint32_t K, PrecisionCertificate* cert) {
    require_prime_field(f);
    std::uint32_t const p = f.field.characteristic();
    auto b = theta_coeffs(p, n_max, K, cert);
    HSeries s = splitting_series(f, b, n_max, K);
    if (cert)
        cert->record("splitting series", units_to_ord(min_prec(s.h), p));
    return s;
}

ReductionTable reduction_coeffs(PolySpec const& f, std::size_t n_max, std::uint32_t K, PrecisionCertificate* cert) {
    require_prime_field(f);
    ReductionTable t = reduction_table(f, n_max, K);
    if (cert) {
        Units m = PiAdic::kExact;
        for (auto const& row : t.rows)
            m = std::min(m, min_prec(row));
        cert->record("reduction table", units_to_ord(m, f.field.characteristic()));
    }
    return t;
}

Rational tail_bound(std::uint32_t p, int d, std::int64_t r, int i, int j) {
    std::int64_t const P = p;
    return Rational((P - 1) * (r * P - j), d * P * P) - Rational(r - i, d * (P - 1));
}

std::int64_t truncation_index(std::uint32_t p, int d, Rational const& target) {
    // the minimum over i, j sits at i = 1, j = d-1
    std::int64_t r = 1;
    while (tail_bound(p, d, r, 1, d - 1) <= target)
        ++r;
    return std::max<std::int64_t>(r, d);
}

Units precision_target_units(std::uint32_t p, int d) {
    std::int64_t const r0 = truncation_index(p, d, Rational(d - 1));
    Units const guard = ceil(Rational(r0 * p, p - 1)) + 4;
    return Units(d - 1) * (p - 1) + guard;
}

std::uint32_t default_digits(std::uint32_t p, int d) {
    Units const T = precision_target_units(p, d);
    std::int64_t const r_max = truncation_index(p, d, Rational(T, p - 1));
    Rational const need = Rational(T + 2) + Rational(r_max, d);
    return static_cast<std::uint32_t>(ceil(need / Rational(p - 1))) + 1;
}

FrobMatrix frobenius_matrix(PolySpec const& f, std::uint32_t K, Units target_units) {
    return build(f, K, target_units).gamma;
}

FrobMatrix frobenius_matrix(PolySpec const& f, std::uint32_t K) {
    require_prime_field(f);
    return frobenius_matrix(f, K, precision_target_units(f.field.characteristic(), f.degree()));
}

std::vector<PiAdic> char_poly_coeffs(FrobMatrix const& gamma) {
    int const n = gamma.d - 1;
    if (n > 20)
        throw InputError("matrix too large for minor expansion");
    MinorExpansion minors(gamma);
    std::vector<PiAdic> out;
    for (int k = 1; k <= n; ++k) {
        std::vector<PiAdic const*> lhs, rhs;
        std::vector<PiAdic> dets;
        dets.reserve(std::size_t(1) << n);
        for (std::uint32_t s = 1; s < (1u << n); ++s)
            if (std::popcount(s) == k)
                dets.push_back(minors.det(s, s));
        PiAdic const sign = PiAdic::from_int(gamma.p, gamma.K, k % 2 == 0 ? 1 : -1);
        for (auto const& x : dets) {
            lhs.push_back(&sign);
            rhs.push_back(&x);
        }
        out.push_back(PiAdic::dot(lhs, rhs));
    }
    return out;
}

DworkResult run_dwork(PolySpec const& f, std::optional<std::uint32_t> K) {
    require_prime_field(f);
    std::uint32_t const p = f.field.characteristic();
    int const d = f.degree();
    Units const goal = precision_target_units(p, d);
    std::uint32_t digits = K ? *K : default_digits(p, d);

    for (int attempt = 1;; ++attempt) {
        Pipeline pipe = build(f, digits, goal);
        DworkResult res;
        res.coeffs = char_poly_coeffs(pipe.gamma);
        pipe.gamma.certificate.record("characteristic polynomial", units_to_ord(min_prec(res.coeffs), p));
        res.gamma = std::move(pipe.gamma);
        res.theta = std::move(pipe.theta);
        res.series = std::move(pipe.series);
        res.table = std::move(pipe.table);
        res.attempts = attempt;

        Rational const achieved = res.gamma.certificate.target();
        bool const done = K ? res.gamma.certificate.certifies_degree(d) : achieved * Rational(p - 1) >= Rational(goal);
        if (done) {
            for (int n = 1; n < d; ++n)
                res.points.push_back({n, res.coeffs[n - 1].valuation()});
            return res;
        }
        digits += 2;
        if (digits > max_digits(p))
            throw ComputeError("precision budget exceeded: certificate reached only " + to_string(achieved) +
                               " (need > " + std::to_string(d - 1) + ")");
    }
}

std::vector<NewtonPoint> newton_points_dwork(PolySpec const& f, std::optional<std::uint32_t> K) {
    return run_dwork(f, K).points;
}

bool digit_identical(DworkResult const& a, DworkResult const& b) {
    if (a.coeffs.size() != b.coeffs.size() || a.gamma.m.size() != b.gamma.m.size())
        return false;
    for (std::size_t n = 0; n < a.coeffs.size(); ++n) {
        if (!a.coeffs[n].agrees_with(b.coeffs[n], a.coeffs[n].prec()))
            return false;
        if (a.points[n].ord.is_finite() && !(a.points[n].ord == b.points[n].ord))
            return false;
    }
    for (std::size_t i = 0; i < a.gamma.m.size(); ++i)
        for (std::size_t j = 0; j < a.gamma.m[i].size(); ++j)
            if (!a.gamma.m[i][j].agrees_with(b.gamma.m[i][j], a.gamma.m[i][j].prec()))
                return false;
    return true;
}

BoundReport check_valuation_bounds(PolySpec const& f, DworkResult const& run) {
    std::uint32_t const p = f.field.characteristic();
    Units const d = f.degree();
    std::size_t const limit = std::size_t(p) * p - 1;
    BoundReport rep;
    auto violation = [&](std::string what, std::size_t idx, PiAdic const& x) {
        rep.violations.push_back(what + "[" + std::to_string(idx) + "] has ord " + x.valuation().to_string());
    };

    // In units of 1/(p-1): ord b_i >= i/(p-1) reads val >= i.
    for (std::size_t i = 0; i < run.theta.size() && i <= limit; ++i) {
        ++rep.checked;
        PiAdic const& b = run.theta[i];
        if (!b.is_zero() && b.valuation_units() < Units(i))
            violation("b", i, b);
    }
    for (std::size_t i = 0; i < run.series.h.size() && i <= limit; ++i) {
        ++rep.checked;
        PiAdic const& h = run.series.h[i];
        if (!h.is_zero() && d * h.valuation_units() < Units(i))
            violation("h", i, h);
    }
    for (std::size_t r = std::size_t(d); r < run.table.rows.size(); ++r)
        for (Units i = 0; i < d; ++i) {
            ++rep.checked;
            PiAdic const& a = run.table.at(r, int(i));
            if (a.is_zero())
                continue;
            Units const v = a.valuation_units();
            if (v > 0)
                rep.positive_reductions.push_back("a[" + std::to_string(r) + "," + std::to_string(i) + "] has ord " +
                                                  a.valuation().to_string());
            if (d * v < -(Units(r) - i))
                rep.violations.push_back("a[" + std::to_string(r) + "," + std::to_string(i) + "] has ord " +
                                         a.valuation().to_string());
        }
    return rep;
}

} // namespace lpoly
