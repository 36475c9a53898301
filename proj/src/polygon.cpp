#include "lpoly/polygon.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "lpoly/errors.hpp"
#include "lpoly/field.hpp"

namespace lpoly {

namespace {

Rational cross(Vertex const& a, Vertex const& b, Vertex const& c) {
    return Rational(b.x - a.x) * (c.y - a.y) - (b.y - a.y) * Rational(c.x - a.x);
}

NewtonPolygon from_vertices(std::vector<Vertex> vs, int d) {
    NewtonPolygon np;
    np.d = d;
    np.vertices = std::move(vs);
    for (std::size_t k = 1; k < np.vertices.size(); ++k) {
        auto const& a = np.vertices[k - 1];
        auto const& b = np.vertices[k];
        Rational const s = (b.y - a.y) / Rational(b.x - a.x);
        for (std::int64_t t = a.x; t < b.x; ++t)
            np.slopes.push_back(s);
    }
    return np;
}

int pattern_degree(std::vector<std::int64_t> const& pattern) {
    int d = static_cast<int>(pattern.size());
    while (d > 0 && pattern[d - 1] == 0)
        --d;
    return d;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

ClassReport classify_class(std::int64_t residue, std::vector<std::int64_t> const& primes, int d, std::int64_t D,
                           std::map<std::int64_t, std::vector<NewtonPoint>> const& vals) {
    ClassReport c;
    c.residue = residue;
    c.primes = primes;
    if (primes.size() < 3) {
        c.status = "skipped: fewer than 3 primes";
        return c;
    }
    std::int64_t const p1 = primes[0], p2 = primes[1];
    c.fit_primes = {p1, p2};
    bool unstable = false;
    for (int n = 1; n < d; ++n) {
        Valuation const& o1 = vals.at(p1)[n - 1].ord;
        Valuation const& o2 = vals.at(p2)[n - 1].ord;
        CoefficientFit fit;
        fit.n = n;
        if (o1.is_infinite() && o2.is_infinite()) {
            fit.vanishes = true;
        } else if (o1.is_finite() && o2.is_finite()) {
            try {
                fit.form = fit_slope_form(o1.value(), p1, o2.value(), p2, D);
            } catch (InputError const&) {
                c.status = "D too small";
                c.fits.push_back(fit);
                return c;
            }
        } else {
            unstable = true; // M_n vanishes at one fit prime only
        }
        c.fits.push_back(fit);
    }
    for (auto const& fit : c.fits)
        c.limit_ords.push_back(fit.form ? std::optional<Rational>(limit_ord(*fit.form)) : std::nullopt);

    for (std::size_t k = 2; k < primes.size(); ++k) {
        std::int64_t const p = primes[k];
        for (auto const& fit : c.fits) {
            PrimeCheck chk;
            chk.p = p;
            chk.n = fit.n;
            chk.observed = vals.at(p)[fit.n - 1].ord;
            if (fit.vanishes)
                chk.predicted = Valuation::infinite();
            else if (fit.form)
                chk.predicted = Valuation::finite(predict_ord(*fit.form, p));
            else
                chk.predicted = Valuation::at_least(Rational(0)); // no prediction possible
            chk.match = (fit.vanishes || fit.form) && chk.predicted == chk.observed;
            unstable = unstable || !chk.match;
            c.checks.push_back(chk);
        }
    }
    c.status = unstable ? "unstable at tested primes" : "validated";
    return c;
}

ClassificationReport classify_with(std::vector<std::int64_t> const& pattern, int d,
                                   std::map<std::int64_t, std::vector<NewtonPoint>> const& vals, std::int64_t D,
                                   Engine engine) {
    ClassificationReport rep;
    rep.pattern = pattern;
    rep.d = d;
    rep.D = D;
    rep.engine = engine;
    rep.valuations = vals;

    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    for (auto const& [p, pts] : vals) {
        if (p <= D) {
            rep.notices.push_back("p=" + std::to_string(p) + " skipped: p must exceed D=" + std::to_string(D));
            continue;
        }
        classes[mod(p, D)].push_back(p);
    }
    for (auto const& [r, ps] : classes) {
        rep.classes.push_back(classify_class(r, ps, d, D, vals));
        if (ps.size() < 3)
            rep.notices.push_back("class " + std::to_string(r) + " mod " + std::to_string(D) + " skipped: only " +
                                  std::to_string(ps.size()) + " prime(s)");
    }
    return rep;
}

} // namespace

Rational NewtonPolygon::at(Rational const& x) const {
    if (vertices.empty() || x < Rational(0) || x > Rational(vertices.back().x))
        throw InputError("abscissa outside the polygon");
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        auto const& a = vertices[k - 1];
        auto const& b = vertices[k];
        if (x <= Rational(b.x))
            return a.y + (b.y - a.y) * (x - Rational(a.x)) / Rational(b.x - a.x);
    }
    return vertices.back().y;
}

NewtonPolygon lower_hull(std::vector<NewtonPoint> const& points, int d) {
    if (d < 2)
        throw InputError("degree must be >= 2");
    std::vector<NewtonPoint> pts = points;
    std::sort(pts.begin(), pts.end(), [](auto const& a, auto const& b) { return a.n < b.n; });
    auto end = std::find_if(pts.begin(), pts.end(), [&](auto const& q) { return q.n == d - 1; });
    if (end == pts.end() || !end->ord.is_finite())
        throw InputError("missing finite endpoint at n = " + std::to_string(d - 1));

    std::vector<Vertex> hull{{0, Rational(0)}};
    for (auto const& q : pts) {
        if (q.n < 1 || q.n > d - 1)
            throw InputError("abscissa " + std::to_string(q.n) + " outside 1.." + std::to_string(d - 1));
        if (!q.ord.is_finite())
            continue;
        Vertex v{q.n, q.ord.value()};
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), v) <= Rational(0))
            hull.pop_back();
        hull.push_back(v);
    }
    NewtonPolygon np = from_vertices(std::move(hull), d);

    for (auto const& q : pts)
        if (q.ord.is_lower_bound() && q.ord.value() < np.at(Rational(q.n)))
            throw ComputeError("M_" + std::to_string(q.n) + " is only known to be " + q.ord.to_string() +
                               ", which may support the polygon; use the direct engine");
    return np;
}

NewtonPolygon hodge_polygon(int d) {
    if (d < 2)
        throw InputError("degree must be >= 2");
    std::vector<Vertex> vs;
    for (int n = 0; n < d; ++n)
        vs.push_back({n, Rational(n * (n + 1), 2 * d)});
    return from_vertices(std::move(vs), d);
}

bool lies_above(NewtonPolygon const& a, NewtonPolygon const& b) {
    if (a.d != b.d)
        throw InputError("polygons of different degree");
    for (int x = 0; x < a.d; ++x)
        if (a.at(Rational(x)) < b.at(Rational(x)))
            return false;
    return true;
}

SlopeForm fit_slope_form(Rational r1, std::int64_t p1, Rational r2, std::int64_t p2, std::int64_t D) {
    if (D < 1)
        throw InputError("modulus D must be positive");
    if (p1 == p2)
        throw InputError("fit needs two distinct primes");
    if (mod(p1 - p2, D) != 0)
        throw InputError("fit primes lie in different classes mod " + std::to_string(D));
    Rational const u_over_D = (r1 * Rational(p1 - 1) - r2 * Rational(p2 - 1)) / Rational(p1 - p2);
    Rational const v_over_D = u_over_D * Rational(p1) - r1 * Rational(p1 - 1);
    Rational const u = u_over_D * Rational(D);
    Rational const v = v_over_D * Rational(D);
    if (u.denominator() != 1 || v.denominator() != 1)
        throw InputError("modulus D too small for this family");
    return SlopeForm{u.numerator(), v.numerator(), D, mod(p1, D)};
}

Rational predict_ord(SlopeForm const& form, std::int64_t p, std::string* warning) {
    if (warning && form.residue && mod(p, form.D) != *form.residue)
        *warning = "p=" + std::to_string(p) + " is not in the fitted class " + std::to_string(*form.residue) +
                   " mod " + std::to_string(form.D);
    return Rational(form.u * p - form.v, form.D * (p - 1));
}

bool ClassificationReport::all_validated() const {
    return std::all_of(classes.begin(), classes.end(), [](auto const& c) {
        return c.status == "validated" || c.status.starts_with("skipped");
    });
}

std::vector<NewtonPoint> family_points(std::vector<std::int64_t> const& pattern, std::int64_t p, Engine engine) {
    int const d = pattern_degree(pattern);
    Field const field = build_field(static_cast<std::uint32_t>(p), 1);
    PolySpec const f = poly_from_pattern(pattern, field);
    if (f.degree() != d)
        throw InputError("pattern loses its leading term mod " + std::to_string(p));
    EngineRun run = run_engines(f, engine);
    bool const marker = std::any_of(run.points.begin(), run.points.end(),
                                    [](auto const& q) { return q.ord.is_lower_bound(); });
    if (marker)
        return newton_points_direct(f);
    return run.points;
}

ClassificationReport classify_points(std::vector<std::int64_t> const& pattern,
                                     std::map<std::int64_t, std::vector<NewtonPoint>> const& valuations,
                                     std::optional<std::int64_t> D, Engine engine) {
    int const d = pattern_degree(pattern);
    if (d < 2)
        throw InputError("pattern must have degree >= 2");
    std::vector<std::int64_t> ladder;
    if (D) {
        ladder = {*D};
    } else {
        std::int64_t l = 1;
        for (int k = 1; k <= d; ++k)
            l = std::lcm(l, std::int64_t(k));
        for (std::int64_t c : {std::int64_t(d), std::int64_t(2 * d), l})
            if (std::find(ladder.begin(), ladder.end(), c) == ladder.end())
                ladder.push_back(c);
    }
    std::vector<std::int64_t> tried;
    ClassificationReport rep;
    for (std::int64_t cand : ladder) {
        tried.push_back(cand);
        rep = classify_with(pattern, d, valuations, cand, engine);
        bool const too_small =
            std::any_of(rep.classes.begin(), rep.classes.end(), [](auto const& c) { return c.status == "D too small"; });
        if (!too_small)
            break;
    }
    rep.tried_moduli = tried;
    return rep;
}

ClassificationReport classify_family(std::vector<std::int64_t> const& pattern, std::vector<std::int64_t> const& primes,
                                     std::optional<std::int64_t> D, Engine engine, int jobs) {
    int const d = pattern_degree(pattern);
    if (d < 2)
        throw InputError("pattern must have degree >= 2");
    std::vector<std::int64_t> ps = primes;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    std::vector<std::string> notices;
    std::vector<std::int64_t> todo;
    for (std::int64_t p : ps) {
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
            throw InputError(std::to_string(p) + ": not prime");
        if (p <= d)
            notices.push_back("p=" + std::to_string(p) + " skipped: requires d < p");
        else
            todo.push_back(p);
    }

    std::vector<std::optional<std::vector<NewtonPoint>>> results(todo.size());
    std::vector<std::string> errors(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
            try {
                results[k] = family_points(pattern, todo[k], engine);
            } catch (std::exception const& e) {
                errors[k] = e.what();
            }
        }
    };
    int const n_threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::map<std::int64_t, std::vector<NewtonPoint>> vals;
    for (std::size_t k = 0; k < todo.size(); ++k) {
        if (results[k])
            vals[todo[k]] = *results[k];
        else
            notices.push_back("p=" + std::to_string(todo[k]) + " failed: " + errors[k]);
    }
    ClassificationReport rep = classify_points(pattern, vals, D, engine);
    notices.insert(notices.end(), rep.notices.begin(), rep.notices.end());
    rep.notices = std::move(notices);
    return rep;
}

} // namespace lpoly
