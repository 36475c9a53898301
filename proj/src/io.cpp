#include "lpoly/io.hpp"

#include <sstream>

#include "lpoly/errors.hpp"

namespace lpoly {

Json to_json(CycInt const& x) {
    Json a = Json::array();
    for (auto const& c : x.coeffs())
        a.push_back(c.get_str());
    return a;
}

CycInt cyc_from_json(std::uint32_t p, Json const& j) {
    std::vector<mpz_class> cs;
    for (auto const& s : j)
        cs.emplace_back(s.get<std::string>());
    return CycInt::from_coeffs(p, std::move(cs));
}

Json to_json(std::vector<NewtonPoint> const& points) {
    Json a = Json::array();
    for (auto const& q : points)
        a.push_back({{"n", q.n}, {"ord", q.ord.to_string()}});
    return a;
}

std::vector<NewtonPoint> points_from_json(Json const& j) {
    std::vector<NewtonPoint> out;
    for (auto const& e : j)
        out.push_back({e.at("n").get<int>(), Valuation::parse(e.at("ord").get<std::string>())});
    return out;
}

std::vector<std::int64_t> coefficient_indices(PolySpec const& f) {
    std::vector<std::int64_t> out;
    for (auto const& c : f.coeffs)
        out.push_back(static_cast<std::int64_t>(f.field.index(c)));
    return out;
}

Json to_json(LPolynomial const& L) {
    Json j;
    j["p"] = L.f.field.characteristic();
    j["m"] = L.f.field.degree();
    j["d"] = L.degree();
    j["coeffs"] = coefficient_indices(L.f);
    Json sums = Json::array(), ms = Json::array(), vals = Json::array();
    for (auto const& s : L.sums)
        sums.push_back(to_json(s));
    for (auto const& m : L.coeffs) {
        ms.push_back(to_json(m));
        vals.push_back(valuation(m).to_string());
    }
    j["S_r"] = sums;
    j["M_n"] = ms;
    j["valuations"] = vals; // ord_p
    return j;
}

Json to_json(PrecisionCertificate const& c) {
    Json losses = Json::array();
    for (auto const& l : c.losses)
        losses.push_back({{"source", l.source}, {"amount", to_string(l.amount)}});
    return {{"initial", to_string(c.initial)}, {"target", to_string(c.target())}, {"losses", losses}};
}

Json to_json(DworkResult const& r) {
    Json j;
    j["p"] = r.gamma.p;
    j["d"] = r.gamma.d;
    j["K"] = r.gamma.K;
    j["r_max"] = r.gamma.r_max;
    j["certificate"] = to_json(r.gamma.certificate);
    Json m = Json::array();
    for (auto const& row : r.gamma.m) {
        Json jr = Json::array();
        for (auto const& e : row)
            jr.push_back(e.valuation().to_string());
        m.push_back(jr);
    }
    j["m_ij"] = m;
    Json ms = Json::array();
    for (auto const& q : r.points)
        ms.push_back(q.ord.to_string());
    j["M_n"] = ms;
    return j;
}

Json to_json(NewtonPolygon const& np) {
    Json vs = Json::array(), ss = Json::array();
    for (auto const& v : np.vertices)
        vs.push_back({std::to_string(v.x), to_string(v.y)});
    for (auto const& s : np.slopes)
        ss.push_back(to_string(s));
    return {{"d", np.d}, {"vertices", vs}, {"slopes", ss}};
}

NewtonPolygon polygon_from_json(Json const& j) {
    NewtonPolygon np;
    np.d = j.at("d").get<int>();
    for (auto const& v : j.at("vertices"))
        np.vertices.push_back({std::stoll(v.at(0).get<std::string>()), parse_rational(v.at(1).get<std::string>())});
    for (auto const& s : j.at("slopes"))
        np.slopes.push_back(parse_rational(s.get<std::string>()));
    return np;
}

Json to_json(SlopeForm const& s) {
    Json j = {{"u", s.u}, {"v", s.v}, {"D", s.D}};
    if (s.residue)
        j["residue"] = *s.residue;
    return j;
}

Json to_json(ClassificationReport const& r) {
    Json j;
    j["pattern"] = r.pattern;
    j["d"] = r.d;
    j["D"] = r.D;
    j["tried_moduli"] = r.tried_moduli;
    j["engine"] = to_string(r.engine);
    Json vals = Json::object();
    for (auto const& [p, pts] : r.valuations) {
        Json a = Json::array();
        for (auto const& q : pts)
            a.push_back(q.ord.to_string());
        vals[std::to_string(p)] = a;
    }
    j["valuations"] = vals;
    Json classes = Json::array();
    for (auto const& c : r.classes) {
        Json jc;
        jc["residue"] = c.residue;
        jc["primes"] = c.primes;
        jc["fit_primes"] = c.fit_primes;
        jc["status"] = c.status;
        Json fits = Json::array();
        for (std::size_t k = 0; k < c.fits.size(); ++k) {
            auto const& f = c.fits[k];
            Json jf = {{"n", f.n}};
            if (f.form)
                jf["form"] = to_json(*f.form);
            else if (f.vanishes)
                jf["form"] = "inf";
            else
                jf["form"] = nullptr;
            if (k < c.limit_ords.size() && c.limit_ords[k])
                jf["limit"] = to_string(*c.limit_ords[k]);
            fits.push_back(jf);
        }
        jc["fits"] = fits;
        Json checks = Json::array();
        for (auto const& k : c.checks)
            checks.push_back({{"p", k.p},
                              {"n", k.n},
                              {"predicted", k.predicted.to_string()},
                              {"observed", k.observed.to_string()},
                              {"match", k.match}});
        jc["checks"] = checks;
        classes.push_back(jc);
    }
    j["classes"] = classes;
    j["notices"] = r.notices;
    return j;
}

std::string csv_header() { return "p,m,d,n,ord_num,ord_den,engine\n"; }

std::string csv_rows(std::uint32_t p, std::uint32_t m, int d, std::vector<NewtonPoint> const& points,
                     std::string const& engine) {
    std::ostringstream out;
    for (auto const& q : points) {
        out << p << ',' << m << ',' << d << ',' << q.n << ',';
        if (q.ord.is_infinite())
            out << "inf,0";
        else
            out << (q.ord.is_lower_bound() ? ">=" : "") << q.ord.value().numerator() << ','
                << q.ord.value().denominator();
        out << ',' << engine << '\n';
    }
    return out.str();
}

std::string format_report(ClassificationReport const& r) {
    std::ostringstream out;
    out << "pattern";
    for (auto c : r.pattern)
        out << ' ' << c;
    out << "  d=" << r.d << "  D=" << r.D << "  engine=" << to_string(r.engine) << '\n';
    out << "\n  p   class  ord_p M_1 .. M_" << r.d - 1 << '\n';
    for (auto const& [p, pts] : r.valuations) {
        out << "  " << p << "  " << p % r.D << "   ";
        for (auto const& q : pts)
            out << ' ' << q.ord.to_string();
        out << '\n';
    }
    for (auto const& c : r.classes) {
        out << "\nclass " << c.residue << " mod " << r.D << ": " << c.status << '\n';
        for (std::size_t k = 0; k < c.fits.size(); ++k) {
            auto const& f = c.fits[k];
            out << "  M_" << f.n << ": ";
            if (f.form)
                out << "(u,v) = (" << f.form->u << ", " << f.form->v << "), limit " << to_string(limit_ord(*f.form));
            else if (f.vanishes)
                out << "vanishes";
            else
                out << "no form";
            out << '\n';
        }
        for (auto const& k : c.checks)
            if (!k.match)
                out << "  mismatch at p=" << k.p << " n=" << k.n << ": predicted " << k.predicted.to_string()
                    << ", observed " << k.observed.to_string() << '\n';
    }
    for (auto const& n : r.notices)
        out << "note: " << n << '\n';
    return out.str();
}

} // namespace lpoly
