#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lpoly/cyclotomic.hpp"
#include "lpoly/direct.hpp"
#include "lpoly/dwork.hpp"
#include "lpoly/engine.hpp"
#include "lpoly/polygon.hpp"

namespace lpoly {

using Json = nlohmann::json;

/* Decimal strings: big integers survive any JSON reader. */
Json to_json(CycInt const& x);
CycInt cyc_from_json(std::uint32_t p, Json const& j);

Json to_json(std::vector<NewtonPoint> const& points); // [{"n":1,"ord":"1/3"}, ...]
std::vector<NewtonPoint> points_from_json(Json const& j);

Json to_json(LPolynomial const& L);
Json to_json(PrecisionCertificate const& c);
Json to_json(DworkResult const& r);

/* {d, vertices: [["n","a/b"], ...], slopes: ["a/b", ...]} */
Json to_json(NewtonPolygon const& np);
NewtonPolygon polygon_from_json(Json const& j);

Json to_json(SlopeForm const& s);
Json to_json(ClassificationReport const& r);

/* Element indices of the coefficients of f (residues when m = 1). */
std::vector<std::int64_t> coefficient_indices(PolySpec const& f);

/* CSV rows p,m,d,n,ord_num,ord_den,engine. Infinity is "inf",0 and a
 * ">=" marker puts ">=" in front of the numerator. */
std::string csv_header();
std::string csv_rows(std::uint32_t p, std::uint32_t m, int d, std::vector<NewtonPoint> const& points,
                     std::string const& engine);

/* Human-readable classification table. */
std::string format_report(ClassificationReport const& r);

} // namespace lpoly
