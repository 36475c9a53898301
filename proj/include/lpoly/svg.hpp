#pragma once

#include <string>

#include "lpoly/polygon.hpp"

namespace lpoly {

/* SVG 1.1 document overlaying NP (solid) and HP (dashed), vertices
 * labelled with exact coordinates such as "(1, 1/3)". */
std::string render_svg(NewtonPolygon const& np, NewtonPolygon const& hp, std::string const& title);

} // namespace lpoly
