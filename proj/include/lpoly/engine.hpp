#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpoly/direct.hpp"
#include "lpoly/dwork.hpp"

namespace lpoly {

enum class Engine { Direct, Dwork, Both };

Engine parse_engine(std::string_view text); // "direct" | "dwork" | "both"
std::string to_string(Engine e);

/* Outcome of running one or both engines on a single polynomial. */
struct EngineRun {
    Engine engine = Engine::Direct;
    std::optional<LPolynomial> direct;
    std::optional<DworkResult> dwork;
    std::vector<NewtonPoint> direct_points;
    std::vector<NewtonPoint> dwork_points;
    /* What downstream code should use: direct values whenever available. */
    std::vector<NewtonPoint> points;
    bool agree = true;
};

/* Finite values equal, and every ">=" marker admits the direct value. */
bool points_consistent(std::vector<NewtonPoint> const& dwork, std::vector<NewtonPoint> const& direct);

/* Engine::Both throws ComputeError("engines disagree ...") on a mismatch. */
EngineRun run_engines(PolySpec const& f, Engine engine, std::optional<std::uint32_t> K = std::nullopt);

} // namespace lpoly
