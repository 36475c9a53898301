#include "lpoly/engine.hpp"

#include "lpoly/errors.hpp"

namespace lpoly {

Engine parse_engine(std::string_view text) {
    if (text == "direct")
        return Engine::Direct;
    if (text == "dwork")
        return Engine::Dwork;
    if (text == "both")
        return Engine::Both;
    throw InputError("unknown engine '" + std::string(text) + "' (direct, dwork, both)");
}

std::string to_string(Engine e) {
    switch (e) {
    case Engine::Direct:
        return "direct";
    case Engine::Dwork:
        return "dwork";
    case Engine::Both:
        return "both";
    }
    return "?";
}

bool points_consistent(std::vector<NewtonPoint> const& dwork, std::vector<NewtonPoint> const& direct) {
    if (dwork.size() != direct.size())
        return false;
    for (std::size_t i = 0; i < dwork.size(); ++i) {
        if (dwork[i].n != direct[i].n)
            return false;
        if (!dwork[i].ord.admits(direct[i].ord))
            return false;
    }
    return true;
}

EngineRun run_engines(PolySpec const& f, Engine engine, std::optional<std::uint32_t> K) {
    EngineRun run;
    run.engine = engine;
    if (engine != Engine::Direct) {
        run.dwork = run_dwork(f, K);
        run.dwork_points = run.dwork->points;
    }
    if (engine != Engine::Dwork) {
        run.direct = l_coeffs(f);
        run.direct_points = newton_points(*run.direct);
    }
    if (engine == Engine::Both) {
        run.agree = points_consistent(run.dwork_points, run.direct_points);
        if (!run.agree)
            throw ComputeError("engines disagree on the valuations of L(f,T)");
    }
    run.points = engine == Engine::Dwork ? run.dwork_points : run.direct_points;
    return run;
}

} // namespace lpoly
