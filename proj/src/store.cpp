#include "lpoly/store.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <openssl/evp.h>

#include "lpoly/errors.hpp"

namespace lpoly {

namespace fs = std::filesystem;

std::string record_id(Json const& inputs) {
    std::string const text = inputs.dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw InternalError("sha256 failed");
    static char const hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

Json run_inputs(PolySpec const& f, Engine engine, std::optional<std::uint32_t> K,
                std::optional<std::vector<std::int64_t>> const& pattern) {
    Json j;
    j["p"] = f.field.characteristic();
    j["m"] = f.field.degree();
    j["d"] = f.degree();
    j["coeffs"] = coefficient_indices(f);
    j["engine"] = to_string(engine);
    j["K"] = K ? Json(*K) : Json(nullptr);
    if (pattern)
        j["pattern"] = *pattern;
    return j;
}

Json run_outputs(PolySpec const& f, EngineRun const& run) {
    Json j;
    j["points"] = to_json(run.points);
    if (run.direct)
        j["direct"] = to_json(*run.direct);
    if (run.dwork)
        j["dwork"] = to_json(*run.dwork);
    if (run.engine == Engine::Both)
        j["engines_agree"] = run.agree;
    try {
        NewtonPolygon const np = lower_hull(run.points, f.degree());
        NewtonPolygon const hp = hodge_polygon(f.degree());
        j["polygon"] = to_json(np);
        j["hodge"] = to_json(hp);
        j["above_hodge"] = lies_above(np, hp);
        j["equals_hodge"] = np == hp;
    } catch (std::exception const& e) {
        j["polygon"] = nullptr;
        j["polygon_error"] = e.what();
    }
    return j;
}

RunRecord make_record(Json inputs, Json outputs) {
    RunRecord r;
    r.id = record_id(inputs);
    r.version = kArtifactVersion;
    r.inputs = std::move(inputs);
    r.outputs = std::move(outputs);
    auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    r.created = buf;
    return r;
}

Json to_json(RunRecord const& r) {
    return {{"record", {{"id", r.id}, {"version", r.version}, {"inputs", r.inputs}, {"outputs", r.outputs}}},
            {"envelope", {{"created", r.created}}}};
}

RunRecord record_from_json(Json const& j) {
    RunRecord r;
    Json const& rec = j.at("record");
    r.id = rec.at("id").get<std::string>();
    r.version = rec.at("version").get<std::string>();
    r.inputs = rec.at("inputs");
    r.outputs = rec.at("outputs");
    if (j.contains("envelope"))
        r.created = j["envelope"].value("created", "");
    return r;
}

StoreConfig StoreConfig::resolve(std::optional<std::string> const& flag) {
    StoreConfig c;
    if (flag && !flag->empty())
        c.root = *flag;
    else if (char const* env = std::getenv("LPOLY_STORE"); env && *env)
        c.root = env;
    else
        c.root = "lpoly-store";
    return c;
}

Store::Store(StoreConfig config) : config_(std::move(config)) {}

fs::path Store::shard(int d, std::uint32_t p) const {
    return config_.root / ("d" + std::to_string(d)) / ("p" + std::to_string(p) + ".jsonl");
}

bool Store::put(RunRecord const& r) {
    std::lock_guard lock(mu_);
    fs::path const file = shard(r.inputs.at("d").get<int>(), r.inputs.at("p").get<std::uint32_t>());
    if (std::ifstream in{file}) {
        for (std::string line; std::getline(in, line);)
            if (!line.empty() && Json::parse(line).at("record").at("id") == r.id)
                return false;
    }
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    std::ofstream out(file, std::ios::app);
    if (!out)
        throw ComputeError("cannot write store shard " + file.string());
    out << to_json(r).dump() << '\n';
    return true;
}

std::optional<RunRecord> Store::get(std::string const& id) const {
    for (auto const& r : all())
        if (r.id == id)
            return r;
    return std::nullopt;
}

std::vector<RunRecord> Store::all() const {
    std::lock_guard lock(mu_);
    std::vector<RunRecord> out;
    std::error_code ec;
    if (!fs::exists(config_.root, ec))
        return out;
    std::vector<fs::path> files;
    for (auto const& e : fs::recursive_directory_iterator(config_.root, ec))
        if (e.is_regular_file() && e.path().extension() == ".jsonl")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (auto const& f : files) {
        std::ifstream in(f);
        for (std::string line; std::getline(in, line);)
            if (!line.empty())
                out.push_back(record_from_json(Json::parse(line)));
    }
    return out;
}

} // namespace lpoly
