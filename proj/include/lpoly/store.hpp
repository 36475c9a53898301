#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lpoly/engine.hpp"
#include "lpoly/io.hpp"

namespace lpoly {

inline constexpr char kArtifactVersion[] = "1.0.0";

/* One computation. `id` hashes the canonical inputs only; the creation
 * time sits in an envelope that is not part of the record proper. */
struct RunRecord {
    std::string id;
    std::string version;
    Json inputs;
    Json outputs;
    std::string created; // envelope

    bool operator==(RunRecord const& o) const {
        return id == o.id && version == o.version && inputs == o.inputs && outputs == o.outputs;
    }
};

/* Lowercase hex SHA-256 of inputs.dump() (keys sorted, no whitespace). */
std::string record_id(Json const& inputs);

Json run_inputs(PolySpec const& f, Engine engine, std::optional<std::uint32_t> K,
                std::optional<std::vector<std::int64_t>> const& pattern = std::nullopt);
Json run_outputs(PolySpec const& f, EngineRun const& run);
RunRecord make_record(Json inputs, Json outputs);

Json to_json(RunRecord const& r); // {"record": {...}, "envelope": {"created": ...}}
RunRecord record_from_json(Json const& j);

struct StoreConfig {
    std::filesystem::path root;
    int format_version = 1;

    /* flag > $LPOLY_STORE > ./lpoly-store */
    static StoreConfig resolve(std::optional<std::string> const& flag);
};

/* Append-only JSON-lines, one file per (d, p): root/d<d>/p<p>.jsonl. */
class Store {
public:
    explicit Store(StoreConfig config);

    std::filesystem::path shard(int d, std::uint32_t p) const;

    /* False (and nothing written) when a record with the same id exists. */
    bool put(RunRecord const& r);
    std::optional<RunRecord> get(std::string const& id) const;
    std::vector<RunRecord> all() const;

    StoreConfig const& config() const { return config_; }

private:
    StoreConfig config_;
    mutable std::mutex mu_;
};

} // namespace lpoly
