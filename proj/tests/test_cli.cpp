#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out; // stdout and stderr interleaved
};

fs::path& store_dir() {
    static fs::path dir = [] {
        std::random_device rd;
        fs::path p = fs::temp_directory_path() / ("lpoly-cli-" + std::to_string(rd()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

Result run(std::string const& args, bool merge = true) {
    char const* bin = std::getenv("LPOLY_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " --store " + store_dir().string() + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    int const status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(std::string const& hay, std::string const& needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("compute prints valuations and the polygon") {
    Result const r = run("compute --p 7 --poly 1,0,1 --engine both", false);
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["record"]["outputs"]["points"][0]["ord"] == "1/3");
    CHECK(j["record"]["outputs"]["engines_agree"] == true);
    CHECK(j["record"]["outputs"]["equals_hodge"] == true);
    CHECK(j["record"]["id"].get<std::string>().size() == 64);
}

TEST_CASE("csv output") {
    Result const r = run("compute --p 5 --poly 0,0,1 --out csv --no-store", false);
    REQUIRE(r.code == 0);
    CHECK(has(r.out, "p,m,d,n,ord_num,ord_den,engine"));
    CHECK(has(r.out, "5,1,3,1,inf,0,direct"));
    CHECK(has(r.out, "5,1,3,2,1,1,direct"));
}

TEST_CASE("extension field input") {
    Result const r = run("compute --p 5 --m 2 --poly 5,0,1 --no-store", false);
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["record"]["outputs"]["points"][0]["ord"] == "1/2");
    CHECK(j["record"]["outputs"]["points"][1]["ord"] == "1/1");
}

TEST_CASE("input errors exit with 2") {
    Result r = run("compute --p 4 --poly 1,1");
    CHECK(r.code == 2);
    CHECK(has(r.out, "not prime"));

    r = run("compute --p 3 --poly 1,0,1");
    CHECK(r.code == 2);
    CHECK(has(r.out, "degree must be < p"));

    r = run("compute --p 7 --poly 1,0");
    CHECK(r.code == 2);
    CHECK(has(r.out, "leading coefficient"));

    r = run("compute --p 3 --m 2 --poly 0,1 --engine dwork");
    CHECK(r.code == 2);
    CHECK(has(r.out, "dwork engine requires m=1"));

    r = run("compute --p 7 --poly 1,0,1 --engine turbo");
    CHECK(r.code == 2);

    r = run("compute --poly 1,0,1");
    CHECK(r.code == 2);

    r = run("plot --id deadbeef -o " + (store_dir() / "x.svg").string());
    CHECK(r.code == 2);
    CHECK(has(r.out, "record not found"));
}

TEST_CASE("compute errors exit with 3") {
    Result const r = run("compute --p 101 --m 5 --poly 1,0,1 --no-store");
    CHECK(r.code == 3);
    CHECK(has(r.out, "field too large"));
}

TEST_CASE("verify runs both engines") {
    Result const r = run("verify --p 13 --poly 1,2,0,3,1 --no-store", false);
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["record"]["outputs"]["engines_agree"] == true);
}

TEST_CASE("scan persists one record per prime, idempotently") {
    Result r = run("scan --pattern 1,0,0,1 --prime-range 5:20 --out csv", false);
    REQUIRE(r.code == 0);
    CHECK(has(r.out, "13,1,4,3,3,2,direct"));
    auto count = [] {
        std::size_t lines = 0;
        for (auto const& e : fs::recursive_directory_iterator(store_dir()))
            if (e.path().extension() == ".jsonl") {
                std::ifstream in(e.path());
                std::string line;
                while (std::getline(in, line))
                    ++lines;
            }
        return lines;
    };
    std::size_t const first = count();
    CHECK(first >= 5); // 5, 7, 11, 13, 17, 19
    r = run("scan --pattern 1,0,0,1 --primes 5,7,11,13,17,19 --out json", false);
    REQUIRE(r.code == 0);
    CHECK(count() == first);
}

TEST_CASE("classify reports validated classes") {
    Result const r = run("classify --pattern 1,0,1 --primes 5,7,11,13,17,19,23,31 --modulus 3 --out json", false);
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["D"] == 3);
    for (auto const& c : j["classes"])
        CHECK(c["status"] == "validated");

    Result const t = run("classify --pattern 1,0,1 --primes 5,7,11,13,17,19 --modulus 3");
    CHECK(t.code == 0);
    CHECK(has(t.out, "validated"));
}

TEST_CASE("plot writes an SVG") {
    fs::path const svg = store_dir() / "np.svg";
    Result r = run("plot --p 7 --poly 1,0,1 -o " + svg.string());
    REQUIRE(r.code == 0);
    std::ifstream in(svg);
    std::string const text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(has(text, "<svg"));
    CHECK(has(text, "(1, 1/3)"));

    Result const c = run("compute --p 11 --poly 2,3,1", false);
    REQUIRE(c.code == 0);
    std::string const id = nlohmann::json::parse(c.out)["record"]["id"];
    fs::path const svg2 = store_dir() / "byid.svg";
    r = run("plot --id " + id + " -o " + svg2.string());
    CHECK(r.code == 0);
    CHECK(fs::exists(svg2));
}
