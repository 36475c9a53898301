#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "lpoly/io.hpp"
#include "lpoly/store.hpp"
#include "test_support.hpp"

using namespace lpoly;
using lpoly::testing::cyc;
using lpoly::testing::poly;
using lpoly::testing::q;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("lpoly-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunRecord sample_record(std::uint32_t p, std::vector<std::int64_t> a, Engine e = Engine::Direct) {
    PolySpec const f = poly(p, a);
    EngineRun const run = run_engines(f, e);
    return make_record(run_inputs(f, e, std::nullopt), run_outputs(f, run));
}

} // namespace

TEST_CASE("valuation text round trip") {
    for (Valuation v : {Valuation::finite(q(1, 3)), Valuation::finite(q(2)), Valuation::infinite(),
                        Valuation::at_least(q(9, 4))})
        CHECK(Valuation::parse(v.to_string()) == v);
    CHECK(Valuation::finite(q(2)).to_string() == "2/1");
    CHECK(Valuation::infinite().to_string() == "inf");
    CHECK(Valuation::at_least(q(9, 4)).to_string() == ">=9/4");
}

TEST_CASE("cyclotomic integers serialize as decimal strings") {
    CycInt big = cyc(7, {1, -2, 3});
    big *= mpz_class("123456789012345678901234567890");
    Json const j = to_json(big);
    CHECK(j[0] == "123456789012345678901234567890");
    CHECK(cyc_from_json(7, j) == big);
}

TEST_CASE("L-polynomial JSON") {
    LPolynomial const L = l_coeffs(poly(7, {1, 0, 1}));
    Json const j = to_json(L);
    CHECK(j["p"] == 7);
    CHECK(j["m"] == 1);
    CHECK(j["d"] == 3);
    CHECK(j["coeffs"] == Json::array({1, 0, 1}));
    CHECK(j["M_n"][1][0] == "7");
    CHECK(j["valuations"] == Json::array({"1/3", "1/1"}));
}

TEST_CASE("polygon JSON round trip") {
    NewtonPolygon const np = lower_hull({{1, Valuation::finite(q(1, 3))}, {2, Valuation::finite(q(1))}}, 3);
    Json const j = to_json(np);
    CHECK(j["vertices"][1] == Json::array({"1", "1/3"}));
    CHECK(polygon_from_json(j) == np);
    CHECK(points_from_json(to_json(std::vector<NewtonPoint>{{1, Valuation::infinite()}}))[0].ord.is_infinite());
}

TEST_CASE("CSV encoding") {
    std::vector<NewtonPoint> const pts = {
        {1, Valuation::infinite()}, {2, Valuation::finite(q(1))}, {3, Valuation::at_least(q(5, 2))}};
    CHECK(csv_header() == "p,m,d,n,ord_num,ord_den,engine\n");
    CHECK(csv_rows(5, 1, 4, pts, "dwork") == "5,1,4,1,inf,0,dwork\n5,1,4,2,1,1,dwork\n5,1,4,3,>=5,2,dwork\n");
}

TEST_CASE("record ids depend on inputs only") {
    RunRecord const a = sample_record(7, {1, 0, 1});
    RunRecord const b = sample_record(7, {1, 0, 1});
    CHECK(a.id == b.id);
    CHECK(a.id.size() == 64);
    CHECK(a == b);
    CHECK(a.version == kArtifactVersion);
    CHECK(sample_record(7, {1, 0, 2}).id != a.id);
    CHECK(sample_record(7, {1, 0, 1}, Engine::Both).id != a.id);
    CHECK(record_id(Json{{"a", 1}}) == record_id(Json::parse(R"({ "a" : 1 })")));
    // SHA-256 of the empty JSON object "{}"
    CHECK(record_id(Json::object()) == "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST_CASE("record outputs") {
    Json const out = sample_record(7, {1, 0, 1}, Engine::Both).outputs;
    CHECK(out["engines_agree"] == true);
    CHECK(out["above_hodge"] == true);
    CHECK(out["equals_hodge"] == true);
    CHECK(out.contains("dwork"));
    Json const flat = sample_record(5, {0, 1}).outputs;
    CHECK(flat["equals_hodge"] == true);
}

TEST_CASE("record JSON round trip") {
    RunRecord const r = sample_record(5, {1, 0, 0, 1});
    Json const j = to_json(r);
    CHECK(j.contains("record"));
    CHECK(j["envelope"]["created"] == r.created);
    RunRecord const back = record_from_json(j);
    CHECK(back == r);
    CHECK(back.created == r.created);
}

TEST_CASE("store layout, deduplication and lookup") {
    TempDir tmp;
    Store store(StoreConfig{tmp.path});
    RunRecord const r = sample_record(7, {1, 0, 1});
    CHECK(store.shard(3, 7) == tmp.path / "d3" / "p7.jsonl");
    CHECK(store.put(r));
    CHECK_FALSE(store.put(r));
    CHECK(store.put(sample_record(11, {1, 0, 0, 1})));
    CHECK(fs::exists(tmp.path / "d4" / "p11.jsonl"));

    std::ifstream in(store.shard(3, 7));
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        ++lines;
    CHECK(lines == 1);

    auto const got = store.get(r.id);
    REQUIRE(got);
    CHECK(*got == r);
    CHECK_FALSE(store.get("0000"));
    CHECK(store.all().size() == 2);
}

TEST_CASE("concurrent writers") {
    TempDir tmp;
    Store store(StoreConfig{tmp.path});
    std::vector<RunRecord> recs;
    for (std::int64_t a = 1; a < 7; ++a)
        recs.push_back(sample_record(7, {a, 0, 1}));
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t)
        ts.emplace_back([&] {
            for (auto const& r : recs)
                store.put(r);
        });
    for (auto& t : ts)
        t.join();
    CHECK(store.all().size() == recs.size());
}

TEST_CASE("store location resolution") {
    CHECK(StoreConfig::resolve(std::string("/tmp/x")).root == fs::path("/tmp/x"));
    ::setenv("LPOLY_STORE", "/tmp/from-env", 1);
    CHECK(StoreConfig::resolve(std::nullopt).root == fs::path("/tmp/from-env"));
    CHECK(StoreConfig::resolve(std::string("/tmp/y")).root == fs::path("/tmp/y"));
    ::unsetenv("LPOLY_STORE");
    CHECK(StoreConfig::resolve(std::nullopt).root == fs::path("lpoly-store"));
}

TEST_CASE("classification report JSON") {
    ClassificationReport const rep = classify_family({1, 0, 1}, {5, 7, 11, 13, 17, 19}, 3, Engine::Direct);
    Json const j = to_json(rep);
    CHECK(j["D"] == 3);
    CHECK(j["classes"].size() == 2);
    CHECK(j["classes"][0]["status"] == "validated");
    CHECK_FALSE(format_report(rep).empty());
}
