// lpoly: L-functions of exponential sums, their Newton polygons, and
// residue-class slope classification.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "lpoly/engine.hpp"
#include "lpoly/errors.hpp"
#include "lpoly/field.hpp"
#include "lpoly/io.hpp"
#include "lpoly/polygon.hpp"
#include "lpoly/store.hpp"
#include "lpoly/svg.hpp"

using namespace lpoly;

namespace {

struct ComputeOpts {
    std::uint32_t p = 0;
    std::uint32_t m = 1;
    std::string poly;
    std::string engine = "direct";
    std::optional<std::uint32_t> prec;
    std::string out = "json";
    bool no_store = false;
};

struct FamilyOpts {
    std::string pattern;
    std::string primes;
    std::string prime_range;
    std::string engine = "direct";
    int jobs = 1;
    std::string out = "table";
    std::optional<std::int64_t> modulus;
};

struct PlotOpts {
    std::string id;
    std::uint32_t p = 0;
    std::uint32_t m = 1;
    std::string poly;
    std::string engine = "direct";
    std::string output = "plot.svg";
};

std::vector<std::int64_t> prime_list(FamilyOpts const& o) {
    std::vector<std::int64_t> ps;
    if (!o.primes.empty())
        ps = parse_int_list(o.primes);
    if (!o.prime_range.empty()) {
        auto const sep = o.prime_range.find_first_of(":-");
        if (sep == std::string::npos)
            throw InputError("--prime-range expects LO:HI");
        std::int64_t const lo = std::stoll(o.prime_range.substr(0, sep));
        std::int64_t const hi = std::stoll(o.prime_range.substr(sep + 1));
        for (std::int64_t q = std::max<std::int64_t>(lo, 2); q <= hi; ++q)
            if (is_prime(static_cast<std::uint64_t>(q)))
                ps.push_back(q);
    }
    if (ps.empty())
        throw InputError("no primes given (use --primes or --prime-range)");
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

int degree_of(std::vector<std::int64_t> const& pattern) {
    int d = static_cast<int>(pattern.size());
    while (d > 0 && pattern[d - 1] == 0)
        --d;
    return d;
}

RunRecord compute_record(PolySpec const& f, Engine engine, std::optional<std::uint32_t> K,
                         std::optional<std::vector<std::int64_t>> const& pattern = std::nullopt) {
    if (engine != Engine::Direct && f.field.degree() != 1)
        throw InputError("dwork engine requires m=1");
    EngineRun const run = run_engines(f, engine, K);
    return make_record(run_inputs(f, engine, K, pattern), run_outputs(f, run));
}

int cmd_compute(ComputeOpts const& o, Engine engine, Store& store) {
    Field const field = build_field(o.p, o.m);
    PolySpec const f = parse_poly(field, o.poly);
    RunRecord const rec = compute_record(f, engine, o.prec);
    if (!o.no_store)
        store.put(rec);
    if (o.out == "csv") {
        std::cout << csv_header();
        auto const& out = rec.outputs;
        if (out.contains("direct"))
            std::cout << csv_rows(o.p, o.m, f.degree(), points_from_json(out["points"]), "direct");
        if (out.contains("dwork")) {
            std::vector<NewtonPoint> pts;
            int n = 1;
            for (auto const& v : out["dwork"]["M_n"])
                pts.push_back({n++, Valuation::parse(v.get<std::string>())});
            std::cout << csv_rows(o.p, o.m, f.degree(), pts, "dwork");
        }
    } else {
        std::cout << to_json(rec).dump(2) << '\n';
    }
    return 0;
}

struct PrimeResult {
    std::int64_t p = 0;
    std::optional<RunRecord> record;
    std::string error;
};

/* Compute (or fetch from the store) one record per prime, `jobs` at a time. */
std::vector<PrimeResult> run_family(std::vector<std::int64_t> const& pattern, std::vector<std::int64_t> const& primes,
                                    Engine engine, int jobs, Store& store, bool reuse,
                                    std::vector<std::string>& notices) {
    int const d = degree_of(pattern);
    if (d < 1)
        throw InputError("pattern has no nonzero coefficient");
    std::vector<PrimeResult> todo;
    for (std::int64_t p : primes) {
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
            notices.push_back("p=" + std::to_string(p) + " skipped: not prime");
            continue;
        }
        if (p <= d) {
            notices.push_back("p=" + std::to_string(p) + " skipped: requires d < p");
            continue;
        }
        todo.push_back({p, std::nullopt, ""});
    }

    std::vector<RunRecord> cached;
    if (reuse)
        cached = store.all();

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
            auto& slot = todo[k];
            try {
                Field const field = build_field(static_cast<std::uint32_t>(slot.p), 1);
                PolySpec const f = poly_from_pattern(pattern, field);
                if (f.degree() != d)
                    throw InputError("pattern loses its leading term mod " + std::to_string(slot.p));
                std::string const id = record_id(run_inputs(f, engine, std::nullopt, pattern));
                auto hit = std::find_if(cached.begin(), cached.end(), [&](auto const& r) { return r.id == id; });
                if (hit != cached.end())
                    slot.record = *hit;
                else
                    slot.record = compute_record(f, engine, std::nullopt, pattern);
            } catch (std::exception const& e) {
                slot.error = e.what();
            }
        }
    };
    int const n = std::clamp(jobs, 1, std::max(1, static_cast<int>(todo.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    for (auto const& r : todo) {
        if (r.record)
            store.put(*r.record);
        else
            notices.push_back("p=" + std::to_string(r.p) + " failed: " + r.error);
    }
    return todo;
}

/* Dwork ">=" markers are settled by the direct engine. */
std::vector<NewtonPoint> settled_points(RunRecord const& r, std::vector<std::int64_t> const& pattern) {
    auto pts = points_from_json(r.outputs.at("points"));
    if (std::any_of(pts.begin(), pts.end(), [](auto const& q) { return q.ord.is_lower_bound(); })) {
        Field const field = build_field(r.inputs.at("p").get<std::uint32_t>(), 1);
        pts = newton_points_direct(poly_from_pattern(pattern, field));
    }
    return pts;
}

int cmd_scan(FamilyOpts const& o, Store& store) {
    auto const pattern = parse_int_list(o.pattern);
    Engine const engine = parse_engine(o.engine);
    std::vector<std::string> notices;
    auto const results = run_family(pattern, prime_list(o), engine, o.jobs, store, false, notices);
    int const d = degree_of(pattern);

    if (o.out == "json") {
        Json j;
        j["pattern"] = pattern;
        j["engine"] = o.engine;
        Json rows = Json::array();
        for (auto const& r : results)
            if (r.record)
                rows.push_back(to_json(*r.record));
        j["records"] = rows;
        j["notices"] = notices;
        std::cout << j.dump(2) << '\n';
    } else if (o.out == "csv") {
        std::cout << csv_header();
        for (auto const& r : results)
            if (r.record)
                std::cout << csv_rows(static_cast<std::uint32_t>(r.p), 1, d,
                                      points_from_json(r.record->outputs.at("points")), o.engine);
    } else {
        std::cout << "p\tp mod " << d << "\tp mod " << 2 * d << "\tord_p M_1..M_" << d - 1 << '\n';
        for (auto const& r : results) {
            if (!r.record)
                continue;
            std::cout << r.p << '\t' << r.p % d << '\t' << r.p % (2 * d) << '\t';
            for (auto const& q : points_from_json(r.record->outputs.at("points")))
                std::cout << ' ' << q.ord.to_string();
            std::cout << '\n';
        }
        std::cout << results.size() - std::count_if(results.begin(), results.end(),
                                                    [](auto const& r) { return !r.record; })
                  << " records\n";
    }
    for (auto const& n : notices)
        std::cerr << "note: " << n << '\n';
    return 0;
}

int cmd_classify(FamilyOpts const& o, Store& store) {
    auto const pattern = parse_int_list(o.pattern);
    Engine const engine = parse_engine(o.engine);
    std::vector<std::string> notices;
    auto const results = run_family(pattern, prime_list(o), engine, o.jobs, store, true, notices);
    std::map<std::int64_t, std::vector<NewtonPoint>> vals;
    for (auto const& r : results)
        if (r.record)
            vals[r.p] = settled_points(*r.record, pattern);
    ClassificationReport rep = classify_points(pattern, vals, o.modulus, engine);
    notices.insert(notices.end(), rep.notices.begin(), rep.notices.end());
    rep.notices = std::move(notices);

    if (o.out != "json")
        std::cerr << format_report(rep);
    std::cout << to_json(rep).dump(2) << '\n';
    return 0;
}

int cmd_plot(PlotOpts const& o, Store& store) {
    Json outputs, inputs;
    if (!o.id.empty()) {
        auto rec = store.get(o.id);
        if (!rec)
            throw InputError("record not found: " + o.id);
        inputs = rec->inputs;
        outputs = rec->outputs;
    } else {
        if (o.p == 0 || o.poly.empty())
            throw InputError("plot needs --id or --p and --poly");
        Field const field = build_field(o.p, o.m);
        PolySpec const f = parse_poly(field, o.poly);
        RunRecord const rec = compute_record(f, parse_engine(o.engine), std::nullopt);
        inputs = rec.inputs;
        outputs = rec.outputs;
    }
    if (outputs.at("polygon").is_null())
        throw ComputeError("no polygon in record: " + outputs.value("polygon_error", std::string("unknown")));
    NewtonPolygon const np = polygon_from_json(outputs["polygon"]);
    NewtonPolygon const hp = polygon_from_json(outputs["hodge"]);

    std::string title = "f = [" ;
    for (std::size_t k = 0; k < inputs["coeffs"].size(); ++k)
        title += (k ? "," : "") + std::to_string(inputs["coeffs"][k].get<std::int64_t>());
    title += "] over F_" + std::to_string(inputs["p"].get<std::uint32_t>());
    if (inputs["m"].get<std::uint32_t>() > 1)
        title += "^" + std::to_string(inputs["m"].get<std::uint32_t>());

    std::ofstream out(o.output);
    if (!out)
        throw InputError("cannot write " + o.output);
    out << render_svg(np, hp, title);
    std::cout << o.output << '\n';
    return 0;
}

void add_compute_flags(CLI::App* sub, ComputeOpts& o, bool with_engine) {
    sub->add_option("--p", o.p, "characteristic")->required();
    sub->add_option("--m", o.m, "base field F_q with q = p^m")->capture_default_str();
    sub->add_option("--poly", o.poly, "coefficients a1,...,ad of a1 x + ... + ad x^d")->required();
    if (with_engine)
        sub->add_option("--engine", o.engine, "direct | dwork | both")
            ->check(CLI::IsMember({"direct", "dwork", "both"}))
            ->capture_default_str();
    sub->add_option("--prec", o.prec, "p-adic digits K for the dwork engine");
    sub->add_option("--out", o.out, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_flag("--no-store", o.no_store, "do not persist the record");
}

void add_family_flags(CLI::App* sub, FamilyOpts& o) {
    sub->add_option("--pattern", o.pattern, "integer coefficients a1,...,ad, reduced mod each prime")->required();
    sub->add_option("--primes", o.primes, "comma-separated primes");
    sub->add_option("--prime-range", o.prime_range, "all primes in LO:HI");
    sub->add_option("--engine", o.engine, "direct | dwork | both")
        ->check(CLI::IsMember({"direct", "dwork", "both"}))
        ->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L-functions of exponential sums over finite fields and their Newton polygons"};
    app.require_subcommand(1);
    std::optional<std::string> store_path;
    app.add_option("--store", store_path, "record store directory (default $LPOLY_STORE or ./lpoly-store)");

    ComputeOpts compute_o, verify_o;
    auto* compute = app.add_subcommand("compute", "compute L(f,T) valuations and the Newton polygon");
    add_compute_flags(compute, compute_o, true);
    auto* verify = app.add_subcommand("verify", "compute with both engines and check they agree");
    add_compute_flags(verify, verify_o, false);

    FamilyOpts scan_o, classify_o;
    auto* scan = app.add_subcommand("scan", "valuations of one pattern across many primes");
    add_family_flags(scan, scan_o);
    scan->add_option("--out", scan_o.out, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    auto* classify = app.add_subcommand("classify", "fit (u,v,D) slope forms per residue class");
    add_family_flags(classify, classify_o);
    classify->add_option("--modulus", classify_o.modulus, "D (default: try d, 2d, lcm(1..d))");
    classify->add_option("--out", classify_o.out, "table (report on stderr) | json")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    PlotOpts plot_o;
    auto* plot = app.add_subcommand("plot", "SVG of the Newton polygon over the Hodge polygon");
    plot->add_option("--id", plot_o.id, "record id from the store");
    plot->add_option("--p", plot_o.p, "characteristic (inline mode)");
    plot->add_option("--m", plot_o.m, "extension degree (inline mode)");
    plot->add_option("--poly", plot_o.poly, "coefficients (inline mode)");
    plot->add_option("--engine", plot_o.engine, "engine (inline mode)")
        ->check(CLI::IsMember({"direct", "dwork", "both"}));
    plot->add_option("-o,--output", plot_o.output, "SVG path")->capture_default_str();

    for (auto* sub : {compute, verify, scan, classify, plot})
        sub->add_option("--store", store_path, "record store directory");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 2;
    }

    try {
        Store store(StoreConfig::resolve(store_path));
        if (*compute)
            return cmd_compute(compute_o, parse_engine(compute_o.engine), store);
        if (*verify)
            return cmd_compute(verify_o, Engine::Both, store);
        if (*scan)
            return cmd_scan(scan_o, store);
        if (*classify)
            return cmd_classify(classify_o, store);
        if (*plot)
            return cmd_plot(plot_o, store);
    } catch (InputError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (ComputeError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (InternalError const& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
