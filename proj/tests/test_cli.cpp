#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tlsdyn/config.hpp"
#include "tlsdyn/csv_io.hpp"
#include "tlsdyn/presets.hpp"
#include "tlsdyn/run_record.hpp"
#include "tlsdyn/scenario.hpp"
#include "tlsdyn/sweep.hpp"
#include "tlsdyn/time_domain.hpp"

using namespace tlsdyn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tlsdyn_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config resolves defaults") {
    const auto config = parse_config_json(
        R"({"alpha": 0.25, "omega_c": 7.5, "epsilon": 1.0, "modulator": "none"})");
    CHECK(config.solver == SolverChoice::all);
    CHECK(std::holds_alternative<NoMod>(config.modulator));
    CHECK(config.rho_ee0 == 1.0);
    CHECK(config.series_tol == 1e-12);
    CHECK(config.heom.fock_dim == 10);
    CHECK(config.heom.ell_c == 8);
}

TEST_CASE("invalid values name the violated invariant") {
    CHECK_THROWS_WITH_AS(
        parse_config_json(R"({"alpha": -1, "omega_c": 7.5, "epsilon": 1.0})"),
        "alpha must be positive", std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(R"({"alpha": 1, "omega_c": 0, "epsilon": 1})"),
                    std::invalid_argument);
}

TEST_CASE("lambda resolves to g0 = omega0 sqrt(lambda)") {
    const auto config = parse_config_json(
        R"({"alpha": 0.25, "omega_c": 7.5, "epsilon": 1.0,
            "modulator": {"type": "ho", "omega0": 5.0, "lambda": 1.0}})");
    const auto& ho = std::get<HOMod>(config.modulator);
    CHECK(ho.g0 == 5.0);
    CHECK(ho.omega0 == 5.0);
    CHECK(ho.lambda() == 1.0);
}

TEST_CASE("unknown fields are rejected at every level") {
    CHECK_THROWS_AS(parse_config_json(
                        R"({"alpha": 1, "omega_c": 1, "epsilon": 1, "bogus": 2})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(
                        R"({"alpha": 1, "omega_c": 1, "epsilon": 1,
                            "modulator": {"type": "ho", "omega0": 1, "lambda": 1, "x": 0}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(
                        R"({"alpha": 1, "omega_c": 1, "epsilon": 1,
                            "grid": {"t_end": 2, "weird": 1}})"),
                    std::invalid_argument);
}

TEST_CASE("modulator requires exactly one parameterization") {
    CHECK_THROWS_AS(parse_config_json(
                        R"({"alpha": 1, "omega_c": 1, "epsilon": 1,
                            "modulator": {"type": "ho", "omega0": 1, "g0": 1, "lambda": 1}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(
                        R"({"alpha": 1, "omega_c": 1, "epsilon": 1,
                            "modulator": {"type": "reservoir", "eta": 3}})"),
                    std::invalid_argument);
}

TEST_CASE("malformed json reports a parse error") {
    CHECK_THROWS_AS(parse_config_json("{"), std::invalid_argument);
    try {
        parse_config_json("{\"alpha\": }");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("config file parsing and resolved echo") {
    TempDir dir;
    const auto path = dir.path / "config.json";
    std::ofstream(path) << R"({"alpha": 0.2, "omega_c": 5.0, "epsilon": 1.0,
                               "modulator": {"type": "reservoir", "eta": 3.0, "Lambda": 1.0},
                               "solver": "laplace", "grid": {"t_end": 2.0, "n_points": 51}})";
    const auto config = parse_config(path.string());
    CHECK(std::get<ReservoirMod>(config.modulator).chi == 3.0);
    const std::string resolved = resolved_config_json(config);
    CHECK(resolved.find("\"Lambda\"") != std::string::npos);
    CHECK(resolved.find("\"series_tol\"") != std::string::npos);
    CHECK(resolved.find("\"heom\"") != std::string::npos);

    CHECK_THROWS_AS(parse_config((dir.path / "missing.json").string()),
                    std::invalid_argument);
}

TEST_CASE("run record round trip") {
    RunRecord record;
    record.run_id = make_run_id("test request");
    record.timestamp = current_timestamp_utc();
    record.version = kVersion;
    record.config_json = resolved_config_json(ScenarioConfig{});
    PopulationTrace trace;
    trace.times = {0.0, 0.1, 0.2};
    trace.values = {1.0, 0.987654321098765432, -0.3};
    trace.solver_tag = SolverTag::volterra;
    trace.params = {{"alpha", 0.25}};
    record.traces.push_back(trace_entry(trace, "lambda", 1.5));
    record.diagnostics_json = "{\n  \"note\": 1\n}";
    record.duration_seconds = 0.123456789012345;

    const RunRecord reparsed = parse_run_record(serialize(record));
    CHECK(reparsed == record);
    CHECK(parse_run_record(serialize(reparsed)) == reparsed);
}

TEST_CASE("run ids are deterministic and distinct") {
    CHECK(make_run_id("a") == make_run_id("a"));
    CHECK(make_run_id("a") != make_run_id("b"));
    CHECK(make_run_id("a").size() == 16);
}

TEST_CASE("csv: header, row count, bit-exact round trip") {
    TempDir dir;
    PopulationTrace trace;
    const TimeGrid grid{0.0, 2.0, 201};
    trace.times = grid.times();
    for (double t : trace.times) trace.values.push_back(std::cos(t) / 3.0);
    const auto path = dir.path / "trace.csv";
    write_trace_csv(path, trace);

    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    std::getline(in, line);
    CHECK(line == "t,P");
    ++lines;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 202);  // header + 201 rows

    const auto [ts, ps] = read_xy_csv(path);
    REQUIRE(ts.size() == trace.times.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(ts[i] == trace.times[i]);
        CHECK(ps[i] == trace.values[i]);
    }
}

TEST_CASE("write_outputs produces the documented file names and cleans up on failure") {
    TempDir dir;
    RunRecord record;
    record.run_id = "cafe0123cafe0123";
    record.timestamp = current_timestamp_utc();
    record.version = kVersion;
    record.config_json = "{}";
    PopulationTrace trace;
    trace.times = {0.0, 1.0};
    trace.values = {1.0, 0.5};
    record.traces.push_back(trace_entry(trace, "lambda", 0.1));
    const auto files = write_outputs(record, dir.path);
    REQUIRE(files.size() == 2);
    CHECK(fs::exists(dir.path / "cafe0123cafe0123_laplace_lambda=0.1.csv"));
    CHECK(fs::exists(dir.path / "cafe0123cafe0123_record.json"));
    CHECK(record.traces[0].file == "cafe0123cafe0123_laplace_lambda=0.1.csv");

    // a bad entry aborts the whole output set
    RunRecord broken = record;
    broken.run_id = "feed4567feed4567";
    broken.traces[0].xs.push_back(9.9);  // length mismatch
    CHECK_THROWS(write_outputs(broken, dir.path));
    CHECK(!fs::exists(dir.path / "feed4567feed4567_laplace_lambda=0.1.csv"));
    CHECK(!fs::exists(dir.path / "feed4567feed4567_record.json"));
}

TEST_CASE("run_scenario: solver selection and applicability") {
    ScenarioConfig config;
    config.bath = {0.25, 7.5, 1.0};
    config.modulator = HOMod{5.0, 5.0};
    config.grid = {0.0, 1.0, 21};
    config.solver = SolverChoice::closed_form;
    CHECK_THROWS_AS(run_scenario(config), std::invalid_argument);

    config.solver = SolverChoice::laplace;
    auto traces = run_scenario(config);
    REQUIRE(traces.size() == 1);
    CHECK(traces[0].solver_tag == SolverTag::laplace);

    // reservoir: heom is not applicable and "all" skips it
    config.modulator = ReservoirMod{3.0, 3.0};
    config.solver = SolverChoice::all;
    traces = run_scenario(config);
    REQUIRE(traces.size() == 2);
    CHECK(traces[0].solver_tag == SolverTag::laplace);
    CHECK(traces[1].solver_tag == SolverTag::volterra);
    config.solver = SolverChoice::heom;
    CHECK_THROWS_AS(run_scenario(config), std::invalid_argument);
}

TEST_CASE("sweep validation errors") {
    ScenarioConfig config;
    config.bath = {0.25, 7.5, 1.0};
    config.modulator = NoMod{};
    CHECK_THROWS_WITH_AS(sweep(config, "lambda", {0.1}),
                         "knob requires single-mode modulator", std::invalid_argument);
    CHECK_THROWS_WITH_AS(sweep(config, "Lambda", {0.1}),
                         "knob requires reservoir modulator", std::invalid_argument);
    CHECK_THROWS_WITH_AS(sweep(config, "alpha", {}), "empty sweep", std::invalid_argument);
    CHECK_THROWS_AS(sweep(config, "frobnicate", {0.1}), std::invalid_argument);
}

TEST_CASE("alpha sweep over the bare pipeline: decay rate increases with alpha") {
    TempDir dir;
    ScenarioConfig config;
    config.bath = {0.1, 7.5, 1.0};
    config.modulator = NoMod{};
    config.solver = SolverChoice::volterra;
    config.grid = {0.0, 2.0, 41};
    config.out_dir = dir.path.string();
    const auto record = sweep(config, "alpha", {0.3, 0.1, 0.2});
    REQUIRE(record.traces.size() == 3);
    // deterministic ordering by value
    CHECK(record.traces[0].value == 0.1);
    CHECK(record.traces[1].value == 0.2);
    CHECK(record.traces[2].value == 0.3);
    // larger alpha decays faster: P(t_end) ordering
    CHECK(record.traces[0].ys.back() > record.traces[1].ys.back());
    CHECK(record.traces[1].ys.back() > record.traces[2].ys.back());
    for (const auto& entry : record.traces)
        CHECK(fs::exists(dir.path / entry.file));
}

TEST_CASE("sweep outputs are byte-identical across reruns") {
    TempDir dir1, dir2;
    ScenarioConfig config;
    config.bath = {0.25, 7.5, 1.0};
    config.modulator = HOMod{5.0, 5.0};
    config.solver = SolverChoice::laplace;
    config.grid = {0.0, 2.0, 101};

    config.out_dir = dir1.path.string();
    const auto r1 = sweep(config, "lambda", {0.0, 1.0});
    config.out_dir = dir2.path.string();
    const auto r2 = sweep(config, "lambda", {0.0, 1.0});
    CHECK(r1.run_id == r2.run_id);
    for (std::size_t i = 0; i < r1.traces.size(); ++i) {
        std::ifstream f1(dir1.path / r1.traces[i].file, std::ios::binary);
        std::ifstream f2(dir2.path / r2.traces[i].file, std::ios::binary);
        std::stringstream b1, b2;
        b1 << f1.rdbuf();
        b2 << f2.rdbuf();
        CHECK(b1.str() == b2.str());
        CHECK(!b1.str().empty());
    }
}

TEST_CASE("preset validation and fig2 output") {
    TempDir dir;
    CHECK_THROWS_AS(run_preset("nofig", dir.path), std::invalid_argument);
    try {
        run_preset("nofig", dir.path);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("unknown preset") != std::string::npos);
    }

    const auto record = run_preset("fig2", dir.path);
    REQUIRE(record.traces.size() == 3);
    for (const auto& entry : record.traces) {
        CHECK(entry.solver == "t1");
        CHECK(entry.header == "lambda,T1");
        CHECK(entry.xs.size() == 121);
        CHECK(fs::exists(dir.path / entry.file));
        // strictly increasing T1(lambda)
        for (std::size_t i = 1; i < entry.ys.size(); ++i)
            CHECK(entry.ys[i] > entry.ys[i - 1]);
    }
    // Wigner-Weisskopf limit at lambda = 0: T1 = omega_c / (2 alpha)
    CHECK(record.traces[0].ys.front() ==
          doctest::Approx(7.5 / (2.0 * 0.1)).epsilon(1e-14));
}

TEST_CASE("preset fig1 writes ten curves and its lambda=0 curve is the bare one") {
    TempDir dir;
    PresetOptions options;
    options.grid = TimeGrid{0.0, 2.0, 101};  // trimmed for test speed
    const auto record = run_preset("fig1", dir.path, options);
    REQUIRE(record.traces.size() == 10);
    std::size_t n_laplace = 0, n_approx = 0;
    for (const auto& entry : record.traces) {
        CHECK(fs::exists(dir.path / entry.file));
        if (entry.solver == "laplace") ++n_laplace;
        if (entry.solver == "exp_approx") ++n_approx;
    }
    CHECK(n_laplace == 5);
    CHECK(n_approx == 5);

    const auto& bare = record.traces[0];
    REQUIRE(bare.value == 0.0);
    for (std::size_t i = 0; i < bare.xs.size(); ++i)
        CHECK(std::abs(bare.ys[i] - closed_form_P_lambda0(bare.xs[i], 0.25, 7.5)) < 1e-3);
}

TEST_CASE("preset fig3 ordering in Lambda") {
    TempDir dir;
    PresetOptions options;
    options.grid = TimeGrid{0.0, 2.0, 81};
    const auto record = run_preset("fig3", dir.path, options);
    REQUIRE(record.traces.size() == 5);
    for (std::size_t k = 1; k < 5; ++k)
        for (std::size_t i = 0; i < record.traces[k].ys.size(); ++i)
            CHECK(record.traces[k].ys[i] >= record.traces[k - 1].ys[i] - 1e-3);
}

TEST_CASE("preset fig4 smoke run on a trimmed hierarchy") {
    TempDir dir;
    PresetOptions options;
    options.grid = TimeGrid{0.0, 2.0, 11};
    options.fock_dim = 3;
    options.ell_c = 2;
    options.auto_converge = false;
    const auto record = run_preset("fig4", dir.path, options);
    REQUIRE(record.traces.size() == 4);
    for (const auto& entry : record.traces) {
        CHECK(entry.solver == "heom");
        CHECK(fs::exists(dir.path / entry.file));
        CHECK(entry.ys.front() == 1.0);
    }
    CHECK(record.diagnostics_json.find("max_trace_drift") != std::string::npos);
    // the record on disk reparses to the in-memory record
    std::ifstream in(dir.path / (record.run_id + "_record.json"));
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(parse_run_record(buf.str()) == record);
}

TEST_CASE("simulate_to_outputs writes the full solver set") {
    TempDir dir;
    ScenarioConfig config;
    config.bath = {0.25, 7.5, 1.0};
    config.modulator = NoMod{};
    config.solver = SolverChoice::all;
    config.grid = {0.0, 1.0, 21};
    config.heom.fock_dim = 2;
    config.heom.ell_c = 2;
    config.out_dir = dir.path.string();
    const auto record = simulate_to_outputs(config);
    // laplace, volterra, closed_form, heom
    REQUIRE(record.traces.size() == 4);
    for (const auto& entry : record.traces) CHECK(fs::exists(dir.path / entry.file));
}

}  // TEST_SUITE
