#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "fractalhisto/config.hpp"
#include "fractalhisto/errors.hpp"
#include "fractalhisto/io.hpp"
#include "fractalhisto/run.hpp"

using namespace fractalhisto;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) {
    return std::string(FRACTALHISTO_FIXTURE_DIR) + "/" + name;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("fractalhisto_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_config accepts the shipped fixtures") {
    const RunConfig solve_cfg = load_config(fixture("example4.json"));
    CHECK(solve_cfg.mode == RunMode::solve);
    CHECK(solve_cfg.knots.size() == 3);
    CHECK(solve_cfg.histogram.has_value());
    CHECK(solve_cfg.maps.size() == 2);
    CHECK_FALSE(solve_cfg.has_offsets());
    CHECK(solve_cfg.solver.K == 16384);

    const RunConfig construct_cfg = load_config(fixture("example3.json"));
    CHECK(construct_cfg.mode == RunMode::construct);
    CHECK(construct_cfg.has_offsets());
    CHECK(construct_cfg.offsets()[0] == 1.0 / 3.0);
}

TEST_CASE("parse_config rejects bad documents with the field named") {
    const std::string base = read_text_file(fixture("example4.json"));

    SUBCASE("inadmissible scaling in solve mode quotes the bound") {
        std::string text = base;
        const auto pos = text.find("\"value\": 0.5");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 12, "\"value\": 1.5");
        CHECK_THROWS_WITH_AS(parse_config(text),
                             doctest::Contains("histopolation requires delta_max < 1"),
                             AdmissibilityError);
    }
    SUBCASE("missing histogram in solve mode") {
        nlohmann::json doc = nlohmann::json::parse(base);
        doc.erase("histogram");
        CHECK_THROWS_WITH_AS(parse_config(doc.dump()), doctest::Contains("histogram"),
                             ConfigError);
    }
    SUBCASE("unknown contraction kind is path-qualified") {
        nlohmann::json doc = nlohmann::json::parse(base);
        doc["maps"][1]["s"]["kind"] = "sigmoid";
        CHECK_THROWS_WITH_AS(parse_config(doc.dump()), doctest::Contains("maps[1].s"),
                             ConfigError);
    }
    SUBCASE("length mismatch") {
        nlohmann::json doc = nlohmann::json::parse(base);
        doc["histogram"] = {5.0, 6.0, 7.0};
        CHECK_THROWS_AS(parse_config(doc.dump()), ConfigError);
    }
    SUBCASE("unsupported schema") {
        nlohmann::json doc = nlohmann::json::parse(base);
        doc["schema"] = 2;
        CHECK_THROWS_AS(parse_config(doc.dump()), ConfigError);
    }
    SUBCASE("malformed json") { CHECK_THROWS_AS(parse_config("{not json"), ConfigError); }
}

TEST_CASE("configs re-serialize to an equivalent document") {
    for (const char* name : {"example3.json", "example4.json", "affine0.json"}) {
        const RunConfig cfg = load_config(fixture(name));
        const std::string once = dump_config(cfg);
        const RunConfig reparsed = parse_config(once);
        const std::string twice = dump_config(reparsed);
        CHECK(once == twice);
    }
}

TEST_CASE("function CSV round trip is bit-exact") {
    TempDir dir("csv_roundtrip");
    SampledFunction f = make_sampled({0.0, 1.0}, 16, [](double t) {
        return std::sin(1000.0 * t) * 1e-7 + t;  // exercise full precision
    });
    const fs::path path = dir.path / "f.csv";
    export_function_csv(f, path);
    const SampledFunction g = import_function_csv(path, f.mode);
    REQUIRE(g.values.size() == f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
    CHECK(g.lo == f.lo);
    CHECK(g.hi == f.hi);
}

TEST_CASE("function CSV layout: header plus one row per grid point") {
    TempDir dir("csv_layout");
    SampledFunction tiny;
    tiny.lo = 0.0;
    tiny.hi = 1.0;
    tiny.values = {1.0, 2.0, 3.0};
    const fs::path path = dir.path / "tiny.csv";
    export_function_csv(tiny, path);
    const std::string text = read_text_file(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.rfind("t,f\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("emit_svg styles one class per series") {
    TempDir dir("svg");
    const fs::path path = dir.path / "plot.svg";
    emit_svg({{"alpha", {{0.0, 0.0}, {0.5, 1.0}}}, {"beta", {{0.2, 0.3}}}}, path);
    const std::string text = read_text_file(path);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find(".s0{") != std::string::npos);
    CHECK(text.find(".s1{") != std::string::npos);
    CHECK(text.find("class=\"s1\"") != std::string::npos);
    CHECK_THROWS_AS(emit_svg({}, path), ArgumentError);
    CHECK_THROWS_AS(emit_svg({{"empty", {}}}, path), ArgumentError);
}

TEST_CASE("run solve writes consistent artifacts") {
    TempDir dir("run_solve");
    RunConfig cfg = load_config(fixture("example4.json"));
    cfg.solver.K = 512;
    cfg.outputs = {{"function-csv", (dir.path / "f.csv").string()},
                   {"report-json", (dir.path / "report.json").string()},
                   {"plot-svg", (dir.path / "f.svg").string()}};
    const RunResult result = run(cfg);
    CHECK(result.status == 0);
    CHECK(fs::exists(dir.path / "f.csv"));
    CHECK(fs::exists(dir.path / "report.json"));
    CHECK(fs::exists(dir.path / "f.svg"));

    const nlohmann::json rep = nlohmann::json::parse(result.report);
    CHECK(rep["status"] == "ok");
    CHECK(rep["solve"]["d"].size() == 2);
    CHECK(rep["solve"]["rb_residual"].get<double>() <= 1e-8);
    for (const auto& r : rep["solve"]["area_residuals"]) {
        CHECK(std::fabs(r.get<double>()) <= 5e-3);  // coarse K here
    }
    CHECK(read_text_file(dir.path / "report.json") == result.report);

    SUBCASE("verify passes on the solved function") {
        RunConfig vcfg = load_config(fixture("example4.json"));
        vcfg.mode = RunMode::verify;
        vcfg.solver.K = 512;
        vcfg.function_csv = (dir.path / "f.csv").string();
        vcfg.verify.area_tol = 5e-3;
        vcfg.outputs.clear();
        const RunResult vres = run(vcfg);
        CHECK(vres.status == 0);
        const nlohmann::json vrep = nlohmann::json::parse(vres.report);
        CHECK(vrep["verify"]["passed"] == true);
    }
}

TEST_CASE("run construct and check modes") {
    TempDir dir("run_modes");
    SUBCASE("construct") {
        RunConfig cfg = load_config(fixture("example3.json"));
        cfg.solver.K = 512;
        cfg.outputs = {{"report-json", (dir.path / "r.json").string()}};
        const RunResult result = run(cfg);
        CHECK(result.status == 0);
        const nlohmann::json rep = nlohmann::json::parse(result.report);
        CHECK(rep["construct"]["rb_residual"].get<double>() <= 1e-8);
    }
    SUBCASE("check contraction passes for the reciprocal pairing") {
        RunConfig cfg = load_config(fixture("example4.json"));
        cfg.mode = RunMode::check;
        cfg.check.target = CheckTarget::contraction;
        cfg.check.pairs = 2000;
        cfg.outputs.clear();
        const RunResult result = run(cfg);
        CHECK(result.status == 0);
        const nlohmann::json rep = nlohmann::json::parse(result.report);
        for (const auto& row : rep["check"]["contraction"]) CHECK(row["passed"] == true);
    }
    SUBCASE("check banach-witness finds separators at every k") {
        RunConfig cfg = load_config(fixture("example4.json"));
        cfg.mode = RunMode::check;
        cfg.check.target = CheckTarget::banach_witness;
        cfg.outputs.clear();
        const RunResult result = run(cfg);
        const nlohmann::json rep = nlohmann::json::parse(result.report);
        for (const auto& row : rep["check"]["banach_witness"]) CHECK(row["found"] == true);
    }
}

TEST_CASE("run diagnose writes the table artifacts") {
    TempDir dir("run_diagnose");
    RunConfig cfg = load_config(fixture("example4.json"));
    cfg.mode = RunMode::diagnose;
    cfg.solver.K = 512;
    cfg.diagnose.max_p = 4;
    cfg.diagnose.K_list = {1 << 8, 1 << 9, 1 << 10};
    cfg.outputs = {{"oscillation-csv", (dir.path / "osc.csv").string()},
                   {"riemann-csv", (dir.path / "riemann.csv").string()},
                   {"report-json", (dir.path / "report.json").string()}};
    const RunResult result = run(cfg);
    CHECK(result.status == 0);
    const nlohmann::json rep = nlohmann::json::parse(result.report);
    CHECK(rep["diagnose"]["oscillation"]["exceedances"] == 0);
    CHECK(rep["diagnose"]["riemann"].size() == 3);
    const std::string osc = read_text_file(dir.path / "osc.csv");
    CHECK(osc.rfind("word,lo,hi,measured,bound,exceedance\n", 0) == 0);
    // 2 + 4 + 8 + 16 word rows plus the header
    CHECK(std::count(osc.begin(), osc.end(), '\n') == 31);
    const std::string rie = read_text_file(dir.path / "riemann.csv");
    CHECK(rie.rfind("K,integral,delta\n", 0) == 0);
}

TEST_CASE("run attractor is deterministic per seed") {
    TempDir dir("run_attractor");
    RunConfig cfg = load_config(fixture("example3.json"));
    cfg.mode = RunMode::attractor;
    cfg.attractor.points = 5000;
    cfg.seed = 99;
    cfg.outputs = {{"attractor-csv", (dir.path / "cloud.csv").string()}};
    run(cfg);
    const std::string first = read_text_file(dir.path / "cloud.csv");
    run(cfg);
    const std::string second = read_text_file(dir.path / "cloud.csv");
    CHECK(first == second);
    CHECK(first.rfind("t,x\n", 0) == 0);
    cfg.seed = 100;
    run(cfg);
    CHECK(read_text_file(dir.path / "cloud.csv") != first);
}

TEST_CASE("run reports solver non-convergence as status 2 with the trace") {
    TempDir dir("run_nonconv");
    RunConfig cfg = load_config(fixture("example4.json"));
    cfg.solver.K = 512;
    cfg.solver.max_outer = 1;
    cfg.solver.tol_outer = 1e-16;
    cfg.outputs = {{"report-json", (dir.path / "report.json").string()}};
    const RunResult result = run(cfg);
    CHECK(result.status == 2);
    const nlohmann::json rep = nlohmann::json::parse(result.report);
    CHECK(rep["status"] == "non-convergence");
    CHECK(rep.contains("trace"));
    CHECK(rep["trace"]["sup_deltas"].size() >= 1);
    CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("io errors carry the io class") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), IoError);
    CHECK_THROWS_AS(read_text_file("/nonexistent/file"), IoError);
    CHECK_THROWS_AS(import_function_csv("/nonexistent/file.csv"), IoError);
    const Error& probe = IoError("x");
    CHECK(probe.exit_code() == 3);
    CHECK(ValidationError("x").exit_code() == 1);
    CHECK(ConvergenceError("x", 1, 0.0).exit_code() == 2);
}
