#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "osc/runconfig.hpp"

using namespace osc;
using namespace osc::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("osc_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

const char* kEigsConfig = R"({
  "oscillator": {"family": "polynomial", "a": 1, "im_coeffs": [0.0, 1.0]},
  "basis": {"size": 48, "scaling": 1.0, "assembly": "ladder"},
  "task": "eigs",
  "count": 8
})";

}  // namespace

TEST_CASE("round-trip: serialize(parse(config)) is idempotent") {
    const auto cfg = parse_config(kEigsConfig);
    const std::string once = serialize(cfg);
    const std::string twice = serialize(parse_config(once));
    CHECK(once == twice);

    // a pmode config exercises the optional blocks
    const std::string pm = R"({
      "oscillator": {"family": "polynomial", "a": 1, "im_coeffs": [0.0, 1.0]},
      "task": "pmode",
      "curve": [[50.0, 0.0], [100.0, 0.0]],
      "pmode": {"delta": 0.45, "cheb_order": 64, "quad_order": 128}
    })";
    const std::string s1 = serialize(parse_config(pm));
    CHECK(s1 == serialize(parse_config(s1)));
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(R"({"task": "verify", "bogus": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({
        "task": "eigs",
        "oscillator": {"family": "self_adjoint", "l": 2.0, "zzz": 3}
    })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({
        "task": "eigs",
        "oscillator": {"family": "self_adjoint"},
        "basis": {"size": 32, "nope": true}
    })"),
                    ConfigError);
}

TEST_CASE("malformed configs name the violated constraint") {
    // negative leading imaginary coefficient violates the sign constraint
    const std::string bad = R"({
      "oscillator": {"family": "polynomial", "a": 1, "im_coeffs": [0.0, -1.0]},
      "task": "eigs"
    })";
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("leading") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"task": "dance"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"task": "eigs"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"task": "pmode",
      "oscillator": {"family": "polynomial", "a": 1, "im_coeffs": [0.0, 1.0]}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"task": "gauge", "gauge": {"rho": 1.5}})"),
        ConfigError);
}

TEST_CASE("eigs task: artifacts, schema header, byte-identical reruns") {
    auto cfg = parse_config(kEigsConfig);
    const auto dir = fresh_dir("eigs");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    const std::string csv1 = slurp(dir / "eigs.csv");
    CHECK(csv1.rfind("# schema=osc.eigs.v1\nn,re_lambda,im_lambda,trusted\n",
                     0) == 0);
    // lowest mode of x^2 + i x is 1.25; 17-digit emission round-trips
    CHECK(csv1.find("1.25") != std::string::npos);

    REQUIRE(run(cfg, out, err) == 0);
    CHECK(slurp(dir / "eigs.csv") == csv1);
    CHECK(!fs::exists(dir / "eigs.csv.tmp"));
}

TEST_CASE("proj task: documented columns and growth-fit report") {
    auto cfg = parse_config(kEigsConfig);
    cfg.task = "proj";
    cfg.count = 12;
    const auto dir = fresh_dir("proj");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    const std::string csv = slurp(dir / "proj.csv");
    CHECK(csv.rfind("# schema=osc.proj.v1\n"
                    "n,re_lambda,im_lambda,overlap_abs,proj_norm,"
                    "log_proj_norm,precision_limited\n",
                    0) == 0);
    const std::string fit = slurp(dir / "proj_fit.json");
    CHECK(fit.find("gamma_hat") != std::string::npos);
}

TEST_CASE("pspec task: grid CSV and optional SVG heatmap") {
    auto cfg = parse_config(R"({
      "oscillator": {"family": "polynomial", "a": 1, "im_coeffs": [0.0, 1.0]},
      "basis": {"size": 32, "scaling": 1.0, "assembly": "ladder"},
      "task": "pspec",
      "rect": {"re_lo": 0.0, "re_hi": 4.0, "im_lo": -1.0, "im_hi": 1.0},
      "nx": 5, "ny": 3, "svg": true
    })");
    const auto dir = fresh_dir("pspec");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    const std::string csv = slurp(dir / "pspec.csv");
    CHECK(csv.rfind("# schema=osc.pspec.v1\n"
                    "re_z,im_z,resolvent_norm,dist_to_spectrum\n",
                    0) == 0);
    // 5 x 3 samples + 2 header lines
    long lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 17);
    CHECK(slurp(dir / "pspec.svg").find("<svg") != std::string::npos);
}

TEST_CASE("gauge and report tasks") {
    auto cfg = parse_config(R"({
      "task": "gauge",
      "gauge": {"nu": 1.0, "rho": 0.3333333333333333},
      "count": 10
    })");
    const auto dir = fresh_dir("gauge");
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == 0);
    CHECK(slurp(dir / "gauge.csv").rfind("# schema=osc.gauge.v1\n", 0) == 0);

    auto rcfg = parse_config(kEigsConfig);
    rcfg.task = "report";
    rcfg.count = 5;
    rcfg.out_dir = (dir / "rep").string();
    REQUIRE(run(rcfg, out, err) == 0);
    const std::string rep = slurp(dir / "rep" / "report.json");
    CHECK(rep.find("kappa") != std::string::npos);
    CHECK(rep.find("predicted_eigenvalues") != std::string::npos);
}

TEST_CASE("exit codes: 2 for config errors, 3 for convergence failure") {
    std::ostringstream out, err;
    // run() surfaces deep validation problems as exit 2
    auto cfg = parse_config(kEigsConfig);
    cfg.basis.assembly = discretize::Assembly::Ladder;
    cfg.oscillator = model::make_self_adjoint(1.5);  // ladder needs polynomial
    const auto dir = fresh_dir("codes");
    cfg.out_dir = dir.string();
    CHECK(run(cfg, out, err) == 2);
    CHECK(!err.str().empty());

    // a spectrum with no trusted mode exits 3 and leaves a report
    auto div = parse_config(R"({
      "oscillator": {"family": "even_imaginary", "b": 6.0},
      "basis": {"size": 16, "scaling": 0.002, "assembly": "quadrature"},
      "task": "eigs",
      "count": 4
    })");
    div.out_dir = (dir / "diverged").string();
    std::ostringstream out2, err2;
    const int code = run(div, out2, err2);
    if (code == 3) {
        CHECK(fs::exists(dir / "diverged" / "convergence_report.json"));
        CHECK(err2.str().find("convergence") != std::string::npos);
    } else {
        // a basis this small must not silently claim success
        CHECK(code != 0);
    }
}
