#ifndef OSC_RUNCONFIG_HPP
#define OSC_RUNCONFIG_HPP

// Configuration-driven command surface: a single JSON document selects the
// operator, basis, task and task parameters; outputs are CSV (tabular, with
// a schema header line, 17 significant digits) and JSON (nested reports),
// optionally with simple SVG plots.  All files are written atomically
// (temp + rename) and identical configs produce byte-identical CSV.

#include <string>
#include <vector>

#include "osc/discretize.hpp"
#include "osc/gauge.hpp"
#include "osc/model.hpp"
#include "osc/pseudomode.hpp"
#include "osc/spectra.hpp"

namespace osc::cli {

// Configuration / validation problem: maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Discretization did not converge: maps to exit code 3.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    model::OscillatorSpec oscillator;
    discretize::BasisSpec basis;
    std::string task = "eigs";  // eigs|proj|pspec|pmode|gauge|verify|report

    long count = 20;            // modes for eigs/proj, terms for gauge
    spectra::Rect rect{0.0, 1.0, 0.0, 1.0};
    long nx = 41, ny = 21;      // pspec grid
    gauge::GaugeSpec gauge_spec;
    std::vector<cplx> curve;    // pmode curve
    pseudomode::PseudomodeParams pmode;
    double fit_sigma = 1.0;     // proj growth-fit order

    std::string out_dir = ".";
    bool svg = false;
    long threads = 1;
};

// Parse/serialize the JSON document.  Unknown keys are rejected; malformed
// or invalid settings raise ConfigError naming the violated constraint.
RunConfig parse_config(const std::string& json_text);
std::string serialize(const RunConfig& cfg);

// Execute the configured task; returns the process exit code (0 success,
// 2 config/validation error, 3 convergence failure).  Messages go to the
// given streams.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Atomic file write helper (temp + rename in the target directory).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace osc::cli

#endif
