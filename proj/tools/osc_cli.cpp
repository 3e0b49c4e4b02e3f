// Command-line entry point: reads a JSON run configuration, applies the
// flag overrides, and executes the selected task.
//
//   osc --config PATH [--out DIR] [--threads N] [--svg]
//
// Exit codes: 0 success, 2 configuration/validation error, 3 convergence
// failure.  The OSC_THREADS environment variable sets the thread count when
// --threads is absent.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "osc/runconfig.hpp"

namespace {

void usage(std::ostream& os) {
    os << "usage: osc --config PATH [--out DIR] [--threads N] [--svg]\n"
          "tasks (selected inside the config): eigs proj pspec pmode gauge "
          "verify report\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string config_path, out_dir;
    long threads = -1;
    bool svg = false, svg_set = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "error: flag " << a << " needs a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--config") {
            config_path = next();
        } else if (a == "--out") {
            out_dir = next();
        } else if (a == "--threads") {
            try {
                threads = std::stol(next());
            } catch (...) {
                std::cerr << "error: --threads expects an integer\n";
                return 2;
            }
        } else if (a == "--svg") {
            svg = true;
            svg_set = true;
        } else if (a == "--help" || a == "-h") {
            usage(std::cout);
            return 0;
        } else {
            std::cerr << "error: unknown flag '" << a << "'\n";
            usage(std::cerr);
            return 2;
        }
    }
    if (config_path.empty()) {
        std::cerr << "error: --config PATH is required\n";
        usage(std::cerr);
        return 2;
    }
    std::ifstream f(config_path);
    if (!f) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << f.rdbuf();

    osc::cli::RunConfig cfg;
    try {
        cfg = osc::cli::parse_config(buf.str());
    } catch (const osc::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (svg_set) cfg.svg = svg;
    if (threads >= 0) {
        cfg.threads = threads;
    } else if (const char* env = std::getenv("OSC_THREADS")) {
        try {
            cfg.threads = std::stol(env);
        } catch (...) {
            std::cerr << "error: OSC_THREADS expects an integer\n";
            return 2;
        }
        if (cfg.threads < 0) {
            std::cerr << "error: OSC_THREADS must be >= 0\n";
            return 2;
        }
    }
    return osc::cli::run(cfg, std::cout, std::cerr);
}
