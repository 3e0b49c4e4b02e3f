#include "osc/runconfig.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "osc/acceptance.hpp"

namespace osc::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------- formatting

std::string g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ------------------------------------------------------------------- parsing

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(where + ": unknown key '" + it.key() + "'");
}

double get_num(const json& obj, const std::string& key, double fallback,
               const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

long get_int(const json& obj, const std::string& key, long fallback,
             const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
        fail(where + "." + key + ": expected an integer");
    return obj[key].get<long>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback,
              const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) fail(where + "." + key + ": expected a bool");
    return obj[key].get<bool>();
}

std::string get_str(const json& obj, const std::string& key,
                    const std::string& fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) fail(where + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

std::vector<double> get_vec(const json& obj, const std::string& key,
                            const std::string& where) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    if (!obj[key].is_array()) fail(where + "." + key + ": expected an array");
    for (const auto& v : obj[key]) {
        if (!v.is_number()) fail(where + "." + key + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

model::Family parse_family(const std::string& s) {
    if (s == "polynomial") return model::Family::PolynomialL;
    if (s == "even_imaginary") return model::Family::EvenImaginary;
    if (s == "odd_imaginary") return model::Family::OddImaginary;
    if (s == "conjugated") return model::Family::Conjugated;
    if (s == "self_adjoint") return model::Family::SelfAdjointPower;
    fail("oscillator.family: unknown family '" + s +
         "' (expected polynomial|even_imaginary|odd_imaginary|conjugated|"
         "self_adjoint)");
}

std::string family_name(model::Family f) {
    switch (f) {
        case model::Family::PolynomialL: return "polynomial";
        case model::Family::EvenImaginary: return "even_imaginary";
        case model::Family::OddImaginary: return "odd_imaginary";
        case model::Family::Conjugated: return "conjugated";
        case model::Family::SelfAdjointPower: return "self_adjoint";
    }
    return "self_adjoint";
}

model::OscillatorSpec parse_oscillator(const json& o) {
    reject_unknown(o, "oscillator",
                   {"family", "a", "re_coeffs", "im_coeffs", "shift", "b", "s",
                    "l"});
    model::OscillatorSpec spec;
    spec.family = parse_family(get_str(o, "family", "", "oscillator"));
    spec.a = get_int(o, "a", spec.a, "oscillator");
    spec.re_coeffs = get_vec(o, "re_coeffs", "oscillator");
    spec.im_coeffs = get_vec(o, "im_coeffs", "oscillator");
    spec.shift = get_num(o, "shift", spec.shift, "oscillator");
    spec.b = get_num(o, "b", spec.b, "oscillator");
    spec.s = get_num(o, "s", spec.s, "oscillator");
    spec.l = get_num(o, "l", spec.l, "oscillator");
    const auto violations = model::validate(spec);
    if (!violations.empty()) {
        std::string msg = "oscillator: invalid parameters:";
        for (const auto& v : violations) msg += "\n  - " + v;
        fail(msg);
    }
    return spec;
}

discretize::BasisSpec parse_basis(const json& b) {
    reject_unknown(b, "basis", {"size", "scaling", "assembly"});
    discretize::BasisSpec basis;
    basis.size = get_int(b, "size", basis.size, "basis");
    basis.scaling = get_num(b, "scaling", basis.scaling, "basis");
    const std::string asm_name = get_str(b, "assembly", "quadrature", "basis");
    if (asm_name == "ladder")
        basis.assembly = discretize::Assembly::Ladder;
    else if (asm_name == "quadrature")
        basis.assembly = discretize::Assembly::Quadrature;
    else
        fail("basis.assembly: expected 'ladder' or 'quadrature', got '" +
             asm_name + "'");
    try {
        discretize::check_basis(basis);
    } catch (const std::invalid_argument& e) {
        fail(std::string("basis: ") + e.what());
    }
    return basis;
}

// ------------------------------------------------------------------- writing

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

// Simple autoscaled polyline plot.
std::string svg_line(const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& title) {
    const double W = 640, H = 400, m = 50;
    double xlo = xs.front(), xhi = xs.front(), ylo = ys.front(), yhi = ys.front();
    for (double x : xs) { xlo = std::min(xlo, x); xhi = std::max(xhi, x); }
    for (double y : ys) { ylo = std::min(ylo, y); yhi = std::max(yhi, y); }
    if (xhi == xlo) xhi = xlo + 1;
    if (yhi == ylo) yhi = ylo + 1;
    auto px = [&](double x) { return m + (W - 2 * m) * (x - xlo) / (xhi - xlo); };
    auto py = [&](double y) { return H - m - (H - 2 * m) * (y - ylo) / (yhi - ylo); };
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << W / 2 << "' y='24' text-anchor='middle'>" << title
      << "</text>\n<polyline fill='none' stroke='steelblue' stroke-width='1.5' "
         "points='";
    for (size_t i = 0; i < xs.size(); ++i)
        s << px(xs[i]) << ',' << py(ys[i]) << ' ';
    s << "'/>\n<line x1='" << m << "' y1='" << H - m << "' x2='" << W - m
      << "' y2='" << H - m << "' stroke='black'/>\n<line x1='" << m << "' y1='"
      << m << "' x2='" << m << "' y2='" << H - m << "' stroke='black'/>\n"
      << "<text x='" << m << "' y='" << H - m + 20 << "'>" << g17(xlo)
      << "</text>\n<text x='" << W - m << "' y='" << H - m + 20
      << "' text-anchor='end'>" << g17(xhi) << "</text>\n<text x='" << m - 4
      << "' y='" << H - m << "' text-anchor='end'>" << g17(ylo)
      << "</text>\n<text x='" << m - 4 << "' y='" << m << "' text-anchor='end'>"
      << g17(yhi) << "</text>\n</svg>\n";
    return s.str();
}

// Heatmap of log10(values) on an nx-by-ny grid (row-major, x fast).
std::string svg_heatmap(const std::vector<double>& values, long nx, long ny,
                        const spectra::Rect& rect, const std::string& title) {
    const double W = 640, H = 480, m = 50;
    double lo = 1e300, hi = -1e300;
    for (double v : values)
        if (std::isfinite(v) && v > 0) {
            lo = std::min(lo, std::log10(v));
            hi = std::max(hi, std::log10(v));
        }
    if (!(lo < hi)) { lo = 0; hi = 1; }
    const double cw = (W - 2 * m) / static_cast<double>(nx);
    const double ch = (H - 2 * m) / static_cast<double>(ny);
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << W / 2 << "' y='24' text-anchor='middle'>" << title
      << "</text>\n";
    for (long j = 0; j < ny; ++j)
        for (long i = 0; i < nx; ++i) {
            const double v = values[static_cast<size_t>(j * nx + i)];
            double t = 0.0;
            if (std::isfinite(v) && v > 0)
                t = (std::log10(v) - lo) / (hi - lo);
            t = std::min(1.0, std::max(0.0, t));
            const int r = static_cast<int>(255 * t);
            const int b = static_cast<int>(255 * (1 - t));
            // y axis upward: row j = im_lo + ... drawn from the bottom
            s << "<rect x='" << m + i * cw << "' y='" << H - m - (j + 1) * ch
              << "' width='" << cw + 0.5 << "' height='" << ch + 0.5
              << "' fill='rgb(" << r << ",0," << b << ")'/>\n";
        }
    s << "<text x='" << m << "' y='" << H - m + 20 << "'>" << g17(rect.re_lo)
      << "</text>\n<text x='" << W - m << "' y='" << H - m + 20
      << "' text-anchor='end'>" << g17(rect.re_hi) << "</text>\n<text x='"
      << m - 4 << "' y='" << H - m << "' text-anchor='end'>" << g17(rect.im_lo)
      << "</text>\n<text x='" << m - 4 << "' y='" << m << "' text-anchor='end'>"
      << g17(rect.im_hi) << "</text>\n</svg>\n";
    return s.str();
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
}

// ---------------------------------------------------------------- the tasks

int run_eigs(const RunConfig& cfg, std::ostream& out) {
    const auto s = spectra::compute_spectrum(cfg.oscillator, cfg.basis, cfg.count);
    if (s.trusted_count == 0) {
        const auto rep =
            discretize::convergence_check(cfg.oscillator, cfg.basis, cfg.count);
        json jrep = json::array();
        for (const auto& m : rep.modes)
            jrep.push_back({{"re_coarse", m.coarse.real()},
                            {"im_coarse", m.coarse.imag()},
                            {"re_fine", m.fine.real()},
                            {"im_fine", m.fine.imag()},
                            {"gap", m.gap},
                            {"trusted", m.trusted}});
        write_file_atomic(out_path(cfg, "convergence_report.json").string(),
                          json{{"trusted_count", rep.trusted_count},
                               {"modes", jrep}}
                              .dump(2) +
                              "\n");
        throw ConvergenceError(
            "eigs: no eigenvalue survived basis doubling at size " +
            std::to_string(cfg.basis.size) +
            "; see convergence_report.json in the output directory");
    }
    std::string csv = "# schema=osc.eigs.v1\nn,re_lambda,im_lambda,trusted\n";
    for (size_t i = 0; i < s.modes.size(); ++i) {
        const auto& m = s.modes[i];
        csv += csv_row({std::to_string(i + 1), g17(m.lambda.real()),
                        g17(m.lambda.imag()), m.trusted ? "1" : "0"});
    }
    write_file_atomic(out_path(cfg, "eigs.csv").string(), csv);
    out << "eigs: " << s.modes.size() << " modes (" << s.trusted_count
        << " trusted) -> eigs.csv\n";
    return 0;
}

int run_proj(const RunConfig& cfg, std::ostream& out) {
    const auto s = spectra::compute_spectrum(cfg.oscillator, cfg.basis, cfg.count);
    if (s.trusted_count == 0)
        throw ConvergenceError("proj: no trusted eigenvalue at basis size " +
                               std::to_string(cfg.basis.size));
    std::string csv =
        "# schema=osc.proj.v1\n"
        "n,re_lambda,im_lambda,overlap_abs,proj_norm,log_proj_norm,"
        "precision_limited\n";
    std::vector<std::pair<long, double>> fit_pts;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < s.modes.size(); ++i) {
        const auto& m = s.modes[i];
        if (!m.trusted) continue;
        const double pn = m.projection_norm;
        csv += csv_row({std::to_string(i + 1), g17(m.lambda.real()),
                        g17(m.lambda.imag()), g17(std::abs(m.overlap)), g17(pn),
                        g17(std::log(pn)), m.precision_limited ? "1" : "0"});
        if (!m.precision_limited) {
            fit_pts.emplace_back(static_cast<long>(i + 1), pn);
            xs.push_back(static_cast<double>(i + 1));
            ys.push_back(std::log(pn));
        }
    }
    write_file_atomic(out_path(cfg, "proj.csv").string(), csv);
    json jfit{{"fit_sigma", cfg.fit_sigma}, {"points", fit_pts.size()}};
    if (fit_pts.size() >= 5) {
        const auto fit = spectra::fit_growth(fit_pts, cfg.fit_sigma);
        jfit["gamma_hat"] = fit.gamma_hat;
        jfit["intercept"] = fit.intercept;
        jfit["r_squared"] = fit.r_squared;
    } else {
        jfit["note"] = "fewer than 5 usable points; growth fit skipped";
    }
    write_file_atomic(out_path(cfg, "proj_fit.json").string(),
                      jfit.dump(2) + "\n");
    if (cfg.svg && xs.size() >= 2)
        write_file_atomic(out_path(cfg, "proj.svg").string(),
                          svg_line(xs, ys, "log projection norm vs mode index"));
    out << "proj: " << fit_pts.size()
        << " usable modes -> proj.csv, proj_fit.json\n";
    return 0;
}

int run_pspec(const RunConfig& cfg, std::ostream& out) {
    const auto A = discretize::assemble(cfg.oscillator, cfg.basis);
    const auto s = spectra::compute_spectrum(cfg.oscillator, cfg.basis,
                                             std::max(4L, cfg.basis.size / 4));
    std::vector<cplx> lams;
    for (const auto& m : s.modes)
        if (m.trusted) lams.push_back(m.lambda);
    const auto grid = spectra::pseudospectra_grid(A, lams, cfg.rect, cfg.nx,
                                                  cfg.ny, cfg.threads);
    std::string csv =
        "# schema=osc.pspec.v1\nre_z,im_z,resolvent_norm,dist_to_spectrum\n";
    std::vector<double> vals;
    vals.reserve(grid.size());
    for (const auto& g : grid) {
        csv += csv_row({g17(g.z.real()), g17(g.z.imag()), g17(g.norm),
                        g17(g.dist_to_spectrum)});
        vals.push_back(g.norm);
    }
    write_file_atomic(out_path(cfg, "pspec.csv").string(), csv);
    if (cfg.svg)
        write_file_atomic(
            out_path(cfg, "pspec.svg").string(),
            svg_heatmap(vals, cfg.nx, cfg.ny, cfg.rect,
                        "log10 resolvent norm"));
    out << "pspec: " << grid.size() << " samples -> pspec.csv\n";
    return 0;
}

int run_pmode(const RunConfig& cfg, std::ostream& out) {
    if (cfg.curve.empty())
        fail("pmode: 'curve' must list at least one lambda as [re, im]");
    const auto scan = pseudomode::quality_scan(cfg.oscillator, cfg.curve,
                                               cfg.pmode, cfg.threads);
    std::string csv =
        "# schema=osc.pmode.v1\nre_lambda,im_lambda,mu,q,lower_bound,ok\n";
    std::vector<double> xs, ys;
    json jerr = json::array();
    for (const auto& p : scan.points) {
        csv += csv_row({g17(p.lambda.real()), g17(p.lambda.imag()), g17(p.mu),
                        g17(p.q), g17(p.lower_bound), p.ok ? "1" : "0"});
        if (p.ok) {
            xs.push_back(p.mu);
            ys.push_back(std::log(1.0 / p.q));
        } else {
            jerr.push_back({{"re_lambda", p.lambda.real()},
                            {"im_lambda", p.lambda.imag()},
                            {"error", p.error}});
        }
    }
    write_file_atomic(out_path(cfg, "pmode.csv").string(), csv);
    write_file_atomic(out_path(cfg, "pmode_fit.json").string(),
                      json{{"eta_hat", scan.eta_hat},
                           {"r_squared", scan.r_squared},
                           {"failures", jerr}}
                          .dump(2) +
                          "\n");
    if (cfg.svg && xs.size() >= 2)
        write_file_atomic(out_path(cfg, "pmode.svg").string(),
                          svg_line(xs, ys, "log(1/q) vs mu"));
    out << "pmode: " << xs.size() << "/" << scan.points.size()
        << " points built -> pmode.csv, pmode_fit.json\n";
    return 0;
}

int run_gauge(const RunConfig& cfg, std::ostream& out) {
    try {
        cfg.gauge_spec.check();
    } catch (const std::invalid_argument& e) {
        fail(std::string("gauge: ") + e.what());
    }
    std::string csv =
        "# schema=osc.gauge.v1\nn,a_n,log_abs_fprime,sign_fprime\n";
    for (long n = 1; n <= cfg.count; ++n) {
        csv += csv_row({std::to_string(n), g17(gauge::zero(cfg.gauge_spec, n)),
                        g17(gauge::log_abs_f_prime_at_zero(cfg.gauge_spec, n)),
                        (n % 2 == 1) ? "1" : "-1"});
    }
    write_file_atomic(out_path(cfg, "gauge.csv").string(), csv);
    out << "gauge: " << cfg.count << " zeros -> gauge.csv\n";
    return 0;
}

int run_report(const RunConfig& cfg, std::ostream& out) {
    const auto c = model::constants(cfg.oscillator);
    json j{{"family", family_name(cfg.oscillator.family)},
           {"kappa", c.kappa},
           {"d", c.d}};
    if (c.sigma) j["sigma"] = *c.sigma;
    if (c.tau) j["tau"] = *c.tau;
    if (c.omega0) j["omega0"] = *c.omega0;
    if (c.ray_angle) j["ray_angle"] = *c.ray_angle;
    if (c.slope_constant) j["slope_constant"] = *c.slope_constant;
    if (c.projection_exponent) j["projection_exponent"] = *c.projection_exponent;
    json jw = json::array();
    for (const auto& w : model::warnings(cfg.oscillator)) jw.push_back(w);
    j["warnings"] = jw;
    json jp = json::array();
    for (long n = 1; n <= cfg.count; ++n) {
        const cplx p = model::predicted_eigenvalue(cfg.oscillator, n);
        jp.push_back({{"n", n}, {"re", p.real()}, {"im", p.imag()}});
    }
    j["predicted_eigenvalues"] = jp;
    write_file_atomic(out_path(cfg, "report.json").string(), j.dump(2) + "\n");
    out << "report: constants + " << cfg.count
        << " predicted eigenvalues -> report.json\n";
    return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    const auto results = acceptance::run_all(out, cfg.threads);
    json j = json::array();
    for (const auto& r : results)
        j.push_back({{"id", r.id},
                     {"name", r.name},
                     {"pass", r.pass},
                     {"documented", r.documented},
                     {"detail", r.detail}});
    write_file_atomic(out_path(cfg, "verify.json").string(), j.dump(2) + "\n");
    return acceptance::exit_code(results);
}

}  // namespace

// ----------------------------------------------------------------- public

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(doc, "config",
                   {"oscillator", "basis", "task", "count", "rect", "nx", "ny",
                    "gauge", "curve", "pmode", "fit_sigma", "out", "svg",
                    "threads"});
    RunConfig cfg;
    cfg.task = get_str(doc, "task", cfg.task, "config");
    static const std::set<std::string> kTasks{"eigs", "proj", "pspec", "pmode",
                                             "gauge", "verify", "report"};
    if (!kTasks.count(cfg.task))
        fail("task: unknown task '" + cfg.task +
             "' (expected eigs|proj|pspec|pmode|gauge|verify|report)");

    const bool needs_oscillator = cfg.task == "eigs" || cfg.task == "proj" ||
                                  cfg.task == "pspec" || cfg.task == "pmode" ||
                                  cfg.task == "report";
    if (doc.contains("oscillator"))
        cfg.oscillator = parse_oscillator(doc["oscillator"]);
    else if (needs_oscillator)
        fail("config: task '" + cfg.task + "' requires an 'oscillator' block");
    if (doc.contains("basis")) cfg.basis = parse_basis(doc["basis"]);

    cfg.count = get_int(doc, "count", cfg.count, "config");
    if (cfg.count < 1) fail("count: must be >= 1");
    if (doc.contains("rect")) {
        const auto& r = doc["rect"];
        reject_unknown(r, "rect", {"re_lo", "re_hi", "im_lo", "im_hi"});
        cfg.rect.re_lo = get_num(r, "re_lo", 0.0, "rect");
        cfg.rect.re_hi = get_num(r, "re_hi", 1.0, "rect");
        cfg.rect.im_lo = get_num(r, "im_lo", 0.0, "rect");
        cfg.rect.im_hi = get_num(r, "im_hi", 1.0, "rect");
        if (!(cfg.rect.re_lo < cfg.rect.re_hi) ||
            !(cfg.rect.im_lo < cfg.rect.im_hi))
            fail("rect: require re_lo < re_hi and im_lo < im_hi");
    }
    cfg.nx = get_int(doc, "nx", cfg.nx, "config");
    cfg.ny = get_int(doc, "ny", cfg.ny, "config");
    if (cfg.nx < 2 || cfg.ny < 2) fail("nx/ny: grid must be at least 2x2");
    if (doc.contains("gauge")) {
        const auto& g = doc["gauge"];
        reject_unknown(g, "gauge", {"nu", "rho", "tail_tolerance", "max_terms"});
        cfg.gauge_spec.nu = get_num(g, "nu", cfg.gauge_spec.nu, "gauge");
        cfg.gauge_spec.rho = get_num(g, "rho", cfg.gauge_spec.rho, "gauge");
        cfg.gauge_spec.tail_tolerance =
            get_num(g, "tail_tolerance", cfg.gauge_spec.tail_tolerance, "gauge");
        cfg.gauge_spec.max_terms =
            get_int(g, "max_terms", cfg.gauge_spec.max_terms, "gauge");
        try {
            cfg.gauge_spec.check();
        } catch (const std::invalid_argument& e) {
            fail(std::string("gauge: ") + e.what());
        }
    }
    if (doc.contains("curve")) {
        if (!doc["curve"].is_array()) fail("curve: expected an array");
        for (const auto& p : doc["curve"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
                !p[1].is_number())
                fail("curve: each entry must be [re, im]");
            cfg.curve.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    if (doc.contains("pmode")) {
        const auto& p = doc["pmode"];
        reject_unknown(p, "pmode",
                       {"epsilon", "delta", "n_terms", "cheb_order",
                        "quad_order", "omega", "allow_inadmissible"});
        cfg.pmode.epsilon = get_num(p, "epsilon", cfg.pmode.epsilon, "pmode");
        if (p.contains("delta") && !p["delta"].is_null())
            cfg.pmode.delta_override = get_num(p, "delta", 0.0, "pmode");
        if (p.contains("n_terms") && !p["n_terms"].is_null())
            cfg.pmode.n_terms = get_int(p, "n_terms", 0, "pmode");
        cfg.pmode.cheb_order =
            get_int(p, "cheb_order", cfg.pmode.cheb_order, "pmode");
        cfg.pmode.quad_order =
            get_int(p, "quad_order", cfg.pmode.quad_order, "pmode");
        cfg.pmode.omega = get_num(p, "omega", cfg.pmode.omega, "pmode");
        cfg.pmode.allow_inadmissible = get_bool(
            p, "allow_inadmissible", cfg.pmode.allow_inadmissible, "pmode");
    }
    cfg.fit_sigma = get_num(doc, "fit_sigma", cfg.fit_sigma, "config");
    if (!(cfg.fit_sigma > 0)) fail("fit_sigma: must be > 0");
    cfg.out_dir = get_str(doc, "out", cfg.out_dir, "config");
    cfg.svg = get_bool(doc, "svg", cfg.svg, "config");
    cfg.threads = get_int(doc, "threads", cfg.threads, "config");
    if (cfg.threads < 0) fail("threads: must be >= 0 (0 = hardware default)");
    if (cfg.task == "pmode" && cfg.curve.empty())
        fail("config: task 'pmode' requires a non-empty 'curve'");
    return cfg;
}

std::string serialize(const RunConfig& cfg) {
    json doc;
    doc["task"] = cfg.task;
    doc["count"] = cfg.count;
    doc["fit_sigma"] = cfg.fit_sigma;
    doc["out"] = cfg.out_dir;
    doc["svg"] = cfg.svg;
    doc["threads"] = cfg.threads;

    const bool needs_oscillator = cfg.task == "eigs" || cfg.task == "proj" ||
                                  cfg.task == "pspec" || cfg.task == "pmode" ||
                                  cfg.task == "report";
    if (needs_oscillator) {
        json o{{"family", family_name(cfg.oscillator.family)}};
        switch (cfg.oscillator.family) {
            case model::Family::PolynomialL:
                o["a"] = cfg.oscillator.a;
                o["re_coeffs"] = cfg.oscillator.re_coeffs;
                o["im_coeffs"] = cfg.oscillator.im_coeffs;
                o["shift"] = cfg.oscillator.shift;
                break;
            case model::Family::EvenImaginary:
            case model::Family::OddImaginary:
                o["b"] = cfg.oscillator.b;
                break;
            case model::Family::Conjugated:
                o["b"] = cfg.oscillator.b;
                o["s"] = cfg.oscillator.s;
                break;
            case model::Family::SelfAdjointPower:
                o["l"] = cfg.oscillator.l;
                break;
        }
        doc["oscillator"] = o;
        doc["basis"] = json{
            {"size", cfg.basis.size},
            {"scaling", cfg.basis.scaling},
            {"assembly", cfg.basis.assembly == discretize::Assembly::Ladder
                             ? "ladder"
                             : "quadrature"}};
    }
    if (cfg.task == "pspec") {
        doc["rect"] = json{{"re_lo", cfg.rect.re_lo},
                           {"re_hi", cfg.rect.re_hi},
                           {"im_lo", cfg.rect.im_lo},
                           {"im_hi", cfg.rect.im_hi}};
        doc["nx"] = cfg.nx;
        doc["ny"] = cfg.ny;
    }
    if (cfg.task == "gauge")
        doc["gauge"] = json{{"nu", cfg.gauge_spec.nu},
                            {"rho", cfg.gauge_spec.rho},
                            {"tail_tolerance", cfg.gauge_spec.tail_tolerance},
                            {"max_terms", cfg.gauge_spec.max_terms}};
    if (cfg.task == "pmode") {
        json curve = json::array();
        for (const auto& z : cfg.curve)
            curve.push_back(json::array({z.real(), z.imag()}));
        doc["curve"] = curve;
        json p{{"epsilon", cfg.pmode.epsilon},
               {"cheb_order", cfg.pmode.cheb_order},
               {"quad_order", cfg.pmode.quad_order},
               {"omega", cfg.pmode.omega},
               {"allow_inadmissible", cfg.pmode.allow_inadmissible}};
        if (cfg.pmode.delta_override) p["delta"] = *cfg.pmode.delta_override;
        if (cfg.pmode.n_terms) p["n_terms"] = *cfg.pmode.n_terms;
        doc["pmode"] = p;
    }
    return doc.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.task == "eigs") return run_eigs(cfg, out);
        if (cfg.task == "proj") return run_proj(cfg, out);
        if (cfg.task == "pspec") return run_pspec(cfg, out);
        if (cfg.task == "pmode") return run_pmode(cfg, out);
        if (cfg.task == "gauge") return run_gauge(cfg, out);
        if (cfg.task == "report") return run_report(cfg, out);
        if (cfg.task == "verify") return run_verify(cfg, out);
        err << "error: unknown task '" << cfg.task << "'\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        err << "error: truncation failed: " << e.what()
            << " (achieved bound " << e.achieved << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace osc::cli
