// Command-line front end: parses a JSON run configuration, dispatches to the
// solver headers, and writes deterministic CSV plus a run manifest.  All file
// and environment access lives here; the solver headers stay pure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mechkit/annular.hpp"
#include "mechkit/cam.hpp"
#include "mechkit/couette.hpp"
#include "mechkit/drafting.hpp"
#include "mechkit/kernel_id.hpp"
#include "mechkit/modal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Fills defaults and rejects keys the command does not understand, so that a
// manifest echoed back as a config resolves to the identical parameter set.
json resolve(const json& given, const json& defaults, const std::string& where) {
    if (!given.is_object())
        throw std::invalid_argument(where + " must be a JSON object");
    json out = defaults;
    for (const auto& [key, value] : given.items()) {
        if (!defaults.contains(key))
            throw std::invalid_argument("unknown parameter '" + key + "' in " + where);
        if (defaults.at(key).is_object() && value.is_object())
            out[key] = resolve(value, defaults.at(key), where + "." + key);
        else
            out[key] = value;
    }
    return out;
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("GERASIMOV_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
    }
    return hw;
}

struct PlotStyle {
    const char* kind;
    int xcol, ycol;
    const char* xlabel;
    const char* ylabel;
};

struct RunResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json params;
    json grid;    // null when the command takes none
    json reports = json::object();
    PlotStyle plot{"velocity-profile", 1, 2, "x", "y"};
};

json resolve_grid(const json& config, const json& defaults) {
    json given = config.contains("grid") ? config.at("grid") : json::object();
    return resolve(given, defaults, "grid");
}

std::vector<double> linspace(double maxval, int count) {
    if (count < 2) throw std::invalid_argument("grid axis needs at least 2 nodes");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = maxval * i / (count - 1);
    return out;
}

mechkit::DriveMotion make_drive(const json& d) {
    const std::string type = d.at("type").get<std::string>();
    const double scale = d.at("scale").get<double>();
    const double omega = d.at("omega").get<double>();
    if (type == "quadratic")
        return {[scale](double t) { return scale * t * t; },
                [scale](double t) { return 2.0 * scale * t; }};
    if (type == "ramped-sine")
        return {[scale, omega](double t) { return scale * (1.0 - std::cos(omega * t)); },
                [scale, omega](double t) { return scale * omega * std::sin(omega * t); }};
    throw std::invalid_argument("unknown drive type '" + type + "'");
}

RunResult run_couette(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"alpha", 0.5},
                        {"kappa", 1.0},
                        {"density", 1.0},
                        {"gap", 1.0},
                        {"modes", 256},
                        {"drive",
                         {{"type", "quadratic"}, {"scale", 1.0}, {"omega", 1.0}}}},
                       "params");
    r.grid = resolve_grid(config, {{"x_count", 11}, {"t_count", 11}, {"t_max", 1.0}});

    mechkit::CouetteProblem pb;
    pb.gap = r.params.at("gap").get<double>();
    pb.density = r.params.at("density").get<double>();
    pb.law.kappa = r.params.at("kappa").get<double>();
    pb.law.order.alpha = r.params.at("alpha").get<double>();
    pb.modes = r.params.at("modes").get<int>();
    pb.drive = make_drive(r.params.at("drive"));
    mechkit::validate_couette(pb, true);

    const auto xs = linspace(pb.gap, r.grid.at("x_count").get<int>());
    const auto ts =
        linspace(r.grid.at("t_max").get<double>(), r.grid.at("t_count").get<int>());
    const int threads =
        std::max(1, std::min<int>(thread_budget(), static_cast<int>(ts.size())));
    r.rows.assign(ts.size() * xs.size(), {});
    auto fill_band = [&](int first) {
        for (std::size_t i = first; i < ts.size(); i += threads)
            for (std::size_t j = 0; j < xs.size(); ++j)
                r.rows[i * xs.size() + j] = {
                    ts[i], xs[j], mechkit::displacement(pb, xs[j], ts[i])};
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < threads; ++k) pool.emplace_back(fill_band, k);
    fill_band(0);
    for (auto& th : pool) th.join();

    r.columns = {"t", "x", "u"};
    r.reports["threads"] = threads;
    r.plot = {"velocity-profile", 2, 3, "position", "displacement"};
    return r;
}

RunResult run_annular(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"r1", 1.0},
                        {"r2", 1.05},
                        {"alpha", 0.5},
                        {"kappa", 1.0},
                        {"harmonics", json::array({{{"amplitude", 0.2}, {"omega", 2.0}}})}},
                       "params");
    r.grid = resolve_grid(config, {{"t_count", 41}, {"t_max", 2.0 * kPi}});

    mechkit::BearingGeometry g;
    g.r1 = r.params.at("r1").get<double>();
    g.r2 = r.params.at("r2").get<double>();
    g.law.kappa = r.params.at("kappa").get<double>();
    g.law.order.alpha = r.params.at("alpha").get<double>();
    r.reports["thin_gap"] = mechkit::validate_bearing(g).thin_gap;

    std::vector<mechkit::RotationHarmonic> harmonics;
    for (const auto& h : r.params.at("harmonics"))
        harmonics.push_back(
            {h.at("amplitude").get<double>(), h.at("omega").get<double>()});

    const auto ts =
        linspace(r.grid.at("t_max").get<double>(), r.grid.at("t_count").get<int>());
    for (double t : ts)
        r.rows.push_back(
            {t, mechkit::wall_stress_harmonic(g, harmonics, t, mechkit::Wall::inner),
             mechkit::wall_stress_harmonic(g, harmonics, t, mechkit::Wall::outer)});
    r.columns = {"t", "stress_inner", "stress_outer"};
    r.plot = {"decrement", 1, 2, "time", "wall stress"};
    return r;
}

RunResult run_string(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"length", 1.0},
                        {"density", 1.0},
                        {"viscosity", 0.1},
                        {"stiffness", 1.0},
                        {"ext_friction", 0.0},
                        {"modes", 10}},
                       "params");
    const mechkit::StringModel s{r.params.at("length").get<double>(),
                                 r.params.at("density").get<double>(),
                                 r.params.at("viscosity").get<double>(),
                                 r.params.at("stiffness").get<double>(),
                                 r.params.at("ext_friction").get<double>()};
    mechkit::validate_string(s);
    const int modes = r.params.at("modes").get<int>();
    if (modes < 1) throw std::invalid_argument("modes must be at least 1");
    for (int m = 1; m <= modes; ++m) {
        const auto root = mechkit::modal_roots(s, m);
        r.rows.push_back({static_cast<double>(m), root.sigma, std::abs(root.nu.imag()),
                          root.q1.real(), root.q1.imag(), root.q2.real(),
                          root.q2.imag()});
    }
    r.columns = {"mode", "sigma", "nu_im", "q1_re", "q1_im", "q2_re", "q2_im"};
    r.plot = {"decrement", 1, 2, "mode", "decay rate"};
    return r;
}

RunResult run_torsion(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"delta", 0.5},
                        {"rho", 1.0},
                        {"rho0", 1.0},
                        {"d", 1.0},
                        {"length", 1.0},
                        {"count", 10}},
                       "params");
    const double delta = r.params.at("delta").get<double>();
    const double rho = r.params.at("rho").get<double>();
    const double rho0 = r.params.at("rho0").get<double>();
    const double d = r.params.at("d").get<double>();
    const double l = r.params.at("length").get<double>();
    const auto roots = mechkit::torsional_eigenvalues(delta, rho, rho0, d, l,
                                                      r.params.at("count").get<int>());
    const double kt = delta * delta * delta * delta * rho / (rho0 * d);
    for (std::size_t m = 0; m < roots.size(); ++m)
        r.rows.push_back({static_cast<double>(m + 1), roots[m],
                          roots[m] - kt / std::tan(roots[m] * l)});
    r.columns = {"mode", "root", "residual"};
    r.plot = {"decrement", 1, 2, "mode", "root"};
    return r;
}

RunResult run_membrane(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"edge", kPi}, {"count", 10}}, "params");
    const auto modes = mechkit::membrane_rect_modes(r.params.at("edge").get<double>(),
                                                    r.params.at("count").get<int>());
    for (std::size_t k = 0; k < modes.size(); ++k)
        r.rows.push_back({static_cast<double>(k + 1), static_cast<double>(modes[k].m),
                          static_cast<double>(modes[k].n), modes[k].lambda});
    r.columns = {"index", "m", "n", "lambda"};
    r.plot = {"decrement", 1, 4, "index", "eigenvalue"};
    return r;
}

RunResult run_relax_cubic(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"density", 1.0},
                        {"relax_rate", 3.0},
                        {"viscosity", 1.0},
                        {"stiffness", 1.0},
                        {"lambda", 1.0}},
                       "params");
    const mechkit::RelaxCubicModel model{r.params.at("density").get<double>(),
                                         r.params.at("relax_rate").get<double>(),
                                         r.params.at("viscosity").get<double>(),
                                         r.params.at("stiffness").get<double>(),
                                         r.params.at("lambda").get<double>()};
    const auto roots = mechkit::relaxing_mode_roots(model);
    for (std::size_t k = 0; k < roots.size(); ++k)
        r.rows.push_back(
            {static_cast<double>(k + 1), roots[k].real(), roots[k].imag()});
    r.columns = {"root", "re", "im"};
    r.plot = {"decrement", 1, 2, "root", "real part"};
    return r;
}

RunResult run_draft(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"v0", 1.0},
                        {"B", 6.0},
                        {"alpha", 0.01},
                        {"beta", 0.3},
                        {"n0", 10000.0},
                        {"speeds", json::array()}},
                       "params");
    r.grid = resolve_grid(config, {{"x_count", 21}});

    const mechkit::DraftZone zone{r.params.at("v0").get<double>(),
                                  r.params.at("B").get<double>(),
                                  r.params.at("alpha").get<double>(),
                                  r.params.at("beta").get<double>(),
                                  r.params.at("n0").get<double>(), 1.0};
    const auto ends = mechkit::endpoint_speeds(zone);
    const mechkit::VelocityProfile profile(zone);

    std::vector<double> speeds;
    for (const auto& v : r.params.at("speeds")) speeds.push_back(v.get<double>());
    if (speeds.empty()) {
        const int nx = r.grid.at("x_count").get<int>();
        if (nx < 2) throw std::invalid_argument("x_count must be at least 2");
        for (int k = 0; k < nx; ++k)
            speeds.push_back(profile.v_of_x(static_cast<double>(k) / (nx - 1)));
    }
    for (double v : speeds) {
        double x;
        if (std::fabs(v - ends.v_in) < 1e-9)
            x = 0.0;
        else if (std::fabs(v - ends.v_out) < 1e-9)
            x = 1.0;
        else
            x = profile.x_of_v(v);
        r.rows.push_back({v, x, zone.n0 * zone.v0 / v});
    }

    const auto S = mechkit::draft_length_S(zone.B, zone.alpha, zone.beta);
    r.reports["v_in"] = ends.v_in;
    r.reports["v_out"] = ends.v_out;
    r.reports["b_actual"] = ends.b_actual;
    r.reports["draft_length"] = S.value;
    r.reports["draft_length_log_domain_ok"] = S.log_domain_ok;
    r.reports["sigma_max"] = mechkit::sigma_max(zone.B);
    r.reports["slip_sum_ok"] = mechkit::validate_zone(zone).slip_sum_ok;
    r.columns = {"v", "x", "n"};
    r.plot = {"velocity-profile", 2, 1, "position", "speed"};
    return r;
}

RunResult run_draft_unsteady(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"base", 2.0}, {"amplitude", 1.0}, {"q_in", 3.0}}, "params");
    r.grid = resolve_grid(config,
                          {{"x_count", 21}, {"t_count", 21}, {"t_max", 1.0}});

    const double base = r.params.at("base").get<double>();
    const double amp = r.params.at("amplitude").get<double>();
    const double q_in = r.params.at("q_in").get<double>();

    mechkit::FieldGrid lambda;
    lambda.x = linspace(1.0, r.grid.at("x_count").get<int>());
    lambda.t =
        linspace(r.grid.at("t_max").get<double>(), r.grid.at("t_count").get<int>());
    lambda.values.assign(lambda.t.size(), std::vector<double>(lambda.x.size()));
    for (std::size_t i = 0; i < lambda.t.size(); ++i)
        for (std::size_t j = 0; j < lambda.x.size(); ++j)
            lambda.values[i][j] = base + amp * std::sin(lambda.x[j] - lambda.t[i]);

    const auto rec =
        mechkit::recover_from_lambda(lambda, [q_in](double) { return q_in; });
    for (std::size_t i = 0; i < lambda.t.size(); ++i)
        for (std::size_t j = 0; j < lambda.x.size(); ++j)
            r.rows.push_back({lambda.t[i], lambda.x[j], lambda.values[i][j],
                              rec.q.values[i][j], rec.v.values[i][j],
                              rec.F.values[i][j]});

    r.reports["draft_final"] = rec.draft.back();
    r.reports["continuity_residual"] = mechkit::continuity_residual(lambda, rec.v);
    r.columns = {"t", "x", "lambda", "q", "v", "F"};
    r.plot = {"velocity-profile", 2, 5, "position", "speed"};
    return r;
}

RunResult run_fit_kernel(const json& config) {
    RunResult r;
    r.params = resolve(config.value("params", json::object()),
                       {{"step", 0.1},
                        {"count", 24},
                        {"amplitudes", json::array({2.0, 0.5})},
                        {"exponents", json::array({-1.0, -3.0})},
                        {"terms", 2},
                        {"samples", json::array()}},
                       "params");

    std::vector<std::pair<double, double>> samples;
    if (!r.params.at("samples").empty()) {
        for (const auto& s : r.params.at("samples")) {
            if (!s.is_array() || s.size() != 2)
                throw std::invalid_argument("each sample must be a [t, value] pair");
            samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
        }
    } else {
        const auto& amps = r.params.at("amplitudes");
        const auto& exps = r.params.at("exponents");
        if (amps.size() != exps.size())
            throw std::invalid_argument(
                "amplitudes and exponents must have equal length");
        const double step = r.params.at("step").get<double>();
        const int count = r.params.at("count").get<int>();
        for (int j = 0; j < count; ++j) {
            const double t = step * j;
            double v = 0.0;
            for (std::size_t p = 0; p < amps.size(); ++p)
                v += amps.at(p).get<double>() * std::exp(exps.at(p).get<double>() * t);
            samples.emplace_back(t, v);
        }
    }

    const auto model = mechkit::prony_fit(samples, r.params.at("terms").get<int>());
    for (std::size_t k = 0; k < model.terms.size(); ++k)
        r.rows.push_back({static_cast<double>(k + 1), model.terms[k].amplitude,
                          model.terms[k].exponent});
    r.reports["residual_rms"] = model.residual_rms;
    r.reports["complex_exponents"] = model.complex_exponents;
    r.reports["unstable_exponents"] = model.unstable_exponents;
    r.columns = {"term", "amplitude", "exponent"};
    r.plot = {"decrement", 1, 3, "term", "exponent"};
    return r;
}

RunResult run_cam(const json& config) {
    const json given = config.value("params", json::object());
    const std::string type =
        given.is_object() ? given.value("type", "weight") : "weight";
    json defaults = {{"type", "weight"},
                     {"a", 1.0},
                     {"b", 1.0},
                     {"step_deg", 10.0},
                     {"range_deg", json::array({0.0, 360.0})},
                     {"phi0_deg", 0.0},
                     {"sensitivity", 1.0},
                     {"arm", 1.0},
                     {"weight", 1.0},
                     {"calibration", "identity"},
                     {"lambda", 1.0}};
    if (type == "number") defaults["range_deg"] = json::array({0.0, 180.0});
    if (type == "general") defaults["range_deg"] = json::array({30.0, 150.0});

    RunResult r;
    r.params = resolve(given, defaults, "params");
    const auto& range = r.params.at("range_deg");
    if (!range.is_array() || range.size() != 2)
        throw std::invalid_argument("range_deg must be [low, high]");
    const double lo = range.at(0).get<double>();
    const double hi = range.at(1).get<double>();
    const double step = r.params.at("step_deg").get<double>();
    if (!(step > 0.0) || !(hi > lo))
        throw std::invalid_argument("cam sweep needs step_deg > 0 and high > low");

    std::vector<double> degs;
    for (double d = lo; d <= hi + 1e-9; d += step) degs.push_back(d);
    std::vector<double> rads;
    for (double d : degs) rads.push_back(d * kPi / 180.0);

    mechkit::CamProfile prof;
    if (type == "weight") {
        prof = mechkit::weight_profile(r.params.at("a").get<double>(), rads);
    } else if (type == "number") {
        prof = mechkit::number_profile(r.params.at("b").get<double>(), rads);
    } else if (type == "general") {
        mechkit::QuadrantSpec spec;
        spec.sensitivity = r.params.at("sensitivity").get<double>();
        spec.arm = r.params.at("arm").get<double>();
        spec.weight = r.params.at("weight").get<double>();
        spec.phi0 = r.params.at("phi0_deg").get<double>() * kPi / 180.0;
        spec.phi1 = rads.front();
        spec.phi2 = rads.back() + 1e-9;
        const std::string cal = r.params.at("calibration").get<std::string>();
        const double lambda = r.params.at("lambda").get<double>();
        if (cal == "identity") {
            spec.calibration = [](double z) { return z; };
            spec.calibration_rate = [](double) { return 1.0; };
        } else if (cal == "exp") {
            spec.calibration = [](double z) { return std::exp(z); };
            spec.calibration_rate = [](double z) { return std::exp(z); };
        } else if (cal == "reciprocal") {
            spec.calibration = [lambda](double z) { return -lambda / z; };
            spec.calibration_rate = [lambda](double z) { return lambda / (z * z); };
        } else {
            throw std::invalid_argument("unknown calibration '" + cal + "'");
        }
        prof = mechkit::general_profile(spec, rads);
    } else {
        throw std::invalid_argument("unknown cam type '" + type + "'");
    }

    for (std::size_t i = 0; i < prof.samples.size(); ++i)
        r.rows.push_back({degs[i], prof.samples[i].x, prof.samples[i].y});
    r.columns = {"phi_deg", "x", "y"};
    r.plot = {"cam", 2, 3, "x", "y"};
    return r;
}

std::string plot_script(const std::string& csv_name, const PlotStyle& style) {
    std::ostringstream os;
    os << "# gnuplot script (" << style.kind << ")\n";
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set xlabel '" << style.xlabel << "'\n";
    os << "set ylabel '" << style.ylabel << "'\n";
    os << "set key off\n";
    if (std::string(style.kind) == "cam") os << "set size ratio -1\n";
    os << "plot '" << csv_name << "' using " << style.xcol << ":" << style.ycol
       << " with linespoints\n";
    return os.str();
}

void write_atomic(const fs::path& target, const std::string& content) {
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

int run(const std::string& config_path, const std::string& out_dir, bool plot,
        bool verbose) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "mech: cannot open config %s\n", config_path.c_str());
        return 1;
    }
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    json config = json::parse(text);    // throws on malformed input
    if (!config.is_object())
        throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        (void)value;
        if (key != "command" && key != "params" && key != "output" &&
            key != "grid" && key != "plot_kind" && key != "reports")
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
    const std::string command = config.at("command").get<std::string>();

    RunResult result;
    if (command == "couette")
        result = run_couette(config);
    else if (command == "annular")
        result = run_annular(config);
    else if (command == "string")
        result = run_string(config);
    else if (command == "torsion")
        result = run_torsion(config);
    else if (command == "membrane")
        result = run_membrane(config);
    else if (command == "relax-cubic")
        result = run_relax_cubic(config);
    else if (command == "draft")
        result = run_draft(config);
    else if (command == "draft-unsteady")
        result = run_draft_unsteady(config);
    else if (command == "fit-kernel")
        result = run_fit_kernel(config);
    else if (command == "cam")
        result = run_cam(config);
    else
        throw std::invalid_argument("unknown command '" + command + "'");

    if (config.contains("grid") && result.grid.is_null())
        throw std::invalid_argument("command '" + command + "' takes no grid");

    const std::string stem = config.value("output", command);
    if (stem.empty() || stem.find('/') != std::string::npos ||
        stem.find('\\') != std::string::npos)
        throw std::invalid_argument("output must be a bare file stem");

    PlotStyle style = result.plot;
    if (config.contains("plot_kind")) {
        const std::string kind = config.at("plot_kind").get<std::string>();
        if (kind != "velocity-profile" && kind != "cam" && kind != "decrement")
            throw std::invalid_argument("unknown plot kind '" + kind + "'");
        if (kind != style.kind)
            throw std::invalid_argument("command '" + command +
                                        "' does not support plot kind '" + kind + "'");
    }

    json manifest;
    manifest["command"] = command;
    manifest["params"] = result.params;
    if (!result.grid.is_null()) manifest["grid"] = result.grid;
    manifest["output"] = stem;
    manifest["reports"] = result.reports;
    const std::string manifest_text = manifest.dump(2) + "\n";

    std::ostringstream csv;
    csv << "# mech " << command << " manifest-fnv1a=" << hex16(fnv1a(manifest_text))
        << "\n# ";
    for (std::size_t c = 0; c < result.columns.size(); ++c)
        csv << (c ? "," : "") << result.columns[c];
    csv << "\n";
    for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            csv << (c ? "," : "") << fmt(row[c]);
        csv << "\n";
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const fs::path csv_path = dir / (stem + ".csv");
    write_atomic(csv_path, csv.str());
    write_atomic(dir / (stem + ".manifest.json"), manifest_text);
    if (plot)
        write_atomic(dir / (stem + ".gp"), plot_script(stem + ".csv", style));

    if (verbose) {
        std::printf("wrote %s (%zu rows)\n", csv_path.string().c_str(),
                    result.rows.size());
        std::printf("wrote %s\n", (dir / (stem + ".manifest.json")).string().c_str());
        if (plot) std::printf("wrote %s\n", (dir / (stem + ".gp")).string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collected mechanics solvers: field runs, spectra, and cam design"};
    std::string config_path;
    std::string out_dir = ".";
    bool plot = false;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--output", out_dir, "output directory");
    app.add_flag("--plot", plot, "also emit a gnuplot script");
    app.add_flag("--verbose", verbose, "report written files");
    CLI11_PARSE(app, argc, argv);

    try {
        return run(config_path, out_dir, plot, verbose);
    } catch (const json::exception& e) {
        std::fprintf(stderr, "mech: config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "mech: config error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "mech: numeric failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mech: failure: %s\n", e.what());
        return 2;
    }
}
