#include "rtstab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rtstab/mode_profile.hpp"
#include "rtstab/simulator.hpp"
#include "rtstab/symbol.hpp"
#include "rtstab/witness.hpp"

namespace rtstab::io {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// strict config parsing
// ---------------------------------------------------------------------------

struct Parser {
    std::vector<std::string> violations;

    void reject_unknown(const json& j, const std::string& where,
                        std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            violations.push_back(where + ": expected an object");
            return;
        }
        for (const auto& [key, _] : j.items()) {
            bool ok = false;
            for (const char* a : allowed)
                if (key == a) {
                    ok = true;
                    break;
                }
            if (!ok) violations.push_back(where + ": unknown key `" + key + "`");
        }
    }

    double number(const json& j, const std::string& where, const char* key) {
        if (!j.contains(key)) {
            violations.push_back(where + ": missing `" + std::string(key) + "`");
            return 0.0;
        }
        if (!j[key].is_number()) {
            violations.push_back(where + ": `" + std::string(key) +
                                 "` must be a number");
            return 0.0;
        }
        return j[key].get<double>();
    }

    double positive(const json& j, const std::string& where, const char* key) {
        const double v = number(j, where, key);
        if (!(v > 0.0))
            violations.push_back(where + ": `" + std::string(key) +
                                 "` must be > 0");
        return v;
    }

    long long integer(const json& j, const std::string& where, const char* key) {
        if (!j.contains(key)) {
            violations.push_back(where + ": missing `" + std::string(key) + "`");
            return 0;
        }
        if (!j[key].is_number_integer()) {
            violations.push_back(where + ": `" + std::string(key) +
                                 "` must be an integer");
            return 0;
        }
        return j[key].get<long long>();
    }

    std::vector<double> number_list(const json& j, const std::string& where,
                                    const char* key, bool required = true) {
        std::vector<double> out;
        if (!j.contains(key)) {
            if (required)
                violations.push_back(where + ": missing `" + std::string(key) + "`");
            return out;
        }
        if (!j[key].is_array()) {
            violations.push_back(where + ": `" + std::string(key) +
                                 "` must be an array of numbers");
            return out;
        }
        for (const auto& v : j[key]) {
            if (!v.is_number()) {
                violations.push_back(where + ": `" + std::string(key) +
                                     "` must contain numbers only");
                return {};
            }
            out.push_back(v.get<double>());
        }
        return out;
    }

    Complex complex_pair(const json& j, const std::string& where, const char* key) {
        const auto v = number_list(j, where, key);
        if (v.size() != 2) {
            violations.push_back(where + ": `" + std::string(key) +
                                 "` must be [re, im]");
            return {};
        }
        return {v[0], v[1]};
    }

    GridSpec grid(const json& j, const std::string& where) {
        GridSpec g;
        reject_unknown(j, where, {"dim", "n", "box"});
        g.dim = static_cast<int>(integer(j, where, "dim"));
        const long long n = integer(j, where, "n");
        g.n = n > 0 ? static_cast<std::size_t>(n) : 0;
        g.box = positive(j, where, "box");
        if (g.dim != 1 && g.dim != 2)
            violations.push_back(where + ": `dim` must be 1 or 2");
        if (n <= 0 || (n & (n - 1)) != 0)
            violations.push_back(where + ": `n` must be a positive power of two");
        return g;
    }
};

RunConfig parse_config_impl(const json& root) {
    Parser p;
    p.reject_unknown(root, "config",
                     {"params", "symbol", "curve", "max", "zeros", "profile",
                      "witness", "simulate", "seed", "threads"});

    double rho1 = 1, rho2 = 1, mu1 = 1, mu2 = 1, sigma = 1, gamma_a = 1;
    if (!root.contains("params")) {
        p.violations.push_back("config: missing `params`");
    } else {
        const json& jp = root["params"];
        p.reject_unknown(jp, "params",
                         {"rho1", "rho2", "mu1", "mu2", "sigma", "gamma_a"});
        rho1 = p.positive(jp, "params", "rho1");
        rho2 = p.positive(jp, "params", "rho2");
        mu1 = p.positive(jp, "params", "mu1");
        mu2 = p.positive(jp, "params", "mu2");
        sigma = p.positive(jp, "params", "sigma");
        gamma_a = p.positive(jp, "params", "gamma_a");
    }

    std::optional<SymbolBlock> symbol;
    if (root.contains("symbol")) {
        const json& j = root["symbol"];
        p.reject_unknown(j, "symbol", {"lambda", "taus"});
        SymbolBlock b;
        b.lambda = p.complex_pair(j, "symbol", "lambda");
        b.taus = p.number_list(j, "symbol", "taus");
        for (double t : b.taus)
            if (t < 0.0) p.violations.push_back("symbol: taus must be >= 0");
        symbol = b;
    }

    std::optional<CurveBlock> curve;
    if (root.contains("curve")) {
        const json& j = root["curve"];
        p.reject_unknown(j, "curve", {"n_points", "tol"});
        CurveBlock b;
        b.n_points = static_cast<int>(p.integer(j, "curve", "n_points"));
        b.tol = p.positive(j, "curve", "tol");
        if (b.n_points < 2)
            p.violations.push_back("curve: `n_points` must be >= 2");
        curve = b;
    }

    std::optional<MaxBlock> maxb;
    if (root.contains("max")) {
        const json& j = root["max"];
        p.reject_unknown(j, "max", {"tol"});
        MaxBlock b;
        b.tol = p.positive(j, "max", "tol");
        maxb = b;
    }

    std::optional<ZerosBlock> zeros;
    if (root.contains("zeros")) {
        const json& j = root["zeros"];
        p.reject_unknown(j, "zeros", {"taus", "region"});
        ZerosBlock b;
        b.taus = p.number_list(j, "zeros", "taus");
        for (double t : b.taus)
            if (!(t > 0.0)) p.violations.push_back("zeros: taus must be > 0");
        if (j.contains("region")) {
            const json& r = j["region"];
            p.reject_unknown(r, "zeros.region",
                             {"re_min", "re_max", "im_min", "im_max"});
            Rectangle rect{};
            rect.re_min = p.number(r, "zeros.region", "re_min");
            rect.re_max = p.number(r, "zeros.region", "re_max");
            rect.im_min = p.number(r, "zeros.region", "im_min");
            rect.im_max = p.number(r, "zeros.region", "im_max");
            if (!(rect.re_min > 0.0))
                p.violations.push_back("zeros.region: `re_min` must be > 0");
            if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min))
                p.violations.push_back("zeros.region: empty rectangle");
            b.region = rect;
        }
        zeros = b;
    }

    std::optional<ProfileBlock> profile;
    if (root.contains("profile")) {
        const json& j = root["profile"];
        p.reject_unknown(j, "profile",
                         {"lambda", "tau", "h_amp", "n_samples", "y_max"});
        ProfileBlock b;
        b.lambda = p.complex_pair(j, "profile", "lambda");
        b.tau = p.positive(j, "profile", "tau");
        b.h_amp = j.contains("h_amp") ? p.complex_pair(j, "profile", "h_amp")
                                      : Complex(1.0, 0.0);
        if (j.contains("n_samples"))
            b.n_samples = static_cast<int>(p.integer(j, "profile", "n_samples"));
        if (b.n_samples < 1)
            p.violations.push_back("profile: `n_samples` must be >= 1");
        if (j.contains("y_max")) b.y_max = p.number(j, "profile", "y_max");
        profile = b;
    }

    std::optional<WitnessBlock> witness;
    if (root.contains("witness")) {
        const json& j = root["witness"];
        p.reject_unknown(j, "witness",
                         {"xi0", "epsilons", "norm_p", "grid", "lambda0"});
        WitnessBlock b;
        b.xi0 = p.number_list(j, "witness", "xi0");
        b.epsilons = p.number_list(j, "witness", "epsilons");
        for (double e : b.epsilons)
            if (!(e > 0.0))
                p.violations.push_back("witness: epsilons must be > 0");
        if (j.contains("norm_p")) {
            b.norm_p = p.number(j, "witness", "norm_p");
            if (!(b.norm_p >= 1.0))
                p.violations.push_back("witness: `norm_p` must be >= 1");
        }
        if (j.contains("grid"))
            b.grid = p.grid(j["grid"], "witness.grid");
        else
            p.violations.push_back("witness: missing `grid`");
        if (j.contains("lambda0"))
            b.lambda0 = p.number(j, "witness", "lambda0");
        if (static_cast<int>(b.xi0.size()) != b.grid.dim && b.grid.dim != 0)
            p.violations.push_back("witness: `xi0` length must equal grid dim");
        witness = b;
    }

    std::optional<SimulateBlock> simulate;
    if (root.contains("simulate")) {
        const json& j = root["simulate"];
        p.reject_unknown(j, "simulate", {"grid", "initial", "times", "table_tol"});
        SimulateBlock b;
        if (j.contains("grid"))
            b.grid = p.grid(j["grid"], "simulate.grid");
        else
            p.violations.push_back("simulate: missing `grid`");
        if (j.contains("initial")) {
            const json& ji = j["initial"];
            p.reject_unknown(ji, "simulate.initial",
                             {"kind", "mode", "amplitude", "path"});
            if (!ji.contains("kind") || !ji["kind"].is_string()) {
                p.violations.push_back("simulate.initial: missing string `kind`");
            } else {
                b.initial.kind = ji["kind"].get<std::string>();
                if (b.initial.kind != "pure-mode" &&
                    b.initial.kind != "white-noise" && b.initial.kind != "file")
                    p.violations.push_back(
                        "simulate.initial: `kind` must be pure-mode, "
                        "white-noise or file");
            }
            if (ji.contains("amplitude"))
                b.initial.amplitude = p.number(ji, "simulate.initial", "amplitude");
            if (b.initial.kind == "pure-mode")
                b.initial.mode = p.number_list(ji, "simulate.initial", "mode");
            if (b.initial.kind == "file") {
                if (!ji.contains("path") || !ji["path"].is_string())
                    p.violations.push_back("simulate.initial: missing `path`");
                else
                    b.initial.path = ji["path"].get<std::string>();
            }
        } else {
            p.violations.push_back("simulate: missing `initial`");
        }
        b.times = p.number_list(j, "simulate", "times");
        for (double t : b.times)
            if (t < 0.0) p.violations.push_back("simulate: times must be >= 0");
        if (j.contains("table_tol"))
            b.table_tol = p.positive(j, "simulate", "table_tol");
        simulate = b;
    }

    std::uint64_t seed = 0;
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
            p.violations.push_back("config: `seed` must be an unsigned integer");
        else
            seed = root["seed"].get<std::uint64_t>();
    }
    int threads = 1;
    if (root.contains("threads")) {
        threads = static_cast<int>(p.integer(root, "config", "threads"));
        if (threads < 1) p.violations.push_back("config: `threads` must be >= 1");
    }

    if (!p.violations.empty()) throw ConfigInvalid(std::move(p.violations));

    RunConfig cfg{FluidParams(rho1, rho2, mu1, mu2, sigma, gamma_a),
                  symbol, curve, maxb, zeros, profile, witness, simulate,
                  seed, threads};
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["params"] = {{"rho1", cfg.params.rho1()}, {"rho2", cfg.params.rho2()},
                   {"mu1", cfg.params.mu1()},   {"mu2", cfg.params.mu2()},
                   {"sigma", cfg.params.sigma()},
                   {"gamma_a", cfg.params.gamma_a()}};
    if (cfg.symbol)
        j["symbol"] = {{"lambda", {cfg.symbol->lambda.real(), cfg.symbol->lambda.imag()}},
                       {"taus", cfg.symbol->taus}};
    if (cfg.curve)
        j["curve"] = {{"n_points", cfg.curve->n_points}, {"tol", cfg.curve->tol}};
    if (cfg.max) j["max"] = {{"tol", cfg.max->tol}};
    if (cfg.zeros) {
        j["zeros"] = {{"taus", cfg.zeros->taus}};
        if (cfg.zeros->region) {
            const Rectangle& r = *cfg.zeros->region;
            j["zeros"]["region"] = {{"re_min", r.re_min}, {"re_max", r.re_max},
                                    {"im_min", r.im_min}, {"im_max", r.im_max}};
        }
    }
    if (cfg.profile)
        j["profile"] = {{"lambda", {cfg.profile->lambda.real(), cfg.profile->lambda.imag()}},
                        {"tau", cfg.profile->tau},
                        {"h_amp", {cfg.profile->h_amp.real(), cfg.profile->h_amp.imag()}},
                        {"n_samples", cfg.profile->n_samples},
                        {"y_max", cfg.profile->y_max}};
    if (cfg.witness) {
        j["witness"] = {{"xi0", cfg.witness->xi0},
                        {"epsilons", cfg.witness->epsilons},
                        {"norm_p", cfg.witness->norm_p},
                        {"grid", {{"dim", cfg.witness->grid.dim},
                                  {"n", cfg.witness->grid.n},
                                  {"box", cfg.witness->grid.box}}}};
        if (cfg.witness->lambda0) j["witness"]["lambda0"] = *cfg.witness->lambda0;
    }
    if (cfg.simulate) {
        json ji = {{"kind", cfg.simulate->initial.kind},
                   {"amplitude", cfg.simulate->initial.amplitude}};
        if (!cfg.simulate->initial.mode.empty()) ji["mode"] = cfg.simulate->initial.mode;
        if (!cfg.simulate->initial.path.empty()) ji["path"] = cfg.simulate->initial.path;
        j["simulate"] = {{"grid", {{"dim", cfg.simulate->grid.dim},
                                   {"n", cfg.simulate->grid.n},
                                   {"box", cfg.simulate->grid.box}}},
                         {"initial", ji},
                         {"times", cfg.simulate->times},
                         {"table_tol", cfg.simulate->table_tol}};
    }
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    return j;
}

// ---------------------------------------------------------------------------
// artifact writing
// ---------------------------------------------------------------------------

struct Manifest {
    json outputs = json::array();

    void record(const fs::path& path, const std::string& bytes) {
        outputs.push_back({{"path", path.filename().string()},
                           {"bytes", bytes.size()},
                           {"fnv1a64", fnv1a64_hex(bytes)}});
    }
};

void atomic_write(const fs::path& path, const std::string& bytes) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void emit(Manifest& m, const fs::path& dir, const std::string& name,
          const std::string& bytes) {
    atomic_write(dir / name, bytes);
    m.record(dir / name, bytes);
}

std::string field_binary(const GridField& f) {
    std::string bytes;
    bytes.resize(f.values().size() * 2 * sizeof(double));
    char* out = bytes.data();
    for (const Complex& z : f.values()) {
        const double re = z.real(), im = z.imag();
        std::memcpy(out, &re, sizeof re);
        out += sizeof re;
        std::memcpy(out, &im, sizeof im);
        out += sizeof im;
    }
    return bytes;
}

json field_sidecar(const GridField& f) {
    const GridSpec& s = f.spec();
    json j = {{"dtype", "float64"},
              {"endianness", "little"},
              {"layout", "complex-interleaved"},
              {"order", "row-major"},
              {"box", s.box},
              {"count", f.values().size()}};
    j["dims"] = s.dim == 1 ? json::array({s.n}) : json::array({s.n, s.n});
    return j;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

void cmd_symbol(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.symbol) throw ConfigInvalid({"symbol: block missing from config"});
    std::ostringstream csv;
    csv << "tau,re_s,im_s,re_omega1,im_omega1,re_omega2,im_omega2,"
           "re_eta1,im_eta1,re_eta2,im_eta2\n";
    for (double tau : cfg.symbol->taus) {
        const SymbolEval e = evaluate_symbol(cfg.symbol->lambda, tau, cfg.params);
        csv << fmt17(tau) << ',' << fmt17(e.value.real()) << ','
            << fmt17(e.value.imag()) << ',' << fmt17(e.omega1.real()) << ','
            << fmt17(e.omega1.imag()) << ',' << fmt17(e.omega2.real()) << ','
            << fmt17(e.omega2.imag()) << ',' << fmt17(e.eta1.real()) << ','
            << fmt17(e.eta1.imag()) << ',' << fmt17(e.eta2.real()) << ','
            << fmt17(e.eta2.imag()) << '\n';
    }
    emit(m, dir, "symbol.csv", csv.str());
}

void cmd_curve(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.curve) throw ConfigInvalid({"curve: block missing from config"});
    const DispersionCurve c = dispersion_curve(cfg.params, cfg.curve->n_points,
                                               cfg.curve->tol, cfg.threads);
    std::ostringstream csv;
    csv << "tau,lambda,residual\n";
    for (std::size_t i = 0; i < c.taus.size(); ++i)
        csv << fmt17(c.taus[i]) << ',' << fmt17(c.lambdas[i]) << ','
            << fmt17(c.residuals[i]) << '\n';
    emit(m, dir, "curve.csv", csv.str());
}

void cmd_max(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.max) throw ConfigInvalid({"max: block missing from config"});
    const GrowthSummary g = max_growth(cfg.params, cfg.max->tol);
    const json j = {{"tau_max", g.tau_max},
                    {"lambda_inf", g.lambda_inf},
                    {"bracket_width", g.bracket_width}};
    emit(m, dir, "growth_summary.json", j.dump(2) + "\n");
}

Rectangle default_zero_region(double tau, const FluidParams& p) {
    double scale = std::min(p.mu1() * tau * tau / p.rho1(),
                            p.mu2() * tau * tau / p.rho2());
    if (p.is_heavy_on_top()) {
        const GrowthSummary g = max_growth(p, 1e-6);
        scale = std::max(scale, g.lambda_inf);
    }
    return Rectangle{1e-6 * scale, 10.0 * scale, -5.0 * scale, 5.0 * scale};
}

void cmd_zeros(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.zeros) throw ConfigInvalid({"zeros: block missing from config"});
    json results = json::array();
    for (double tau : cfg.zeros->taus) {
        const Rectangle region = cfg.zeros->region
                                     ? *cfg.zeros->region
                                     : default_zero_region(tau, cfg.params);
        const ZeroCount z = count_zeros_rhp(tau, cfg.params, region);
        results.push_back({{"tau", tau},
                           {"count", z.count},
                           {"winding_residual", z.winding_residual},
                           {"region", {{"re_min", z.region.re_min},
                                       {"re_max", z.region.re_max},
                                       {"im_min", z.region.im_min},
                                       {"im_max", z.region.im_max}}}});
    }
    emit(m, dir, "zeros.json", json{{"results", results}}.dump(2) + "\n");
}

void cmd_profile(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.profile) throw ConfigInvalid({"profile: block missing from config"});
    const ProfileBlock& b = *cfg.profile;
    const ModeProfile prof = solve_mode(b.lambda, b.tau, b.h_amp, cfg.params);
    const double residual = residual_check(prof, cfg.params, 20);

    const double decay = std::min({prof.tau, prof.m1.real(), prof.m2.real()});
    const double y_max = b.y_max > 0.0 ? b.y_max : 1.0 / decay;

    std::ostringstream csv;
    csv << "y,re_v,im_v,re_w,im_w,re_pi,im_pi\n";
    for (int i = -b.n_samples; i <= b.n_samples; ++i) {
        const double y = y_max * i / b.n_samples;
        const Complex v = prof.velocity_x(y), w = prof.velocity_y(y),
                      pi = prof.pressure(y);
        csv << fmt17(y) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << ','
            << fmt17(w.real()) << ',' << fmt17(w.imag()) << ','
            << fmt17(pi.real()) << ',' << fmt17(pi.imag()) << '\n';
    }
    emit(m, dir, "profile.csv", csv.str());

    const json j = {
        {"lambda", {prof.lambda.real(), prof.lambda.imag()}},
        {"tau", prof.tau},
        {"h_amp", {prof.h_amp.real(), prof.h_amp.imag()}},
        {"residual", residual},
        {"coeffs_lower", {{prof.coeffs_lower[0].real(), prof.coeffs_lower[0].imag()},
                          {prof.coeffs_lower[1].real(), prof.coeffs_lower[1].imag()}}},
        {"coeffs_upper", {{prof.coeffs_upper[0].real(), prof.coeffs_upper[0].imag()},
                          {prof.coeffs_upper[1].real(), prof.coeffs_upper[1].imag()}}},
        {"pressure_coeffs", {{prof.pressure_coeffs[0].real(), prof.pressure_coeffs[0].imag()},
                             {prof.pressure_coeffs[1].real(), prof.pressure_coeffs[1].imag()}}}};
    emit(m, dir, "profile.json", j.dump(2) + "\n");
}

void cmd_witness(const RunConfig& cfg, const fs::path& dir, Manifest& m) {
    if (!cfg.witness) throw ConfigInvalid({"witness: block missing from config"});
    const WitnessBlock& b = *cfg.witness;
    std::ostringstream csv;
    csv << "epsilon,ratio\n";
    int idx = 0;
    for (double eps : b.epsilons) {
        const double ratio =
            witness_residual(b.xi0, eps, cfg.params, b.norm_p, b.grid, b.lambda0);
        csv << fmt17(eps) << ',' << fmt17(ratio) << '\n';

        const WindowFunction w = build_window(eps, b.grid);
        const GridField h = build_heps(b.xi0, eps, w);
        const std::string stem = "heps_" + std::to_string(idx++);
        emit(m, dir, stem + ".f64", field_binary(h));
        json side = field_sidecar(h);
        side["xi0"] = b.xi0;
        side["epsilon"] = eps;
        emit(m, dir, stem + ".json", side.dump(2) + "\n");
    }
    emit(m, dir, "witness.csv", csv.str());
}

GridField initial_field(const SimulateBlock& b, std::uint64_t seed) {
    if (b.initial.kind == "pure-mode")
        return make_pure_mode(b.grid, b.initial.mode, b.initial.amplitude);
    if (b.initial.kind == "white-noise")
        return make_white_noise(b.grid, seed, b.initial.amplitude);
    // file: complex-interleaved float64, little-endian, row-major
    const fs::path path = b.initial.path;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open initial field file " + path.string());
    std::vector<Complex> values(b.grid.total());
    for (auto& z : values) {
        double re = 0.0, im = 0.0;
        f.read(reinterpret_cast<char*>(&re), sizeof re);
        f.read(reinterpret_cast<char*>(&im), sizeof im);
        if (!f) throw Error("initial field file too short: " + path.string());
        z = Complex(re, im);
    }
    return GridField::from_values(b.grid, std::move(values));
}

void cmd_simulate(const RunConfig& cfg, const fs::path& dir, Manifest& m,
                  json& extra) {
    if (!cfg.simulate) throw ConfigInvalid({"simulate: block missing from config"});
    const SimulateBlock& b = *cfg.simulate;

    SimulationRun run = make_run(initial_field(b, cfg.seed), b.times,
                                 cfg.params, b.table_tol, cfg.threads);

    // growth table artifact
    {
        std::ostringstream csv;
        csv << "wavenumber,re_rate,im_rate,provenance,winding_count\n";
        for (const auto& e : run.table.entries)
            csv << fmt17(e.wavenumber) << ',' << fmt17(e.rate.real()) << ','
                << fmt17(e.rate.imag()) << ',' << to_string(e.provenance) << ','
                << e.winding_count << '\n';
        emit(m, dir, "growth_table.csv", csv.str());
    }

    json provenance_counts = json::object();
    for (const auto& e : run.table.entries) {
        const std::string key = to_string(e.provenance);
        provenance_counts[key] = provenance_counts.value(key, 0) + 1;
    }
    extra["provenance_counts"] = provenance_counts;
    extra["multiplicity_suspect"] =
        static_cast<std::uint64_t>(run.table.multiplicity_suspect_count());

    std::optional<double> blow_up;
    json snaps = json::array();
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        const double t = run.times[i];
        try {
            const GridField snap = evolve(run, t);
            const Diagnostics d = diagnostics(run, t);
            const std::string stem = "snapshot_" + std::to_string(i);
            emit(m, dir, stem + ".f64", field_binary(snap));
            json side = field_sidecar(snap);
            side["time"] = t;
            emit(m, dir, stem + ".json", side.dump(2) + "\n");
            snaps.push_back({{"time", t},
                             {"peak_wavenumber", d.peak_wavenumber},
                             {"l2_amplitude", d.l2_amplitude},
                             {"max_height", d.max_height},
                             {"efolds", d.efolds}});
        } catch (const OverflowGuard& e) {
            blow_up = e.blow_up_time;
            snaps.push_back({{"time", t}, {"skipped", "overflow-guard"}});
        }
    }
    extra["diagnostics"] = snaps;
    if (blow_up) extra["blow_up_time"] = *blow_up;
    emit(m, dir, "diagnostics.json", extra.dump(2) + "\n");
}

} // namespace

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

RunConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid({std::string("not valid JSON: ") + e.what()});
    }
    return parse_config_impl(root);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigInvalid({"cannot open config file " + path});
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

int run_command(const std::string& cmd, const RunConfig& cfg,
                const std::string& out_dir) {
    try {
        const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
        fs::create_directories(dir);
        Manifest manifest;
        json extra = json::object();

        if (cmd == "symbol") cmd_symbol(cfg, dir, manifest);
        else if (cmd == "curve") cmd_curve(cfg, dir, manifest);
        else if (cmd == "max") cmd_max(cfg, dir, manifest);
        else if (cmd == "zeros") cmd_zeros(cfg, dir, manifest);
        else if (cmd == "profile") cmd_profile(cfg, dir, manifest);
        else if (cmd == "witness") cmd_witness(cfg, dir, manifest);
        else if (cmd == "simulate") cmd_simulate(cfg, dir, manifest, extra);
        else throw ConfigInvalid({"unknown command `" + cmd + "`"});

        json mj = {{"command", cmd},
                   {"config", config_to_json(cfg)},
                   {"outputs", manifest.outputs}};
        if (cmd == "simulate") {
            mj["provenance_counts"] = extra["provenance_counts"];
            mj["multiplicity_suspect"] = extra["multiplicity_suspect"];
            if (extra.contains("blow_up_time"))
                mj["blow_up_time"] = extra["blow_up_time"];
        }
        atomic_write(dir / "manifest.json", mj.dump(2) + "\n");
        return kOk;
    } catch (const ConfigInvalid& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kConfig;
    } catch (const StableConfiguration& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kStableConfiguration;
    } catch (const NoConvergence& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const ContourTooCoarse& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kContour;
    } catch (const ZeroOnBoundary& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kContour;
    } catch (const DegenerateInput& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kConfig;
    } catch (const EpsilonTooLarge& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kConfig;
    } catch (const GridTooCoarse& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kConfig;
    } catch (const BoxTooSmall& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "rt: " << e.what() << "\n";
        return kIo;
    }
}

} // namespace rtstab::io
