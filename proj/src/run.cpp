#include "soliton/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "soliton/asymptotics.hpp"
#include "soliton/continuation.hpp"
#include "soliton/errors.hpp"
#include "soliton/io.hpp"
#include "soliton/metric.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace soliton {

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Solve: return "solve";
        case Mode::Sweep: return "sweep";
        case Mode::Verify: return "verify";
        case Mode::Reconstruct: return "reconstruct";
    }
    return "solve";
}

Mode mode_from_string(std::string_view s) {
    if (s == "solve") return Mode::Solve;
    if (s == "sweep") return Mode::Sweep;
    if (s == "verify") return Mode::Verify;
    if (s == "reconstruct") return Mode::Reconstruct;
    throw ConfigError("unknown mode '" + std::string(s) + "' (solve, sweep, verify, reconstruct)");
}

namespace {

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys,
                    std::string_view where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ConfigError("unknown key '" + k + "' in " + std::string(where));
}

double as_real(const json& v, std::string_view key) {
    if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, std::string_view key) {
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    return v.get<int>();
}

void read_real(const json& j, const char* key, double& out) {
    if (j.contains(key)) out = as_real(j.at(key), key);
}

void read_int(const json& j, const char* key, int& out) {
    if (j.contains(key)) out = as_int(j.at(key), key);
}

template <class T, class Conv>
void read_list(const json& j, const char* key, std::vector<T>& out, Conv conv) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (!v.is_array()) throw ConfigError(std::string("sweep.") + key + " must be an array");
    out.clear();
    for (const json& x : v) out.push_back(conv(x, key));
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    reject_unknown(j, {"mode", "inputs", "sweep", "grid", "tolerances", "R_max", "output_dir"},
                   "config");
    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) throw ConfigError("mode must be a string");
        cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    }
    if (j.contains("inputs")) {
        const json& in = j.at("inputs");
        reject_unknown(in, {"n", "lambda", "c0", "c1"}, "inputs");
        read_int(in, "n", cfg.inputs.n);
        read_real(in, "lambda", cfg.inputs.lambda);
        read_real(in, "c0", cfg.inputs.c0);
        read_real(in, "c1", cfg.inputs.c1);
    }
    if (j.contains("sweep")) {
        const json& sw = j.at("sweep");
        reject_unknown(sw, {"n", "lambda", "c0", "c1"}, "sweep");
        read_list(sw, "n", cfg.sweep.n, as_int);
        read_list(sw, "lambda", cfg.sweep.lambda, as_real);
        read_list(sw, "c0", cfg.sweep.c0, as_real);
        read_list(sw, "c1", cfg.sweep.c1, as_real);
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown(g, {"K", "r_min_factor", "eps_override"}, "grid");
        if (g.contains("K")) {
            const int K = as_int(g.at("K"), "K");
            if (K < 0) throw ConfigError("K must be positive");
            cfg.settings.K = static_cast<std::size_t>(K);
        }
        read_real(g, "r_min_factor", cfg.settings.r_min_factor);
        if (g.contains("eps_override") && !g.at("eps_override").is_null())
            cfg.settings.eps_override = as_real(g.at("eps_override"), "eps_override");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        reject_unknown(t, {"picard_tol", "rtol", "atol"}, "tolerances");
        read_real(t, "picard_tol", cfg.settings.picard_tol);
        read_real(t, "rtol", cfg.settings.rtol);
        read_real(t, "atol", cfg.settings.atol);
    }
    read_real(j, "R_max", cfg.settings.R_max);
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    const CheckSettings& s = cfg.settings;
    return json{{"mode", std::string(to_string(cfg.mode))},
                {"inputs",
                 {{"n", cfg.inputs.n},
                  {"lambda", cfg.inputs.lambda},
                  {"c0", cfg.inputs.c0},
                  {"c1", cfg.inputs.c1}}},
                {"sweep",
                 {{"n", cfg.sweep.n},
                  {"lambda", cfg.sweep.lambda},
                  {"c0", cfg.sweep.c0},
                  {"c1", cfg.sweep.c1}}},
                {"grid",
                 {{"K", s.K},
                  {"r_min_factor", s.r_min_factor},
                  {"eps_override", s.eps_override ? json(*s.eps_override) : json()}}},
                {"tolerances", {{"picard_tol", s.picard_tol}, {"rtol", s.rtol}, {"atol", s.atol}}},
                {"R_max", s.R_max},
                {"output_dir", cfg.output_dir.generic_string()}};
}

RunConfig load_config(const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot read config file " + file.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + file.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void validate(const RunConfig& cfg) {
    const CheckSettings& s = cfg.settings;
    auto positive = [](double v, const char* what) {
        if (!std::isfinite(v) || !(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    };
    positive(s.picard_tol, "picard_tol");
    positive(s.rtol, "rtol");
    positive(s.atol, "atol");
    positive(s.R_max, "R_max");
    positive(s.r_min_factor, "r_min_factor");
    if (!(s.r_min_factor < 1.0)) throw ConfigError("r_min_factor must be below 1");
    if (s.K < 64 || s.K % 2 != 0) throw ConfigError("K must be even and at least 64");
    if (s.eps_override) {
        positive(*s.eps_override, "eps");
        if (*s.eps_override > 0.5) throw ConfigError("eps must not exceed 1/2");
        if (!(*s.eps_override < s.R_max)) throw ConfigError("eps must be below R_max");
    }
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (cfg.mode == Mode::Sweep) {
        const SweepRanges& r = cfg.sweep;
        if (r.n.empty() || r.lambda.empty() || r.c0.empty() || r.c1.empty())
            throw ConfigError("sweep ranges must be nonempty");
        for (const auto& in : sweep_tuples(r)) soliton::validate(in);
    } else {
        soliton::validate(cfg.inputs);
    }
}

std::vector<SolitonInputs> sweep_tuples(const SweepRanges& r) {
    std::vector<SolitonInputs> out;
    for (int n : r.n)
        for (double l : r.lambda)
            for (double c0 : r.c0)
                for (double c1 : r.c1) out.push_back({n, l, c0, c1});
    return out;
}

std::string tuple_dirname(const SolitonInputs& in) {
    return "n" + std::to_string(in.n) + "_lambda" + format_double(in.lambda) + "_c0" +
           format_double(in.c0) + "_c1" + format_double(in.c1);
}

namespace {

struct Outcome {
    int code = exit_code::kOk;
    std::string message;
};

template <class F>
Outcome guarded(F&& f) {
    try {
        return {f(), ""};
    } catch (const ConfigError& e) {
        return {exit_code::kConfig, std::string("configuration error: ") + e.what()};
    } catch (const IoError& e) {
        return {exit_code::kConfig, std::string("output error: ") + e.what()};
    } catch (const fs::filesystem_error& e) {
        return {exit_code::kConfig, std::string("output error: ") + e.what()};
    } catch (const SolitonError& e) {
        return {exit_code::kSolver, std::string("solver failure: ") + e.what()};
    } catch (const std::exception& e) {
        return {exit_code::kSolver, std::string("unexpected failure: ") + e.what()};
    }
}

json run_metadata(const RunConfig& cfg, const SolitonParams& p) {
    return json{{"config", config_to_json(cfg)},
                {"params", p},
                {"local_eps", local_radius(p, cfg.settings)},
                {"continuation_eps", continuation_radius(p, cfg.settings)},
                {"version", std::string(kVersion)}};
}

int do_solve(const RunConfig& cfg, const SolitonInputs& in, const fs::path& dir) {
    const SolitonParams p = derive_params(in);
    const CheckSettings& s = cfg.settings;
    check_barrier(p, s.R_max);
    ensure_output_dir(dir);

    const LocalSolution local = solve_at(p, local_radius(p, s), s.K, s.picard_tol, s);
    const GlobalProfile g = continued_profile(p, s);
    emit_local(dir, local);
    emit_profile(dir, g);
    if (g.r_max() >= tolerance::kRateWindow.second && g.r_min() <= tolerance::kRateWindow.first)
        emit_rate_fit(dir, fit_blowup_rate(g, tolerance::kRateWindow));
    emit_remainder(dir, remainder_profile(g, p));
    write_json_file(dir / "run.json", run_metadata(cfg, p));
    return exit_code::kOk;
}

int do_verify(const RunConfig& cfg, const fs::path& dir) {
    const SolitonParams p = derive_params(cfg.inputs);
    check_barrier(p, cfg.settings.R_max);
    ensure_output_dir(dir);
    const VerificationReport report = verify_all(p, cfg.settings);
    emit_report(dir, report);

    const CheckSettings& s = cfg.settings;
    const LocalSolution local = solve_at(p, local_radius(p, s), s.K, s.picard_tol, s);
    const GridFunction res = residual_wrr(local);
    const auto r = local.grid->r();
    emit_residual(dir, "residual_wrr", "r", std::vector<double>(r.begin(), r.end()), res.values);

    for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value " << format_double(c.value)
                  << "  tol " << format_double(c.tolerance) << "  " << c.detail << '\n';
    return report.all_pass() ? exit_code::kOk : exit_code::kVerificationFailed;
}

int do_reconstruct(const RunConfig& cfg, const fs::path& dir) {
    const SolitonParams p = derive_params(cfg.inputs);
    check_barrier(p, cfg.settings.R_max);
    ensure_output_dir(dir);
    const GlobalProfile g = continued_profile(p, cfg.settings);
    MetricProfile mp = reconstruct_a(g, log_spaced(std::sqrt(g.r_min()), std::sqrt(g.r_max()), 1001));
    reconstruct_f(mp, p.lambda(), p.n());
    emit_metric(dir, mp);
    const SolitonResidual res = soliton_residual(mp, p.lambda(), p.n());
    emit_residual(dir, "res_tt", "t", mp.t, res.res_tt);
    write_json_file(dir / "run.json", run_metadata(cfg, p));
    return exit_code::kOk;
}

// Config errors outrank solver failures, which outrank failed checks.
int severity(int code) {
    switch (code) {
        case exit_code::kConfig: return 3;
        case exit_code::kSolver: return 2;
        case exit_code::kVerificationFailed: return 1;
        default: return 0;
    }
}

int do_sweep(const RunConfig& cfg) {
    const std::vector<SolitonInputs> tuples = sweep_tuples(cfg.sweep);
    std::vector<Outcome> outcomes(tuples.size());
    RunConfig inner = cfg;
    // Tuples run concurrently; each solve stays on one thread.
    inner.settings.exec = kernels::Exec::Serial;
    const long count = static_cast<long>(tuples.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const SolitonInputs& in = tuples[static_cast<std::size_t>(i)];
        RunConfig one = inner;
        one.inputs = in;
        outcomes[static_cast<std::size_t>(i)] =
            guarded([&] { return do_solve(one, in, cfg.output_dir / tuple_dirname(in)); });
    }
    int worst = exit_code::kOk;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const Outcome& o = outcomes[i];
        std::cout << tuple_dirname(tuples[i]) << ": "
                  << (o.code == exit_code::kOk ? "ok" : o.message) << '\n';
        if (severity(o.code) > severity(worst)) worst = o.code;
    }
    return worst;
}

}  // namespace

int run(const RunConfig& cfg) {
    const Outcome o = guarded([&] {
        validate(cfg);
        switch (cfg.mode) {
            case Mode::Solve: return do_solve(cfg, cfg.inputs, cfg.output_dir);
            case Mode::Verify: return do_verify(cfg, cfg.output_dir);
            case Mode::Reconstruct: return do_reconstruct(cfg, cfg.output_dir);
            case Mode::Sweep: return do_sweep(cfg);
        }
        return exit_code::kOk;
    });
    if (!o.message.empty()) std::cerr << "soliton: " << o.message << '\n';
    return o.code;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Rotationally symmetric gradient Ricci soliton profiles with a singular tip"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_file, mode, out;
    int n = 0;
    double lambda = 0, c0 = 0, c1 = 0, eps = 0, tol = 0, rtol = 0, atol = 0, rmax = 0;
    std::size_t K = 0;
    app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "solve, sweep, verify or reconstruct");
    app.add_option("--n", n, "sphere dimension (>= 2)");
    app.add_option("--lambda", lambda, "soliton constant");
    app.add_option("--c0", c0, "blow-up coefficient (> 0)");
    app.add_option("--c1", c1, "free integration constant");
    app.add_option("--eps", eps, "local radius override (default eps3)");
    app.add_option("--K", K, "grid intervals (even, >= 64)");
    app.add_option("--tol", tol, "Picard tolerance");
    app.add_option("--rtol", rtol, "continuation relative tolerance");
    app.add_option("--atol", atol, "continuation absolute tolerance");
    app.add_option("--rmax", rmax, "continuation end point R_max");
    app.add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::kConfig;
    }

    RunConfig cfg;
    try {
        if (!config_file.empty()) cfg = load_config(config_file);
        if (const char* env = std::getenv("SOLITON_OUT"); env && *env) cfg.output_dir = env;
        if (app.count("--mode")) cfg.mode = mode_from_string(mode);
    } catch (const ConfigError& e) {
        std::cerr << "soliton: configuration error: " << e.what() << '\n';
        return exit_code::kConfig;
    }
    if (app.count("--n")) cfg.inputs.n = n;
    if (app.count("--lambda")) cfg.inputs.lambda = lambda;
    if (app.count("--c0")) cfg.inputs.c0 = c0;
    if (app.count("--c1")) cfg.inputs.c1 = c1;
    if (app.count("--eps")) cfg.settings.eps_override = eps;
    if (app.count("--K")) cfg.settings.K = K;
    if (app.count("--tol")) cfg.settings.picard_tol = tol;
    if (app.count("--rtol")) cfg.settings.rtol = rtol;
    if (app.count("--atol")) cfg.settings.atol = atol;
    if (app.count("--rmax")) cfg.settings.R_max = rmax;
    if (app.count("--out")) cfg.output_dir = out;
    return run(cfg);
}

}  // namespace soliton
