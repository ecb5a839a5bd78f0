#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "soliton/asymptotics.hpp"
#include "soliton/continuation.hpp"
#include "soliton/errors.hpp"
#include "soliton/io.hpp"
#include "soliton/run.hpp"

namespace fs = std::filesystem;
using namespace soliton;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("soliton_test_io_" + std::to_string(::getpid())) / name;
    fs::remove_all(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

GlobalProfile small_profile() {
    const SolitonParams p = derive_params({3, 1.0, 1.0, 0.0});
    PicardOptions opt;
    opt.allow_large_eps = true;
    const LocalSolution local = solve_local(p, RadialGrid::geometric(0.02, 0.02e-8, 512), opt);
    return extend_global(local, 10.0, 1e-10, 1e-12);
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits and round trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1e-7}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(NAN) == "nan");
}

TEST_CASE("CSV layout") {
    const std::vector<double> r{1.0, 2.0}, q{-0.5, 0.25};
    CHECK(csv_text({{"r", r}, {"q", q}}) == "r,q\n1,-0.5\n2,0.25\n");
    const std::vector<double> shorter{1.0};
    CHECK_THROWS_AS(csv_text({{"r", r}, {"q", shorter}}), RangeError);
}

TEST_CASE("SVG charts are deterministic and skip unusable points") {
    const Series s{"h", {1e-3, 1e-2, 0.0, 1.0}, {1e3, 1e2, 5.0, 1.0}};
    const std::string a = svg_chart("h(r)", {s}, true, true);
    CHECK(a == svg_chart("h(r)", {s}, true, true));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("nan") == std::string::npos);
    CHECK(svg_chart("a<b", {s}, false, false).find("a&lt;b") != std::string::npos);
}

TEST_CASE("profile emission writes the documented files") {
    const fs::path dir = scratch_dir("profile");
    const GlobalProfile g = small_profile();
    emit_profile(dir, g);
    for (const char* f : {"profile.csv", "profile.json", "h_vs_r.csv", "h_vs_r.svg"}) CHECK(fs::exists(dir / f));
    CHECK(slurp(dir / "h_vs_r.csv").rfind("r,h\n", 0) == 0);
    CHECK(slurp(dir / "profile.csv").find('\r') == std::string::npos);

    const std::string before = slurp(dir / "profile.csv");
    emit_profile(dir, g);
    CHECK(slurp(dir / "profile.csv") == before);
}

TEST_CASE("rate fit emits qtail.csv with an r,q header") {
    const fs::path dir = scratch_dir("qtail");
    const GlobalProfile g = small_profile();
    emit_rate_fit(dir, fit_blowup_rate(g, {1e-6, 1e-3}));
    CHECK(slurp(dir / "qtail.csv").rfind("r,q\n", 0) == 0);
}

TEST_CASE("empty profile is an error and leaves no files") {
    const fs::path dir = scratch_dir("empty");
    GlobalProfile empty;
    CHECK_THROWS_AS(emit_profile(dir, empty), RangeError);
    CHECK(!fs::exists(dir));
}

TEST_CASE("unwritable output directory") {
    const fs::path base = scratch_dir("blocked");
    fs::create_directories(base);
    write_text_file(base / "file", "x");
    CHECK_THROWS_AS(ensure_output_dir(base / "file" / "sub"), IoError);
    CHECK_THROWS_AS(emit_profile(base / "file" / "sub", small_profile()), IoError);
    for (const auto& e : fs::directory_iterator(base)) CHECK(e.path().filename() == "file");
}

TEST_CASE("verification report") {
    VerificationReport rep;
    rep.add({"a", 1.0, 2.0, true, ""});
    CHECK_THROWS_AS(rep.add({"a", 1.0, 2.0, true, ""}), SolitonError);
    rep.add({"b", INFINITY, 2.0, false, "x"});
    CHECK(!rep.all_pass());
    const nlohmann::json j = rep;
    CHECK(j.at("checks").size() == 2);
    CHECK(j.at("checks")[1].at("value") == "inf");
    CHECK(j.at("all_pass") == false);
}

TEST_CASE("config parsing") {
    const nlohmann::json j = nlohmann::json::parse(R"({
        "mode": "sweep",
        "inputs": {"n": 3, "lambda": 1.0},
        "sweep": {"n": [2, 5], "lambda": [0, 1]},
        "grid": {"K": 1024, "eps_override": 0.01},
        "tolerances": {"rtol": 1e-9},
        "R_max": 20,
        "output_dir": "somewhere"
    })");
    const RunConfig cfg = config_from_json(j);
    CHECK(cfg.mode == Mode::Sweep);
    CHECK(cfg.inputs.n == 3);
    CHECK(cfg.inputs.c0 == 1.0);
    CHECK(cfg.settings.K == 1024);
    CHECK(*cfg.settings.eps_override == 0.01);
    CHECK(cfg.settings.rtol == 1e-9);
    CHECK(cfg.settings.atol == 1e-12);
    CHECK(cfg.settings.R_max == 20.0);
    CHECK(sweep_tuples(cfg.sweep).size() == 4);
    CHECK(config_from_json(config_to_json(cfg)).settings.K == 1024);

    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"inputs": {"m": 3}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"inputs": {"n": 2.5}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"mode": "plot"})")), ConfigError);

    RunConfig bad;
    bad.settings.rtol = 0.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    RunConfig sweep;
    sweep.mode = Mode::Sweep;
    sweep.sweep.lambda.clear();
    CHECK_THROWS_AS(validate(sweep), ConfigError);
}
