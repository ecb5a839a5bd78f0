#include "soliton/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "soliton/errors.hpp"

namespace fs = std::filesystem;

namespace soliton {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_short(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string csv_text(const std::vector<Column>& cols) {
    if (cols.empty()) throw RangeError("CSV needs at least one column");
    const std::size_t rows = cols.front().values.size();
    for (const auto& c : cols)
        if (c.values.size() != rows) throw RangeError("CSV columns differ in length");
    std::string out;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j) out += ',';
        out += cols[j].name;
    }
    out += '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j) out += ',';
            out += format_double(cols[j].values[i]);
        }
        out += '\n';
    }
    return out;
}

std::string svg_chart(const std::string& title, const std::vector<Series>& series, bool log_x,
                      bool log_y) {
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!log_x || x > 0) && (!log_y || y > 0);
    };

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
    auto label = [](double v, bool lg) { return lg ? "1e" + format_short(v) : format_short(v); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           xml_escape(title) + "</text>\n";
    out += "<rect x=\"70\" y=\"40\" width=\"550\" height=\"310\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"70\" y=\"368\" font-family=\"sans-serif\" font-size=\"11\">" + label(x0, log_x) + "</text>\n";
    out += "<text x=\"620\" y=\"368\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           label(x1, log_x) + "</text>\n";
    out += "<text x=\"66\" y=\"350\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           label(y0, log_y) + "</text>\n";
    out += "<text x=\"66\" y=\"48\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           label(y1, log_y) + "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % 5];
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            if (!first) out += ' ';
            first = false;
            out += format_short(px(s.x[i])) + "," + format_short(py(s.y[i]));
        }
        out += "\"/>\n";
        out += "<text x=\"" + format_short(W - R - 4) + "\" y=\"" + format_short(T + 16 + 14.0 * k) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color +
               "\">" + xml_escape(s.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_text_file(const fs::path& path, std::string_view text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place: " + path.string());
    }
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void ensure_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream os(probe);
        if (!os) throw IoError("output directory is not writable: " + dir.string());
    }
    fs::remove(probe, ec);
}

void VerificationReport::add(CheckRecord rec) {
    for (const auto& c : checks)
        if (c.name == rec.name) throw SolitonError("duplicate check name " + rec.name);
    checks.push_back(std::move(rec));
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

namespace {
nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}
}  // namespace

void to_json(nlohmann::json& j, const CheckRecord& c) {
    j = nlohmann::json{{"name", c.name},
                       {"value", number(c.value)},
                       {"tolerance", number(c.tolerance)},
                       {"pass", c.pass},
                       {"detail", c.detail}};
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = nlohmann::json{{"checks", r.checks}, {"all_pass", r.all_pass()}, {"provenance", r.provenance}};
}

nlohmann::json local_metadata(const LocalSolution& sol) {
    nlohmann::json j;
    j["params"] = sol.params;
    j["grid"] = {{"eps", sol.grid->eps()},
                 {"r_min", sol.grid->r_min()},
                 {"K", sol.grid->intervals()},
                 {"theta", sol.grid->ratio()}};
    j["map"] = std::string(to_string(sol.variant));
    j["iterations"] = sol.iterations;
    j["final_update_norm"] = sol.final_update_norm;
    j["contraction_estimates"] = sol.contraction_estimates;
    return j;
}

nlohmann::json profile_metadata(const GlobalProfile& g) {
    nlohmann::json j;
    j["params"] = g.params;
    j["rtol"] = g.rtol;
    j["atol"] = g.atol;
    j["R_max"] = g.R_max;
    j["source"] = std::string(to_string(g.source));
    j["nodes"] = g.size();
    j["local_nodes"] = g.local_count;
    return j;
}

void emit_local(const fs::path& dir, const LocalSolution& sol) {
    const std::size_t N = sol.size();
    if (N == 0) throw RangeError("empty local solution");
    std::vector<double> r(N), w(N), v(N), h(N), hr(N);
    for (std::size_t k = 0; k < N; ++k) {
        r[k] = sol.r(k);
        w[k] = sol.w(k);
        v[k] = sol.v(k);
        h[k] = sol.h(k);
        hr[k] = sol.h_r(k);
    }
    const std::string csv = csv_text({{"r", r}, {"w", w}, {"v", v}, {"h", h}, {"h_r", hr}});
    ensure_output_dir(dir);
    write_text_file(dir / "local.csv", csv);
    write_json_file(dir / "local.json", local_metadata(sol));
}

void emit_profile(const fs::path& dir, const GlobalProfile& g, std::size_t samples) {
    if (g.size() < 2) throw RangeError("empty profile: nothing to emit");
    const ProfileInterpolant ip(g);
    const std::vector<double> r = log_spaced(g.r_min(), g.r_max(), std::max<std::size_t>(samples, 2));
    std::vector<double> h(r.size()), hr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        h[i] = ip.h(r[i]);
        hr[i] = ip.h_r(r[i]);
    }
    const std::string profile_csv = csv_text({{"r", r}, {"h", h}, {"h_r", hr}});
    const std::string h_csv = csv_text({{"r", r}, {"h", h}});
    const std::string svg = svg_chart("h(r)", {{"h", r, h}}, true, true);
    ensure_output_dir(dir);
    write_text_file(dir / "profile.csv", profile_csv);
    write_json_file(dir / "profile.json", profile_metadata(g));
    write_text_file(dir / "h_vs_r.csv", h_csv);
    write_text_file(dir / "h_vs_r.svg", svg);
}

void emit_rate_fit(const fs::path& dir, const RateFit& fit) {
    if (fit.q_tail.empty()) throw RangeError("empty rate fit");
    std::vector<double> r, q;
    for (const auto& [ri, qi] : fit.q_tail) {
        r.push_back(ri);
        q.push_back(qi);
    }
    const std::string csv = csv_text({{"r", r}, {"q", q}});
    ensure_output_dir(dir);
    write_text_file(dir / "qtail.csv", csv);
}

void emit_remainder(const fs::path& dir, const std::vector<RemainderSample>& rem) {
    if (rem.empty()) throw RangeError("empty remainder table");
    std::vector<double> r, R, S, absS;
    for (const auto& s : rem) {
        r.push_back(s.r);
        R.push_back(s.remainder);
        S.push_back(s.scaled_remainder);
        absS.push_back(std::abs(s.scaled_remainder));
    }
    const std::string csv = csv_text({{"r", r}, {"remainder", R}, {"scaled_remainder", S}});
    const std::string svg = svg_chart("|scaled remainder|", {{"|S|", r, absS}}, true, true);
    ensure_output_dir(dir);
    write_text_file(dir / "remainder.csv", csv);
    write_text_file(dir / "remainder.svg", svg);
}

void emit_metric(const fs::path& dir, const MetricProfile& mp) {
    if (mp.size() == 0) throw RangeError("empty metric profile");
    if (mp.f.size() != mp.size()) throw RangeError("metric profile has no potential");
    const std::string csv = csv_text({{"t", mp.t},
                                      {"a", mp.a},
                                      {"a_t", mp.a_t},
                                      {"a_tt", mp.a_tt},
                                      {"f_t", mp.f_t},
                                      {"f_tt", mp.f_tt},
                                      {"f", mp.f}});
    const std::string svg = svg_chart("a(t)", {{"a", mp.t, mp.a}}, true, true);
    ensure_output_dir(dir);
    write_text_file(dir / "metric.csv", csv);
    write_text_file(dir / "a_vs_t.svg", svg);
}

void emit_report(const fs::path& dir, const VerificationReport& report) {
    const nlohmann::json j = report;
    ensure_output_dir(dir);
    write_json_file(dir / "report.json", j);
}

void emit_residual(const fs::path& dir, const std::string& name, const std::string& x_name,
                   const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty()) throw RangeError("empty residual series");
    const std::string csv = csv_text({{x_name, x}, {name, y}});
    const std::string svg = svg_chart(name, {{name, x, y}}, false, false);
    ensure_output_dir(dir);
    write_text_file(dir / (name + ".csv"), csv);
    write_text_file(dir / (name + ".svg"), svg);
}

}  // namespace soliton
