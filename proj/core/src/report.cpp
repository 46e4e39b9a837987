#include "orbitdepth/report.hpp"

#include "orbitdepth/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#ifndef ORBITDEPTH_VERSION
#define ORBITDEPTH_VERSION "0.0.0"
#endif

namespace orbitdepth {

using nlohmann::json;

std::string tool_version() { return ORBITDEPTH_VERSION; }

bool Report::all_pass() const
{
    return !aborted && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t Report::passed() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }));
}

void Report::add(CheckRecord r)
{
    for (const auto& c : checks)
        if (c.id == r.id)
            throw DomainError("duplicate check id '" + r.id + "'");
    checks.push_back(std::move(r));
}

void Report::add(std::vector<CheckRecord> rs)
{
    for (auto& r : rs)
        add(std::move(r));
}

std::string current_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::pair<std::string, double Tolerances::*>> tolerance_fields()
{
    return {
        {"pairing_abs", &Tolerances::pairing_abs},
        {"iterated_rel", &Tolerances::iterated_rel},
        {"cauchy_abs", &Tolerances::cauchy_abs},
        {"shuffle_abs", &Tolerances::shuffle_abs},
        {"determinant_abs", &Tolerances::determinant_abs},
        {"additivity_abs", &Tolerances::additivity_abs},
        {"residual_rel", &Tolerances::residual_rel},
        {"fit_zero_rel", &Tolerances::fit_zero_rel},
        {"fit_stability_rel", &Tolerances::fit_stability_rel},
        {"cross_rel", &Tolerances::cross_rel},
        {"center_abs", &Tolerances::center_abs},
        {"scaling_rel", &Tolerances::scaling_rel},
        {"m2_abs", &Tolerances::m2_abs},
    };
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json record_json(const CheckRecord& c)
{
    json params = json::object();
    for (const auto& [k, v] : c.params)
        params[k] = v;
    json j{{"check", c.id},       {"claim", c.claim},         {"params", params},
           {"expected", c.expected}, {"computed", c.computed}, {"metric", to_string(c.metric)}};
    j[to_string(c.metric)] = number_or_null(c.error);
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    j["runtime_ms"] = std::round(c.runtime_ms * 1000) / 1000;
    return j;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string records_to_json(const std::vector<CheckRecord>& rs)
{
    json arr = json::array();
    for (const auto& r : rs)
        arr.push_back(record_json(r));
    return arr.dump(2);
}

std::string report_to_json(const Report& r)
{
    const RunManifest& m = r.manifest;
    json tol = json::object();
    for (const auto& [name, field] : tolerance_fields())
        tol[name] = m.tolerances.*field;
    json manifest{{"tool_version", m.tool_version}, {"suite", m.suite},     {"timestamp", m.timestamp},
                  {"seed", m.seed},                 {"k_max", m.k_max},     {"magnus_degree", m.magnus_degree},
                  {"samples", m.samples},           {"t0", m.t0},           {"eps_grid", m.eps_grid},
                  {"tolerances", tol},              {"modules", m.modules}};
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(record_json(c));
    json devs = json::array();
    for (const auto& d : r.deviations)
        devs.push_back({{"id", d.id}, {"note", d.note}});
    json summary{{"total", r.checks.size()},
                 {"passed", r.passed()},
                 {"failed", r.checks.size() - r.passed()},
                 {"all_pass", r.all_pass()},
                 {"aborted", r.aborted}};
    if (r.aborted)
        summary["abort_reason"] = r.abort_reason;
    json out{{"manifest", manifest}, {"summary", summary}, {"deviations", devs}, {"checks", checks}};
    return out.dump(2) + "\n";
}

std::string report_to_csv(const Report& r)
{
    std::ostringstream os;
    os << "check,claim,expected,computed,metric,error,tolerance,pass,runtime_ms\n";
    for (const auto& c : r.checks)
        os << csv_field(c.id) << ',' << csv_field(c.claim) << ',' << csv_field(c.expected) << ','
           << csv_field(c.computed) << ',' << to_string(c.metric) << ',' << format_double(c.error, 6) << ','
           << format_double(c.tolerance, 6) << ',' << (c.pass ? "true" : "false") << ','
           << format_double(c.runtime_ms, 6) << '\n';
    return os.str();
}

std::string summary_table(const Report& r)
{
    std::size_t width = 5;
    for (const auto& c : r.checks)
        width = std::max(width, c.id.size());
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS  " : "FAIL  ") << c.id << std::string(width - c.id.size() + 2, ' ') << c.claim << '\n';
    }
    for (const auto& d : r.deviations)
        os << "NOTE  " << d.id << std::string(width > d.id.size() ? width - d.id.size() + 2 : 2, ' ') << d.note
           << '\n';
    if (r.aborted)
        os << "ABORTED: " << r.abort_reason << '\n';
    os << r.passed() << "/" << r.checks.size() << " checks passed\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f)
        throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f)
        throw Error("failed writing '" + path + "'");
}

std::string fit_residual_svg(const MelnikovFit& fit)
{
    constexpr double W = 560, H = 360, L = 70, R = 20, T = 30, B = 50;
    struct Pt {
        double r, v;
        int j;
    };
    std::vector<Pt> pts;
    for (const auto& est : fit.per_radius)
        for (int j = 1; j <= 3; ++j) {
            const double dev = std::abs(est.c[static_cast<std::size_t>(j)] - fit.c[static_cast<std::size_t>(j)]);
            pts.push_back({est.radius, std::max(dev, 1e-18), j});
        }
    if (pts.empty())
        return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& p : pts) {
        xmin = std::min(xmin, std::log10(p.r));
        xmax = std::max(xmax, std::log10(p.r));
        ymin = std::min(ymin, std::log10(p.v));
        ymax = std::max(ymax, std::log10(p.v));
    }
    if (xmax - xmin < 1e-9)
        xmax = xmin + 1;
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (ymax - ymin < 1)
        ymax = ymin + 1;
    auto px = [&](double r) { return L + (std::log10(r) - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (std::log10(v) - ymin) / (ymax - ymin) * (H - T - B); };
    static const char* colors[] = {"", "#1f77b4", "#ff7f0e", "#2ca02c"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << L << "\" y=\"18\">|c_j(r) - c_j| per ring radius, word " << fit.word << ", t0 = " << fit.t0
       << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (double e = ymin; e <= ymax; e += 1) {
        const double y = py(std::pow(10.0, e));
        os << "<text x=\"" << L - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    for (const auto& est : fit.per_radius)
        os << "<text x=\"" << px(est.radius) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
           << format_double(est.radius, 3) << "</text>\n";
    os << "<text x=\"" << (W + L) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">ring radius</text>\n";
    for (int j = 1; j <= 3; ++j) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[j] << "\" points=\"";
        for (const auto& p : pts)
            if (p.j == j)
                os << px(p.r) << ',' << py(p.v) << ' ';
        os << "\"/>\n";
        for (const auto& p : pts)
            if (p.j == j)
                os << "<circle cx=\"" << px(p.r) << "\" cy=\"" << py(p.v) << "\" r=\"3\" fill=\"" << colors[j]
                   << "\"/>\n";
        os << "<text x=\"" << W - R - 40 << "\" y=\"" << T + 14 * j << "\" fill=\"" << colors[j] << "\">c" << j
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string fit_samples_csv(const MelnikovFit& fit)
{
    std::ostringstream os;
    os << "radius,eps_re,eps_im,hol_re,hol_im\n";
    for (const auto& est : fit.per_radius)
        for (const auto& [eps, h] : est.samples)
            os << format_double(est.radius, 17) << ',' << format_double(eps.real(), 17) << ','
               << format_double(eps.imag(), 17) << ',' << format_double(h.real(), 17) << ','
               << format_double(h.imag(), 17) << '\n';
    return os.str();
}

} // namespace orbitdepth
