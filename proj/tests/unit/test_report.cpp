#include "orbitdepth/numeric_checks.hpp"
#include "orbitdepth/report.hpp"
#include "orbitdepth/suites.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace orbitdepth;
using nlohmann::json;

namespace {

std::size_t count_substr(const std::string& s, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
        ++n;
    return n;
}

Config quick_config()
{
    Config c;
    c.k_max = 3;
    c.samples = 10;
    return c;
}

} // namespace

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(validate(Config{})); }

TEST(Config, OverridesApply)
{
    const Config c = parse_config(R"({"k_max": 3, "t0": 0.25, "seed": 7, "samples": 4,
        "eps_grid": [0.001, 0.002, 0.004, 0.008, 0.016],
        "tolerances": {"cross_rel": 0.01}})");
    EXPECT_EQ(c.k_max, 3);
    EXPECT_DOUBLE_EQ(c.t0, 0.25);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.samples, 4);
    EXPECT_EQ(c.eps_grid.size(), 5u);
    EXPECT_DOUBLE_EQ(c.tolerances.cross_rel, 0.01);
    EXPECT_DOUBLE_EQ(c.tolerances.pairing_abs, Tolerances{}.pairing_abs);
}

TEST(Config, BaseIsKeptForMissingKeys)
{
    Config base;
    base.magnus_degree = 10;
    EXPECT_EQ(parse_config("{}", base).magnus_degree, 10);
}

TEST(Config, RejectsBadInput)
{
    EXPECT_THROW(parse_config("not json"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
    EXPECT_THROW(parse_config(R"({"kmax": 3})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"k_max": "three"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"k_max": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"k_max": 9})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"magnus_degree": 2})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"t0": 0.6})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"t0": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"eps_grid": [0.001, 0.002]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"eps_grid": [0.001, 0.002, 0.004, 0.008, -0.1]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"samples": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"tolerances": {"nope": 1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"tolerances": {"cross_rel": -1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"tolerances": {"cross_rel": "x"}})"), ConfigError);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/dir/cfg.json"), ConfigError); }

TEST(Suite, NamesRoundTrip)
{
    for (Suite s : {Suite::Orbit, Suite::Repr, Suite::Melnikov, Suite::Numeric, Suite::All})
        EXPECT_EQ(parse_suite(to_string(s)), s);
    EXPECT_THROW(parse_suite("everything"), ConfigError);
}

TEST(Report, DuplicateIdsRejected)
{
    Report r;
    r.add(exact_record("a", "claim", "1", "1"));
    EXPECT_THROW(r.add(exact_record("a", "claim", "1", "1")), DomainError);
}

TEST(Report, PassCounting)
{
    Report r;
    r.add(exact_record("a", "", "1", "1"));
    r.add(exact_record("b", "", "1", "2"));
    EXPECT_EQ(r.passed(), 1u);
    EXPECT_FALSE(r.all_pass());
    Report empty;
    EXPECT_TRUE(empty.all_pass());
    empty.aborted = true;
    EXPECT_FALSE(empty.all_pass());
}

TEST(Report, JsonShape)
{
    Report r;
    r.manifest = make_manifest(Config{}, "unit");
    r.add(exact_record("exact.one", "c", "x", "x"));
    r.add(abs_record("abs.one", "c", 1.0, 1.0 + 1e-12, 1e-9));
    r.add(rel_record("rel.zero", "c", 0.0, 1.0, 1e-3));
    r.deviations.push_back({"dev", "note"});
    const json j = json::parse(report_to_json(r));
    EXPECT_EQ(j["manifest"]["suite"], "unit");
    EXPECT_EQ(j["manifest"]["tool_version"], tool_version());
    EXPECT_EQ(j["manifest"]["tolerances"].size(), tolerance_fields().size());
    EXPECT_EQ(j["summary"]["total"], 3);
    EXPECT_EQ(j["summary"]["passed"], 2);
    EXPECT_EQ(j["summary"]["all_pass"], false);
    EXPECT_EQ(j["deviations"][0]["id"], "dev");
    const json& checks = j["checks"];
    ASSERT_EQ(checks.size(), 3u);
    EXPECT_TRUE(checks[0].contains("exact"));
    EXPECT_TRUE(checks[1].contains("abs_error"));
    EXPECT_TRUE(checks[2]["rel_error"].is_null()); // infinite relative error
    for (const auto& c : checks)
        for (const char* key : {"check", "claim", "params", "expected", "computed", "metric", "tolerance", "pass",
                                "runtime_ms"})
            EXPECT_TRUE(c.contains(key)) << key;
}

TEST(Report, CsvQuotesFields)
{
    Report r;
    r.add(exact_record("q", "has, comma and \"quote\"", "1", "1"));
    const std::string csv = report_to_csv(r);
    EXPECT_EQ(csv.rfind("check,claim,", 0), 0u);
    EXPECT_NE(csv.find("\"has, comma and \"\"quote\"\"\""), std::string::npos);
    EXPECT_EQ(count_substr(csv, "\n"), 2u);
}

TEST(Report, SummaryTable)
{
    Report r;
    r.add(exact_record("good", "", "1", "1"));
    r.add(exact_record("bad", "", "1", "0"));
    const std::string s = summary_table(r);
    EXPECT_NE(s.find("PASS  good"), std::string::npos);
    EXPECT_NE(s.find("FAIL  bad"), std::string::npos);
    EXPECT_NE(s.find("1/2 checks passed"), std::string::npos);
}

TEST(Report, WriteCreatesDirectories)
{
    const auto dir = std::filesystem::temp_directory_path() / "orbitdepth_report_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    const std::string path = (dir / "out.txt").string();
    write_text_file(path, "hello\n");
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), "hello\n");
    std::filesystem::remove_all(dir.parent_path());
}

TEST(Report, FitRenderings)
{
    const MelnikovFit fit = melnikov_fit(gamma(), 0.36, default_eps_grid(), flagship_deformation());
    const std::string svg = fit_residual_svg(fit);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_EQ(count_substr(svg, "<polyline"), 3u);
    EXPECT_EQ(count_substr(svg, "<circle"), 3 * default_eps_grid().size());
    const std::string csv = fit_samples_csv(fit);
    std::size_t samples = 0;
    for (const auto& est : fit.per_radius)
        samples += est.samples.size();
    EXPECT_GT(samples, 0u);
    EXPECT_EQ(count_substr(csv, "\n"), samples + 1);
}

TEST(Suites, OrbitPassesWithUniqueIds)
{
    const Report r = run_suite(Suite::Orbit, quick_config());
    EXPECT_FALSE(r.aborted) << r.abort_reason;
    EXPECT_TRUE(r.all_pass()) << summary_table(r);
    std::set<std::string> ids;
    for (const auto& c : r.checks)
        EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_GT(r.checks.size(), 20u);
}

TEST(Suites, ReprPassesAndNotesCorner)
{
    const Report r = run_suite(Suite::Repr, quick_config());
    EXPECT_TRUE(r.all_pass()) << summary_table(r);
    ASSERT_EQ(r.deviations.size(), 1u);
    EXPECT_EQ(r.deviations[0].id, "repr.corner_prefactor");
}

TEST(Suites, MelnikovPasses)
{
    const Report r = run_suite(Suite::Melnikov, quick_config());
    EXPECT_TRUE(r.all_pass()) << summary_table(r);
}

TEST(Suites, FalsifiedFlagshipIsDetected)
{
    PipelineOptions opt;
    opt.flagship = Deformation{parse_ratfunc("t^2+2*t"), parse_ratfunc("t^2"), parse_ratfunc("t^2+t"), "override"};
    const Report r = run_suite(Suite::Melnikov, quick_config(), opt);
    EXPECT_FALSE(r.aborted);
    EXPECT_FALSE(r.all_pass());
    bool saw_classify = false;
    for (const auto& c : r.checks)
        if (c.id == "melnikov.flagship.classify") {
            saw_classify = true;
            EXPECT_FALSE(c.pass);
            EXPECT_EQ(c.computed, to_string(ClassTag::Order2Nonzero));
        }
    EXPECT_TRUE(saw_classify);
    bool saw_note = false;
    for (const auto& d : r.deviations)
        saw_note |= d.id == "melnikov.flagship";
    EXPECT_TRUE(saw_note);
}

TEST(Suites, StageExceptionAbortsRun)
{
    Config c = quick_config();
    c.t0 = 0.9; // past the loop-construction range; skips validate()
    const Report r = run_suite(Suite::Numeric, c);
    EXPECT_TRUE(r.aborted);
    EXPECT_NE(r.abort_reason.find("numeric"), std::string::npos);
    EXPECT_FALSE(r.all_pass());
    EXPECT_FALSE(r.checks.empty()); // records before the failure are kept
}
