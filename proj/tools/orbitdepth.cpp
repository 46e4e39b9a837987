// orbitdepth: command-line front end for the word, representation, Melnikov
// and numeric layers, plus the check suites and report writer.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage, config,
// parse or domain error, 3 numerical failure (quadrature, ODE, branch tracking).

#include "orbitdepth/error.hpp"
#include "orbitdepth/integrate.hpp"
#include "orbitdepth/magnus.hpp"
#include "orbitdepth/numeric_checks.hpp"
#include "orbitdepth/report.hpp"
#include "orbitdepth/representation.hpp"
#include "orbitdepth/suites.hpp"
#include "orbitdepth/word.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace orbitdepth;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// Malformed command-line values outside the core parsers.
class UsageError : public Error {
public:
    using Error::Error;
};

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

int emit(const json& j, bool ok = true)
{
    std::cout << j.dump(2) << '\n';
    return ok ? kExitPass : kExitCheckFailed;
}

std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw UsageError("not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

cplx parse_cplx(const std::string& text)
{
    const auto parts = parse_double_list(text);
    if (parts.size() == 1)
        return parts[0];
    if (parts.size() == 2)
        return {parts[0], parts[1]};
    throw UsageError("expected RE or RE,IM: '" + text + "'");
}

json deformation_json(const Deformation& d)
{
    return {{"a1", d.a1.to_string()}, {"a2", d.a2.to_string()}, {"a3", d.a3.to_string()}, {"provenance", d.provenance}};
}

json fit_json(const MelnikovFit& f)
{
    json coeffs = json::array(), radii = json::array();
    for (int j = 0; j <= 3; ++j) {
        const auto u = static_cast<std::size_t>(j);
        coeffs.push_back({{"order", j},
                          {"value", cplx_json(f.c[u])},
                          {"uncertainty", f.uncertainty[u]},
                          {"zero", f.zero[u]},
                          {"nonzero", f.nonzero[u]}});
    }
    for (const auto& r : f.per_radius) {
        json cs = json::array();
        for (const auto& c : r.c)
            cs.push_back(cplx_json(c));
        radii.push_back({{"radius", r.radius}, {"c", cs}});
    }
    return {{"word", f.word},         {"t0", f.t0},
            {"eps_grid", f.eps_grid}, {"ring_points", f.ring_points},
            {"coefficients", coeffs}, {"richardson_rel", f.richardson_rel},
            {"ill_conditioned", f.ill_conditioned}, {"per_radius", radii}};
}

std::string resolve_output_dir(const std::string& cli_out, const Config& c)
{
    if (!cli_out.empty())
        return cli_out;
    if (const char* env = std::getenv("OUTPUT_DIR"); env && *env)
        return env;
    return c.output_dir;
}

// Options shared by `verify` and `report`.
struct RunOptions {
    std::string config_path;
    std::optional<int> k_max;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> t0;
    std::optional<int> magnus_degree;
    std::string eps_grid;
    std::string out;
    bool plots = false;
    std::string a1, a2, a3;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--k", k_max, "largest representation level k");
        cmd->add_option("--seed", seed, "base seed for random words and exponent lists");
        cmd->add_option("--samples", samples, "random samples per property check");
        cmd->add_option("--t0", t0, "level for the numeric checks");
        cmd->add_option("--magnus-degree", magnus_degree, "Magnus truncation degree");
        cmd->add_option("--eps-grid", eps_grid, "comma-separated ring radii");
        cmd->add_flag("--plots", plots, "write SVG fit plots next to the report");
        cmd->add_option("--a1", a1, "replace the flagship a1 (with --a2, --a3)");
        cmd->add_option("--a2", a2, "replace the flagship a2");
        cmd->add_option("--a3", a3, "replace the flagship a3");
    }

    Config config() const
    {
        Config c = config_path.empty() ? Config{} : load_config(config_path);
        if (k_max)
            c.k_max = *k_max;
        if (seed)
            c.seed = *seed;
        if (samples)
            c.samples = *samples;
        if (t0)
            c.t0 = *t0;
        if (magnus_degree)
            c.magnus_degree = *magnus_degree;
        if (!eps_grid.empty())
            c.eps_grid = parse_double_list(eps_grid);
        validate(c);
        return c;
    }

    PipelineOptions pipeline() const
    {
        PipelineOptions opt;
        const int given = !a1.empty() + !a2.empty() + !a3.empty();
        if (given == 0)
            return opt;
        const Deformation base = flagship_deformation();
        opt.flagship = Deformation{a1.empty() ? base.a1 : parse_ratfunc(a1), a2.empty() ? base.a2 : parse_ratfunc(a2),
                                   a3.empty() ? base.a3 : parse_ratfunc(a3), "override"};
        return opt;
    }
};

void write_plots(const std::string& dir, const Config& c, const PipelineOptions& opt)
{
    const Deformation d = opt.flagship ? *opt.flagship : flagship_deformation();
    const MelnikovFit g = melnikov_fit(gamma(), c.t0, c.eps_grid, d);
    write_text_file((std::filesystem::path(dir) / "fit_gamma.svg").string(), fit_residual_svg(g));
    const MelnikovFit v3 = melnikov_fit(v_k(3), c.t0, c.eps_grid, d);
    write_text_file((std::filesystem::path(dir) / "fit_v3.svg").string(), fit_residual_svg(v3));
}

struct DeformationOptions {
    std::string a1 = "t^2+2*t", a2 = "t", a3 = "t^2+t";

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--a1", a1, "coefficient of eta1")->capture_default_str();
        cmd->add_option("--a2", a2, "coefficient of eta2")->capture_default_str();
        cmd->add_option("--a3", a3, "coefficient of eta3")->capture_default_str();
    }
    Deformation get() const { return {parse_ratfunc(a1), parse_ratfunc(a2), parse_ratfunc(a3), "cli"}; }
};

struct CenterOptions {
    std::string A = "t", c1 = "1", lambda1 = "1", lambda = "1";

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--A", A, "first integral A(t)")->capture_default_str();
        cmd->add_option("--c1", c1, "rational constant c1")->capture_default_str();
        cmd->add_option("--lambda1", lambda1, "rational lambda1")->capture_default_str();
        cmd->add_option("--lambda", lambda, "rational lambda")->capture_default_str();
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orbit depth and Melnikov function checks for (x^2-1)(y^2-1)"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    std::function<int()> action;

    // Shared option storage; each subcommand binds the fields it uses.
    std::string word_text, forms_text = "dphi2,dphi3", eps_text = "0.01", csv_path, terms_text;
    std::string f_text, g_text, alpha1 = "t", alpha2 = "t^2", c0 = "1", lam = "1";
    int times = 1, which = 0, k = 1, degree = 8, i_max = 0, samples = 100, v_index = 0, var_index = 0;
    std::uint64_t seed = 20240917;
    double t = 0.36;
    bool inverse = false, plots = false;
    DeformationOptions def;
    CenterOptions center;
    std::string eps_grid_text;
    auto cmd_i_max_or = [&](int fallback) { return i_max > 0 ? i_max : fallback; };

    // ---- orbit
    auto* orbit = app.add_subcommand("orbit", "free-group words, monodromy and Magnus depth");
    orbit->require_subcommand(1);
    {
        auto* cmd = orbit->add_subcommand("var", "iterated variation Var^n(w)");
        cmd->add_option("--word", word_text, "word, e.g. \"g\" or \"d0 d1' g\"")->required();
        cmd->add_option("--times", times, "number of iterations")->check(CLI::Range(0, 12))->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                Word w = parse_word(word_text);
                for (int i = 0; i < times; ++i)
                    w = var(w);
                return emit({{"input", word_text}, {"times", times}, {"word", format_word(w)}, {"length", w.size()}});
            };
        });
    }
    {
        auto* cmd = orbit->add_subcommand("mon", "monodromy image Mon0(w) or Mon1(w)");
        cmd->add_option("--word", word_text)->required();
        cmd->add_option("--which", which, "0 or 1")->check(CLI::IsMember({0, 1}))->capture_default_str();
        cmd->add_flag("--inverse", inverse, "apply the inverse automorphism");
        cmd->callback([&] {
            action = [&] {
                const Endo e = which == 0 ? (inverse ? mon0_inverse() : mon0()) : (inverse ? mon1_inverse() : mon1());
                const Word w = parse_word(word_text);
                return emit({{"input", word_text}, {"mon", which}, {"inverse", inverse}, {"image", format_word(e(w))}});
            };
        });
    }
    {
        auto* cmd = orbit->add_subcommand("depth", "Magnus lowest degree of a word, v_i or Var^i(g)");
        auto* wo = cmd->add_option("--word", word_text);
        auto* vo = cmd->add_option("--v", v_index, "use v_i")->check(CLI::Range(1, 8));
        auto* ro = cmd->add_option("--var", var_index, "use Var^i(g)")->check(CLI::Range(1, 8));
        wo->excludes(vo)->excludes(ro);
        vo->excludes(ro);
        cmd->add_option("--degree", degree, "truncation degree")
            ->check(CLI::Range(2, Monomial::kMaxLength))
            ->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                Word w;
                std::string label;
                if (v_index > 0) {
                    w = v_k(v_index);
                    label = "v" + std::to_string(v_index);
                } else if (var_index > 0) {
                    w = var_orbit(var_index)[static_cast<std::size_t>(var_index - 1)];
                    label = "Var^" + std::to_string(var_index) + "(g)";
                } else if (!word_text.empty()) {
                    w = parse_word(word_text);
                    label = word_text;
                } else {
                    throw UsageError("one of --word, --v, --var is required");
                }
                const DepthReport r = depth_lower_bound(w, degree);
                json j{{"input", label}, {"truncation", degree}, {"depth", r.depth_string()}, {"identity", r.identity}};
                j["lowest_degree"] = r.lowest_degree ? json(*r.lowest_degree) : json(nullptr);
                j["leading"] = r.leading.to_string();
                return emit(j);
            };
        });
    }
    {
        auto* cmd = orbit->add_subcommand("project", "reduction modulo K in the rho alphabet");
        cmd->add_option("--word", word_text)->required();
        cmd->callback([&] {
            action = [&] {
                const Word w = parse_word(word_text);
                const ModKForm f = normalize_mod_k(w);
                return emit({{"input", word_text},
                             {"projected", format_word(project_mod_gamma_subgroup(w))},
                             {"rho_core", format_rho_word(f.core)},
                             {"gamma_exp", f.gamma_exp},
                             {"delta_exp", f.delta_exp},
                             {"representative", format_word(mod_k_representative(f))}});
            };
        });
    }

    // ---- repr
    auto* repr = app.add_subcommand("repr", "exact Laurent representations rho_k");
    repr->require_subcommand(1);
    auto add_k = [&](CLI::App* cmd) {
        cmd->add_option("--k", k, "level")->check(CLI::Range(1, kDefaultKMax))->capture_default_str();
    };
    {
        auto* cmd = repr->add_subcommand("matrices", "rho_k of the generators or of a word");
        add_k(cmd);
        cmd->add_option("--word", word_text);
        cmd->callback([&] {
            action = [&] {
                json j{{"k", k}};
                if (!word_text.empty()) {
                    j["word"] = word_text;
                    j["matrix"] = rho(k, parse_word(word_text)).to_string();
                } else {
                    for (Gen g : kAllGens)
                        j["generators"][std::string(gen_name(g))] = rho(k, Word::gen(g)).to_string();
                }
                return emit(j);
            };
        });
    }
    {
        auto* cmd = repr->add_subcommand("check-v", "rho_k(v_i) = I except at i = k+2");
        add_k(cmd);
        cmd->add_option("--i-max", i_max, "largest i (default k+4)")->check(CLI::Range(2, 12));
        cmd->callback([&] {
            action = [&] {
                const int top = cmd_i_max_or(k + 4);
                const VImagesReport r = verify_v_images(k, top);
                json checks = json::array();
                for (const auto& c : r.checks)
                    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"computed", c.computed}});
                return emit({{"k", k}, {"i_max", top}, {"pass", r.pass}, {"checks", checks}}, r.pass);
            };
        });
    }
    {
        auto* cmd = repr->add_subcommand("comm-scalar", "[rho_k(s), rho_k(v_{k+2})] as a corner scalar");
        add_k(cmd);
        cmd->add_option("--word", word_text, "the word s")->required();
        cmd->callback([&] {
            action = [&] {
                const CommutatorScalar s = commutator_scalar(k, parse_word(word_text));
                return emit({{"k", k}, {"word", word_text}, {"m", s.m}, {"n", s.n}, {"scalar", s.scalar.to_string()}});
            };
        });
    }
    {
        auto* cmd = repr->add_subcommand("impossible", "obstruction polynomial of an exponent list");
        cmd->add_option("--terms", terms_text, "lambda:m:n entries separated by commas, e.g. \"1:1:0,-2:0:1\"")
            ->required();
        cmd->callback([&] {
            action = [&] {
                std::vector<ExponentTerm> terms;
                std::stringstream ss(terms_text);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    long l = 0, m = 0, n = 0;
                    char c1 = 0, c2 = 0;
                    std::istringstream is(item);
                    if (!(is >> l >> c1 >> m >> c2 >> n) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
                        throw UsageError("bad exponent term '" + item + "' (want lambda:m:n)");
                    terms.push_back({l, m, n});
                }
                const bool nonzero = impossibility_check(terms);
                return emit({{"polynomial", impossibility_polynomial(terms).to_string()}, {"nonzero", nonzero}});
            };
        });
    }
    {
        auto* cmd = repr->add_subcommand("certificate", "full depth certificate for level k");
        add_k(cmd);
        cmd->add_option("--samples", samples, "random commutator words")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--seed", seed)->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const DepthCertificate c = depth_certificate(k, samples, seed);
                std::cout << c.to_json() << '\n';
                return c.pass ? kExitPass : kExitCheckFailed;
            };
        });
    }

    // ---- mel
    auto* mel = app.add_subcommand("mel", "exact Wronskian / Melnikov layer");
    mel->require_subcommand(1);
    {
        auto* cmd = mel->add_subcommand("wronskian", "W(f, g) = f g' - f' g");
        cmd->add_option("--f", f_text)->required();
        cmd->add_option("--g", g_text)->required();
        cmd->callback([&] {
            action = [&] {
                return emit({{"f", f_text}, {"g", g_text},
                             {"wronskian", wronskian(parse_ratfunc(f_text), parse_ratfunc(g_text)).to_string()}});
            };
        });
    }
    {
        auto* cmd = mel->add_subcommand("build", "length-3 deformation from (alpha1, alpha2, c0, lambda)");
        cmd->add_option("--alpha1", alpha1)->capture_default_str();
        cmd->add_option("--alpha2", alpha2)->capture_default_str();
        cmd->add_option("--c0", c0)->capture_default_str();
        cmd->add_option("--lambda", lam)->capture_default_str();
        cmd->callback([&] {
            action = [&] {
                const Deformation d =
                    make_length3(parse_ratfunc(alpha1), parse_ratfunc(alpha2), parse_rational(c0), parse_rational(lam));
                json j = deformation_json(d);
                j["mv3"] = mv(3, d).to_string();
                return emit(j);
            };
        });
    }
    {
        auto* cmd = mel->add_subcommand("classify", "classify a deformation (a1, a2, a3)");
        def.attach(cmd);
        cmd->callback([&] {
            action = [&] {
                const Deformation d = def.get();
                const Classification c = classify(d);
                json j = deformation_json(d);
                j["class"] = to_string(c.tag);
                j["w_a2_a1_minus_a3"] = wronskian(d.a2, d.a1 - d.a3).to_string();
                j["lambda1"] = c.lambda1 ? json(c.lambda1->get_str()) : json(nullptr);
                j["lambda2"] = c.lambda2 ? json(c.lambda2->get_str()) : json(nullptr);
                return emit(j);
            };
        });
    }
    {
        auto* cmd = mel->add_subcommand("mv", "mv(i) for i = 2..i_max, without the (2 pi i)^i factor");
        def.attach(cmd);
        cmd->add_option("--i-max", i_max, "largest i (default 6)")->check(CLI::Range(2, 12));
        cmd->callback([&] {
            action = [&] {
                const Deformation d = def.get();
                json vals = json::object();
                for (int i = 2; i <= cmd_i_max_or(6); ++i)
                    vals[std::to_string(i)] = mv(i, d).to_string();
                json j = deformation_json(d);
                j["mv"] = vals;
                return emit(j);
            };
        });
    }
    {
        auto* cmd = mel->add_subcommand("center", "center-family deformation and its hierarchy");
        center.attach(cmd);
        cmd->add_option("--i-max", i_max, "largest i (default 6)")->check(CLI::Range(3, 12));
        cmd->callback([&] {
            action = [&] {
                const RatFunc A = parse_ratfunc(center.A);
                const mpq_class c1v = parse_rational(center.c1), l1 = parse_rational(center.lambda1),
                                lv = parse_rational(center.lambda);
                const Deformation d = center_family(A, c1v, l1, lv);
                const HierarchyReport h = hierarchy_report(d, cmd_i_max_or(6));
                json j = deformation_json(d);
                j["class"] = to_string(classify(d).tag);
                json vals = json::array();
                for (const auto& m : h.mv_values)
                    vals.push_back(m.to_string());
                j["mv_from_2"] = vals;
                j["mu1"] = h.mu1 ? json(h.mu1->get_str()) : json(nullptr);
                j["mu2"] = h.mu2 ? json(h.mu2->get_str()) : json(nullptr);
                j["hierarchy_pass"] = h.pass;
                j["detail"] = h.detail;
                j["m3_prefactor"] = m3_tilde_prefactor(A, l1, lv).to_string();
                j["m3_prefactor_lambda_squared"] = m3_tilde_coefficient(A, lv).to_string();
                return emit(j, h.pass);
            };
        });
    }

    // ---- num
    auto* num = app.add_subcommand("num", "periods, iterated integrals and holonomy fits");
    num->require_subcommand(1);
    auto add_t = [&](CLI::App* cmd) { cmd->add_option("--t", t, "level t")->capture_default_str(); };
    {
        auto* cmd = num->add_subcommand("pairing", "loop / eta period table");
        add_t(cmd);
        cmd->callback([&] {
            action = [&] {
                const auto rs = pairing_table_checks(t);
                std::cout << records_to_json(rs) << '\n';
                return std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.pass; }) ? kExitPass
                                                                                               : kExitCheckFailed;
            };
        });
    }
    {
        auto* cmd = num->add_subcommand("iterated", "iterated integral of 1-forms along a word's cycle");
        cmd->add_option("--word", word_text)->required();
        cmd->add_option("--forms", forms_text, "comma-separated tags (eta1..4, dphi1..4, phiI*dphiJ)")
            ->capture_default_str();
        add_t(cmd);
        cmd->callback([&] {
            action = [&] {
                const Cycle c = cycle_of_word(parse_word(word_text), t);
                const IntegralResult r = iterated_integral_detail(c, parse_form_list(forms_text));
                return emit({{"word", word_text}, {"forms", forms_text}, {"t", t}, {"value", cplx_json(r.value)},
                             {"error_estimate", r.error_estimate}, {"panels", r.panels}});
            };
        });
    }
    {
        auto* cmd = num->add_subcommand("cauchy-suite", "integrals along the real oval that vanish by Cauchy");
        add_t(cmd);
        cmd->callback([&] {
            action = [&] {
                auto rs = cauchy_suite(t);
                rs.push_back(four_pi_squared_check(t));
                std::cout << records_to_json(rs) << '\n';
                return std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.pass; }) ? kExitPass
                                                                                               : kExitCheckFailed;
            };
        });
    }
    {
        auto* cmd = num->add_subcommand("fit", "eps-expansion of the holonomy along a word");
        cmd->add_option("--word", word_text, "word (default g)");
        add_t(cmd);
        def.attach(cmd);
        cmd->add_option("--eps-grid", eps_grid_text, "comma-separated ring radii");
        cmd->add_option("--csv", csv_path, "write the (eps, holonomy) samples here");
        cmd->add_flag("--plots", plots, "write an SVG of |c_j(r) - c_j| next to --csv or in OUTPUT_DIR");
        cmd->callback([&] {
            action = [&] {
                const std::vector<double> grid =
                    eps_grid_text.empty() ? default_eps_grid() : parse_double_list(eps_grid_text);
                const Word w = word_text.empty() ? gamma() : parse_word(word_text);
                const MelnikovFit f = melnikov_fit(w, t, grid, def.get());
                if (!csv_path.empty())
                    write_text_file(csv_path, fit_samples_csv(f));
                if (plots) {
                    std::filesystem::path dir = csv_path.empty()
                                                    ? std::filesystem::path(resolve_output_dir("", Config{}))
                                                    : std::filesystem::path(csv_path).parent_path();
                    write_text_file((dir / "fit.svg").string(), fit_residual_svg(f));
                }
                return emit(fit_json(f));
            };
        });
    }
    {
        auto* cmd = num->add_subcommand("holonomy", "F at the end of the lifted word for one eps");
        cmd->add_option("--word", word_text, "word (default g)");
        add_t(cmd);
        cmd->add_option("--eps", eps_text, "RE or RE,IM")->capture_default_str();
        def.attach(cmd);
        cmd->callback([&] {
            action = [&] {
                const Word w = word_text.empty() ? gamma() : parse_word(word_text);
                const cplx eps = parse_cplx(eps_text);
                const cplx h = holonomy(w, t, eps, def.get());
                return emit({{"word", format_word(w)}, {"t", t}, {"eps", cplx_json(eps)}, {"holonomy", cplx_json(h)},
                             {"displacement", cplx_json(h - t)}});
            };
        });
    }
    {
        auto* cmd = num->add_subcommand("center-check", "order-3 center coefficient against the symbolic prefactor");
        center.attach(cmd);
        add_t(cmd);
        cmd->add_option("--eps-grid", eps_grid_text, "comma-separated ring radii");
        cmd->callback([&] {
            action = [&] {
                const std::vector<double> grid =
                    eps_grid_text.empty() ? default_eps_grid() : parse_double_list(eps_grid_text);
                const CenterCrosscheck x =
                    m3_center_crosscheck(parse_ratfunc(center.A), parse_rational(center.c1),
                                         parse_rational(center.lambda1), parse_rational(center.lambda), t, grid,
                                         calibrate_signs(t).sigma1);
                const bool ok = x.rel_error_corrected <= Tolerances{}.cross_rel;
                return emit({{"t0", t},
                             {"c3", cplx_json(x.fit.c[3])},
                             {"I23", cplx_json(x.i23)},
                             {"predicted", cplx_json(x.predicted_corrected)},
                             {"rel_error", x.rel_error_corrected},
                             {"predicted_lambda_squared", cplx_json(x.predicted_stated)},
                             {"rel_error_lambda_squared", x.rel_error_stated},
                             {"sigma1", x.sigma1},
                             {"pass", ok}},
                            ok);
            };
        });
    }

    // ---- verify / report
    RunOptions run;
    auto* verify = app.add_subcommand("verify", "run a check suite and write its JSON report");
    std::string suite_name = "all";
    verify->add_option("suite", suite_name, "orbit | repr | melnikov | numeric | all")
        ->check(CLI::IsMember({"orbit", "repr", "melnikov", "numeric", "all"}))
        ->capture_default_str();
    verify->add_option("--out", run.out, "output directory (overrides OUTPUT_DIR and the config)");
    run.attach(verify);
    verify->callback([&] {
        action = [&] {
            const Config c = run.config();
            const PipelineOptions opt = run.pipeline();
            const Report r = run_suite(parse_suite(suite_name), c, opt);
            const std::string dir = resolve_output_dir(run.out, c);
            const std::string path = (std::filesystem::path(dir) / ("report_" + suite_name + ".json")).string();
            write_text_file(path, report_to_json(r));
            if (run.plots && (suite_name == "numeric" || suite_name == "all"))
                write_plots(dir, c, opt);
            std::cout << summary_table(r) << "report: " << path << '\n';
            return r.all_pass() ? kExitPass : kExitCheckFailed;
        };
    });

    auto* report = app.add_subcommand("report", "run the full pipeline and write one report file");
    std::string format = "json";
    report->add_option("--out", run.out, "report file")->required();
    report->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    run.attach(report);
    report->callback([&] {
        action = [&] {
            const Config c = run.config();
            const PipelineOptions opt = run.pipeline();
            const Report r = full_pipeline(c, opt);
            write_text_file(run.out, format == "json" ? report_to_json(r) : report_to_csv(r));
            if (run.plots) {
                const auto parent = std::filesystem::path(run.out).parent_path();
                write_plots(parent.empty() ? "." : parent.string(), c, opt);
            }
            std::cout << summary_table(r) << "report: " << run.out << '\n';
            return r.all_pass() ? kExitPass : kExitCheckFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
