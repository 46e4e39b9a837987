#include "orbitdepth/suites.hpp"

#include "orbitdepth/magnus.hpp"
#include "orbitdepth/numeric_checks.hpp"
#include "orbitdepth/representation.hpp"

#include "json.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace orbitdepth {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config

Config parse_config(std::string_view json_text, Config base)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    Config c = std::move(base);
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            const json& v = it.value();
            if (key == "tolerances") {
                if (!v.is_object())
                    throw ConfigError("tolerances must be an object");
                const auto fields = tolerance_fields();
                for (auto t = v.begin(); t != v.end(); ++t) {
                    auto f = std::find_if(fields.begin(), fields.end(), [&](const auto& p) { return p.first == t.key(); });
                    if (f == fields.end())
                        throw ConfigError("unknown tolerance '" + t.key() + "'");
                    if (!t.value().is_number())
                        throw ConfigError("tolerance '" + t.key() + "' must be a number");
                    c.tolerances.*(f->second) = t.value().get<double>();
                }
            } else if (key == "k_max") {
                c.k_max = v.get<int>();
            } else if (key == "magnus_degree") {
                c.magnus_degree = v.get<int>();
            } else if (key == "t0") {
                c.t0 = v.get<double>();
            } else if (key == "eps_grid") {
                c.eps_grid = v.get<std::vector<double>>();
            } else if (key == "seed") {
                c.seed = v.get<std::uint64_t>();
            } else if (key == "output_dir") {
                c.output_dir = v.get<std::string>();
            } else if (key == "samples") {
                c.samples = v.get<int>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
    }
    validate(c);
    return c;
}

Config load_config(const std::string& path, Config base)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

void validate(const Config& c)
{
    if (c.k_max < 1 || c.k_max > kDefaultKMax)
        throw ConfigError("k_max must be in 1.." + std::to_string(kDefaultKMax));
    if (c.magnus_degree < 3 || c.magnus_degree > Monomial::kMaxLength)
        throw ConfigError("magnus_degree must be in 3.." + std::to_string(Monomial::kMaxLength));
    if (!(c.t0 > 0 && c.t0 <= kMaxLoopLevel))
        throw ConfigError("t0 must be in (0, " + format_double(kMaxLoopLevel, 3) + "]");
    if (c.eps_grid.size() < 5)
        throw ConfigError("eps_grid needs at least 5 radii");
    for (double e : c.eps_grid)
        if (!(e > 0 && e <= 0.05))
            throw ConfigError("eps_grid radii must be in (0, 0.05]");
    if (c.samples < 1)
        throw ConfigError("samples must be positive");
    for (const auto& [name, field] : tolerance_fields())
        if (!(c.tolerances.*field > 0))
            throw ConfigError("tolerance '" + name + "' must be positive");
}

Suite parse_suite(std::string_view name)
{
    if (name == "orbit")
        return Suite::Orbit;
    if (name == "repr")
        return Suite::Repr;
    if (name == "melnikov")
        return Suite::Melnikov;
    if (name == "numeric")
        return Suite::Numeric;
    if (name == "all")
        return Suite::All;
    throw ConfigError("unknown suite '" + std::string(name) + "'");
}

std::string to_string(Suite s)
{
    switch (s) {
    case Suite::Orbit:
        return "orbit";
    case Suite::Repr:
        return "repr";
    case Suite::Melnikov:
        return "melnikov";
    case Suite::Numeric:
        return "numeric";
    case Suite::All:
        return "all";
    }
    return "?";
}

RunManifest make_manifest(const Config& c, std::string suite)
{
    RunManifest m;
    m.tool_version = tool_version();
    m.suite = std::move(suite);
    m.timestamp = current_timestamp();
    m.seed = c.seed;
    m.k_max = c.k_max;
    m.magnus_degree = c.magnus_degree;
    m.samples = c.samples;
    m.t0 = c.t0;
    m.eps_grid = c.eps_grid;
    m.tolerances = c.tolerances;
    return m;
}

// ---------------------------------------------------------------------------

namespace {

CheckRecord bool_record(std::string id, std::string claim, std::string expected, std::string computed, bool ok)
{
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.metric = Metric::Exact;
    r.expected = std::move(expected);
    r.computed = std::move(computed);
    r.error = ok ? 0 : 1;
    return r.settle();
}

std::string fraction(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

Word letter(Gen g, int e = 1) { return Word::gen(g, e); }

std::string depth_string(const std::optional<int>& d) { return d ? std::to_string(*d) : "none"; }

RatFunc T() { return RatFunc::t(); }

} // namespace

void orbit_stage(const Config& c, Report& r)
{
    r.manifest.modules.push_back("word-core");
    r.manifest.modules.push_back("magnus-depth");
    const Endo m0 = mon0(), m1 = mon1();
    const std::array<std::string, kNumGens> mon0_expected{
        "d0 d1 d2 d3 g", "d0", "d0 d1 d0'", "d0 d1 d2 d1' d0'", "d0 d1 d2 d3 d2' d1' d0'"};
    for (Gen g : kAllGens) {
        const std::string name(gen_name(g));
        r.add(timed([&] {
            const std::string expected = g == Gen::G ? "g" : "g " + name;
            return exact_record("orbit.mon1." + name, "Mon1 fixes g and sends each loop d_i to g d_i", expected,
                                format_word(m1(letter(g))));
        }));
        r.add(timed([&] {
            return exact_record("orbit.mon0." + name, "Mon0 image of " + name + " is the stated conjugate",
                                mon0_expected[index(g)], format_word(m0(letter(g))));
        }));
    }
    r.add(timed([&] {
        const Endo m = m_endo();
        const Word s = letter(Gen::D0) * letter(Gen::D1);
        RandomWords gen(c.seed + 1);
        std::size_t ok = 0;
        for (int i = 0; i < c.samples; ++i) {
            const Word w = gen.next();
            ok += m(w) == s.inverse() * m0(w) * s;
        }
        return exact_record("orbit.m_conjugation", "M(w) = (d0 d1)^-1 Mon0(w) (d0 d1) on random words",
                            fraction(std::size_t(c.samples), std::size_t(c.samples)),
                            fraction(ok, std::size_t(c.samples)));
    }));
    r.add(timed([&] {
        const Endo m0i = mon0_inverse(), m1i = mon1_inverse();
        RandomWords gen(c.seed + 2);
        std::size_t ok = 0;
        for (int i = 0; i < c.samples; ++i) {
            const Word w = gen.next();
            ok += m0i(m0(w)) == w && m1i(m1(w)) == w;
        }
        return exact_record("orbit.mon_inverses", "Mon0 and Mon1 are automorphisms with the given inverses",
                            fraction(std::size_t(c.samples), std::size_t(c.samples)),
                            fraction(ok, std::size_t(c.samples)));
    }));

    const Word var2 = var(var(gamma()));
    const ModKForm f2 = normalize_mod_k(var2);
    r.add(timed([&] {
        return exact_record("orbit.var2.rho_form", "Var^2(g) reduces modulo K to [x, z]", "x z x' z'",
                            format_rho_word(f2.core) + (f2.gamma_exp || f2.delta_exp ? " (+central)" : ""));
    }));
    r.add(timed([&] {
        const auto diff = leading_difference_degree(mod_k_representative(f2), v_k(2), 3);
        return exact_record("orbit.var2.magnus", "reduced Var^2(g) and v2 agree in the Magnus ring through degree 3",
                            "none", depth_string(diff));
    }));

    const auto orbit = var_orbit(5);
    for (int i = 2; i <= 5; ++i) {
        const std::string si = std::to_string(i);
        const Word& wi = orbit[static_cast<std::size_t>(i - 1)];
        r.add(timed([&] {
            const auto d = depth_lower_bound(wi, c.magnus_degree).lowest_degree;
            return bool_record("orbit.depth.var" + si, "Var^" + si + "(g) has Magnus lowest degree >= " + si,
                               ">=" + si, depth_string(d), d && *d >= i);
        }));
        r.add(timed([&] {
            const auto d = depth_lower_bound(v_k(i), c.magnus_degree).lowest_degree;
            return exact_record("orbit.depth.v" + si, "v" + si + " has Magnus lowest degree exactly " + si, si,
                                depth_string(d));
        }));
        r.add(timed([&] {
            const auto diff = leading_difference_degree(wi, v_k(i), c.magnus_degree);
            return bool_record("orbit.leading.v" + si, "Var^" + si + "(g) and v" + si + " share the leading Lie term",
                               ">" + si, depth_string(diff), !diff || *diff > i);
        }));
    }
    for (int i = 1; i <= 5; ++i) {
        const std::string si = std::to_string(i);
        const int degree = std::min(i + 2, c.magnus_degree);
        r.add(timed([&] {
            const bool ok = graded_triviality_check(v_k(i), m0, degree);
            return bool_record("orbit.graded.v" + si, "Mon0 acts trivially on the leading term of v" + si, "true",
                               ok ? "true" : "false", ok);
        }));
    }
}

void repr_stage(const Config& c, Report& r)
{
    r.manifest.modules.push_back("laurent-repr");
    for (int k = 1; k <= c.k_max; ++k) {
        const std::string sk = std::to_string(k);
        r.add(timed([&] {
            const DepthCertificate cert = depth_certificate(k, c.samples, c.seed + static_cast<std::uint64_t>(k));
            std::size_t ok = 0;
            std::string first_failure;
            for (const auto& chk : cert.checks) {
                ok += chk.pass;
                if (!chk.pass && first_failure.empty())
                    first_failure = " (first failure: " + chk.name + ")";
            }
            CheckRecord rec = bool_record("repr.k=" + sk + ".certificate",
                                          "rho_" + sk + " kills v_i for i != " + std::to_string(k + 2) +
                                              ", has the corner image on v_" + std::to_string(k + 2) +
                                              ", the commutator scalar law and a nonzero obstruction",
                                          fraction(cert.checks.size(), cert.checks.size()),
                                          fraction(ok, cert.checks.size()) + first_failure, cert.pass);
            rec.params = {{"k", sk}, {"samples", std::to_string(c.samples)}, {"seed", std::to_string(cert.seed)}};
            return rec;
        }));
        r.add(timed([&] {
            // Outer commutator taken as u^-1 v^-1 u v.
            const Word D = d_k(k + 1, z_word());
            const RepMatrix m = rho(k, x_word().inverse() * D.inverse() * x_word() * D);
            const std::size_t n = m.size();
            const bool rest_identity = (m - RepMatrix::identity(k)).nonzero_count() == 1;
            return bool_record("repr.k=" + sk + ".corner_outer_inverse",
                               "with the outer commutator u^-1 v^-1 u v the corner is (1/c-1)(1/a-1)k!",
                               stated_corner_prefactor(k).to_string(), m.at(0, n - 1).to_string(),
                               rest_identity && m.at(0, n - 1) == stated_corner_prefactor(k));
        }));
        r.add(timed([&] {
            return exact_record("repr.k=" + sk + ".corner_ratio",
                                "with [u,v] = u v u^-1 v^-1 the corner is a times (1/c-1)(1/a-1)k!",
                                (stated_corner_prefactor(k) * LaurentPoly2::a()).to_string(),
                                corner_prefactor(k).to_string());
        }));
    }
    r.deviations.push_back(
        {"repr.corner_prefactor",
         "With [u,v] = u v u^-1 v^-1 throughout, rho_k(v_{k+2}) - I has corner (a-1)(1-1/c)k!, which is a times the "
         "closed form (1/c-1)(1/a-1)k!. The closed form is recovered exactly when the outermost commutator is "
         "u^-1 v^-1 u v (checked for every k). Depth conclusions are unaffected since a is a unit."});
    r.add(timed([&] {
        std::mt19937_64 rng(c.seed + 100);
        std::uniform_int_distribution<long> lam(-6, 6), ex(-4, 4);
        std::uniform_int_distribution<int> len(1, 6);
        std::size_t ok = 0;
        for (int i = 0; i < c.samples; ++i) {
            std::vector<ExponentTerm> terms(static_cast<std::size_t>(len(rng)));
            for (auto& t : terms)
                do {
                    t = {lam(rng), ex(rng), ex(rng)};
                } while (t.m == 0 && t.n == 0);
            ok += impossibility_check(terms);
        }
        return exact_record("repr.impossibility", "the obstruction polynomial is nonzero on random exponent lists",
                            fraction(std::size_t(c.samples), std::size_t(c.samples)),
                            fraction(ok, std::size_t(c.samples)));
    }));
}

namespace {

Deformation resolve_flagship(const std::optional<Deformation>& flagship)
{
    if (flagship)
        return *flagship;
    Deformation d = make_length3(T(), T() * T(), 1, 1);
    d.provenance = "flagship";
    return d;
}

} // namespace

void melnikov_stage(const Config& c, Report& r, const std::optional<Deformation>& flagship)
{
    r.manifest.modules.push_back("melnikov-symbolic");
    const Deformation reference = flagship_deformation();
    r.add(timed([&] {
        const Deformation built = make_length3(T(), T() * T(), 1, 1);
        const auto show = [](const Deformation& d) {
            return "(" + d.a1.to_string() + ", " + d.a2.to_string() + ", " + d.a3.to_string() + ")";
        };
        return exact_record("melnikov.build", "the length-3 construction from (t, t^2, 1, 1) gives the flagship",
                            show(reference), show(built));
    }));
    const Deformation flag = resolve_flagship(flagship);
    const ClassTag tag = classify(flag).tag;
    r.add(timed([&] {
        CheckRecord rec = exact_record("melnikov.flagship.classify", "the flagship deformation is of length 3",
                                       to_string(ClassTag::Length3), to_string(tag));
        rec.params = {{"a1", flag.a1.to_string()}, {"a2", flag.a2.to_string()}, {"a3", flag.a3.to_string()},
                      {"provenance", flag.provenance}};
        return rec;
    }));
    if (tag != ClassTag::Length3)
        r.deviations.push_back({"melnikov.flagship",
                                "deformation (" + flag.a1.to_string() + ", " + flag.a2.to_string() + ", " +
                                    flag.a3.to_string() + ") is " + to_string(tag) + ": W(a2, a1 - a3) = " +
                                    wronskian(flag.a2, flag.a1 - flag.a3).to_string() +
                                    "; length-3 numeric stages are skipped"});
    const std::array<std::string, 5> mv_expected{"0", "t^2", "0", "0", "0"};
    for (int i = 2; i <= 6; ++i) {
        const std::string si = std::to_string(i);
        r.add(timed([&] {
            return exact_record("melnikov.flagship.mv" + si, "mv(" + si + ") of the flagship",
                                mv_expected[static_cast<std::size_t>(i - 2)], mv(i, flag).to_string());
        }));
        r.add(timed([&] {
            return exact_record("melnikov.flagship.mv" + si + ".compose",
                                "mv(" + si + ") equals the chained composition of leading terms",
                                mv(i, flag).to_string(), mv_via_compose(i, flag).to_string());
        }));
    }
    r.add(timed([&] {
        const bool ok = francoise_m2(flag).reduces_to_i12_plus_i32();
        return bool_record("melnikov.flagship.m2_reduction",
                           "second-order sum reduces to w12 (I12 + I32) for the flagship", "true",
                           ok ? "true" : "false", ok);
    }));
    r.add(timed([&] {
        const Deformation falsified{T() * T() + RatFunc(2) * T(), T() * T(), T() * T() + T(), "falsified"};
        return exact_record("melnikov.negative_control", "replacing a2 = t by t^2 is detected at second order",
                            to_string(ClassTag::Order2Nonzero), to_string(classify(falsified).tag));
    }));

    std::mt19937_64 rng(c.seed + 200);
    std::uniform_int_distribution<int> small(-4, 4);
    const std::vector<std::pair<std::string, RatFunc>> As{{"t", T()},
                                                           {"t^2/2", parse_ratfunc("t^2/2")},
                                                           {"t^3+t", parse_ratfunc("t^3+t")},
                                                           {"1/(t+2)", parse_ratfunc("1/(t+2)")}};
    for (const auto& [name, A] : As) {
        r.add(timed([&] {
            std::size_t ok = 0, total = 0;
            for (int n = 0; n < 4; ++n) {
                const mpq_class c1 = small(rng), lambda(small(rng), 2);
                mpq_class lambda1 = small(rng);
                if (lambda1 == 0)
                    lambda1 = 1;
                ++total;
                ok += hierarchy_collapse_check(center_family(A, c1, lambda1, lambda), 6);
            }
            return exact_record("melnikov.center.hierarchy.A=" + name,
                                "center-family deformations satisfy mv(i+1) = mu1 mu2 mv(i) and vanish up to i = 6",
                                fraction(total, total), fraction(ok, total));
        }));
    }
    r.add(timed([&] {
        return exact_record("melnikov.center.m3_prefactor", "third-order center prefactor at (A, lambda1, lambda) = (t^2/2, 2, 1)",
                            "-2/t^2", m3_tilde_prefactor(parse_ratfunc("t^2/2"), 2, 1).to_string());
    }));
    r.deviations.push_back(
        {"melnikov.center.m3_prefactor",
         "the third-order center term carries -lambda*lambda1/(t A'), not -lambda^2/(t A'); the two agree only when "
         "lambda1 = lambda. Holonomy fits confirm the lambda*lambda1 law (lambda = 2 with lambda1 = 1 doubles the "
         "coefficient)."});
}

void numeric_stage(const Config& c, Report& r, const std::optional<Deformation>& flagship)
{
    r.manifest.modules.push_back("curve-numeric");
    const Tolerances& tol = c.tolerances;
    const double t0 = c.t0;
    std::set<double> levels{0.25, t0};
    for (double t : levels)
        r.add(pairing_table_checks(t, tol));
    r.add(oval_period_checks(t0, tol));
    r.add(timed([&] {
        double worst = max_cycle_residual(real_oval(t0));
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, max_cycle_residual(vanishing_loop(i, t0, true)));
        worst = std::max(worst, max_cycle_residual(cycle_of_word(v_k(3), t0)));
        return abs_record("curve.residual", "every constructed point satisfies |F - t| <= tol max(1, |t|)", 0.0,
                          worst, tol.residual_rel * std::max(1.0, t0));
    }));
    r.add(cauchy_suite(t0, tol));
    r.add(four_pi_squared_check(t0, tol));
    r.add(additivity_checks(t0, c.seed + 300, 20, tol));
    r.add(shuffle_checks(t0, c.seed + 301, 20, tol));
    r.add(determinant_checks(t0, c.seed + 302, 20, tol));

    const Deformation flag = resolve_flagship(flagship);
    const bool length3 = classify(flag).tag == ClassTag::Length3;
    if (length3)
        r.add(m2_assembly_check(flag, t0, tol));
    r.add(timed([&] {
        const M2Assembly m = m2_assembly(Deformation{RatFunc(1), RatFunc(0), RatFunc(1), "symmetric"}, t0);
        return abs_record("m2.symmetric", "the symmetric deformation (1, 0, 1) assembles to exactly zero", 0.0, m.m2,
                          0.0);
    }));

    SignCalibration signs;
    r.add(timed([&] {
        signs = calibrate_signs(t0);
        CheckRecord rec = rel_record("signs.first_order", "order-1 coefficient along x is sigma1 times the period",
                                     double(signs.sigma1) * signs.c1_period, signs.c1_measured, tol.cross_rel);
        rec.params = {{"sigma1", std::to_string(signs.sigma1)}};
        return rec;
    }));
    r.add(timed([&] {
        CheckRecord rec = rel_record("signs.bracket",
                                     "order-2 coefficient along v2 for (t, 1, 0) is sigma_b (2 pi i)^2 mv(2)",
                                     double(signs.sigma_b) * signs.c2_symbolic, signs.c2_measured, tol.cross_rel);
        rec.params = {{"sigma_b", std::to_string(signs.sigma_b)},
                      {"grid", "1e-4 * 2^j, j = 0..5"}};
        return rec;
    }));

    if (length3) {
        r.add(flagship_fit_checks(flag, t0, c.eps_grid, tol));
        r.add(v3_crosscheck(flag, t0, c.eps_grid, signs, tol));
    }

    r.add(hamiltonian_center_checks(t0, {0.01, 0.02, 0.05}, tol));
    struct CenterCase {
        std::string id;
        std::string A;
        int c1, lambda1, lambda;
        bool small_grid;
    };
    const std::vector<CenterCase> cases{{"center.m3.A=t.c1=0.l1=1.l=1", "t", 0, 1, 1, false},
                                        {"center.m3.A=t.c1=1.l1=1.l=1", "t", 1, 1, 1, false},
                                        {"center.m3.A=t.c1=1.l1=1.l=2", "t", 1, 1, 2, false},
                                        {"center.m3.A=t.c1=1.l1=2.l=2", "t", 1, 2, 2, false},
                                        {"center.m3.A=t^2/2.c1=1.l1=2.l=1", "t^2/2", 1, 2, 1, true}};
    cplx c3_unit = 0, c3_double = 0;
    for (const auto& cc : cases) {
        r.add(timed([&] {
            const CenterCrosscheck x =
                m3_center_crosscheck(parse_ratfunc(cc.A), cc.c1, cc.lambda1, cc.lambda, t0,
                                     cc.small_grid ? calibration_eps_grid() : c.eps_grid, signs.sigma1);
            if (cc.A == "t" && cc.c1 == 1 && cc.lambda1 == 1 && cc.lambda == 1)
                c3_unit = x.fit.c[3];
            if (cc.A == "t" && cc.c1 == 1 && cc.lambda1 == 1 && cc.lambda == 2)
                c3_double = x.fit.c[3];
            CheckRecord rec = rel_record(cc.id,
                                         "order-3 center coefficient equals sigma1^3 (-lambda lambda1 / (t0 A'^2)) "
                                         "int_gamma dphi2 dphi3",
                                         x.predicted_corrected, x.fit.c[3], tol.cross_rel);
            rec.params = {{"A", cc.A},
                          {"c1", std::to_string(cc.c1)},
                          {"lambda1", std::to_string(cc.lambda1)},
                          {"lambda", std::to_string(cc.lambda)},
                          {"I23", format_complex(x.i23)},
                          {"lambda_squared_prediction", format_complex(x.predicted_stated)},
                          {"lambda_squared_rel_error", format_double(x.rel_error_stated, 4)}};
            return rec;
        }));
    }
    r.add(rel_record("center.m3.scaling_lambda", "doubling lambda at lambda1 = 1 doubles the order-3 coefficient",
                     2.0, c3_double / c3_unit, tol.scaling_rel));
    r.add(timed([&] {
        const CenterCrosscheck x = m3_center_crosscheck(T(), 1, 1, 0, t0, c.eps_grid, signs.sigma1);
        const double scale = tol.fit_zero_rel * std::max(1.0, std::abs(x.fit.c[3]));
        return abs_record("center.m3.lambda=0", "lambda = 0 has no order-3 term", 0.0, x.fit.c[3], scale);
    }));
    r.add(base_point_checks(t0, c.eps_grid, tol));
    r.add(reversal_checks(t0, c.eps_grid, tol));
}

// ---------------------------------------------------------------------------

namespace {

template <class Fn>
bool guarded(Report& r, const std::string& stage, Fn&& fn)
{
    try {
        fn();
        return true;
    } catch (const std::exception& e) {
        r.aborted = true;
        r.abort_reason = stage + ": " + e.what();
        return false;
    }
}

} // namespace

Report run_suite(Suite s, const Config& c, const PipelineOptions& opt)
{
    if (s == Suite::All)
        return full_pipeline(c, opt);
    Report r;
    r.manifest = make_manifest(c, to_string(s));
    switch (s) {
    case Suite::Orbit:
        guarded(r, "orbit", [&] { orbit_stage(c, r); });
        break;
    case Suite::Repr:
        guarded(r, "repr", [&] { repr_stage(c, r); });
        break;
    case Suite::Melnikov:
        guarded(r, "melnikov", [&] { melnikov_stage(c, r, opt.flagship); });
        break;
    case Suite::Numeric:
        guarded(r, "numeric", [&] { numeric_stage(c, r, opt.flagship); });
        break;
    case Suite::All:
        break;
    }
    return r;
}

Report full_pipeline(const Config& c, const PipelineOptions& opt)
{
    Report r;
    r.manifest = make_manifest(c, "all");
    guarded(r, "orbit", [&] { orbit_stage(c, r); }) && guarded(r, "repr", [&] { repr_stage(c, r); }) &&
        guarded(r, "melnikov", [&] { melnikov_stage(c, r, opt.flagship); }) &&
        guarded(r, "numeric", [&] { numeric_stage(c, r, opt.flagship); });
    return r;
}

} // namespace orbitdepth
