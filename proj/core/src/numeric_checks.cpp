#include "orbitdepth/numeric_checks.hpp"

#include "orbitdepth/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace orbitdepth {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI(0, 2 * kPi);

std::string t_param(double t) { return format_double(t, 6); }

OneForm eta(int i) { return OneForm::eta(i); }

cplx period(const Cycle& c, int i) { return integrate_form(c, eta(i)); }

std::string tag(const char* base, double t) { return std::string(base) + "@t=" + t_param(t); }

CheckRecord with_params(CheckRecord r, std::vector<std::pair<std::string, std::string>> params)
{
    r.params = std::move(params);
    return r;
}

cplx fit_c3(const MelnikovFit& f) { return f.c[3]; }

} // namespace

int expected_pairing(int loop, int eta_index)
{
    static constexpr int table[3][3] = {{0, 0, 1}, {0, 1, -1}, {1, -1, 0}};
    if (loop < 1 || loop > 3 || eta_index < 1 || eta_index > 3)
        throw DomainError("pairing table is indexed by loops 1..3 and forms 1..3");
    return table[loop - 1][eta_index - 1];
}

std::vector<CheckRecord> pairing_table_checks(double t, const Tolerances& tol)
{
    std::vector<CheckRecord> out;
    for (int i = 1; i <= 3; ++i) {
        const Cycle loop = vanishing_loop(i, t, true);
        for (int j = 1; j <= 3; ++j) {
            const bool calibration = i == 1 && j == 3;
            const std::string id = "pairing.d" + std::to_string(i) + ".eta" + std::to_string(j) + "@t=" + t_param(t);
            const std::string claim = "int_{d" + std::to_string(i) + "} eta" + std::to_string(j) + " = " +
                                      std::to_string(expected_pairing(i, j)) + " * 2 pi i" +
                                      (calibration ? " (orientation calibration entry)" : "");
            out.push_back(timed([&] {
                return with_params(abs_record(id, claim, double(expected_pairing(i, j)) * kTwoPiI, period(loop, j),
                                              tol.pairing_abs),
                                   {{"t", t_param(t)}, {"calibration", calibration ? "true" : "false"}});
            }));
        }
    }
    return out;
}

std::vector<CheckRecord> cauchy_suite(double t, const Tolerances& tol)
{
    const Cycle g = real_oval(t);
    std::vector<CheckRecord> out;
    const std::vector<std::pair<std::string, std::vector<OneForm>>> cases = {
        {"phi1*dphi3", {OneForm::phi_dphi(1, 3)}},
        {"log(t/(y^2-1))*dphi2", {OneForm::cauchy_log()}},
        {"dphi2,dphi2", {OneForm::dphi(2), OneForm::dphi(2)}},
    };
    for (const auto& [name, forms] : cases)
        out.push_back(timed([&] {
            return with_params(abs_record("cauchy." + name + "@t=" + t_param(t),
                                          "int_gamma " + name + " vanishes on the real oval", 0.0,
                                          iterated_integral(g, forms), tol.cauchy_abs),
                               {{"t", t_param(t)}, {"forms", name}});
        }));
    return out;
}

CheckRecord four_pi_squared_check(double t, const Tolerances& tol)
{
    return timed([&] {
        const Cycle v2 = cycle_of_word(v_k(2), t);
        return with_params(rel_record(tag("iterated.v2.dphi2dphi3", t), "int_{v2} dphi2 dphi3 = 4 pi^2",
                                      4 * kPi * kPi, iterated_integral(v2, {OneForm::dphi(2), OneForm::dphi(3)}),
                                      tol.iterated_rel),
                           {{"t", t_param(t)}, {"word", format_word(v_k(2))}});
    });
}

std::vector<CheckRecord> oval_period_checks(double t, const Tolerances& tol)
{
    const Cycle g = real_oval(t);
    std::vector<CheckRecord> out;
    for (int i = 1; i <= 4; ++i)
        out.push_back(timed([&] {
            return with_params(abs_record("period.gamma.eta" + std::to_string(i) + "@t=" + t_param(t),
                                          "eta" + std::to_string(i) + " has zero period on the real oval", 0.0,
                                          period(g, i), tol.pairing_abs),
                               {{"t", t_param(t)}});
        }));
    return out;
}

std::vector<Word> random_loop_words(std::uint64_t seed, std::size_t count, std::size_t max_len)
{
    RandomWords gen(seed, max_len);
    std::vector<Word> out;
    while (out.size() < count) {
        Word w = gen.next_delta_only();
        if (!w.is_identity())
            out.push_back(std::move(w));
    }
    return out;
}

std::vector<CheckRecord> additivity_checks(double t, std::uint64_t seed, std::size_t pairs, const Tolerances& tol)
{
    const std::vector<Word> words = random_loop_words(seed, 2 * pairs);
    std::vector<CheckRecord> out;
    for (std::size_t p = 0; p < pairs; ++p) {
        const Word& u = words[2 * p];
        const Word& v = words[2 * p + 1];
        const Cycle cu = cycle_of_word(u, t), cv = cycle_of_word(v, t), cuv = cycle_of_word(u * v, t);
        for (int i = 1; i <= 4; ++i) {
            out.push_back(timed([&] {
                const cplx sum = period(cu, i) + period(cv, i);
                const cplx whole = cuv.empty() ? cplx(0) : period(cuv, i);
                return with_params(
                    abs_record("additivity." + std::to_string(p) + ".eta" + std::to_string(i),
                               "period over a product equals the sum of periods", sum, whole, tol.additivity_abs),
                    {{"t", t_param(t)}, {"u", format_word(u)}, {"v", format_word(v)}});
            }));
        }
    }
    return out;
}

std::vector<CheckRecord> shuffle_checks(double t, std::uint64_t seed, std::size_t count, const Tolerances& tol)
{
    const std::vector<Word> words = random_loop_words(seed, count);
    std::mt19937_64 rng(seed ^ 0x5bd1e995u);
    std::uniform_int_distribution<int> pick(1, 4);
    std::vector<CheckRecord> out;
    for (std::size_t k = 0; k < count; ++k) {
        const int i = pick(rng), j = pick(rng);
        out.push_back(timed([&] {
            const Cycle c = cycle_of_word(words[k], t);
            const cplx wij = iterated_integral(c, {eta(i), eta(j)});
            const cplx wji = iterated_integral(c, {eta(j), eta(i)});
            const cplx prod = period(c, i) * period(c, j);
            return with_params(abs_record("shuffle." + std::to_string(k),
                                          "int w1 w2 + int w2 w1 = (int w1)(int w2)", prod, wij + wji,
                                          tol.shuffle_abs),
                               {{"t", t_param(t)},
                                {"word", format_word(words[k])},
                                {"forms", "eta" + std::to_string(i) + ",eta" + std::to_string(j)}});
        }));
    }
    return out;
}

std::vector<CheckRecord> determinant_checks(double t, std::uint64_t seed, std::size_t count, const Tolerances& tol)
{
    const std::vector<Word> words = random_loop_words(seed, 2 * count);
    std::mt19937_64 rng(seed ^ 0x9e3779b9u);
    std::uniform_int_distribution<int> pick(1, 4);
    std::vector<CheckRecord> out;
    for (std::size_t k = 0; k < count; ++k) {
        const Word& s1 = words[2 * k];
        const Word& s2 = words[2 * k + 1];
        const int i = pick(rng), j = pick(rng);
        out.push_back(timed([&] {
            const Cycle c1 = cycle_of_word(s1, t), c2 = cycle_of_word(s2, t);
            const Cycle comm = cycle_of_word(commutator(s1, s2), t);
            const cplx det = period(c1, i) * period(c2, j) - period(c1, j) * period(c2, i);
            const cplx lhs = comm.empty() ? cplx(0) : iterated_integral(comm, {eta(i), eta(j)});
            return with_params(abs_record("determinant." + std::to_string(k),
                                          "int_{[s1,s2]} w1 w2 = det(int_{s_i} w_j)", det, lhs, tol.determinant_abs),
                               {{"t", t_param(t)},
                                {"s1", format_word(s1)},
                                {"s2", format_word(s2)},
                                {"forms", "eta" + std::to_string(i) + ",eta" + std::to_string(j)}});
        }));
    }
    return out;
}

double max_cycle_residual(const Cycle& c)
{
    double worst = 0;
    for (const auto& seg : c.segments)
        for (double s : seg.knots())
            worst = std::max(worst, seg.point(s).residual);
    return worst;
}

// ---------------------------------------------------------------------------

M2Assembly m2_assembly(const Deformation& d, double t0)
{
    const Cycle g = real_oval(t0);
    M2Assembly m;
    m.t0 = t0;
    m.i12 = iterated_integral(g, {OneForm::phi_dphi(1, 2)});
    m.i13 = iterated_integral(g, {OneForm::phi_dphi(1, 3)});
    m.i23 = iterated_integral(g, {OneForm::phi_dphi(2, 3)});
    m.i32 = iterated_integral(g, {OneForm::phi_dphi(3, 2)});
    const cplx tc(t0);
    m.w12 = wronskian(d.a1, d.a2).evaluate(tc).real();
    m.w13 = wronskian(d.a1, d.a3).evaluate(tc).real();
    m.w23 = wronskian(d.a2, d.a3).evaluate(tc).real();
    m.m2 = m.w12 * m.i12 + m.w13 * m.i13 + m.w23 * m.i23;
    m.closed_combination = integrate_form(g, OneForm::cauchy_log());
    return m;
}

std::vector<CheckRecord> m2_assembly_check(const Deformation& d, double t0, const Tolerances& tol)
{
    const ClassTag cls = classify(d).tag;
    if (cls != ClassTag::Length3 && cls != ClassTag::IntegrableCandidate && cls != ClassTag::SymmetricCenter)
        throw DomainError("m2_assembly_check: deformation is classified " + to_string(cls));
    std::vector<CheckRecord> out;
    M2Assembly m;
    out.push_back(timed([&] {
        m = m2_assembly(d, t0);
        return with_params(abs_record("m2.assembly@t=" + t_param(t0),
                                      "sum_{i<j} W(a_i,a_j) int_gamma phi_i dphi_j vanishes", 0.0, m.m2, tol.m2_abs),
                           {{"t", t_param(t0)},
                            {"a1", d.a1.to_string()},
                            {"a2", d.a2.to_string()},
                            {"a3", d.a3.to_string()},
                            {"I12", format_complex(m.i12)},
                            {"I13", format_complex(m.i13)},
                            {"I23", format_complex(m.i23)}});
    }));
    out.push_back(with_params(abs_record("m2.I13@t=" + t_param(t0), "int_gamma phi1 dphi3 vanishes", 0.0, m.i13,
                                         tol.cauchy_abs),
                              {{"t", t_param(t0)}}));
    out.push_back(with_params(abs_record("m2.closed@t=" + t_param(t0),
                                         "int_gamma log(t/(y^2-1)) dphi2 vanishes", 0.0, m.closed_combination,
                                         tol.cauchy_abs),
                              {{"t", t_param(t0)}}));
    return out;
}

// ---------------------------------------------------------------------------

Deformation flagship_deformation()
{
    const RatFunc t = RatFunc::t();
    return {t * t + 2 * t, t, t * t + t, "flagship"};
}

SignCalibration calibrate_signs(double t0)
{
    SignCalibration s;
    s.t0 = t0;
    const Deformation flag = flagship_deformation();
    const Cycle x = cycle_of_word(x_word(), t0);
    s.c1_period = integrate_form(x, OneForm::deformation(flag, t0));
    s.c1_measured = melnikov_fit(x, default_eps_grid(), flag).c[1];
    s.sigma1 = (s.c1_measured / s.c1_period).real() > 0 ? 1 : -1;

    const RatFunc t = RatFunc::t();
    const Deformation bracket{t, RatFunc(1), RatFunc(0), "calibration"};
    s.c2_symbolic = kTwoPiI * kTwoPiI * mv(2, bracket).evaluate(cplx(t0));
    s.c2_measured = melnikov_fit(v_k(2), t0, calibration_eps_grid(), bracket).c[2];
    // sigma1^2 = 1, so the ratio carries sigma_b alone.
    s.sigma_b = (s.c2_measured / s.c2_symbolic).real() > 0 ? 1 : -1;
    return s;
}

cplx predicted_leading(int k, const Deformation& d, double t0, const SignCalibration& s)
{
    const double sign = std::pow(s.sigma1, k) * std::pow(s.sigma_b, k - 1);
    return sign * std::pow(kTwoPiI, k) * mv(k, d).evaluate(cplx(t0));
}

std::vector<CheckRecord> flagship_fit_checks(const Deformation& flag, double t0, const std::vector<double>& grid,
                                             const Tolerances& tol)
{
    std::vector<CheckRecord> out;
    MelnikovFit fit;
    const double ms = [&] {
        const auto a = std::chrono::steady_clock::now();
        fit = melnikov_fit(real_oval(t0), grid, flag);
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - a).count();
    }();
    const double eps_max = *std::max_element(grid.begin(), grid.end());
    const double zero_scale = tol.fit_zero_rel * std::abs(fit.c[3]) * eps_max;
    const std::vector<std::pair<std::string, std::string>> params = {
        {"t0", t_param(t0)}, {"word", "g"}, {"deformation", flag.provenance}};
    for (int j = 1; j <= 2; ++j) {
        CheckRecord r = abs_record("fit.flagship.gamma.c" + std::to_string(j) + "@t=" + t_param(t0),
                                   "order-" + std::to_string(j) + " coefficient along the real oval vanishes", 0.0,
                                   fit.c[static_cast<std::size_t>(j)], zero_scale);
        r.params = params;
        r.params.emplace_back("zero_flag", fit.zero[static_cast<std::size_t>(j)] ? "true" : "false");
        if (!fit.zero[static_cast<std::size_t>(j)])
            r.pass = false;
        out.push_back(r);
    }
    CheckRecord c3;
    c3.id = "fit.flagship.gamma.c3@t=" + t_param(t0);
    c3.claim = "order-3 coefficient along the real oval is nonzero and stable across half-grids";
    c3.metric = Metric::RelError;
    c3.expected = "nonzero";
    c3.computed = format_complex(fit.c[3]);
    c3.error = fit.nonzero[3] ? fit.richardson_rel : INFINITY;
    c3.tolerance = tol.fit_stability_rel;
    c3.params = params;
    c3.params.emplace_back("richardson_rel", format_double(fit.richardson_rel, 3));
    out.push_back(c3.settle());
    CheckRecord real = abs_record("fit.flagship.gamma.c3_real@t=" + t_param(t0),
                                  "real system has a real order-3 coefficient", fit.c[3].real(), fit.c[3],
                                  tol.fit_zero_rel * std::abs(fit.c[3]));
    real.params = params;
    out.push_back(real);
    for (auto& r : out)
        r.runtime_ms = ms / static_cast<double>(out.size());
    return out;
}

std::vector<CheckRecord> v3_crosscheck(const Deformation& flag, double t0, const std::vector<double>& grid,
                                       const SignCalibration& s, const Tolerances& tol)
{
    std::vector<CheckRecord> out;
    MelnikovFit fit;
    out.push_back(timed([&] {
        fit = melnikov_fit(v_k(3), t0, grid, flag);
        const cplx pred = predicted_leading(3, flag, t0, s);
        return with_params(rel_record("fit.flagship.v3.c3@t=" + t_param(t0),
                                      "order-3 coefficient along v3 equals the restored symbolic mv(3) = t^2", pred,
                                      fit.c[3], tol.cross_rel),
                           {{"t0", t_param(t0)},
                            {"word", format_word(v_k(3))},
                            {"mv3", mv(3, flag).to_string()},
                            {"sigma1", std::to_string(s.sigma1)},
                            {"sigma_b", std::to_string(s.sigma_b)},
                            {"resolved_sign", std::to_string(s.sigma1 * s.sigma1 * s.sigma1 * s.sigma_b * s.sigma_b)},
                            {"richardson_rel", format_double(fit.richardson_rel, 3)}});
    }));
    const double scale = tol.fit_zero_rel * std::max({1.0, std::abs(fit.c[1]), std::abs(fit.c[2]), std::abs(fit.c[3])});
    for (int j = 1; j <= 2; ++j)
        out.push_back(with_params(abs_record("fit.flagship.v3.c" + std::to_string(j) + "@t=" + t_param(t0),
                                             "order-" + std::to_string(j) + " coefficient along v3 vanishes", 0.0,
                                             fit.c[static_cast<std::size_t>(j)], scale),
                                  {{"t0", t_param(t0)}}));
    return out;
}

CenterCrosscheck m3_center_crosscheck(const RatFunc& A, const mpq_class& c1, const mpq_class& lambda1,
                                      const mpq_class& lambda, double t0, const std::vector<double>& grid, int sigma1)
{
    const cplx dA = A.derivative().evaluate(cplx(t0));
    if (std::abs(dA) == 0)
        throw DomainError("m3_center_crosscheck: A' vanishes at t0");
    CenterCrosscheck r;
    r.t0 = t0;
    r.sigma1 = sigma1;
    r.fit = melnikov_fit(real_oval(t0), grid, center_family(A, c1, lambda1, lambda));
    r.i23 = iterated_integral(real_oval(t0), {OneForm::dphi(2), OneForm::dphi(3)});
    const double denom = t0 * std::norm(dA);
    r.prefactor_stated = -mpq_class(lambda * lambda).get_d() / denom;
    r.prefactor_corrected = -mpq_class(lambda * lambda1).get_d() / denom;
    const double s3 = sigma1 * sigma1 * sigma1;
    r.predicted_stated = s3 * r.prefactor_stated * r.i23;
    r.predicted_corrected = s3 * r.prefactor_corrected * r.i23;
    auto rel = [&](cplx pred) {
        return std::abs(pred) > 0 ? std::abs(r.fit.c[3] - pred) / std::abs(pred) : std::abs(r.fit.c[3]);
    };
    r.rel_error_stated = rel(r.predicted_stated);
    r.rel_error_corrected = rel(r.predicted_corrected);
    return r;
}

std::vector<CheckRecord> hamiltonian_center_checks(double t0, const std::vector<double>& eps_values,
                                                   const Tolerances& tol)
{
    const Deformation d = center_family(RatFunc::t(), 1, 1, 0);
    const Cycle g = real_oval(t0);
    std::vector<CheckRecord> out;
    for (double eps : eps_values)
        out.push_back(timed([&] {
            return with_params(abs_record("center.hamiltonian.eps=" + format_double(eps, 4),
                                          "holonomy of the Hamiltonian member returns to t0", t0,
                                          holonomy(g, eps, d), tol.center_abs),
                               {{"t0", t_param(t0)}, {"eps", format_double(eps, 6)}, {"A", "t"}, {"c1", "1"},
                                {"lambda1", "1"}, {"lambda", "0"}});
        }));
    return out;
}

Cycle rebase_along_oval(const Cycle& c, double h)
{
    const double t = c.t.real();
    const double sd = std::sqrt(1 - std::sqrt(t));
    if (!(h > 0 && h < sd))
        throw DomainError("rebase_along_oval: offset must lie in (0, sqrt(1 - sqrt t))");
    const double x1 = -std::sqrt(1 - t / (1 - h * h));
    Cycle arc{{PathSegment(Over::Y, BasePath::line(-h, 0), t, x1)}, t, "arc"};
    Cycle out = arc.then(c).then(arc.reversed());
    out.label = "rebased(" + c.label + ")";
    return out;
}

std::vector<CheckRecord> base_point_checks(double t0, const std::vector<double>& grid, const Tolerances& tol)
{
    const Deformation flag = flagship_deformation();
    const Cycle v3 = cycle_of_word(v_k(3), t0);
    const cplx ref = fit_c3(melnikov_fit(v3, grid, flag));
    std::vector<CheckRecord> out;
    for (double h : {0.25, 0.5})
        out.push_back(timed([&] {
            return with_params(rel_record("basepoint.v3.h=" + format_double(h, 3),
                                          "leading coefficient along v3 is unchanged by moving the base point", ref,
                                          fit_c3(melnikov_fit(rebase_along_oval(v3, h), grid, flag)), tol.cross_rel),
                               {{"t0", t_param(t0)}, {"h", format_double(h, 3)}});
        }));
    return out;
}

std::vector<CheckRecord> reversal_checks(double t0, const std::vector<double>& grid, const Tolerances& tol)
{
    const Deformation flag = flagship_deformation();
    std::vector<CheckRecord> out;
    out.push_back(timed([&] {
        const Cycle v3 = cycle_of_word(v_k(3), t0);
        const cplx fwd = fit_c3(melnikov_fit(v3, grid, flag));
        const cplx back = fit_c3(melnikov_fit(v3.reversed(), grid, flag));
        return with_params(rel_record("reversal.v3", "leading coefficient along v3^-1 is minus that along v3", -fwd,
                                      back, tol.cross_rel),
                           {{"t0", t_param(t0)}});
    }));
    return out;
}

} // namespace orbitdepth
