#include "orbitdepth/error.hpp"
#include "orbitdepth/holonomy.hpp"
#include "orbitdepth/integrate.hpp"
#include "orbitdepth/numeric_checks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace orbitdepth;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle for int_gamma dphi2 dphi3 on the real oval: polar parametrization
// r(theta) by bisection, periodic trapezoid rule from the base point theta = pi.
double oval_dphi2_dphi3(double t)
{
    auto F = [](double x, double y) { return (x * x - 1) * (y * y - 1); };
    auto radius = [&](double th) {
        double lo = 0, hi = 1.0 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (lo + hi);
            (F(mid * std::cos(th), mid * std::sin(th)) > t ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const int n = 4000;
    const double y0 = 0;
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        const double th = kPi + 2 * kPi * k / n;
        const double r = radius(th), c = std::cos(th), s = std::sin(th);
        const double x = r * c, y = r * s;
        const double Fx = 2 * x * (y * y - 1), Fy = 2 * y * (x * x - 1);
        const double dr = -(Fx * (-r * s) + Fy * (r * c)) / (Fx * c + Fy * s);
        const double dx = dr * c - r * s;
        acc += std::log((1 - y) / (1 - y0)) * dx / (x - 1);
    }
    return acc * 2 * kPi / n;
}

Deformation def(const char* a1, const char* a2, const char* a3)
{
    return {parse_ratfunc(a1), parse_ratfunc(a2), parse_ratfunc(a3), "test"};
}

} // namespace

TEST(Forms, ParseTags)
{
    EXPECT_EQ(parse_form("eta3").terms.at(0).eta, 3);
    EXPECT_EQ(parse_form("dphi2").tag, "dphi2");
    const OneForm f = parse_form("phi1*dphi3");
    EXPECT_EQ(f.terms.at(0).log, LogFactor::Phi1);
    EXPECT_EQ(f.terms.at(0).eta, 3);
    EXPECT_EQ(parse_form_list("dphi2, dphi3").size(), 2u);
    EXPECT_THROW(parse_form("eta5"), ParseError);
    EXPECT_THROW(parse_form("phi1dphi2"), ParseError);
    try {
        parse_form_list("eta1,bogus");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 5u);
    }
}

TEST(Forms, DeformationTermsEvaluateCoefficients)
{
    const OneForm w = OneForm::deformation(flagship_deformation(), 0.5);
    ASSERT_EQ(w.terms.size(), 3u);
    EXPECT_NEAR(std::abs(w.terms[0].coeff - 1.25), 0, 1e-15);
    EXPECT_NEAR(std::abs(w.terms[1].coeff - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(w.terms[2].coeff - 0.75), 0, 1e-15);
}

TEST(IteratedIntegrals, RealOvalAgreesWithPolarOracle)
{
    for (double t : {0.25, 0.36}) {
        const cplx v = iterated_integral(real_oval(t), {OneForm::dphi(2), OneForm::dphi(3)});
        EXPECT_NEAR(v.real(), oval_dphi2_dphi3(t), 1e-9) << "t=" << t;
        EXPECT_NEAR(v.imag(), 0, 1e-12);
    }
    const cplx at036 = iterated_integral(real_oval(0.36), {OneForm::dphi(2), OneForm::dphi(3)});
    EXPECT_NEAR(at036.real(), -3.635777539507, 1e-9);
}

TEST(IteratedIntegrals, FourPiSquaredOverV2)
{
    EXPECT_TRUE(four_pi_squared_check(0.36).pass);
    EXPECT_TRUE(four_pi_squared_check(0.25).pass);
}

TEST(IteratedIntegrals, CauchySuiteVanishes)
{
    for (double t : {0.25, 0.36})
        for (const auto& r : cauchy_suite(t))
            EXPECT_TRUE(r.pass) << r.id << " computed " << r.computed;
}

TEST(IteratedIntegrals, OvalPeriodsVanish)
{
    for (const auto& r : oval_period_checks(0.36))
        EXPECT_TRUE(r.pass) << r.id;
}

TEST(IteratedIntegrals, ShuffleOnRandomLoops)
{
    for (const auto& r : shuffle_checks(0.36, 77, 20))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
}

TEST(IteratedIntegrals, DeterminantOnRandomCommutators)
{
    for (const auto& r : determinant_checks(0.36, 78, 20))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
}

TEST(IteratedIntegrals, RejectsEmptyAndOverlongFormLists)
{
    const Cycle g = real_oval(0.36);
    EXPECT_THROW(iterated_integral(g, std::vector<OneForm>(5, OneForm::eta(1))), DomainError);
    EXPECT_THROW(iterated_integral(g, {}), DomainError);
}

TEST(IteratedIntegrals, LengthFourOnTheOvalIsReal)
{
    const auto forms = parse_form_list("dphi2,dphi3,dphi2,dphi3");
    EXPECT_NEAR(iterated_integral(real_oval(0.36), forms).imag(), 0, 1e-12);
}

TEST(Holonomy, UnperturbedLeafIsClosed)
{
    const Deformation flag = flagship_deformation();
    EXPECT_NEAR(std::abs(holonomy(real_oval(0.36), 0.0, flag) - 0.36), 0, 1e-12);
    EXPECT_NEAR(std::abs(holonomy(v_k(2), 0.36, 0.0, flag) - 0.36), 0, 1e-12);
    EXPECT_NEAR(std::abs(holonomy(Word::gen(Gen::D1), 0.3, 0.0, flag) - 0.3), 0, 1e-12);
}

TEST(Holonomy, RealSystemHasRealReturnMap)
{
    const Deformation flag = flagship_deformation();
    for (double eps : {0.01, 0.03})
        EXPECT_NEAR(holonomy(real_oval(0.36), eps, flag).imag(), 0, 1e-13);
}

TEST(Holonomy, FirstOrderMatchesMinusThePeriod)
{
    // Finite difference at small eps against the abelian integral.
    const Deformation flag = flagship_deformation();
    const Cycle x = cycle_of_word(x_word(), 0.36);
    const cplx period = integrate_form(x, OneForm::deformation(flag, 0.36));
    const double h = 1e-5;
    const cplx slope = (holonomy(x, h, flag) - holonomy(x, -h, flag)) / (2 * h);
    EXPECT_NEAR(std::abs(slope + period), 0, 1e-6);
}

TEST(MelnikovFit, FlagshipRealOvalIsThirdOrder)
{
    const MelnikovFit fit = melnikov_fit(real_oval(0.36), default_eps_grid(), flagship_deformation());
    EXPECT_TRUE(fit.zero[1]);
    EXPECT_TRUE(fit.zero[2]);
    EXPECT_TRUE(fit.nonzero[3]);
    EXPECT_LT(fit.richardson_rel, 5e-3);
    EXPECT_FALSE(fit.ill_conditioned);
    for (const auto& r : flagship_fit_checks(flagship_deformation(), 0.36, default_eps_grid()))
        EXPECT_TRUE(r.pass) << r.id;
}

TEST(MelnikovFit, HamiltonianCenterHasNoDisplacement)
{
    const MelnikovFit fit =
        melnikov_fit(real_oval(0.36), default_eps_grid(), center_family(RatFunc::t(), 1, 1, 0));
    EXPECT_TRUE(fit.zero[1]);
    EXPECT_TRUE(fit.zero[2]);
    EXPECT_TRUE(fit.zero[3]);
    for (const auto& r : hamiltonian_center_checks(0.36, {0.01, 0.02, 0.05}))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
}

TEST(MelnikovFit, FlagshipV2HasNoSecondOrderTerm)
{
    const MelnikovFit fit = melnikov_fit(v_k(2), 0.36, default_eps_grid(), flagship_deformation());
    EXPECT_TRUE(fit.zero[1]);
    EXPECT_TRUE(fit.zero[2]);
}

TEST(MelnikovFit, NeedsFiveRadii)
{
    EXPECT_THROW(melnikov_fit(real_oval(0.36), {1e-3, 2e-3, 4e-3, 8e-3}, flagship_deformation()), DomainError);
    const MelnikovFit narrow =
        melnikov_fit(real_oval(0.36), {1e-3, 1.1e-3, 1.2e-3, 1.3e-3, 1.4e-3}, flagship_deformation());
    EXPECT_TRUE(narrow.ill_conditioned);
}

TEST(SignCalibration, MeasuredSignsReproduceMagnitudes)
{
    const SignCalibration s = calibrate_signs(0.36);
    EXPECT_EQ(std::abs(s.sigma1), 1);
    EXPECT_EQ(std::abs(s.sigma_b), 1);
    EXPECT_NEAR(std::abs(s.c1_measured - double(s.sigma1) * s.c1_period), 0, 1e-8 * std::abs(s.c1_period));
    EXPECT_NEAR(std::abs(s.c2_measured - double(s.sigma_b) * s.c2_symbolic), 0, 1e-6 * std::abs(s.c2_symbolic));
    // First order along x = d1 d2 is -2 pi i a2(t0) with these conventions.
    EXPECT_NEAR(std::abs(s.c1_measured - cplx(0, -2 * kPi * 0.36)), 0, 1e-8);
}

TEST(SignCalibration, V3LeadingTermMatchesSymbolicValue)
{
    const SignCalibration s = calibrate_signs(0.36);
    for (const auto& r : v3_crosscheck(flagship_deformation(), 0.36, default_eps_grid(), s))
        EXPECT_TRUE(r.pass) << r.id << " computed " << r.computed << " expected " << r.expected;
    // 8 pi^3 t0^2, sign fixed by the calibration above.
    EXPECT_NEAR(std::abs(predicted_leading(3, flagship_deformation(), 0.36, s)), 8 * std::pow(kPi, 3) * 0.1296,
                1e-9);
}

TEST(CenterCrosscheck, UnitParametersAgreeWithBothForms)
{
    const auto r = m3_center_crosscheck(RatFunc::t(), 0, 1, 1, 0.36, default_eps_grid(), -1);
    EXPECT_LT(r.rel_error_stated, 5e-3);
    EXPECT_LT(r.rel_error_corrected, 5e-3);
}

TEST(CenterCrosscheck, LambdaZeroGivesZero)
{
    const auto r = m3_center_crosscheck(RatFunc::t(), 1, 1, 0, 0.36, default_eps_grid(), -1);
    EXPECT_EQ(r.predicted_stated, cplx(0));
    EXPECT_LT(std::abs(r.fit.c[3]), 1e-8);
}

TEST(CenterCrosscheck, ThirdOrderScalesWithLambdaTimesLambda1)
{
    const auto base = m3_center_crosscheck(RatFunc::t(), 1, 1, 1, 0.36, default_eps_grid(), -1);
    const auto lam2 = m3_center_crosscheck(RatFunc::t(), 1, 1, 2, 0.36, default_eps_grid(), -1);
    const auto both2 = m3_center_crosscheck(RatFunc::t(), 1, 2, 2, 0.36, default_eps_grid(), -1);
    EXPECT_NEAR(std::abs(lam2.fit.c[3] / base.fit.c[3]), 2.0, 1e-6);
    EXPECT_NEAR(std::abs(both2.fit.c[3] / base.fit.c[3]), 4.0, 1e-3);
    EXPECT_LT(lam2.rel_error_corrected, 5e-3);
    EXPECT_NEAR(lam2.rel_error_stated, 0.5, 1e-6);
}

TEST(CenterCrosscheck, QuadraticAUsesDerivativeSquared)
{
    const RatFunc A = parse_ratfunc("t^2/2");
    const auto r = m3_center_crosscheck(A, 1, 2, 1, 0.36, calibration_eps_grid(), -1);
    EXPECT_LT(r.rel_error_corrected, 5e-3);
    EXPECT_THROW(m3_center_crosscheck(A, 1, 2, 1, 0.0, default_eps_grid(), -1), DomainError);
}

TEST(M2Assembly, FlagshipVanishes)
{
    for (const auto& r : m2_assembly_check(flagship_deformation(), 0.36))
        EXPECT_TRUE(r.pass) << r.id << " computed " << r.computed;
    const M2Assembly m = m2_assembly(flagship_deformation(), 0.36);
    // Integration by parts on the oval.
    EXPECT_NEAR(std::abs(m.i23 + m.i32), 0, 1e-10);
}

TEST(M2Assembly, SymmetricCaseIsTriviallyZero)
{
    const M2Assembly m = m2_assembly(def("1", "0", "1"), 0.36);
    EXPECT_EQ(m.w12, 0);
    EXPECT_EQ(m.w13, 0);
    EXPECT_EQ(m.w23, 0);
    EXPECT_EQ(m.m2, cplx(0));
}

TEST(M2Assembly, RejectsSecondOrderDeformations)
{
    EXPECT_THROW(m2_assembly_check(def("t^2+2t", "t^2", "t^2+t"), 0.36), DomainError);
}

TEST(BasePoint, LeadingTermIsConjugationInvariant)
{
    for (const auto& r : base_point_checks(0.36, default_eps_grid()))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
    EXPECT_THROW(rebase_along_oval(real_oval(0.36), 0.9), DomainError);
}

TEST(Reversal, InverseWordNegatesLeadingTerm)
{
    for (const auto& r : reversal_checks(0.36, default_eps_grid()))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
}
