#include "orbitdepth/curve.hpp"
#include "orbitdepth/error.hpp"
#include "orbitdepth/integrate.hpp"
#include "orbitdepth/numeric_checks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace orbitdepth;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: integral of x dy over the cycle by composite Simpson on each segment.
double x_dy(const Cycle& c)
{
    double acc = 0;
    const int n = 400;
    for (const auto& seg : c.segments) {
        double part = 0;
        for (int k = 0; k <= n; ++k) {
            const double s = double(k) / n;
            const Jet j = seg.jet(s);
            const double w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
            part += w * (j.x * j.dy).real();
        }
        acc += part / (3.0 * n);
    }
    return acc;
}

CurvePoint at(const Cycle& c, std::size_t seg, double s) { return c.segments.at(seg).point(s); }

} // namespace

TEST(RealOval, PassesThroughAxisPoints)
{
    const Cycle g = real_oval(0.36);
    const CurvePoint p0 = g.base_point();
    EXPECT_NEAR(p0.x.real(), -0.8, 1e-15);
    EXPECT_NEAR(std::abs(p0.y), 0.0, 1e-15);
    const CurvePoint bottom = at(g, 1, 0.5), right = at(g, 2, 0.5), top = at(g, 3, 0.5);
    EXPECT_NEAR(std::abs(bottom.x - 0.0) + std::abs(bottom.y + 0.8), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(right.x - 0.8) + std::abs(right.y), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(top.x) + std::abs(top.y - 0.8), 0.0, 1e-14);
}

TEST(RealOval, CounterclockwiseAndClosed)
{
    for (double t : {0.05, 0.25, 0.36, 0.7, 0.95}) {
        const Cycle g = real_oval(t);
        EXPECT_GT(x_dy(g), 0) << "t=" << t;
        EXPECT_LE(g.closure_residual(), 1e-12);
        EXPECT_LE(g.max_joint_gap(), 1e-12);
    }
}

TEST(RealOval, ShrinksTowardTheOrigin)
{
    double prev = INFINITY;
    for (double t : {0.9, 0.99, 0.999, 0.9999}) {
        const double width = 2 * std::abs(real_oval(t).base_point().x);
        EXPECT_LT(width, prev);
        EXPECT_NEAR(width, 2 * std::sqrt(1 - t), 1e-12);
        prev = width;
    }
}

TEST(RealOval, RejectsLevelsOutsideTheUnitInterval)
{
    EXPECT_THROW(real_oval(0.0), DomainError);
    EXPECT_THROW(real_oval(1.0), DomainError);
    EXPECT_THROW(real_oval(-0.3), DomainError);
}

TEST(CurvePoints, ResidualStaysAtRoundoffOnEveryConstruction)
{
    std::vector<Cycle> cycles{real_oval(0.36), real_oval(0.25), cycle_of_word(v_k(3), 0.36)};
    for (int i = 0; i < 4; ++i) {
        cycles.push_back(vanishing_loop(i, 0.36, true));
        cycles.push_back(vanishing_loop(i, cplx(0.2, 0.15), false));
        cycles.push_back(vanishing_loop(i, cplx(-0.3, -0.2), false));
    }
    for (const Word& w : random_loop_words(41, 10, 5))
        cycles.push_back(cycle_of_word(w, 0.3));
    for (const Cycle& c : cycles)
        EXPECT_LE(max_cycle_residual(c), 1e-13 * std::max(1.0, std::abs(c.t))) << c.label;
}

TEST(PathSegments, ConsecutiveKnotsStayOnOneBranch)
{
    std::vector<Cycle> cycles{real_oval(0.36), cycle_of_word(v_k(2), 0.36)};
    for (int i = 0; i < 4; ++i)
        cycles.push_back(vanishing_loop(i, cplx(0.1, 0.3), false));
    for (const Cycle& c : cycles)
        for (const auto& seg : c.segments) {
            const auto& knots = seg.knots();
            for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
                const cplx a = seg.dependent(knots[k]), b = seg.dependent(knots[k + 1]);
                EXPECT_GE(std::abs(-b - a), 4 * std::abs(b - a)) << c.label << " knot " << k;
            }
        }
}

TEST(PathSegments, RejectsOffCurveSeedsAndPoles)
{
    EXPECT_THROW(PathSegment(Over::X, BasePath::line(0, 0.5), 0.36, cplx(0.3)), BranchTrackingError);
    EXPECT_THROW(dependent_root(1.0, 0.36, 0.0), BranchTrackingError);
}

TEST(Cycles, ConcatenationChecksEndpoints)
{
    EXPECT_THROW(real_oval(0.36).then(vanishing_loop(1, 0.36, false)), BranchTrackingError);
    const Cycle g = real_oval(0.36);
    EXPECT_EQ(g.then(g).segments.size(), 2 * g.segments.size());
}

TEST(VanishingLoops, RejectUnsupportedLevelsAndIndices)
{
    EXPECT_THROW(vanishing_loop(4, 0.3, false), DomainError);
    EXPECT_THROW(vanishing_loop(1, 0.6, true), DomainError);
    EXPECT_THROW(vanishing_loop(1, cplx(0.3, 0.1), true), DomainError);
    EXPECT_THROW(cycle_of_word(x_word(), -0.2), DomainError);
}

TEST(VanishingLoops, BasedLoopsAreClosedAtTheOvalBasePoint)
{
    const CurvePoint p0 = real_oval(0.36).base_point();
    for (int i = 0; i < 4; ++i) {
        const Cycle c = vanishing_loop(i, 0.36, true);
        EXPECT_LE(std::abs(c.base_point().x - p0.x) + std::abs(c.base_point().y - p0.y), 1e-14);
        EXPECT_LE(c.closure_residual(), 1e-12);
        EXPECT_LE(c.max_joint_gap(), 1e-12);
    }
}

TEST(VanishingLoops, LoopRadiusIsHalfTheSquareRootOfTheLevel)
{
    const cplx t(0.2, 0.15);
    const Cycle c = vanishing_loop(2, t, false);
    for (double s : {0.0, 0.3, 0.7})
        EXPECT_NEAR(std::abs(c.segments[0].point(s).x - 1.0), std::sqrt(std::abs(t)) / 2, 1e-15);
}

TEST(Periods, CalibrationEntryAndTwoGenuineEntries)
{
    const cplx two_pi_i(0, 2 * kPi);
    EXPECT_NEAR(std::abs(integrate_form(vanishing_loop(1, 0.36, true), OneForm::eta(3)) - two_pi_i), 0, 1e-9);
    EXPECT_NEAR(std::abs(integrate_form(vanishing_loop(2, 0.36, true), OneForm::eta(1))), 0, 1e-9);
    EXPECT_NEAR(std::abs(integrate_form(vanishing_loop(3, 0.36, true), OneForm::eta(2)) + two_pi_i), 0, 1e-9);
}

TEST(Periods, FullTableAtTwoLevels)
{
    for (double t : {0.25, 0.36})
        for (const auto& r : pairing_table_checks(t))
            EXPECT_TRUE(r.pass) << r.id << " computed " << r.computed << " error " << r.error;
}

TEST(Periods, UnbasedLoopsAtComplexLevelsKeepTheirResidues)
{
    const cplx two_pi_i(0, 2 * kPi);
    for (const cplx t : {cplx(0.2, 0.15), cplx(-0.3, 0.1), cplx(0.05, -0.4)})
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                EXPECT_NEAR(std::abs(integrate_form(vanishing_loop(i, t, false), OneForm::eta(j)) -
                                     double(expected_pairing(i, j)) * two_pi_i),
                            0, 1e-9)
                    << "t=" << t << " d" << i << " eta" << j;
}

TEST(Periods, DeltaPeriodsAreRowSums)
{
    const Cycle delta = cycle_of_word(delta_word(), 0.36);
    for (int j = 1; j <= 4; ++j) {
        cplx sum = 0;
        for (int i = 0; i < 4; ++i)
            sum += integrate_form(vanishing_loop(i, 0.36, true), OneForm::eta(j));
        EXPECT_NEAR(std::abs(integrate_form(delta, OneForm::eta(j)) - sum), 0, 1e-10) << "eta" << j;
    }
}

TEST(Periods, LoopFollowedByItsReverseIntegratesToZero)
{
    const Cycle d2 = vanishing_loop(2, 0.36, true);
    const Cycle back_and_forth = d2.then(d2.reversed());
    for (int j = 1; j <= 4; ++j)
        EXPECT_NEAR(std::abs(integrate_form(back_and_forth, OneForm::eta(j))), 0, 1e-12);
    EXPECT_NEAR(std::abs(iterated_integral(back_and_forth, {OneForm::eta(2), OneForm::eta(3)})), 0, 1e-10);
    EXPECT_TRUE(cycle_of_word(parse_word("d2 d2^-1"), 0.36).empty());
}

TEST(Periods, AdditivityOnRandomWordPairs)
{
    for (const auto& r : additivity_checks(0.36, 20260101, 20))
        EXPECT_TRUE(r.pass) << r.id << " error " << r.error;
}
