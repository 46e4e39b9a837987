#include "orbitdepth/holonomy.hpp"

#include "orbitdepth/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orbitdepth {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

class FastRat {
public:
    explicit FastRat(const RatFunc& r)
    {
        for (const auto& c : r.num().coeffs())
            num_.push_back(c.get_d());
        for (const auto& c : r.den().coeffs())
            den_.push_back(c.get_d());
        zero_ = r.is_zero();
    }
    cplx operator()(cplx t) const
    {
        if (zero_)
            return 0.0;
        return horner(num_, t) / horner(den_, t);
    }

private:
    static cplx horner(const std::vector<double>& c, cplx t)
    {
        cplx r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            r = r * t + *it;
        return r;
    }
    std::vector<double> num_, den_;
    bool zero_ = false;
};

struct PerturbedField {
    FastRat a1, a2, a3;
    cplx eps;

    // dF + eps (P dx + Q dy) = 0; returns (F_x + eps P, F_y + eps Q).
    std::pair<cplx, cplx> gradient(cplx x, cplx y) const
    {
        const cplx F = curve_F(x, y);
        const cplx P = a1(F) / (x + 1.0) + a3(F) / (x - 1.0);
        const cplx Q = a2(F) / (y - 1.0);
        return {2.0 * x * (y * y - 1.0) + eps * P, 2.0 * y * (x * x - 1.0) + eps * Q};
    }
};

} // namespace

cplx holonomy(const Cycle& c, cplx eps, const Deformation& d, const HolonomyOptions& opt)
{
    if (c.empty())
        return c.t;
    const PerturbedField field{FastRat(d.a1), FastRat(d.a2), FastRat(d.a3), eps};
    const CurvePoint start = c.segments.front().start();
    cplx x = start.x, y = start.y;
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    for (std::size_t k = 0; k < c.segments.size(); ++k) {
        const PathSegment& seg = c.segments[k];
        const bool over_x = seg.over() == Over::X;
        const cplx shift = (over_x ? x : y) - seg.base().at(0);
        auto rhs = [&](const State& st, State& dst, double s) {
            const cplx u = seg.base().at(s) + (1 - s) * shift;
            const cplx du = seg.base().derivative(s) - shift;
            const cplx v(st[0], st[1]);
            const auto [gx, gy] = over_x ? field.gradient(u, v) : field.gradient(v, u);
            const cplx denom = over_x ? gy : gx;
            const cplx numer = over_x ? gx : gy;
            if (std::abs(denom) < 1e-12 * (1 + std::abs(numer)))
                throw OdeError("leaf is tangent to the projection on segment " + std::to_string(k) +
                               " at s=" + std::to_string(s));
            const cplx dv = -numer / denom * du;
            dst[0] = dv.real();
            dst[1] = dv.imag();
        };
        const cplx v0 = over_x ? y : x;
        State st{v0.real(), v0.imag()};
        try {
            odeint::integrate_adaptive(stepper, rhs, st, 0.0, 1.0, 1.0 / 64);
        } catch (const OdeError&) {
            throw;
        } catch (const std::exception& e) {
            throw OdeError("step control failed on segment " + std::to_string(k) + ": " + e.what());
        }
        const cplx u1 = seg.base().at(1.0), v1(st[0], st[1]);
        if (over_x) {
            x = u1;
            y = v1;
        } else {
            y = u1;
            x = v1;
        }
    }
    return curve_F(x, y);
}

cplx holonomy(const Word& w, double t0, cplx eps, const Deformation& d, const HolonomyOptions& opt)
{
    return holonomy(cycle_of_word(w, t0), eps, d, opt);
}

MelnikovFit melnikov_fit(const Cycle& c, const std::vector<double>& eps_grid, const Deformation& d, int ring_points)
{
    if (eps_grid.size() < 5)
        throw DomainError("melnikov_fit needs at least 5 grid radii");
    if (ring_points < 8)
        throw DomainError("melnikov_fit needs at least 8 ring points");
    MelnikovFit fit;
    fit.word = c.label;
    fit.t0 = c.t.real();
    fit.eps_grid = eps_grid;
    fit.ring_points = ring_points;
    const auto [lo, hi] = std::minmax_element(eps_grid.begin(), eps_grid.end());
    fit.ill_conditioned = *lo <= 0 || *hi / *lo < 4;
    for (double r : eps_grid) {
        RadiusEstimate est;
        est.radius = r;
        for (int k = 0; k < ring_points; ++k) {
            const double phase = 2 * std::numbers::pi * k / ring_points;
            const cplx eps = std::polar(r, phase);
            const cplx h = holonomy(c, eps, d);
            est.samples.emplace_back(eps, h);
            const cplx disp = h - c.t;
            for (int j = 0; j < 4; ++j)
                est.c[static_cast<std::size_t>(j)] += disp * std::polar(std::pow(r, -j), -j * phase);
        }
        for (auto& v : est.c)
            v /= ring_points;
        fit.per_radius.push_back(est);
    }
    std::vector<RadiusEstimate> sorted = fit.per_radius;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.radius < b.radius; });
    const std::size_t half = sorted.size() / 2;
    std::array<cplx, 4> lower{}, upper{};
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i < half)
                lower[j] += sorted[i].c[j] / static_cast<double>(half);
            else
                upper[j] += sorted[i].c[j] / static_cast<double>(sorted.size() - half);
        }
    fit.c = upper;
    double scale = 1;
    for (std::size_t j = 1; j < 4; ++j) {
        fit.uncertainty[j] = std::abs(upper[j] - lower[j]);
        scale = std::max(scale, std::abs(upper[j]));
    }
    fit.uncertainty[0] = std::abs(upper[0] - lower[0]);
    fit.richardson_rel = std::abs(upper[3]) > 0 ? fit.uncertainty[3] / std::abs(upper[3]) : INFINITY;
    for (std::size_t j = 0; j < 4; ++j) {
        fit.zero[j] = std::abs(fit.c[j]) < 1e-7 * scale;
        fit.nonzero[j] = !fit.zero[j] && fit.uncertainty[j] <= 5e-3 * std::abs(fit.c[j]);
    }
    return fit;
}

MelnikovFit melnikov_fit(const Word& w, double t0, const std::vector<double>& eps_grid, const Deformation& d,
                         int ring_points)
{
    return melnikov_fit(cycle_of_word(w, t0), eps_grid, d, ring_points);
}

} // namespace orbitdepth
