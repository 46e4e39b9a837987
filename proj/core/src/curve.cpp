#include "orbitdepth/curve.hpp"

#include "orbitdepth/error.hpp"
#include "orbitdepth/integrate.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace orbitdepth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeparationFactor = 4.0;
constexpr double kMaxKnotStep = 1.0 / 32;
constexpr double kMinKnotStep = 1e-12;
constexpr double kJointTol = 1e-12;

std::string fmt(cplx z)
{
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
}

} // namespace

CurvePoint make_curve_point(cplx x, cplx y, cplx t) { return {x, y, t, std::abs(curve_F(x, y) - t)}; }

BasePath BasePath::line(cplx a, cplx b)
{
    BasePath p;
    p.a_ = a;
    p.b_ = b;
    return p;
}

BasePath BasePath::arc(cplx center, double radius, double theta0, double theta1)
{
    BasePath p;
    p.is_arc_ = true;
    p.a_ = center;
    p.radius_ = radius;
    p.theta0_ = theta0;
    p.theta1_ = theta1;
    return p;
}

cplx BasePath::at(double s) const
{
    if (!is_arc_)
        return s == 1.0 ? b_ : a_ + s * (b_ - a_);
    return a_ + std::polar(radius_, theta0_ + s * (theta1_ - theta0_));
}

cplx BasePath::derivative(double s) const
{
    if (!is_arc_)
        return b_ - a_;
    const double th = theta0_ + s * (theta1_ - theta0_);
    return cplx(0, 1) * std::polar(radius_, th) * (theta1_ - theta0_);
}

BasePath BasePath::reversed() const
{
    BasePath p = *this;
    if (is_arc_)
        std::swap(p.theta0_, p.theta1_);
    else
        std::swap(p.a_, p.b_);
    return p;
}

cplx dependent_root(cplx u, cplx t, cplx near, double* separation)
{
    const cplx du = u * u - 1.0;
    if (std::abs(du) < 1e-14)
        throw BranchTrackingError("independent coordinate " + fmt(u) + " sits on a pole of the curve");
    cplx v = std::sqrt(1.0 + t / du);
    if (std::abs(-v - near) < std::abs(v - near))
        v = -v;
    if (std::abs(v) > 1e-300)
        v -= (du * (v * v - 1.0) - t) / (2.0 * du * v);
    if (separation) {
        const double d_chosen = std::abs(v - near), d_other = std::abs(-v - near);
        *separation = d_chosen == 0 ? INFINITY : d_other / d_chosen;
    }
    return v;
}

PathSegment::PathSegment(Over over, BasePath base, cplx t, cplx seed)
    : over_(over), base_(base), t_(t)
{
    const cplx v0 = dependent_root(base_.at(0), t_, seed);
    if (std::abs(v0 - seed) > 1e-8 * (1 + std::abs(v0)))
        throw BranchTrackingError("seed " + fmt(seed) + " is not on the curve over " + fmt(base_.at(0)));
    knots_.push_back(0);
    values_.push_back(v0);
    double s = 0, h = kMaxKnotStep;
    while (s < 1) {
        const double s1 = std::min(1.0, s + h);
        double sep_mid = 0, sep_end = 0;
        const cplx ref = values_.back();
        dependent_root(base_.at(0.5 * (s + s1)), t_, ref, &sep_mid);
        const cplx v1 = dependent_root(base_.at(s1), t_, ref, &sep_end);
        if (sep_mid < kSeparationFactor || sep_end < kSeparationFactor) {
            h *= 0.5;
            if (h < kMinKnotStep)
                throw BranchTrackingError("branch continuation stalled at s=" + std::to_string(s) + " over " +
                                          fmt(base_.at(s)) + " (t=" + fmt(t_) + ")");
            continue;
        }
        knots_.push_back(s1);
        values_.push_back(v1);
        s = s1;
        h = std::min(kMaxKnotStep, 2 * h);
    }
}

cplx PathSegment::dependent(double s) const
{
    auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
    const std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin() - 1);
    if (knots_[k] == s)
        return values_[k];
    return dependent_root(base_.at(s), t_, values_[k]);
}

Jet PathSegment::jet(double s) const
{
    const cplx u = base_.at(s), du = base_.derivative(s), v = dependent(s);
    Jet j;
    if (over_ == Over::X) {
        j.x = u;
        j.y = v;
        j.dx = du;
        j.dy = -u * (v * v - 1.0) / (v * (u * u - 1.0)) * du;
    } else {
        j.y = u;
        j.x = v;
        j.dy = du;
        j.dx = -u * (v * v - 1.0) / (v * (u * u - 1.0)) * du;
    }
    return j;
}

CurvePoint PathSegment::point(double s) const
{
    const cplx u = base_.at(s), v = dependent(s);
    return over_ == Over::X ? make_curve_point(u, v, t_) : make_curve_point(v, u, t_);
}

PathSegment PathSegment::reversed() const { return PathSegment(over_, base_.reversed(), t_, values_.back()); }

// ---------------------------------------------------------------------------

CurvePoint Cycle::base_point() const
{
    if (segments.empty())
        throw DomainError("empty cycle has no base point");
    return segments.front().start();
}

double Cycle::closure_residual() const
{
    if (segments.empty())
        return 0;
    const CurvePoint a = segments.front().start(), b = segments.back().end();
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double Cycle::max_joint_gap() const
{
    double gap = 0;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const CurvePoint a = segments[i].end(), b = segments[i + 1].start();
        gap = std::max(gap, std::abs(a.x - b.x) + std::abs(a.y - b.y));
    }
    return gap;
}

Cycle Cycle::reversed() const
{
    Cycle c{{}, t, label.empty() ? label : "(" + label + ")^-1"};
    c.segments.reserve(segments.size());
    for (auto it = segments.rbegin(); it != segments.rend(); ++it)
        c.segments.push_back(it->reversed());
    return c;
}

Cycle Cycle::then(const Cycle& next) const
{
    if (segments.empty())
        return next;
    if (next.segments.empty())
        return *this;
    const CurvePoint a = segments.back().end(), b = next.segments.front().start();
    if (std::abs(a.x - b.x) + std::abs(a.y - b.y) > kJointTol)
        throw BranchTrackingError("cannot concatenate " + label + " and " + next.label + ": endpoints differ");
    Cycle c{segments, t, label + " " + next.label};
    c.segments.insert(c.segments.end(), next.segments.begin(), next.segments.end());
    return c;
}

// ---------------------------------------------------------------------------

namespace {

struct OvalGeometry {
    double rt; // sqrt(1 - t): |x| at y = 0
    double sd; // sqrt(1 - sqrt t): the diagonal point
};

OvalGeometry oval_geometry(double t)
{
    if (!(t > 0 && t < 1))
        throw DomainError("real oval needs 0 < t < 1, got " + std::to_string(t));
    return {std::sqrt(1 - t), std::sqrt(1 - std::sqrt(t))};
}

void check_real_level(cplx t)
{
    if (t.imag() != 0 || !(t.real() > 0 && t.real() <= kMaxLoopLevel))
        throw DomainError("based loops need real t in (0, " + std::to_string(kMaxLoopLevel) + "], got " + fmt(t));
}

double loop_radius(cplx t) { return std::sqrt(std::abs(t)) / 2; }

/// Segments of a tail from the oval base point to the start of loop i.
std::vector<PathSegment> tail_segments(int i, double t)
{
    const OvalGeometry g = oval_geometry(t);
    const double xb = 1 - loop_radius(t);
    const double yq = std::sqrt(1 - t / (1 - xb * xb));
    const double xs = saddle_x(i).real(), ys = saddle_y(i).real();
    std::vector<PathSegment> s;
    if (xs < 0) {
        s.emplace_back(Over::Y, BasePath::line(0, ys * yq), t, -g.rt);
        return s;
    }
    // Right-hand saddles: along the oval over the top (ys > 0) or the bottom.
    s.emplace_back(Over::Y, BasePath::line(0, ys * g.sd), t, -g.rt);
    s.emplace_back(Over::X, BasePath::line(-g.sd, g.sd), t, ys * g.sd);
    s.emplace_back(Over::Y, BasePath::line(ys * g.sd, ys * yq), t, g.sd);
    return s;
}

Cycle raw_loop(int i, cplx t, int winding, const std::optional<cplx>& seed)
{
    const double r = loop_radius(t);
    const cplx xs = saddle_x(i);
    const double theta0 = xs.real() > 0 ? kPi : 0.0;
    const BasePath circle = BasePath::arc(xs, r, theta0, theta0 + 2 * kPi * winding);
    const cplx y0 = seed ? *seed : dependent_root(circle.at(0), t, saddle_y(i));
    Cycle c{{PathSegment(Over::X, circle, t, y0)}, t, "d" + std::to_string(i)};
    return c;
}

int template_winding(int i) { return saddle_x(i).real() * saddle_y(i).real() > 0 ? -1 : 1; }

} // namespace

Cycle real_oval(double t)
{
    const OvalGeometry g = oval_geometry(t);
    Cycle c{{}, t, "g"};
    c.segments.emplace_back(Over::Y, BasePath::line(0, -g.sd), t, -g.rt);
    c.segments.emplace_back(Over::X, BasePath::line(-g.sd, g.sd), t, -g.sd);
    c.segments.emplace_back(Over::Y, BasePath::line(-g.sd, g.sd), t, g.sd);
    c.segments.emplace_back(Over::X, BasePath::line(g.sd, -g.sd), t, g.sd);
    c.segments.emplace_back(Over::Y, BasePath::line(g.sd, 0), t, -g.sd);
    return c;
}

cplx saddle_x(int i)
{
    static constexpr std::array<double, 4> xs{-1, 1, 1, -1};
    if (i < 0 || i > 3)
        throw DomainError("saddle index must be 0..3");
    return xs[static_cast<std::size_t>(i)];
}

cplx saddle_y(int i)
{
    static constexpr std::array<double, 4> ys{-1, -1, 1, 1};
    if (i < 0 || i > 3)
        throw DomainError("saddle index must be 0..3");
    return ys[static_cast<std::size_t>(i)];
}

int loop_orientation_sign()
{
    static const int sign = [] {
        const cplx period = integrate_form(raw_loop(1, 0.25, template_winding(1), std::nullopt), OneForm::eta(3));
        return period.imag() > 0 ? 1 : -1;
    }();
    return sign;
}

Cycle vanishing_loop(int i, cplx t, bool with_tail)
{
    const int winding = loop_orientation_sign() * template_winding(i);
    if (!with_tail)
        return raw_loop(i, t, winding, std::nullopt);
    check_real_level(t);
    Cycle tail{tail_segments(i, t.real()), t, "tail"};
    const Cycle loop = raw_loop(i, t, winding, tail.segments.back().end().y);
    Cycle based = tail.then(loop).then(tail.reversed());
    based.label = "d" + std::to_string(i);
    return based;
}

Cycle cycle_of_word(const Word& w, double t)
{
    check_real_level(t);
    std::array<std::optional<Cycle>, kNumGens> forward, backward;
    Cycle out{{}, t, ""};
    for (const Letter& l : w.letters()) {
        const auto g = static_cast<std::size_t>(l.gen);
        if (!forward[g]) {
            forward[g] = l.gen == Gen::G ? real_oval(t) : vanishing_loop(static_cast<int>(g) - 1, t, true);
            backward[g] = forward[g]->reversed();
        }
        const Cycle& piece = l.exp > 0 ? *forward[g] : *backward[g];
        for (int k = 0; k < std::abs(l.exp); ++k)
            out = out.then(piece);
    }
    out.label = format_word(w);
    return out;
}

} // namespace orbitdepth
