#pragma once

// Paths and cycles on the level curves (x^2 - 1)(y^2 - 1) = t.
//
// A path segment moves one coordinate (the independent one) along a line or
// circular arc and follows the other coordinate by nearest-root continuation.

#include "orbitdepth/word.hpp"

#include <complex>
#include <string>
#include <vector>

namespace orbitdepth {

using cplx = std::complex<double>;

inline cplx curve_F(cplx x, cplx y) { return (x * x - 1.0) * (y * y - 1.0); }

/// Largest |t| for which based vanishing loops are built.
inline constexpr double kMaxLoopLevel = 0.5;

struct CurvePoint {
    cplx x, y, t;
    double residual = 0; // |F(x, y) - t|
};

CurvePoint make_curve_point(cplx x, cplx y, cplx t);

enum class Over { X, Y };

class BasePath {
public:
    static BasePath line(cplx a, cplx b);
    /// center + radius * exp(i theta), theta running from theta0 to theta1.
    static BasePath arc(cplx center, double radius, double theta0, double theta1);

    cplx at(double s) const;
    cplx derivative(double s) const;
    BasePath reversed() const;

private:
    bool is_arc_ = false;
    cplx a_, b_;
    double radius_ = 0, theta0_ = 0, theta1_ = 0;
};

/// Root of (u^2 - 1)(v^2 - 1) = t nearest to `near`, polished by one Newton
/// step. `separation` receives |other - near| / |chosen - near|.
cplx dependent_root(cplx u, cplx t, cplx near, double* separation = nullptr);

struct Jet {
    cplx x, y, dx, dy; // point and derivative with respect to the path parameter
};

class PathSegment {
public:
    /// Throws BranchTrackingError when the seed is not on the curve or the
    /// continuation cannot keep a separation factor of 4.
    PathSegment(Over over, BasePath base, cplx t, cplx seed);

    Over over() const { return over_; }
    const BasePath& base() const { return base_; }
    cplx level() const { return t_; }
    /// Knots where the branch was checked; the dependent coordinate between
    /// knots is the root nearest the value at the preceding knot.
    const std::vector<double>& knots() const { return knots_; }

    cplx dependent(double s) const;
    Jet jet(double s) const;
    CurvePoint point(double s) const;
    CurvePoint start() const { return point(0); }
    CurvePoint end() const { return point(1); }
    PathSegment reversed() const;

private:
    Over over_;
    BasePath base_;
    cplx t_;
    std::vector<double> knots_;
    std::vector<cplx> values_;
};

struct Cycle {
    std::vector<PathSegment> segments;
    cplx t;
    std::string label;

    bool empty() const { return segments.empty(); }
    CurvePoint base_point() const;
    /// |end - start| over the whole path; 0 for the empty cycle.
    double closure_residual() const;
    /// Largest gap between consecutive segment endpoints.
    double max_joint_gap() const;
    Cycle reversed() const;
    Cycle then(const Cycle& next) const;
};

/// Real oval through (-sqrt(1-t), 0), counterclockwise, as five graph pieces
/// split at the diagonals |x| = |y|. Throws DomainError unless 0 < t < 1.
Cycle real_oval(double t);

/// Saddle of loop i: (-1,-1), (1,-1), (1,1), (-1,1) for i = 0..3.
cplx saddle_x(int i);
cplx saddle_y(int i);

/// +1 or -1: the x-winding of loop 1 for which its eta3 period is +2 pi i.
/// Computed once from a numeric period, then reused for every loop.
int loop_orientation_sign();

/// Loop around saddle i over the x-circle of radius sqrt|t|/2. Loops related
/// by the symmetries x -> -x, y -> -y have opposite x-windings. with_tail
/// bases the loop at the real-oval point (-sqrt(1-t), 0); this needs real t
/// in (0, kMaxLoopLevel].
Cycle vanishing_loop(int i, cplx t, bool with_tail);

/// Based loop for every letter (the real oval for g), concatenated left to
/// right. Needs real t in (0, kMaxLoopLevel].
Cycle cycle_of_word(const Word& w, double t);

} // namespace orbitdepth
