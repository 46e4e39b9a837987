#pragma once

// Holonomy of dF + eps * omega = 0 along cycles and extraction of its
// eps-Taylor coefficients.

#include "orbitdepth/curve.hpp"
#include "orbitdepth/melnikov.hpp"

#include <array>
#include <utility>
#include <vector>

namespace orbitdepth {

struct HolonomyOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
};

/// Follows the leaf through the point over the cycle's base point with
/// F = c.t and returns F at the end of the lifted path. Each segment keeps its
/// independent coordinate on the base path (shifted linearly so it starts at
/// the current point) and integrates the dependent one. Throws OdeError near a
/// tangency or when the step size collapses.
cplx holonomy(const Cycle& c, cplx eps, const Deformation& d, const HolonomyOptions& opt = {});
cplx holonomy(const Word& w, double t0, cplx eps, const Deformation& d, const HolonomyOptions& opt = {});

inline std::vector<double> default_eps_grid() { return {1e-3, 2e-3, 4e-3, 8e-3, 16e-3, 32e-3}; }

struct RadiusEstimate {
    double radius = 0;
    std::array<cplx, 4> c{}; // c0..c3
    std::vector<std::pair<cplx, cplx>> samples; // (eps, holonomy)
};

struct MelnikovFit {
    std::string word;
    double t0 = 0;
    std::vector<double> eps_grid;
    int ring_points = 0;
    std::vector<RadiusEstimate> per_radius;
    std::array<cplx, 4> c{};            // c0..c3, mean over the upper half-grid
    std::array<double, 4> uncertainty{}; // |upper-half mean - lower-half mean|
    double richardson_rel = 0;          // relative c3 drift between half-grids
    std::array<bool, 4> zero{};
    std::array<bool, 4> nonzero{};
    bool ill_conditioned = false;
};

/// At each grid radius r, samples the holonomy at eps = r exp(2 pi i k / N)
/// and takes the discrete Fourier coefficients, which are the least-squares
/// fit in eps^0..eps^(N-1) on that ring. c_j is flagged zero when
/// |c_j| < 1e-7 max(1, |c_1|, |c_2|, |c_3|) and nonzero when it is not zero
/// and stable to 0.5% between the two half-grids. Needs >= 5 radii.
MelnikovFit melnikov_fit(const Cycle& c, const std::vector<double>& eps_grid, const Deformation& d, int ring_points = 16);
MelnikovFit melnikov_fit(const Word& w, double t0, const std::vector<double>& eps_grid, const Deformation& d,
                         int ring_points = 16);

} // namespace orbitdepth
