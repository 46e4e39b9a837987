#pragma once

// Numeric checks on the curve (x^2-1)(y^2-1) = t: period tables, iterated
// integral identities, Melnikov fits and their symbolic cross-checks.

#include "orbitdepth/check.hpp"
#include "orbitdepth/holonomy.hpp"
#include "orbitdepth/integrate.hpp"

#include <cstdint>
#include <vector>

namespace orbitdepth {

/// Expected int_{d_i} eta_j / (2 pi i) for i, j in 1..3.
int expected_pairing(int loop, int eta);

/// The nine loop/eta periods at level t. The d1/eta3 entry fixes the loop
/// orientation and is labelled as the calibration entry.
std::vector<CheckRecord> pairing_table_checks(double t, const Tolerances& tol = {});

/// int phi1 dphi3, int log(t/(y^2-1)) dphi2 and int dphi2 dphi2 over the real oval.
std::vector<CheckRecord> cauchy_suite(double t, const Tolerances& tol = {});

/// int_{v2} dphi2 dphi3 = 4 pi^2.
CheckRecord four_pi_squared_check(double t, const Tolerances& tol = {});

/// Periods of eta1..eta4 along the real oval vanish.
std::vector<CheckRecord> oval_period_checks(double t, const Tolerances& tol = {});

/// Seeded random based loop words (letters d0..d3, length 1..max_len).
std::vector<Word> random_loop_words(std::uint64_t seed, std::size_t count, std::size_t max_len = 3);

/// int_{uv} eta = int_u eta + int_v eta for eta1..eta4 on `pairs` random pairs.
std::vector<CheckRecord> additivity_checks(double t, std::uint64_t seed, std::size_t pairs,
                                           const Tolerances& tol = {});
/// int w1 w2 + int w2 w1 = (int w1)(int w2) on random closed loops.
std::vector<CheckRecord> shuffle_checks(double t, std::uint64_t seed, std::size_t count, const Tolerances& tol = {});
/// int_{[s1,s2]} w1 w2 = det(int_{s_i} w_j) on random loop pairs.
std::vector<CheckRecord> determinant_checks(double t, std::uint64_t seed, std::size_t count,
                                            const Tolerances& tol = {});

/// |F(x,y) - t| at the knots of every segment of the cycle.
double max_cycle_residual(const Cycle& c);

struct M2Assembly {
    double t0 = 0;
    cplx i12, i13, i23, i32;
    double w12 = 0, w13 = 0, w23 = 0; // Wronskians at t0
    cplx m2;                          // sum W(a_i, a_j) I_ij
    cplx closed_combination;          // int log(t/(y^2-1)) dphi2
};

M2Assembly m2_assembly(const Deformation& d, double t0);
/// Requires classify(d) in {LENGTH3, INTEGRABLE_CANDIDATE, SYMMETRIC_CENTER}.
std::vector<CheckRecord> m2_assembly_check(const Deformation& d, double t0, const Tolerances& tol = {});

/// Sign conventions of the holonomy expansion relative to the Melnikov
/// functions: c1 = sigma1 * int omega, and for a commutator of depth k the
/// leading coefficient is sigma1^k sigma_b^(k-1) (2 pi i)^k mv(k).
struct SignCalibration {
    double t0 = 0;
    int sigma1 = 0;
    int sigma_b = 0;
    cplx c1_measured, c1_period;   // x-word, flagship
    cplx c2_measured, c2_symbolic; // v2, deformation (t, 1, 0)
};

/// Calibration grid for v2 with the deformation (t, 1, 0); the default grid
/// leaves the region where the perturbed leaf stays transverse.
inline std::vector<double> calibration_eps_grid() { return {1e-4, 2e-4, 4e-4, 8e-4, 16e-4, 32e-4}; }

SignCalibration calibrate_signs(double t0);
/// sigma1^k sigma_b^(k-1) (2 pi i)^k mv(k, d)(t0).
cplx predicted_leading(int k, const Deformation& d, double t0, const SignCalibration& s);

Deformation flagship_deformation();

/// c1, c2 zero and c3 stable along the real oval for a length-3 deformation.
std::vector<CheckRecord> flagship_fit_checks(const Deformation& d, double t0, const std::vector<double>& grid,
                                             const Tolerances& tol = {});
/// Fitted c3 along v3 against the predicted leading term.
std::vector<CheckRecord> v3_crosscheck(const Deformation& d, double t0, const std::vector<double>& grid,
                                       const SignCalibration& s, const Tolerances& tol = {});

struct CenterCrosscheck {
    double t0 = 0;
    MelnikovFit fit;
    cplx i23;                        // int_gamma dphi2 dphi3
    double prefactor_stated = 0;     // -lambda^2 / (t0 A'(t0)^2)
    double prefactor_corrected = 0;  // -lambda lambda1 / (t0 A'(t0)^2)
    cplx predicted_stated, predicted_corrected; // sigma1^3 * prefactor * i23
    double rel_error_stated = 0, rel_error_corrected = 0;
    int sigma1 = 0;
};

/// Requires A' != 0 at t0.
CenterCrosscheck m3_center_crosscheck(const RatFunc& A, const mpq_class& c1, const mpq_class& lambda1,
                                      const mpq_class& lambda, double t0, const std::vector<double>& grid,
                                      int sigma1);

/// |holonomy - t0| along the real oval for the Hamiltonian member lambda = 0.
std::vector<CheckRecord> hamiltonian_center_checks(double t0, const std::vector<double>& eps_values,
                                                   const Tolerances& tol = {});

/// Leading c3 along v3 is unchanged when the base point moves along the oval.
std::vector<CheckRecord> base_point_checks(double t0, const std::vector<double>& grid, const Tolerances& tol = {});
/// Leading c3 along v3^-1 is minus that along v3.
std::vector<CheckRecord> reversal_checks(double t0, const std::vector<double>& grid, const Tolerances& tol = {});

/// Conjugates c by an arc of the real oval so that it is based at the oval
/// point with y = -h, x < 0 (0 < h < sqrt(1 - sqrt t)).
Cycle rebase_along_oval(const Cycle& c, double h);

} // namespace orbitdepth
