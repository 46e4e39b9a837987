#pragma once

// Line and Chen iterated integrals of logarithmic 1-forms along cycles.
//
// Convention: int_c w1 w2 ... wm integrates w1 first along the path, so that
// for loops s1, s2 int_{[s1,s2]} w1 w2 = det(int_{s_i} w_j).

#include "orbitdepth/curve.hpp"
#include "orbitdepth/melnikov.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace orbitdepth {

/// Functions whose logarithms appear as coefficients. Logs are continued
/// along the path from their principal value at the cycle's base point.
enum class LogFactor { None, Phi1, Phi2, Phi3, Phi4, LogTOverY2m1 };

struct FormTerm {
    cplx coeff = 1;
    LogFactor log = LogFactor::None;
    int eta = 1; // eta_i = d f_i / f_i with f = x+1, y-1, x-1, y+1
};

struct OneForm {
    std::string tag;
    std::vector<FormTerm> terms;

    static OneForm eta(int i);
    static OneForm dphi(int i);
    /// log(f_i) d log(f_j).
    static OneForm phi_dphi(int i, int j);
    /// log(t / (y^2 - 1)) dy / (y - 1).
    static OneForm cauchy_log();
    /// a1(t) eta1 + a2(t) eta2 + a3(t) eta3 on the fiber F = t.
    static OneForm deformation(const Deformation& d, cplx t);
};

/// Tags eta1..eta4, dphi1..dphi4, phiI*dphiJ; throws ParseError.
OneForm parse_form(std::string_view tag);
/// Comma-separated list of tags.
std::vector<OneForm> parse_form_list(std::string_view list);

struct IntegralResult {
    cplx value;
    double error_estimate = 0;
    std::size_t panels = 0;
};

/// Adaptive Chebyshev panels with cumulative inner integrals; target absolute
/// error 1e-12 per panel. At most 4 forms. Throws QuadratureError when a form
/// has a pole on the path or a panel does not converge.
IntegralResult iterated_integral_detail(const Cycle& c, const std::vector<OneForm>& forms);
cplx iterated_integral(const Cycle& c, const std::vector<OneForm>& forms);
cplx integrate_form(const Cycle& c, const OneForm& f);

} // namespace orbitdepth
