#pragma once

// Leading Melnikov terms of linear perturbations
//   dF + eps * (a1(F) eta1 + a2(F) eta2 + a3(F) eta3) = 0
// as exact rational functions of t. All (2 pi i)^i factors are dropped here;
// mv_two_pi_i_power() says which power the numeric side has to restore.

#include "orbitdepth/ratfunc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbitdepth {

/// W(f, g) = f g' - f' g.
RatFunc wronskian(const RatFunc& f, const RatFunc& g);

struct LeadingTerm {
    int order = 0;
    RatFunc value;
    bool vanishes = false;
};

/// Leading term of a commutator loop from the leading terms of its factors.
/// Throws DomainError when either input vanishes.
LeadingTerm compose_leading(int mu1, const RatFunc& m1, int mu2, const RatFunc& m2);

struct Deformation {
    RatFunc a1, a2, a3;
    std::string provenance = "raw";
};

struct BetaPeriods {
    RatFunc b1, b2, b3;
};

/// Periods over delta1+delta2, delta2, delta2+delta3 divided by 2 pi i.
BetaPeriods beta_periods(const Deformation& d);

/// M_{v_i,i} without its (2 pi i)^i factor; i >= 2.
RatFunc mv(int i, const Deformation& d);
inline int mv_two_pi_i_power(int i) { return i; }
/// Same value assembled as a chain of compose_leading calls.
RatFunc mv_via_compose(int i, const Deformation& d);

/// a3 = alpha1 * S + c0 * alpha1 with S' = alpha2 / alpha1^2, a1 = a3 + alpha1,
/// a2 = lambda * alpha1. S is normalized by S(0) = 0 when S is finite at 0;
/// otherwise the antiderivative without constant term is used.
/// Throws DomainError on dependent inputs, constant alpha1, lambda = 0 or a
/// logarithmic antiderivative, and CheckFailure if mv(2) != 0 or mv(3) == 0.
Deformation make_length3(const RatFunc& alpha1, const RatFunc& alpha2, const mpq_class& c0, const mpq_class& lambda);

enum class ClassTag { Length3, SymmetricCenter, IntegrableCandidate, Order2Nonzero, Other };
std::string to_string(ClassTag tag);

struct Classification {
    ClassTag tag = ClassTag::Other;
    std::optional<mpq_class> lambda1; // (a1 - a3) / a2
    std::optional<mpq_class> lambda2; // W(a1, a3) / a2
};

Classification classify(const Deformation& d);

/// a2 = 1/A', a1 = a2 (lambda A + c1), a3 = a2 (lambda A + c1 - lambda1).
Deformation center_family(const RatFunc& A, const mpq_class& c1, const mpq_class& lambda1, const mpq_class& lambda);

/// -lambda^2 / (t A'), the closed form as usually quoted.
RatFunc m3_tilde_coefficient(const RatFunc& A, const mpq_class& lambda);
/// -lambda lambda1 / (t A'). Expanding the third-order term of the center
/// family leaves lambda1 (not lambda) on the d(phi2) d(phi3) integral; the two
/// agree only when lambda1 = lambda.
RatFunc m3_tilde_prefactor(const RatFunc& A, const mpq_class& lambda1, const mpq_class& lambda);

struct HierarchyReport {
    bool pass = false;
    std::vector<RatFunc> mv_values; // i = 2 .. i_max
    /// beta1 = mu1 beta3 and W(beta2, beta3) = mu2 beta1, when both exist.
    std::optional<mpq_class> mu1;
    std::optional<mpq_class> mu2;
    std::string detail;
};

/// Requires mv(2) = mv(3) = 0 (DomainError otherwise). Checks mv(i) = 0 for
/// 4 <= i <= i_max and, when the witnesses exist, the exact recursions
/// W(beta2, X) = mu1 mu2 X along the inner chain and mv(i+1) = mu1 mu2 mv(i).
HierarchyReport hierarchy_report(const Deformation& d, int i_max);
bool hierarchy_collapse_check(const Deformation& d, int i_max);

/// M_{gamma,2} = sum_{i<j} W(a_i, a_j) I_ij with the I_ij left abstract.
struct FrancoiseM2 {
    RatFunc w12, w13, w23;
    /// W(a2, a1 - a3) = 0 gives w23 = -w12, so after dropping I13 (Cauchy)
    /// and using I23 = -I32 (exact term d(phi2 phi3)) the sum is
    /// w12 (I12 + I32).
    bool reduces_to_i12_plus_i32() const;
    std::string to_string() const;
};

FrancoiseM2 francoise_m2(const Deformation& d);

} // namespace orbitdepth
