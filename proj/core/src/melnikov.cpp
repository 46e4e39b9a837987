#include "orbitdepth/melnikov.hpp"

#include "orbitdepth/error.hpp"

namespace orbitdepth {

RatFunc wronskian(const RatFunc& f, const RatFunc& g) { return f * g.derivative() - f.derivative() * g; }

LeadingTerm compose_leading(int mu1, const RatFunc& m1, int mu2, const RatFunc& m2)
{
    if (m1.is_zero() || m2.is_zero())
        throw DomainError("compose_leading: leading order of a zero term is undefined");
    LeadingTerm r;
    r.order = mu1 + mu2;
    r.value = wronskian(m1, m2);
    r.vanishes = r.value.is_zero();
    return r;
}

BetaPeriods beta_periods(const Deformation& d) { return {d.a2, d.a2 - d.a3, d.a1 - d.a3}; }

RatFunc mv(int i, const Deformation& d)
{
    if (i < 2)
        throw DomainError("mv: order must be at least 2, got " + std::to_string(i));
    const BetaPeriods b = beta_periods(d);
    RatFunc inner = b.b3;
    for (int j = 0; j < i - 2; ++j)
        inner = wronskian(b.b2, inner);
    return wronskian(b.b1, inner);
}

RatFunc mv_via_compose(int i, const Deformation& d)
{
    if (i < 2)
        throw DomainError("mv: order must be at least 2, got " + std::to_string(i));
    const BetaPeriods b = beta_periods(d);
    if (b.b1.is_zero() || b.b3.is_zero())
        return RatFunc();
    LeadingTerm inner{1, b.b3, false};
    for (int j = 0; j < i - 2; ++j) {
        if (b.b2.is_zero() || inner.vanishes)
            return RatFunc();
        inner = compose_leading(1, b.b2, inner.order, inner.value);
    }
    if (inner.vanishes)
        return RatFunc();
    return compose_leading(1, b.b1, inner.order, inner.value).value;
}

Deformation make_length3(const RatFunc& alpha1, const RatFunc& alpha2, const mpq_class& c0, const mpq_class& lambda)
{
    if (alpha1.is_zero() || alpha1.is_constant())
        throw DomainError("make_length3: alpha1 must be non-constant");
    if (wronskian(alpha1, alpha2).is_zero())
        throw DomainError("make_length3: alpha1 and alpha2 are linearly dependent");
    if (lambda == 0)
        throw DomainError("make_length3: lambda must be nonzero");
    const RatFunc integrand = alpha2 / (alpha1 * alpha1);
    std::optional<RatFunc> s = rational_antiderivative(integrand);
    if (!s)
        throw DomainError("make_length3: " + integrand.to_string() + " has no rational antiderivative");
    if (!s->has_pole_at(0))
        *s = *s - RatFunc(s->evaluate(mpq_class(0)));
    Deformation d;
    d.a3 = alpha1 * *s + RatFunc(c0) * alpha1;
    d.a1 = d.a3 + alpha1;
    d.a2 = RatFunc(lambda) * alpha1;
    d.provenance = "pert3(alpha1=" + alpha1.to_string() + ", alpha2=" + alpha2.to_string() + ", c0=" + c0.get_str() +
                   ", lambda=" + lambda.get_str() + ")";
    if (!mv(2, d).is_zero())
        throw CheckFailure("make_length3: mv(2) = " + mv(2, d).to_string() + ", expected 0");
    if (mv(3, d).is_zero())
        throw CheckFailure("make_length3: mv(3) vanishes");
    return d;
}

std::string to_string(ClassTag tag)
{
    switch (tag) {
    case ClassTag::Length3:
        return "LENGTH3";
    case ClassTag::SymmetricCenter:
        return "SYMMETRIC_CENTER";
    case ClassTag::IntegrableCandidate:
        return "INTEGRABLE_CANDIDATE";
    case ClassTag::Order2Nonzero:
        return "ORDER2_NONZERO";
    case ClassTag::Other:
        return "OTHER";
    }
    return "OTHER";
}

Classification classify(const Deformation& d)
{
    Classification c;
    const RatFunc diff = d.a1 - d.a3;
    if (d.a2.is_zero() || diff.is_zero()) {
        c.tag = ClassTag::SymmetricCenter;
        return c;
    }
    if (!mv(2, d).is_zero()) {
        c.tag = ClassTag::Order2Nonzero;
        return c;
    }
    if (!mv(3, d).is_zero()) {
        c.tag = ClassTag::Length3;
        return c;
    }
    const auto l1 = (diff / d.a2).constant_value();
    const auto l2 = (wronskian(d.a1, d.a3) / d.a2).constant_value();
    if (l1 && l2) {
        c.tag = ClassTag::IntegrableCandidate;
        c.lambda1 = l1;
        c.lambda2 = l2;
    }
    return c;
}

Deformation center_family(const RatFunc& A, const mpq_class& c1, const mpq_class& lambda1, const mpq_class& lambda)
{
    const RatFunc dA = A.derivative();
    if (dA.is_zero())
        throw DomainError("center_family: A must be non-constant");
    Deformation d;
    d.a2 = RatFunc(1) / dA;
    const RatFunc u = RatFunc(lambda) * A + RatFunc(c1);
    d.a1 = d.a2 * u;
    d.a3 = d.a2 * (u - RatFunc(lambda1));
    d.provenance = "center(A=" + A.to_string() + ", c1=" + c1.get_str() + ", lambda1=" + lambda1.get_str() +
                   ", lambda=" + lambda.get_str() + ")";
    return d;
}

RatFunc m3_tilde_coefficient(const RatFunc& A, const mpq_class& lambda)
{
    const RatFunc dA = A.derivative();
    if (dA.is_zero())
        throw DomainError("m3_tilde_coefficient: A must be non-constant");
    return RatFunc(-lambda * lambda) / (RatFunc::t() * dA);
}

RatFunc m3_tilde_prefactor(const RatFunc& A, const mpq_class& lambda1, const mpq_class& lambda)
{
    const RatFunc dA = A.derivative();
    if (dA.is_zero())
        throw DomainError("m3_tilde_prefactor: A must be non-constant");
    return RatFunc(-lambda * lambda1) / (RatFunc::t() * dA);
}

HierarchyReport hierarchy_report(const Deformation& d, int i_max)
{
    if (!mv(2, d).is_zero() || !mv(3, d).is_zero())
        throw DomainError("hierarchy_collapse_check: requires mv(2) = mv(3) = 0, got mv(2) = " + mv(2, d).to_string() +
                          ", mv(3) = " + mv(3, d).to_string());
    HierarchyReport r;
    r.pass = true;
    for (int i = 2; i <= i_max; ++i) {
        r.mv_values.push_back(mv(i, d));
        if (!r.mv_values.back().is_zero()) {
            r.pass = false;
            r.detail = "mv(" + std::to_string(i) + ") = " + r.mv_values.back().to_string();
            return r;
        }
    }
    const BetaPeriods b = beta_periods(d);
    if (b.b1.is_zero() || b.b3.is_zero()) {
        r.detail = "degenerate periods; every Wronskian vanishes";
        return r;
    }
    r.mu1 = (b.b1 / b.b3).constant_value();
    const RatFunc x2 = wronskian(b.b2, b.b3);
    r.mu2 = (x2 / b.b1).constant_value();
    if (!r.mu1 || !r.mu2) {
        r.pass = false;
        r.detail = "period ratios are not constant";
        return r;
    }
    const RatFunc mu = RatFunc(*r.mu1 * *r.mu2);
    RatFunc x = b.b3;
    for (int j = 2; j < i_max; ++j) {
        const RatFunc next = wronskian(b.b2, x);
        if (!(next == mu * x)) {
            r.pass = false;
            r.detail = "inner chain breaks at depth " + std::to_string(j);
            return r;
        }
        x = next;
    }
    for (std::size_t i = 0; i + 1 < r.mv_values.size(); ++i) {
        if (!(r.mv_values[i + 1] == mu * r.mv_values[i])) {
            r.pass = false;
            r.detail = "mv recursion breaks at i = " + std::to_string(i + 2);
            return r;
        }
    }
    r.detail = "mv(i) = 0 for 2 <= i <= " + std::to_string(i_max) + "; W(beta2, X) = " + mu.to_string() + " X";
    return r;
}

bool hierarchy_collapse_check(const Deformation& d, int i_max) { return hierarchy_report(d, i_max).pass; }

bool FrancoiseM2::reduces_to_i12_plus_i32() const { return w23 == -w12; }

std::string FrancoiseM2::to_string() const
{
    return "(" + w12.to_string() + ")*I12 + (" + w13.to_string() + ")*I13 + (" + w23.to_string() + ")*I23";
}

FrancoiseM2 francoise_m2(const Deformation& d)
{
    return {wronskian(d.a1, d.a2), wronskian(d.a1, d.a3), wronskian(d.a2, d.a3)};
}

} // namespace orbitdepth
