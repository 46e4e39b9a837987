#include "orbitdepth/integrate.hpp"

#include "orbitdepth/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace orbitdepth {

// ---------------------------------------------------------------------------
// Forms

OneForm OneForm::eta(int i)
{
    if (i < 1 || i > 4)
        throw DomainError("eta index must be 1..4");
    return {"eta" + std::to_string(i), {{1.0, LogFactor::None, i}}};
}

OneForm OneForm::dphi(int i)
{
    OneForm f = eta(i);
    f.tag = "dphi" + std::to_string(i);
    return f;
}

OneForm OneForm::phi_dphi(int i, int j)
{
    if (i < 1 || i > 4 || j < 1 || j > 4)
        throw DomainError("phi/dphi indices must be 1..4");
    return {"phi" + std::to_string(i) + "*dphi" + std::to_string(j),
            {{1.0, static_cast<LogFactor>(i), j}}};
}

OneForm OneForm::cauchy_log() { return {"log(t/(y^2-1))*dphi2", {{1.0, LogFactor::LogTOverY2m1, 2}}}; }

OneForm OneForm::deformation(const Deformation& d, cplx t)
{
    OneForm f{"omega", {}};
    const std::array<const RatFunc*, 3> a{&d.a1, &d.a2, &d.a3};
    for (int i = 0; i < 3; ++i)
        if (!a[static_cast<std::size_t>(i)]->is_zero())
            f.terms.push_back({a[static_cast<std::size_t>(i)]->evaluate(t), LogFactor::None, i + 1});
    return f;
}

OneForm parse_form(std::string_view tag)
{
    auto index_after = [&](std::string_view prefix, std::string_view s) -> int {
        if (s.size() != prefix.size() + 1 || s.substr(0, prefix.size()) != prefix)
            return 0;
        const char c = s.back();
        return (c >= '1' && c <= '4') ? c - '0' : 0;
    };
    if (int i = index_after("eta", tag))
        return OneForm::eta(i);
    if (int i = index_after("dphi", tag))
        return OneForm::dphi(i);
    const auto star = tag.find('*');
    if (star != std::string_view::npos) {
        const int i = index_after("phi", tag.substr(0, star));
        const int j = index_after("dphi", tag.substr(star + 1));
        if (i && j)
            return OneForm::phi_dphi(i, j);
    }
    throw ParseError("unknown form tag '" + std::string(tag) + "'", 0);
}

std::vector<OneForm> parse_form_list(std::string_view list)
{
    std::vector<OneForm> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        std::string_view item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        try {
            out.push_back(parse_form(item));
        } catch (const ParseError&) {
            throw ParseError("unknown form tag '" + std::string(item) + "'", start);
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chebyshev panels

namespace {

constexpr int kN = 24; // nodes 0..kN
constexpr int kMaxDepth = 40;
constexpr double kPanelAbsTol = 1e-13;
constexpr double kPanelRelTol = 1e-15;
constexpr double kMaxLogStep = 1.0;
constexpr std::size_t kNumLogs = 5;
constexpr std::size_t kMaxForms = 4;

struct ChebTables {
    std::array<double, kN + 1> x;                        // ascending nodes on [-1, 1]
    std::array<std::array<double, kN + 1>, kN + 1> coef; // values -> coefficients
    std::array<std::array<double, kN + 1>, kN + 1> cum;  // values -> integral from -1 at nodes
};

const ChebTables& tables()
{
    static const ChebTables tb = [] {
        ChebTables t{};
        for (int j = 0; j <= kN; ++j)
            t.x[j] = -std::cos(std::numbers::pi * j / kN);
        for (int k = 0; k <= kN; ++k)
            for (int j = 0; j <= kN; ++j) {
                double w = 2.0 / kN * std::cos(k * std::acos(t.x[j]));
                if (j == 0 || j == kN)
                    w *= 0.5;
                if (k == 0 || k == kN)
                    w *= 0.5;
                t.coef[k][j] = w;
            }
        // Antiderivative of each Chebyshev basis function, vanishing at -1.
        for (int j = 0; j <= kN; ++j) {
            std::array<double, kN + 2> b{};
            for (int k = 0; k <= kN; ++k) {
                const double a = t.coef[k][j];
                if (k == 0) {
                    b[1] += a;
                } else if (k == 1) {
                    b[2] += a / 4;
                } else {
                    b[k + 1] += a / (2.0 * (k + 1));
                    b[k - 1] -= a / (2.0 * (k - 1));
                }
            }
            double at_minus_one = 0;
            for (int k = 0; k <= kN + 1; ++k)
                at_minus_one += (k % 2 ? -1.0 : 1.0) * b[k];
            for (int i = 0; i <= kN; ++i) {
                double v = 0;
                const double th = std::acos(t.x[i]);
                for (int k = 0; k <= kN + 1; ++k)
                    v += b[k] * std::cos(k * th);
                t.cum[i][j] = v - at_minus_one;
            }
        }
        return t;
    }();
    return tb;
}

cplx log_argument(LogFactor f, const Jet& p, cplx t)
{
    switch (f) {
    case LogFactor::Phi1:
        return p.x + 1.0;
    case LogFactor::Phi2:
        return p.y - 1.0;
    case LogFactor::Phi3:
        return p.x - 1.0;
    case LogFactor::Phi4:
        return p.y + 1.0;
    case LogFactor::LogTOverY2m1:
        return t / (p.y * p.y - 1.0);
    case LogFactor::None:
        break;
    }
    return 1.0;
}

cplx eta_value(int i, const Jet& p)
{
    cplx f, df;
    switch (i) {
    case 1:
        f = p.x + 1.0;
        df = p.dx;
        break;
    case 2:
        f = p.y - 1.0;
        df = p.dy;
        break;
    case 3:
        f = p.x - 1.0;
        df = p.dx;
        break;
    default:
        f = p.y + 1.0;
        df = p.dy;
        break;
    }
    if (std::abs(f) < 1e-12)
        throw QuadratureError("form eta" + std::to_string(i) + " has a pole on the path");
    return df / f;
}

struct SweepState {
    std::array<cplx, kMaxForms + 1> I{};
    std::array<cplx, kNumLogs> logs{};
    std::array<bool, kNumLogs> log_started{};
};

class Sweeper {
public:
    Sweeper(const std::vector<OneForm>& forms, cplx t) : forms_(forms), t_(t)
    {
        for (const auto& f : forms_)
            for (const auto& term : f.terms)
                if (term.log != LogFactor::None)
                    uses_log_[static_cast<std::size_t>(term.log) - 1] = true;
    }

    void segment(const PathSegment& seg, SweepState& st)
    {
        const auto& knots = seg.knots();
        for (std::size_t k = 0; k + 1 < knots.size(); ++k)
            panel(seg, knots[k], knots[k + 1], st, 0);
    }

    double error() const { return error_; }
    std::size_t panels() const { return panels_; }

private:
    // Returns false when the panel must be split.
    bool try_panel(const PathSegment& seg, double a, double b, SweepState& st, double& err)
    {
        const ChebTables& tb = tables();
        const std::size_t m = forms_.size();
        std::array<std::array<cplx, kMaxForms>, kN + 1> f{};
        std::array<cplx, kNumLogs> logs = st.logs;
        std::array<bool, kNumLogs> started = st.log_started;
        for (int j = 0; j <= kN; ++j) {
            const double s = a + (b - a) * (tb.x[j] + 1) / 2;
            const Jet p = seg.jet(s);
            for (std::size_t L = 0; L < kNumLogs; ++L) {
                if (!uses_log_[L])
                    continue;
                const cplx arg = log_argument(static_cast<LogFactor>(L + 1), p, t_);
                if (std::abs(arg) < 1e-300)
                    throw QuadratureError("logarithm of zero on the path");
                cplx v = std::log(arg);
                if (started[L]) {
                    const double turns = std::round((logs[L].imag() - v.imag()) / (2 * std::numbers::pi));
                    v += cplx(0, 2 * std::numbers::pi * turns);
                    if (std::abs(v.imag() - logs[L].imag()) > kMaxLogStep)
                        return false;
                }
                logs[L] = v;
                started[L] = true;
            }
            for (std::size_t k = 0; k < m; ++k) {
                cplx acc = 0;
                for (const auto& term : forms_[k].terms) {
                    cplx c = term.coeff * eta_value(term.eta, p);
                    if (term.log != LogFactor::None)
                        c *= logs[static_cast<std::size_t>(term.log) - 1];
                    acc += c;
                }
                f[static_cast<std::size_t>(j)][k] = acc;
            }
        }
        // Cumulative integrals, innermost first.
        std::array<cplx, kN + 1> prev, cur;
        prev.fill(1.0);
        std::array<cplx, kMaxForms + 1> I = st.I;
        const double half = (b - a) / 2;
        err = 0;
        for (std::size_t k = 0; k < m; ++k) {
            std::array<cplx, kN + 1> g;
            for (int j = 0; j <= kN; ++j)
                g[j] = f[static_cast<std::size_t>(j)][k] * (k == 0 ? cplx(1.0) : prev[j]);
            double scale = 0, tail = 0;
            for (int q = 0; q <= kN; ++q) {
                cplx c = 0;
                for (int j = 0; j <= kN; ++j)
                    c += tb.coef[q][j] * g[j];
                scale = std::max(scale, std::abs(c));
                if (q >= kN - 2)
                    tail = std::max(tail, std::abs(c));
            }
            if (tail * std::abs(half) > kPanelAbsTol && tail > kPanelRelTol * scale)
                return false;
            err += tail * std::abs(half);
            for (int i = 0; i <= kN; ++i) {
                cplx v = 0;
                for (int j = 0; j <= kN; ++j)
                    v += tb.cum[i][j] * g[j];
                cur[i] = I[k + 1] + half * v;
            }
            I[k + 1] = cur[kN];
            prev = cur;
        }
        st.I = I;
        st.logs = logs;
        st.log_started = started;
        return true;
    }

    void panel(const PathSegment& seg, double a, double b, SweepState& st, int depth)
    {
        double err = 0;
        if (try_panel(seg, a, b, st, err)) {
            error_ += err;
            ++panels_;
            return;
        }
        if (depth >= kMaxDepth)
            throw QuadratureError("panel at s=" + std::to_string(a) + " did not converge");
        const double mid = 0.5 * (a + b);
        panel(seg, a, mid, st, depth + 1);
        panel(seg, mid, b, st, depth + 1);
    }

    const std::vector<OneForm>& forms_;
    cplx t_;
    std::array<bool, kNumLogs> uses_log_{};
    double error_ = 0;
    std::size_t panels_ = 0;
};

} // namespace

IntegralResult iterated_integral_detail(const Cycle& c, const std::vector<OneForm>& forms)
{
    if (forms.empty() || forms.size() > kMaxForms)
        throw DomainError("iterated integrals take 1 to 4 forms");
    Sweeper sw(forms, c.t);
    SweepState st;
    st.I[0] = 1.0;
    for (const auto& seg : c.segments)
        sw.segment(seg, st);
    return {st.I[forms.size()], sw.error(), sw.panels()};
}

cplx iterated_integral(const Cycle& c, const std::vector<OneForm>& forms)
{
    return iterated_integral_detail(c, forms).value;
}

cplx integrate_form(const Cycle& c, const OneForm& f) { return iterated_integral(c, {f}); }

} // namespace orbitdepth
