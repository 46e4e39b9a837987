#include "orbitdepth/laurent.hpp"

#include "orbitdepth/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace orbitdepth {

LaurentPoly2::LaurentPoly2(const mpq_class& constant)
{
    if (constant != 0)
        terms_.push_back({0, 0, constant});
}

LaurentPoly2 LaurentPoly2::monomial(int m, int n, const mpq_class& coef)
{
    LaurentPoly2 p;
    if (coef != 0)
        p.terms_.push_back({m, n, coef});
    return p;
}

bool LaurentPoly2::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m == 0 && terms_[0].n == 0);
}

mpq_class LaurentPoly2::coefficient(int m, int n) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{m, n},
                               [](const Term& t, const std::pair<int, int>& k) { return std::pair{t.m, t.n} < k; });
    if (it != terms_.end() && it->m == m && it->n == n)
        return it->coef;
    return 0;
}

LaurentPoly2 LaurentPoly2::operator-() const
{
    LaurentPoly2 p(*this);
    for (Term& t : p.terms_)
        t.coef = -t.coef;
    return p;
}

namespace {

// Merge two sorted term lists with a sign on the second.
std::vector<LaurentPoly2::Term> merge(const std::vector<LaurentPoly2::Term>& x,
                                      const std::vector<LaurentPoly2::Term>& y, bool subtract)
{
    std::vector<LaurentPoly2::Term> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && std::pair{x[i].m, x[i].n} < std::pair{y[j].m, y[j].n})) {
            out.push_back(x[i++]);
        } else if (i == x.size() || std::pair{y[j].m, y[j].n} < std::pair{x[i].m, x[i].n}) {
            out.push_back(y[j]);
            if (subtract)
                out.back().coef = -out.back().coef;
            ++j;
        } else {
            mpq_class s = subtract ? mpq_class(x[i].coef - y[j].coef) : mpq_class(x[i].coef + y[j].coef);
            if (s != 0)
                out.push_back({x[i].m, x[i].n, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& rhs)
{
    if (rhs.terms_.empty())
        return *this;
    terms_ = merge(terms_, rhs.terms_, false);
    return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& rhs)
{
    if (rhs.terms_.empty())
        return *this;
    terms_ = merge(terms_, rhs.terms_, true);
    return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b)
{
    LaurentPoly2 out;
    if (a.terms_.empty() || b.terms_.empty())
        return out;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const auto& single = a.terms_.size() == 1 ? a.terms_[0] : b.terms_[0];
        const auto& other = a.terms_.size() == 1 ? b.terms_ : a.terms_;
        out.terms_.reserve(other.size());
        for (const auto& t : other)
            out.terms_.push_back({t.m + single.m, t.n + single.n, t.coef * single.coef});
        return out; // shifting preserves the order
    }
    std::map<std::pair<int, int>, mpq_class> acc;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            acc[{s.m + t.m, s.n + t.n}] += s.coef * t.coef;
    for (auto& [k, v] : acc)
        if (v != 0)
            out.terms_.push_back({k.first, k.second, std::move(v)});
    return out;
}

LaurentPoly2 LaurentPoly2::unit_inverse() const
{
    if (terms_.size() != 1)
        throw DomainError("Laurent polynomial " + to_string() + " is not a unit");
    const Term& t = terms_[0];
    return monomial(-t.m, -t.n, 1 / t.coef);
}

mpq_class rational_pow(const mpq_class& base, int exp)
{
    if (exp < 0) {
        if (base == 0)
            throw DomainError("zero raised to a negative power");
        return rational_pow(1 / base, -exp);
    }
    mpq_class r = 1, b = base;
    for (unsigned e = static_cast<unsigned>(exp); e; e >>= 1) {
        if (e & 1u)
            r *= b;
        b *= b;
    }
    return r;
}

mpq_class LaurentPoly2::evaluate(const mpq_class& a, const mpq_class& c) const
{
    mpq_class s = 0;
    for (const Term& t : terms_)
        s += t.coef * rational_pow(a, t.m) * rational_pow(c, t.n);
    return s;
}

std::string LaurentPoly2::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        const mpq_class mag = abs(t.coef);
        if (first)
            os << (t.coef < 0 ? "-" : "");
        else
            os << (t.coef < 0 ? " - " : " + ");
        first = false;
        std::string vars;
        auto append = [&vars](char v, int e) {
            if (e == 0)
                return;
            if (!vars.empty())
                vars += '*';
            vars += v;
            if (e != 1)
                vars += '^' + std::to_string(e);
        };
        append('a', t.m);
        append('c', t.n);
        if (vars.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << vars;
        else
            os << mag.get_str() << '*' << vars;
    }
    return os.str();
}

} // namespace orbitdepth
