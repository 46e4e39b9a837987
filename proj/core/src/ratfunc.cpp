#include "orbitdepth/ratfunc.hpp"

#include "orbitdepth/error.hpp"

#include <cctype>
#include <sstream>

namespace orbitdepth {

Poly::Poly(const mpq_class& c)
{
    if (c != 0) {
        c_.push_back(c);
        c_.back().canonicalize();
    }
}

Poly::Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs))
{
    for (auto& x : c_)
        x.canonicalize();
    trim();
}

Poly Poly::t() { return monomial(1); }

Poly Poly::monomial(int degree, const mpq_class& c)
{
    if (c == 0)
        return Poly();
    std::vector<mpq_class> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

mpq_class Poly::coeff(int d) const
{
    if (d < 0 || d > degree())
        return 0;
    return c_[static_cast<std::size_t>(d)];
}

mpq_class Poly::leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly();
    std::vector<mpq_class> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::monic() const
{
    if (c_.empty())
        return Poly();
    const mpq_class lc = c_.back();
    std::vector<mpq_class> v(c_);
    for (auto& x : v)
        x /= lc;
    return Poly(std::move(v));
}

mpq_class Poly::evaluate(const mpq_class& x) const
{
    mpq_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + *it;
    return r;
}

std::complex<double> Poly::evaluate(std::complex<double> x) const
{
    std::complex<double> r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + it->get_d();
    return r;
}

Poly Poly::operator-() const
{
    std::vector<mpq_class> v(c_);
    for (auto& x : v)
        x = -x;
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        v[i] += b.c_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

std::string Poly::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        const mpq_class& c = c_[static_cast<std::size_t>(d)];
        if (c == 0)
            continue;
        const mpq_class mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (d == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << (mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")") << '*';
        os << 't';
        if (d > 1)
            os << '^' << d;
    }
    return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw DomainError("polynomial division by zero");
    std::vector<mpq_class> r(a.coeffs());
    const int db = b.degree();
    const mpq_class lb = b.leading();
    std::vector<mpq_class> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
    for (int d = a.degree(); d >= db; --d) {
        const mpq_class f = r[static_cast<std::size_t>(d)] / lb;
        if (f == 0)
            continue;
        q[static_cast<std::size_t>(d - db)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(d - db + j)] -= f * b.coeff(j);
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(const Poly& num, const Poly& den)
{
    if (den.is_zero())
        throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly(1);
        return;
    }
    const Poly g = gcd(num, den);
    Poly n = divmod(num, g).quotient;
    Poly d = divmod(den, g).quotient;
    const mpq_class lc = d.leading();
    num_ = n * Poly(1 / lc);
    den_ = d * Poly(1 / lc);
}

std::optional<mpq_class> RatFunc::constant_value() const
{
    if (!is_constant())
        return std::nullopt;
    return num_.coeff(0) / den_.coeff(0);
}

RatFunc RatFunc::derivative() const
{
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

bool RatFunc::has_pole_at(const mpq_class& t0) const { return den_.evaluate(t0) == 0; }

mpq_class RatFunc::evaluate(const mpq_class& t0) const
{
    const mpq_class d = den_.evaluate(t0);
    if (d == 0)
        throw DomainError("rational function " + to_string() + " has a pole at " + t0.get_str());
    return num_.evaluate(t0) / d;
}

std::complex<double> RatFunc::evaluate(std::complex<double> t0) const
{
    return num_.evaluate(t0) / den_.evaluate(t0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    if (a.den_ == b.den_)
        return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    if (b.is_zero())
        throw DomainError("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string() const
{
    if (den_ == Poly(1))
        return num_.to_string();
    auto wrap = [](const Poly& p) {
        const std::string s = p.to_string();
        const bool single = p.degree() <= 0 || (s.find(' ') == std::string::npos);
        return single ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

// ---------------------------------------------------------------------------

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    RatFunc parse()
    {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return r;
    }

    mpq_class number()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        std::string frac;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            frac = std::string(s_.substr(fs, pos_ - fs));
        }
        if (digits.empty() && frac.empty())
            throw ParseError("expected a number", start);
        mpz_class n(digits.empty() ? "0" : digits + frac);
        mpz_class d = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            d *= 10;
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }
    std::size_t pos() const { return pos_; }
    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void advance() { ++pos_; }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    RatFunc expr()
    {
        RatFunc r = term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                r = r + term();
            } else if (c == '-') {
                ++pos_;
                r = r - term();
            } else {
                return r;
            }
        }
    }

    static bool starts_factor(char c)
    {
        return c == 't' || c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }

    RatFunc term()
    {
        RatFunc r = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                r = r * unary();
            } else if (c == '/') {
                const std::size_t at = pos_;
                ++pos_;
                const RatFunc d = unary();
                if (d.is_zero())
                    throw ParseError("division by zero", at);
                r = r / d;
            } else if (starts_factor(c)) {
                r = r * power(); // implicit product, e.g. "2t"
            } else {
                return r;
            }
        }
    }

    RatFunc unary()
    {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    RatFunc power()
    {
        RatFunc base = primary();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
                neg = s_[pos_] == '-';
                ++pos_;
            }
            const std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (ds == pos_)
                throw ParseError("expected integer exponent", at);
            const long e = std::stol(std::string(s_.substr(ds, pos_ - ds)));
            if (e > 1000)
                throw ParseError("exponent too large", at);
            RatFunc r(1);
            for (long i = 0; i < e; ++i)
                r = r * base;
            if (neg) {
                if (r.is_zero())
                    throw ParseError("zero to a negative power", at);
                r = RatFunc(1) / r;
            }
            return r;
        }
        return base;
    }

    RatFunc primary()
    {
        const char c = peek();
        if (c == 't') {
            ++pos_;
            return RatFunc::t();
        }
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (peek() != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (c == '.' || std::isdigit(static_cast<unsigned char>(c)))
            return RatFunc(number());
        if (c == '\0')
            throw ParseError("unexpected end of input", pos_);
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// Solve M x = b over Q by Gaussian elimination; M is square and nonsingular.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            throw DomainError("singular linear system");
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            const mpq_class f = m[r][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j)
                m[r][j] -= f * m[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / m[i][i];
    return x;
}

Poly integrate_poly(const Poly& p)
{
    std::vector<mpq_class> v(p.coeffs().size() + 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        v[i + 1] = p.coeffs()[i] / static_cast<long>(i + 1);
    return Poly(std::move(v));
}

} // namespace

RatFunc parse_ratfunc(std::string_view text) { return ExprParser(text).parse(); }

mpq_class parse_rational(std::string_view text)
{
    ExprParser p(text);
    bool neg = false;
    if (p.peek() == '-' || p.peek() == '+') {
        neg = p.peek() == '-';
        p.advance();
    }
    mpq_class q = p.number();
    if (p.peek() == '/') {
        p.advance();
        const std::size_t at = p.pos();
        const mpq_class d = p.number();
        if (d == 0)
            throw ParseError("division by zero", at);
        q /= d;
    }
    if (!p.at_end())
        throw ParseError("trailing characters in rational literal", p.pos());
    return neg ? mpq_class(-q) : q;
}

std::optional<RatFunc> rational_antiderivative(const RatFunc& f)
{
    // Hermite reduction in Horowitz-Ostrogradsky form:
    //   r/Q = (A/D)' + B/E,  D = gcd(Q, Q'),  E = Q/D,
    // and the remaining integral of B/E is logarithmic unless B = 0.
    const auto [q, r] = divmod(f.num(), f.den());
    const Poly poly_part = integrate_poly(q);
    if (r.is_zero())
        return RatFunc(poly_part);
    const Poly& Q = f.den();
    const Poly D = gcd(Q, Q.derivative());
    const Poly E = divmod(Q, D).quotient;
    const Poly H = divmod(E * D.derivative(), D).quotient;
    const int nd = D.degree(), ne = E.degree(), n = Q.degree();
    // Unknowns: A_0..A_{nd-1}, B_0..B_{ne-1}. Equation: r = A'E - A H + B D.
    std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n)));
    for (int i = 0; i < nd; ++i) {
        const Poly basis = Poly::monomial(i);
        const Poly img = basis.derivative() * E - basis * H;
        for (int row = 0; row < n; ++row)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)] = img.coeff(row);
    }
    for (int i = 0; i < ne; ++i) {
        const Poly img = Poly::monomial(i) * D;
        for (int row = 0; row < n; ++row)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(nd + i)] = img.coeff(row);
    }
    std::vector<mpq_class> rhs(static_cast<std::size_t>(n));
    for (int row = 0; row < n; ++row)
        rhs[static_cast<std::size_t>(row)] = r.coeff(row);
    const std::vector<mpq_class> x = solve_rational(std::move(m), std::move(rhs));
    for (int i = 0; i < ne; ++i)
        if (x[static_cast<std::size_t>(nd + i)] != 0)
            return std::nullopt;
    const Poly A(std::vector<mpq_class>(x.begin(), x.begin() + nd));
    return RatFunc(poly_part) + RatFunc(A, D);
}

} // namespace orbitdepth
