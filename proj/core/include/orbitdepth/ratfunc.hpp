#pragma once

// Univariate polynomials and rational functions in t over Q.

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitdepth {

class Poly {
public:
    Poly() = default;
    Poly(const mpq_class& c); // NOLINT: constants convert implicitly
    Poly(int c) : Poly(mpq_class(c)) {}
    /// Coefficients by ascending degree; trailing zeros are trimmed.
    explicit Poly(std::vector<mpq_class> coeffs);
    static Poly t();
    static Poly monomial(int degree, const mpq_class& c = 1);

    const std::vector<mpq_class>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    mpq_class coeff(int d) const;
    mpq_class leading() const;

    Poly derivative() const;
    Poly monic() const;
    mpq_class evaluate(const mpq_class& x) const;
    std::complex<double> evaluate(std::complex<double> x) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly&, const Poly&) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};
PolyDivision divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// num/den with gcd(num, den) = 1 and den monic. Equality is structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {} // NOLINT
    RatFunc(const mpq_class& c) : RatFunc(Poly(c)) {} // NOLINT
    RatFunc(int c) : RatFunc(Poly(c)) {} // NOLINT
    RatFunc(const Poly& num, const Poly& den);
    static RatFunc t() { return RatFunc(Poly::t()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Value of a constant function.
    std::optional<mpq_class> constant_value() const;

    RatFunc derivative() const;
    /// Throws DomainError when t0 is a pole.
    mpq_class evaluate(const mpq_class& t0) const;
    std::complex<double> evaluate(std::complex<double> t0) const;
    bool has_pole_at(const mpq_class& t0) const;

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    std::string to_string() const;

private:
    Poly num_;
    Poly den_;
};

/// Grammar: sums, products (explicit or implicit, as in "2t"), quotients,
/// integer powers, parentheses, unary minus, the variable t, and integer or
/// decimal literals. Throws ParseError.
RatFunc parse_ratfunc(std::string_view text);
/// Rational literal "p", "p/q" or a decimal; throws ParseError.
mpq_class parse_rational(std::string_view text);

/// Rational antiderivative with zero constant term at the origin of the
/// polynomial part, or nullopt when a logarithmic part is present.
std::optional<RatFunc> rational_antiderivative(const RatFunc& f);

} // namespace orbitdepth
