#pragma once

// Exact bivariate Laurent polynomials in (a, c) over Q.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace orbitdepth {

class LaurentPoly2 {
public:
    struct Term {
        int m; // exponent of a
        int n; // exponent of c
        mpq_class coef;
        friend bool operator==(const Term&, const Term&) = default;
    };

    LaurentPoly2() = default;
    LaurentPoly2(const mpq_class& constant); // NOLINT: implicit by design
    LaurentPoly2(int constant) : LaurentPoly2(mpq_class(constant)) {}

    static LaurentPoly2 monomial(int m, int n, const mpq_class& coef = 1);
    static LaurentPoly2 a() { return monomial(1, 0); }
    static LaurentPoly2 c() { return monomial(0, 1); }

    /// Sorted by (m, n); no zero coefficients.
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class coefficient(int m, int n) const;

    LaurentPoly2 operator-() const;
    LaurentPoly2& operator+=(const LaurentPoly2& rhs);
    LaurentPoly2& operator-=(const LaurentPoly2& rhs);
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
    friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

    /// Inverse of a single-term polynomial; throws DomainError otherwise.
    LaurentPoly2 unit_inverse() const;
    mpq_class evaluate(const mpq_class& a, const mpq_class& c) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

mpq_class rational_pow(const mpq_class& base, int exp);

} // namespace orbitdepth
