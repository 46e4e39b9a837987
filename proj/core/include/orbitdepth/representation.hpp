#pragma once

// The 2^k x 2^k representations rho_k of pi_1 over Q[a^±1, c^±1] and the
// certificates built on them.

#include "orbitdepth/laurent.hpp"
#include "orbitdepth/word.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace orbitdepth {

inline constexpr int kDefaultKMax = 8;

class RepMatrix {
public:
    RepMatrix() = default;
    explicit RepMatrix(int k);
    static RepMatrix identity(int k);

    int level() const { return k_; }
    std::size_t size() const { return n_; }
    const LaurentPoly2& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    LaurentPoly2& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }

    bool is_identity() const;
    std::size_t nonzero_count() const;
    /// True iff every entry strictly below the diagonal vanishes.
    bool is_upper_triangular() const;

    RepMatrix scaled(const LaurentPoly2& s) const;
    std::vector<mpq_class> evaluate(const mpq_class& a, const mpq_class& c) const;

    /// Zero entries of either factor are skipped.
    friend RepMatrix operator*(const RepMatrix& x, const RepMatrix& y);
    friend RepMatrix operator+(const RepMatrix& x, const RepMatrix& y);
    friend RepMatrix operator-(const RepMatrix& x, const RepMatrix& y);
    friend bool operator==(const RepMatrix&, const RepMatrix&) = default;

    std::string to_string() const;

private:
    int k_ = 0;
    std::size_t n_ = 1;
    std::vector<LaurentPoly2> e_;
};

/// Product of rational matrices (row-major, square).
std::vector<mpq_class> rational_matmul(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y, std::size_t n);

// ---------------------------------------------------------------------------
// Tensor words over {I2, J2, E2, F2}; X (x) Y = [x_ij Y].

enum class TensorTag : std::uint8_t { I2, J2, E2, F2 };

struct TensorWord {
    std::vector<TensorTag> factors;
    RepMatrix to_matrix() const;
    std::string to_string() const;
};

/// b_{j1..jl}: I2 everywhere except J2 at the listed (1-based) positions.
TensorWord b_tensor(int k, std::span<const int> positions);
/// e_{j1..jl}: E2 everywhere except J2 at the listed positions.
TensorWord e_tensor(int k, std::span<const int> positions);
TensorWord alpha_tensor(int k);        // F2^(x)k
TensorWord gamma_tensor(int k);        // E2^(x)k
TensorWord corner_tensor(int k);       // J2^(x)k, single entry at (0, 2^k - 1)

/// beta = sum_j b_j.
RepMatrix beta_matrix(int k);
/// eps^[l] = l! sum over l-subsets of e_{j1..jl}.
RepMatrix epsilon_matrix(int k, int l);

struct BaseMatrices {
    RepMatrix A, B, C;
};

/// Recursive construction A_{k+1} = diag(A_k, I), B_{k+1} = [[B_k, I], [0, B_k]],
/// C_{k+1} = diag(I, C_k) from A_0 = a, B_0 = 1, C_0 = c.
BaseMatrices base_matrices(int k, int k_max = kDefaultKMax);
/// A = I + (a-1) alpha, B = I + beta, C = I + (c-1) gamma-tensor.
BaseMatrices closed_form_matrices(int k);

/// rho_k with cached generator images and their inverses.
class Representation {
public:
    explicit Representation(int k, int k_max = kDefaultKMax);

    int level() const { return k_; }
    const RepMatrix& image(RhoGen g, int exp) const;
    RepMatrix operator()(const Word& w) const;
    RepMatrix operator()(std::span<const RhoLetter> w) const;

private:
    int k_;
    std::array<RepMatrix, 5> pos_;
    std::array<RepMatrix, 5> neg_;
};

RepMatrix rho(int k, const Word& w);

/// Corner entry of rho_k(v_{k+2}) - I with [u,v] = u v u^-1 v^-1 throughout:
/// (a - 1)(1 - 1/c) k!.
LaurentPoly2 corner_prefactor(int k);
/// The closed form (1/c - 1)(1/a - 1) k!. It equals corner_prefactor(k) / a,
/// the value obtained when the outermost commutator is taken as u^-1 v^-1 u v.
LaurentPoly2 stated_corner_prefactor(int k);

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string computed;
};

struct VImagesReport {
    int k = 0;
    int i_max = 0;
    std::vector<IdentityCheck> checks;
    bool pass = false;
};

/// rho_k(v_i) = I for i != k+2 and rho_k(v_{k+2}) = I + prefactor * corner.
/// `word_for` replaces v_i (negative controls).
VImagesReport verify_v_images(int k, int i_max, const std::function<Word(int)>& word_for = v_k);

struct CommutatorScalar {
    long m = 0;
    long n = 0;
    LaurentPoly2 scalar;
};

/// [rho_k(s), rho_k(v_{k+2})]; throws CheckFailure unless the result is the
/// identity plus (a^m c^-n - 1) * corner_prefactor(k) at the corner.
CommutatorScalar commutator_scalar(int k, const Word& s);
CommutatorScalar commutator_scalar(const Representation& rep, const RepMatrix& v, const RepMatrix& v_inv,
                                   const Word& s);

struct ExponentTerm {
    long lambda;
    long m;
    long n;
};

/// sum lambda_i a^m_i c^-n_i - sum lambda_i - 1, the obstruction polynomial.
LaurentPoly2 impossibility_polynomial(std::span<const ExponentTerm> terms);
/// True iff the obstruction polynomial is not identically zero. Terms with
/// (m, n) = (0, 0) are rejected with DomainError.
bool impossibility_check(std::span<const ExponentTerm> terms);

struct DepthCertificate {
    int k = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<IdentityCheck> checks;
    bool pass = false;
    std::string to_json() const;
};

/// Bundles verify_v_images, `samples` commutator checks on seeded random words
/// and impossibility checks on the harvested exponents. Stops at the first
/// failing check. `substitute_index` swaps v_{k+2} for another v_j.
DepthCertificate depth_certificate(int k, int samples, std::uint64_t seed, int substitute_index = 0);

} // namespace orbitdepth
