#pragma once

// Free-group words on the fiber generators g, d0..d3 and the monodromy
// automorphisms acting on them.

#include "orbitdepth/error.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbitdepth {

/// Generators of pi_1 of the fiber, in canonical print order.
enum class Gen : std::uint8_t { G = 0, D0 = 1, D1 = 2, D2 = 3, D3 = 4 };

inline constexpr std::size_t kNumGens = 5;
inline constexpr std::array<Gen, kNumGens> kAllGens{Gen::G, Gen::D0, Gen::D1, Gen::D2, Gen::D3};

constexpr std::size_t index(Gen g) { return static_cast<std::size_t>(g); }

struct Letter {
    Gen gen;
    std::int8_t exp; // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Reduced word. Reduction happens at construction, so equality of two Words
/// is equality of group elements.
class Word {
public:
    Word() = default;
    explicit Word(std::span<const Letter> raw);
    Word(std::initializer_list<Letter> raw);

    static Word gen(Gen g, int exp = 1);

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    bool contains(Gen g) const;

    Word inverse() const;
    Word pow(int n) const;

    friend Word operator*(const Word& u, const Word& v);
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw);
inline Word multiply(const Word& u, const Word& v) { return u * v; }
inline Word invert(const Word& u) { return u.inverse(); }
/// [u,v] = u v u^-1 v^-1.
Word commutator(const Word& u, const Word& v);

/// Endomorphism of the free group, given by generator images.
class Endo {
public:
    explicit Endo(std::array<Word, kNumGens> images) : images_(std::move(images)) {}

    const Word& image(Gen g) const { return images_[index(g)]; }
    Word operator()(const Word& w) const;
    /// this after other: w -> this(other(w)).
    Endo after(const Endo& other) const;

private:
    std::array<Word, kNumGens> images_;
};

// Distinguished elements.
Word gamma();
Word delta_word();         // d0 d1 d2 d3
Word x_word();             // d1 d2
Word z_word();             // d2 d3

Endo identity_endo();
Endo mon0();
Endo mon1();
Endo m_endo();             // (d0 d1)^-1 Mon0(.) (d0 d1)
Endo mon0_inverse();
Endo mon1_inverse();

/// Var(w) = M(w) w^-1, with Var(g) = delta by definition.
Word var(const Word& w);
/// d_1 = Id, d_{k+1}(w) = [d2, d_k(w)].
Word d_k(int k, const Word& w);
/// v_1 = delta, v_k = [x, d_{k-1}(z)].
Word v_k(int k);

// ---------------------------------------------------------------------------
// The alphabet {g, D, x, d2, z} on which the matrix representations are defined.

enum class RhoGen : std::uint8_t { G = 0, Delta = 1, X = 2, D2 = 3, Z = 4 };

struct RhoLetter {
    RhoGen gen;
    std::int8_t exp;
    friend bool operator==(const RhoLetter&, const RhoLetter&) = default;
    friend auto operator<=>(const RhoLetter&, const RhoLetter&) = default;
};

using RhoWord = std::vector<RhoLetter>;

RhoWord reduce_rho(std::span<const RhoLetter> raw);
RhoWord rewrite_to_rho_alphabet(const Word& w);
Word substitute_back(std::span<const RhoLetter> w);
std::string format_rho_word(std::span<const RhoLetter> w);

/// Exponent sums (m, n) of x and z in the rho-alphabet form.
std::pair<long, long> exponent_sums_rho(const Word& w);

/// Class of w in pi_1 modulo [Gamma, pi_1]·conjugation, a canonical
/// representative valid for elements of the orbit group O: central letters g
/// and D are collected (their exponent sums are kept), the rest is cyclically
/// reduced and rotated to its least rotation.
struct ModKForm {
    RhoWord core;
    long gamma_exp = 0;
    long delta_exp = 0;
    friend bool operator==(const ModKForm&, const ModKForm&) = default;
};
ModKForm normalize_mod_k(const Word& w);
/// Word in the d-alphabet realizing a ModKForm (core followed by g^a D^b).
Word mod_k_representative(const ModKForm& f);
/// Var^i(g), normalized modulo K after every step.
std::vector<Word> var_orbit(int i_max);

/// Image in pi_1/Gamma (free on d1, d2, d3): substitute d0 = D d3^-1 d2^-1 d1^-1,
/// then delete g and D.
Word project_mod_gamma_subgroup(const Word& w);

using AbelianVector = std::array<long, kNumGens>;
AbelianVector abelianize(const Word& w);

// ---------------------------------------------------------------------------
// Text form.

class WordParseError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Grammar:
///   word   := term { term }
///   term   := atom [ "^" integer ] | atom "'"
///   atom   := letter | "[" word "," word "]" | "(" word ")"
///   letter := g | d0 | d1 | d2 | d3 | x | z | D
/// "1" is accepted for the identity.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

std::string_view gen_name(Gen g);

// ---------------------------------------------------------------------------

/// Seeded sampler for property tests: uniform length in [0, max_len],
/// uniform letters and signs, then freely reduced.
class RandomWords {
public:
    explicit RandomWords(std::uint64_t seed, std::size_t max_len = 40) : rng_(seed), max_len_(max_len) {}

    Word next();
    /// Word on d0..d3 only.
    Word next_delta_only();
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::size_t max_len_;
};

} // namespace orbitdepth
