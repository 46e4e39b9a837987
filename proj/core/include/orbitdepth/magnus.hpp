#pragma once

// Truncated Magnus expansion in Z<<X_g, X_d0, ..., X_d3>> and lower central
// series degree detection.

#include "orbitdepth/word.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace orbitdepth {

/// Monomial in the five noncommuting indeterminates, packed as
/// (base-5 letter code << 5) | length. Supports lengths up to 24.
class Monomial {
public:
    static constexpr int kMaxLength = 24;

    Monomial() = default;
    static Monomial from_letters(const std::vector<Gen>& letters);

    int degree() const { return static_cast<int>(key_ & 31u); }
    std::uint64_t code() const { return key_ >> 5; }
    std::uint64_t key() const { return key_; }
    std::vector<Gen> letters() const;
    Monomial append(Gen g) const;
    Monomial concat(const Monomial& rhs) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Degree first, then lexicographic in the generator order.
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    explicit Monomial(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return std::hash<std::uint64_t>{}(m.key()); }
};

class TruncatedSeries {
public:
    explicit TruncatedSeries(int degree);
    static TruncatedSeries one(int degree);

    int degree() const { return degree_; }
    std::size_t term_count() const { return terms_.size(); }
    mpz_class coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const mpz_class& c);

    /// Terms sorted canonically.
    std::vector<std::pair<Monomial, mpz_class>> sorted_terms() const;
    /// Homogeneous component of the given degree.
    TruncatedSeries component(int d) const;
    /// Lowest degree with a nonzero coefficient, ignoring degree 0 when
    /// `skip_constant` is set. nullopt when no such term exists.
    std::optional<int> lowest_degree(bool skip_constant = false) const;
    bool is_zero() const { return terms_.empty(); }

    /// Right multiplication by the image of a single letter.
    TruncatedSeries times_letter(Gen g, int exp) const;

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

    std::string to_string() const;

private:
    int degree_;
    std::unordered_map<Monomial, mpz_class, MonomialHash> terms_;
};

/// Magnus embedding g -> 1 + X_g, g^-1 -> 1 - X_g + X_g^2 - ..., truncated at N.
TruncatedSeries magnus(const Word& w, int degree);

struct DepthReport {
    Word word;
    int truncation = 0;
    /// Lowest nonzero degree of magnus(w) - 1; empty when the series vanishes
    /// through the truncation degree.
    std::optional<int> lowest_degree;
    bool identity = false;
    TruncatedSeries leading;

    explicit DepthReport(int n) : truncation(n), leading(n) {}
    /// "inf", "j", or ">=N+1".
    std::string depth_string() const;
};

DepthReport depth_lower_bound(const Word& w, int degree);

/// True iff endo(w) w^-1 sits strictly deeper in the lower central series than w.
/// Words containing g are rejected.
bool graded_triviality_check(const Word& w, const Endo& endo, int degree);

/// Lowest degree of magnus(u) - magnus(v); nullopt when they agree through N.
std::optional<int> leading_difference_degree(const Word& u, const Word& v, int degree);

} // namespace orbitdepth
