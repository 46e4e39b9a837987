#include "orbitdepth/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace orbitdepth {

namespace {

template <typename L>
std::vector<L> freely_reduce(std::span<const L> raw)
{
    std::vector<L> out;
    out.reserve(raw.size());
    for (const L& l : raw) {
        if (l.exp == 0)
            continue;
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

template <typename L>
std::vector<L> inverse_letters(std::span<const L> w)
{
    std::vector<L> out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->gen, static_cast<std::int8_t>(-it->exp)});
    return out;
}

Word g_(Gen g, int e = 1) { return Word::gen(g, e); }

} // namespace

Word::Word(std::span<const Letter> raw) : letters_(freely_reduce(raw)) {}

Word::Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

Word Word::gen(Gen g, int exp)
{
    Word w;
    const auto e = static_cast<std::int8_t>(exp >= 0 ? 1 : -1);
    for (int i = 0; i < std::abs(exp); ++i)
        w.letters_.push_back({g, e});
    return w;
}

bool Word::contains(Gen g) const
{
    return std::any_of(letters_.begin(), letters_.end(), [g](const Letter& l) { return l.gen == g; });
}

Word Word::inverse() const
{
    Word w;
    w.letters_ = inverse_letters<Letter>(letters_);
    return w;
}

Word Word::pow(int n) const
{
    const Word base = n >= 0 ? *this : inverse();
    Word out;
    for (int i = 0; i < std::abs(n); ++i)
        out = out * base;
    return out;
}

Word operator*(const Word& u, const Word& v)
{
    // Cancellation only happens at the seam.
    std::size_t k = 0;
    const auto& a = u.letters_;
    const auto& b = v.letters_;
    while (k < a.size() && k < b.size() && a[a.size() - 1 - k].gen == b[k].gen &&
           a[a.size() - 1 - k].exp == -b[k].exp)
        ++k;
    Word w;
    w.letters_.reserve(a.size() + b.size() - 2 * k);
    w.letters_.insert(w.letters_.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
    w.letters_.insert(w.letters_.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
    return w;
}

Word reduce(std::span<const Letter> raw) { return Word(raw); }

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

Word Endo::operator()(const Word& w) const
{
    std::vector<Letter> raw;
    for (const Letter& l : w.letters()) {
        const Word& img = images_[index(l.gen)];
        if (l.exp > 0) {
            raw.insert(raw.end(), img.letters().begin(), img.letters().end());
        } else {
            const Word inv = img.inverse();
            raw.insert(raw.end(), inv.letters().begin(), inv.letters().end());
        }
    }
    return Word(raw);
}

Endo Endo::after(const Endo& other) const
{
    std::array<Word, kNumGens> imgs;
    for (Gen g : kAllGens)
        imgs[index(g)] = (*this)(other.image(g));
    return Endo(std::move(imgs));
}

Word gamma() { return g_(Gen::G); }
Word delta_word() { return g_(Gen::D0) * g_(Gen::D1) * g_(Gen::D2) * g_(Gen::D3); }
Word x_word() { return g_(Gen::D1) * g_(Gen::D2); }
Word z_word() { return g_(Gen::D2) * g_(Gen::D3); }

Endo identity_endo()
{
    return Endo({g_(Gen::G), g_(Gen::D0), g_(Gen::D1), g_(Gen::D2), g_(Gen::D3)});
}

Endo mon1()
{
    const Word g = gamma();
    return Endo({g, g * g_(Gen::D0), g * g_(Gen::D1), g * g_(Gen::D2), g * g_(Gen::D3)});
}

Endo mon1_inverse()
{
    const Word gi = g_(Gen::G, -1);
    return Endo({gamma(), gi * g_(Gen::D0), gi * g_(Gen::D1), gi * g_(Gen::D2), gi * g_(Gen::D3)});
}

Endo mon0()
{
    const Word d0 = g_(Gen::D0), d1 = g_(Gen::D1), d2 = g_(Gen::D2), d3 = g_(Gen::D3);
    const Word p1 = d0;
    const Word p2 = d0 * d1;
    const Word p3 = d0 * d1 * d2;
    return Endo({delta_word() * gamma(),
                 d0,
                 p1 * d1 * p1.inverse(),
                 p2 * d2 * p2.inverse(),
                 p3 * d3 * p3.inverse()});
}

Endo mon0_inverse()
{
    // Mon0 conjugates d_i by the prefix d0..d_{i-1}; undo it one generator at
    // a time. Inverse images: d0 -> d0, d1 -> d0^-1 d1 d0,
    // d2 -> d1^-1 d0^-1 d2 d0 d1 ... built from the already-inverted prefix.
    const Word d0 = g_(Gen::D0), d1 = g_(Gen::D1), d2 = g_(Gen::D2), d3 = g_(Gen::D3);
    const Word i0 = d0;
    const Word i1 = i0.inverse() * d1 * i0;
    // Mon0(d0 d1) = d0 d0 d1 d0^-1 has preimage d0 d1; in general the preimage of
    // the prefix conjugator p_k is the product of preimages of d0..d_{k-1}.
    const Word q2 = i0 * i1;
    const Word i2 = q2.inverse() * d2 * q2;
    const Word q3 = i0 * i1 * i2;
    const Word i3 = q3.inverse() * d3 * q3;
    const Word q4 = q3 * i3; // preimage of delta
    return Endo({q4.inverse() * gamma(), i0, i1, i2, i3});
}

Endo m_endo()
{
    const Endo m0 = mon0();
    const Word s = g_(Gen::D0) * g_(Gen::D1);
    std::array<Word, kNumGens> imgs;
    for (Gen g : kAllGens)
        imgs[index(g)] = s.inverse() * m0(g_(g)) * s;
    return Endo(std::move(imgs));
}

Word var(const Word& w)
{
    if (w == gamma())
        return delta_word();
    static const Endo m = m_endo();
    return m(w) * w.inverse();
}

Word d_k(int k, const Word& w)
{
    if (k < 1)
        throw DomainError("d_k: k must be >= 1");
    Word out = w;
    const Word d2 = g_(Gen::D2);
    for (int i = 1; i < k; ++i)
        out = commutator(d2, out);
    return out;
}

Word v_k(int k)
{
    if (k < 1)
        throw DomainError("v_k: k must be >= 1");
    if (k == 1)
        return delta_word();
    return commutator(x_word(), d_k(k - 1, z_word()));
}

// ---------------------------------------------------------------------------

RhoWord reduce_rho(std::span<const RhoLetter> raw) { return freely_reduce(raw); }

RhoWord rewrite_to_rho_alphabet(const Word& w)
{
    using R = RhoGen;
    auto sub = [](Gen g) -> std::vector<RhoLetter> {
        switch (g) {
        case Gen::G: return {{R::G, 1}};
        case Gen::D0: return {{R::Delta, 1}, {R::Z, -1}, {R::D2, 1}, {R::X, -1}};
        case Gen::D1: return {{R::X, 1}, {R::D2, -1}};
        case Gen::D2: return {{R::D2, 1}};
        case Gen::D3: return {{R::D2, -1}, {R::Z, 1}};
        }
        return {};
    };
    std::vector<RhoLetter> raw;
    for (const Letter& l : w.letters()) {
        auto s = sub(l.gen);
        if (l.exp < 0)
            s = inverse_letters<RhoLetter>(s);
        raw.insert(raw.end(), s.begin(), s.end());
    }
    return reduce_rho(raw);
}

Word substitute_back(std::span<const RhoLetter> w)
{
    std::vector<Letter> raw;
    for (const RhoLetter& l : w) {
        Word img;
        switch (l.gen) {
        case RhoGen::G: img = gamma(); break;
        case RhoGen::Delta: img = delta_word(); break;
        case RhoGen::X: img = x_word(); break;
        case RhoGen::D2: img = g_(Gen::D2); break;
        case RhoGen::Z: img = z_word(); break;
        }
        if (l.exp < 0)
            img = img.inverse();
        raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    }
    return Word(raw);
}

std::string format_rho_word(std::span<const RhoLetter> w)
{
    if (w.empty())
        return "1";
    static constexpr std::array<std::string_view, 5> names{"g", "D", "x", "d2", "z"};
    std::string out;
    for (const RhoLetter& l : w) {
        if (!out.empty())
            out += ' ';
        out += names[static_cast<std::size_t>(l.gen)];
        if (l.exp < 0)
            out += '\'';
    }
    return out;
}

std::pair<long, long> exponent_sums_rho(const Word& w)
{
    long m = 0, n = 0;
    for (const RhoLetter& l : rewrite_to_rho_alphabet(w)) {
        if (l.gen == RhoGen::X)
            m += l.exp;
        else if (l.gen == RhoGen::Z)
            n += l.exp;
    }
    return {m, n};
}

ModKForm normalize_mod_k(const Word& w)
{
    ModKForm f;
    RhoWord rest;
    for (const RhoLetter& l : rewrite_to_rho_alphabet(w)) {
        if (l.gen == RhoGen::G)
            f.gamma_exp += l.exp;
        else if (l.gen == RhoGen::Delta)
            f.delta_exp += l.exp;
        else
            rest.push_back(l);
    }
    rest = reduce_rho(rest);

    // cyclic reduction
    std::size_t lo = 0, hi = rest.size();
    while (hi - lo >= 2 && rest[lo].gen == rest[hi - 1].gen && rest[lo].exp == -rest[hi - 1].exp) {
        ++lo;
        --hi;
    }
    RhoWord cyc(rest.begin() + static_cast<std::ptrdiff_t>(lo), rest.begin() + static_cast<std::ptrdiff_t>(hi));

    // least rotation; letters ordered by generator, then + before -
    auto key = [](const RhoLetter& l) { return std::pair{static_cast<int>(l.gen), l.exp > 0 ? 0 : 1}; };
    auto less_rot = [&](std::size_t a, std::size_t b) {
        const std::size_t n = cyc.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto ka = key(cyc[(a + i) % n]);
            const auto kb = key(cyc[(b + i) % n]);
            if (ka != kb)
                return ka < kb;
        }
        return false;
    };
    std::size_t best = 0;
    for (std::size_t r = 1; r < cyc.size(); ++r)
        if (less_rot(r, best))
            best = r;
    std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(best), cyc.end());
    f.core = std::move(cyc);
    return f;
}

Word mod_k_representative(const ModKForm& f)
{
    RhoWord w = f.core;
    for (long i = 0; i < std::abs(f.gamma_exp); ++i)
        w.push_back({RhoGen::G, static_cast<std::int8_t>(f.gamma_exp > 0 ? 1 : -1)});
    for (long i = 0; i < std::abs(f.delta_exp); ++i)
        w.push_back({RhoGen::Delta, static_cast<std::int8_t>(f.delta_exp > 0 ? 1 : -1)});
    return substitute_back(w);
}

std::vector<Word> var_orbit(int i_max)
{
    std::vector<Word> out;
    if (i_max < 1)
        return out;
    Word w = delta_word();
    out.push_back(w);
    for (int i = 2; i <= i_max; ++i) {
        w = mod_k_representative(normalize_mod_k(var(w)));
        out.push_back(w);
    }
    return out;
}

Word project_mod_gamma_subgroup(const Word& w)
{
    std::vector<Letter> raw;
    for (const Letter& l : w.letters()) {
        switch (l.gen) {
        case Gen::G: break;
        case Gen::D0: {
            // d0 = D d3^-1 d2^-1 d1^-1, D deleted
            std::vector<Letter> s{{Gen::D3, -1}, {Gen::D2, -1}, {Gen::D1, -1}};
            if (l.exp < 0)
                s = inverse_letters<Letter>(s);
            raw.insert(raw.end(), s.begin(), s.end());
            break;
        }
        default: raw.push_back(l);
        }
    }
    return Word(raw);
}

AbelianVector abelianize(const Word& w)
{
    AbelianVector v{};
    for (const Letter& l : w.letters())
        v[index(l.gen)] += l.exp;
    return v;
}

// ---------------------------------------------------------------------------

std::string_view gen_name(Gen g)
{
    static constexpr std::array<std::string_view, kNumGens> names{"g", "d0", "d1", "d2", "d3"};
    return names[index(g)];
}

std::string format_word(const Word& w)
{
    if (w.is_identity())
        return "1";
    std::string out;
    for (const Letter& l : w.letters()) {
        if (!out.empty())
            out += ' ';
        out += gen_name(l.gen);
        if (l.exp < 0)
            out += '\'';
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Word parse()
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '1') {
            const std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ == s_.size())
                return Word();
            pos_ = save;
        }
        Word w = word();
        skip_ws();
        if (pos_ != s_.size())
            throw WordParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return w;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_term_start()
    {
        skip_ws();
        if (pos_ >= s_.size())
            return false;
        const char c = s_[pos_];
        return c == 'g' || c == 'd' || c == 'x' || c == 'z' || c == 'D' || c == '[' || c == '(';
    }

    Word word()
    {
        if (!at_term_start()) {
            if (pos_ >= s_.size())
                throw WordParseError("unexpected end of input, expected a letter", pos_);
            throw WordParseError("unknown letter '" + std::string(1, s_[pos_]) + "'", pos_);
        }
        Word w;
        while (at_term_start())
            w = w * term();
        return w;
    }

    Word term()
    {
        Word a = atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            ++pos_;
            return a.inverse();
        }
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
                ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string_view num = s_.substr(start, pos_ - start);
            if (!num.empty() && num.front() == '+')
                num.remove_prefix(1);
            int n = 0;
            auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
            if (ec != std::errc() || p != num.data() + num.size() || num.empty())
                throw WordParseError("expected integer exponent", start);
            return a.pow(n);
        }
        return a;
    }

    Word atom()
    {
        skip_ws();
        const std::size_t start = pos_;
        const char c = s_[pos_];
        if (c == '[') {
            ++pos_;
            Word u = word();
            expect(',');
            Word v = word();
            expect(']');
            return commutator(u, v);
        }
        if (c == '(') {
            ++pos_;
            Word u = word();
            expect(')');
            return u;
        }
        ++pos_;
        switch (c) {
        case 'g': return gamma();
        case 'x': return x_word();
        case 'z': return z_word();
        case 'D': return delta_word();
        case 'd': {
            if (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '3') {
                const auto g = static_cast<Gen>(1 + (s_[pos_] - '0'));
                ++pos_;
                return Word::gen(g);
            }
            throw WordParseError("unknown letter 'd' (expected d0..d3)", start);
        }
        default: throw WordParseError("unknown letter '" + std::string(1, c) + "'", start);
        }
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size())
            throw WordParseError(std::string("expected '") + c + "' but input ended", pos_);
        if (s_[pos_] != c)
            throw WordParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Word parse_word(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------

Word RandomWords::next()
{
    std::uniform_int_distribution<std::size_t> len(0, max_len_);
    std::uniform_int_distribution<int> gen(0, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Letter> raw(len(rng_));
    for (Letter& l : raw)
        l = {static_cast<Gen>(gen(rng_)), static_cast<std::int8_t>(sign(rng_) ? 1 : -1)};
    return Word(raw);
}

Word RandomWords::next_delta_only()
{
    std::uniform_int_distribution<std::size_t> len(0, max_len_);
    std::uniform_int_distribution<int> gen(1, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Letter> raw(len(rng_));
    for (Letter& l : raw)
        l = {static_cast<Gen>(gen(rng_)), static_cast<std::int8_t>(sign(rng_) ? 1 : -1)};
    return Word(raw);
}

} // namespace orbitdepth
