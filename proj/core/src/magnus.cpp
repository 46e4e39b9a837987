#include "orbitdepth/magnus.hpp"

#include <algorithm>
#include <sstream>

namespace orbitdepth {

namespace {

std::uint64_t pow5(int n)
{
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i)
        r *= 5;
    return r;
}

} // namespace

Monomial Monomial::from_letters(const std::vector<Gen>& letters)
{
    if (letters.size() > static_cast<std::size_t>(kMaxLength))
        throw DomainError("monomial longer than " + std::to_string(kMaxLength));
    std::uint64_t code = 0;
    for (Gen g : letters)
        code = code * 5 + index(g);
    return Monomial((code << 5) | letters.size());
}

std::vector<Gen> Monomial::letters() const
{
    std::vector<Gen> out(static_cast<std::size_t>(degree()));
    std::uint64_t c = code();
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        *it = static_cast<Gen>(c % 5);
        c /= 5;
    }
    return out;
}

Monomial Monomial::append(Gen g) const
{
    return Monomial(((code() * 5 + index(g)) << 5) | static_cast<std::uint64_t>(degree() + 1));
}

Monomial Monomial::concat(const Monomial& rhs) const
{
    const std::uint64_t c = code() * pow5(rhs.degree()) + rhs.code();
    return Monomial((c << 5) | static_cast<std::uint64_t>(degree() + rhs.degree()));
}

bool operator<(const Monomial& a, const Monomial& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    return a.code() < b.code();
}

TruncatedSeries::TruncatedSeries(int degree) : degree_(degree)
{
    if (degree < 0 || degree > Monomial::kMaxLength)
        throw DomainError("truncation degree out of range: " + std::to_string(degree));
}

TruncatedSeries TruncatedSeries::one(int degree)
{
    TruncatedSeries s(degree);
    s.terms_.emplace(Monomial(), 1);
    return s;
}

mpz_class TruncatedSeries::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void TruncatedSeries::add_term(const Monomial& m, const mpz_class& c)
{
    if (m.degree() > degree_ || c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

std::vector<std::pair<Monomial, mpz_class>> TruncatedSeries::sorted_terms() const
{
    std::vector<std::pair<Monomial, mpz_class>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

TruncatedSeries TruncatedSeries::component(int d) const
{
    TruncatedSeries out(degree_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == d)
            out.terms_.emplace(m, c);
    return out;
}

std::optional<int> TruncatedSeries::lowest_degree(bool skip_constant) const
{
    std::optional<int> best;
    for (const auto& [m, c] : terms_) {
        if (skip_constant && m.degree() == 0)
            continue;
        if (!best || m.degree() < *best)
            best = m.degree();
    }
    return best;
}

TruncatedSeries TruncatedSeries::times_letter(Gen g, int exp) const
{
    TruncatedSeries out(*this);
    if (exp > 0) {
        for (const auto& [m, c] : terms_)
            if (m.degree() < degree_)
                out.add_term(m.append(g), c);
    } else {
        // (1 + X)^-1 = sum (-X)^n
        for (const auto& [m, c] : terms_) {
            Monomial cur = m;
            mpz_class coef = c;
            while (cur.degree() < degree_) {
                cur = cur.append(g);
                coef = -coef;
                out.add_term(cur, coef);
            }
        }
    }
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    const int n = std::min(a.degree_, b.degree_);
    TruncatedSeries out(n);
    for (const auto& [ma, ca] : a.terms_) {
        if (ma.degree() > n)
            continue;
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.degree() + mb.degree() > n)
                continue;
            out.add_term(ma.concat(mb), ca * cb);
        }
    }
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    TruncatedSeries out(std::min(a.degree_, b.degree_));
    for (const auto& [m, c] : a.terms_)
        out.add_term(m, c);
    for (const auto& [m, c] : b.terms_)
        out.add_term(m, c);
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
{
    TruncatedSeries out(std::min(a.degree_, b.degree_));
    for (const auto& [m, c] : a.terms_)
        out.add_term(m, c);
    for (const auto& [m, c] : b.terms_)
        out.add_term(m, -c);
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string TruncatedSeries::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
        mpz_class mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        const auto letters = m.letters();
        if (letters.empty()) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << ' ';
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i)
                os << ' ';
            os << 'X' << '_' << gen_name(letters[i]);
        }
    }
    return os.str();
}

TruncatedSeries magnus(const Word& w, int degree)
{
    if (degree < 1)
        throw DomainError("magnus: degree must be >= 1");
    TruncatedSeries s = TruncatedSeries::one(degree);
    for (const Letter& l : w.letters())
        s = s.times_letter(l.gen, l.exp);
    return s;
}

std::string DepthReport::depth_string() const
{
    if (identity)
        return "inf";
    if (lowest_degree)
        return std::to_string(*lowest_degree);
    return ">=" + std::to_string(truncation + 1);
}

DepthReport depth_lower_bound(const Word& w, int degree)
{
    DepthReport r(degree);
    r.word = w;
    r.identity = w.is_identity();
    if (r.identity)
        return r;
    const TruncatedSeries s = magnus(w, degree) - TruncatedSeries::one(degree);
    r.lowest_degree = s.lowest_degree();
    if (r.lowest_degree)
        r.leading = s.component(*r.lowest_degree);
    return r;
}

bool graded_triviality_check(const Word& w, const Endo& endo, int degree)
{
    if (w.contains(Gen::G))
        throw DomainError("graded_triviality_check: word contains g");
    const DepthReport base = depth_lower_bound(w, degree);
    const DepthReport diff = depth_lower_bound(endo(w) * w.inverse(), degree);
    if (diff.identity)
        return true;
    if (base.identity)
        return false;
    // Undetermined depths beyond truncation count as infinitely deep.
    const int b = base.lowest_degree.value_or(degree + 1);
    if (!diff.lowest_degree)
        return true;
    return *diff.lowest_degree > b;
}

std::optional<int> leading_difference_degree(const Word& u, const Word& v, int degree)
{
    return (magnus(u, degree) - magnus(v, degree)).lowest_degree();
}

} // namespace orbitdepth
