#include "orbitdepth/representation.hpp"

#include "orbitdepth/error.hpp"

#include <json.hpp>

#include <random>
#include <sstream>
#include <tuple>

namespace orbitdepth {

namespace {

void check_level(int k, int k_max)
{
    if (k < 1 || k > k_max)
        throw DomainError("level k=" + std::to_string(k) + " outside 1.." + std::to_string(k_max));
}

mpz_class factorial(int k)
{
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

// All l-subsets of {1..k}, lexicographic.
void for_each_subset(int k, int l, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == l) {
            fn(cur);
            return;
        }
        for (int j = start; j <= k; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

} // namespace

RepMatrix::RepMatrix(int k) : k_(k), n_(std::size_t{1} << k), e_(n_ * n_) {}

RepMatrix RepMatrix::identity(int k)
{
    RepMatrix m(k);
    for (std::size_t i = 0; i < m.n_; ++i)
        m.at(i, i) = 1;
    return m;
}

bool RepMatrix::is_identity() const
{
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const LaurentPoly2& v = at(i, j);
            if (i == j ? v != LaurentPoly2(1) : !v.is_zero())
                return false;
        }
    return true;
}

std::size_t RepMatrix::nonzero_count() const
{
    std::size_t c = 0;
    for (const auto& v : e_)
        c += v.is_zero() ? 0 : 1;
    return c;
}

bool RepMatrix::is_upper_triangular() const
{
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!at(i, j).is_zero())
                return false;
    return true;
}

RepMatrix RepMatrix::scaled(const LaurentPoly2& s) const
{
    RepMatrix out(k_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        out.e_[i] = e_[i] * s;
    return out;
}

std::vector<mpq_class> RepMatrix::evaluate(const mpq_class& a, const mpq_class& c) const
{
    std::vector<mpq_class> out(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i)
        out[i] = e_[i].evaluate(a, c);
    return out;
}

RepMatrix operator*(const RepMatrix& x, const RepMatrix& y)
{
    if (x.k_ != y.k_)
        throw DomainError("matrix level mismatch");
    const std::size_t n = x.n_;
    // Row-wise sparse view of y.
    std::vector<std::vector<std::size_t>> ycols(n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            if (!y.at(l, j).is_zero())
                ycols[l].push_back(j);
    RepMatrix out(x.k_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const LaurentPoly2& xv = x.at(i, l);
            if (xv.is_zero())
                continue;
            for (std::size_t j : ycols[l])
                out.at(i, j) += xv * y.at(l, j);
        }
    return out;
}

RepMatrix operator+(const RepMatrix& x, const RepMatrix& y)
{
    RepMatrix out(x);
    for (std::size_t i = 0; i < out.e_.size(); ++i)
        out.e_[i] += y.e_[i];
    return out;
}

RepMatrix operator-(const RepMatrix& x, const RepMatrix& y)
{
    RepMatrix out(x);
    for (std::size_t i = 0; i < out.e_.size(); ++i)
        out.e_[i] -= y.e_[i];
    return out;
}

std::string RepMatrix::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < n_; ++j)
            os << (j ? ", " : "") << at(i, j).to_string();
        os << "]\n";
    }
    return os.str();
}

std::vector<mpq_class> rational_matmul(const std::vector<mpq_class>& x, const std::vector<mpq_class>& y, std::size_t n)
{
    std::vector<mpq_class> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (x[i * n + l] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i * n + j] += x[i * n + l] * y[l * n + j];
        }
    return out;
}

// ---------------------------------------------------------------------------

RepMatrix TensorWord::to_matrix() const
{
    // Start from the 1x1 unit and take Kronecker products left to right.
    std::vector<int> m{1};
    std::size_t n = 1;
    for (TensorTag t : factors) {
        std::array<int, 4> f{};
        switch (t) {
        case TensorTag::I2: f = {1, 0, 0, 1}; break;
        case TensorTag::J2: f = {0, 1, 0, 0}; break;
        case TensorTag::E2: f = {0, 0, 0, 1}; break;
        case TensorTag::F2: f = {1, 0, 0, 0}; break;
        }
        std::vector<int> next(4 * n * n);
        const std::size_t nn = 2 * n;
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        next[(p * n + i) * nn + q * n + j] = f[p * 2 + q] * m[i * n + j];
        m = std::move(next);
        n = nn;
    }
    RepMatrix out(static_cast<int>(factors.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m[i * n + j])
                out.at(i, j) = m[i * n + j];
    return out;
}

std::string TensorWord::to_string() const
{
    static constexpr std::array<const char*, 4> names{"I2", "J2", "E2", "F2"};
    std::string s;
    for (TensorTag t : factors) {
        if (!s.empty())
            s += " x ";
        s += names[static_cast<std::size_t>(t)];
    }
    return s;
}

namespace {

TensorWord tensor_with_j(int k, TensorTag base, std::span<const int> positions)
{
    TensorWord w{std::vector<TensorTag>(static_cast<std::size_t>(k), base)};
    for (int p : positions) {
        if (p < 1 || p > k)
            throw DomainError("tensor position out of range");
        w.factors[static_cast<std::size_t>(p - 1)] = TensorTag::J2;
    }
    return w;
}

} // namespace

TensorWord b_tensor(int k, std::span<const int> positions) { return tensor_with_j(k, TensorTag::I2, positions); }
TensorWord e_tensor(int k, std::span<const int> positions) { return tensor_with_j(k, TensorTag::E2, positions); }
TensorWord alpha_tensor(int k) { return {std::vector<TensorTag>(static_cast<std::size_t>(k), TensorTag::F2)}; }
TensorWord gamma_tensor(int k) { return {std::vector<TensorTag>(static_cast<std::size_t>(k), TensorTag::E2)}; }
TensorWord corner_tensor(int k) { return {std::vector<TensorTag>(static_cast<std::size_t>(k), TensorTag::J2)}; }

RepMatrix beta_matrix(int k)
{
    RepMatrix b(k);
    for (int j = 1; j <= k; ++j) {
        const int pos[1] = {j};
        b = b + b_tensor(k, pos).to_matrix();
    }
    return b;
}

RepMatrix epsilon_matrix(int k, int l)
{
    RepMatrix e(k);
    if (l > k)
        return e;
    for_each_subset(k, l, [&](const std::vector<int>& s) { e = e + e_tensor(k, s).to_matrix(); });
    return e.scaled(LaurentPoly2(mpq_class(factorial(l))));
}

BaseMatrices base_matrices(int k, int k_max)
{
    check_level(k, k_max);
    // Level 0: 1x1 matrices a, 1, c.
    RepMatrix A(0), B(0), C(0);
    A.at(0, 0) = LaurentPoly2::a();
    B.at(0, 0) = 1;
    C.at(0, 0) = LaurentPoly2::c();
    for (int level = 0; level < k; ++level) {
        const std::size_t n = A.size();
        RepMatrix A2(level + 1), B2(level + 1), C2(level + 1);
        for (std::size_t i = 0; i < n; ++i) {
            A2.at(n + i, n + i) = 1;
            C2.at(i, i) = 1;
            B2.at(i, n + i) = 1;
            for (std::size_t j = 0; j < n; ++j) {
                A2.at(i, j) = A.at(i, j);
                C2.at(n + i, n + j) = C.at(i, j);
                B2.at(i, j) = B.at(i, j);
                B2.at(n + i, n + j) = B.at(i, j);
            }
        }
        A = std::move(A2);
        B = std::move(B2);
        C = std::move(C2);
    }
    return {std::move(A), std::move(B), std::move(C)};
}

BaseMatrices closed_form_matrices(int k)
{
    const RepMatrix I = RepMatrix::identity(k);
    return {I + alpha_tensor(k).to_matrix().scaled(LaurentPoly2::a() - 1),
            I + beta_matrix(k),
            I + gamma_tensor(k).to_matrix().scaled(LaurentPoly2::c() - 1)};
}

// ---------------------------------------------------------------------------

Representation::Representation(int k, int k_max) : k_(k)
{
    const BaseMatrices m = base_matrices(k, k_max);
    const RepMatrix I = RepMatrix::identity(k);
    // A and C are diagonal; B is unipotent with inverse sum_{j<=k} (-beta)^j.
    auto diag_inverse = [&](const RepMatrix& d) {
        RepMatrix out(k);
        for (std::size_t i = 0; i < d.size(); ++i)
            out.at(i, i) = d.at(i, i).unit_inverse();
        return out;
    };
    const RepMatrix beta = m.B - I;
    const RepMatrix neg_beta = beta.scaled(LaurentPoly2(-1));
    RepMatrix b_inv = I, power = I;
    for (int j = 1; j <= k; ++j) {
        power = power * neg_beta;
        b_inv = b_inv + power;
    }
    pos_ = {I, I, m.A, m.B, m.C};
    neg_ = {I, I, diag_inverse(m.A), b_inv, diag_inverse(m.C)};
}

const RepMatrix& Representation::image(RhoGen g, int exp) const
{
    const auto i = static_cast<std::size_t>(g);
    return exp > 0 ? pos_[i] : neg_[i];
}

RepMatrix Representation::operator()(std::span<const RhoLetter> w) const
{
    RepMatrix out = RepMatrix::identity(k_);
    for (const RhoLetter& l : w) {
        if (l.gen == RhoGen::G || l.gen == RhoGen::Delta)
            continue;
        out = out * image(l.gen, l.exp);
    }
    return out;
}

RepMatrix Representation::operator()(const Word& w) const { return (*this)(rewrite_to_rho_alphabet(w)); }

RepMatrix rho(int k, const Word& w) { return Representation(k)(w); }

LaurentPoly2 corner_prefactor(int k)
{
    const LaurentPoly2 a_minus_1 = LaurentPoly2::a() - 1;
    const LaurentPoly2 one_minus_inv_c = LaurentPoly2(1) - LaurentPoly2::monomial(0, -1);
    return a_minus_1 * one_minus_inv_c * LaurentPoly2(mpq_class(factorial(k)));
}

LaurentPoly2 stated_corner_prefactor(int k)
{
    const LaurentPoly2 inv_c_minus_1 = LaurentPoly2::monomial(0, -1) - 1;
    const LaurentPoly2 inv_a_minus_1 = LaurentPoly2::monomial(-1, 0) - 1;
    return inv_c_minus_1 * inv_a_minus_1 * LaurentPoly2(mpq_class(factorial(k)));
}

namespace {

RepMatrix identity_plus_corner(int k, const LaurentPoly2& s)
{
    RepMatrix m = RepMatrix::identity(k);
    m.at(0, m.size() - 1) += s;
    return m;
}

// Describe the first entry where two matrices differ.
std::string first_difference(const RepMatrix& x, const RepMatrix& y)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x.at(i, j) != y.at(i, j))
                return "(" + std::to_string(i) + "," + std::to_string(j) + "): " + x.at(i, j).to_string() +
                       " vs " + y.at(i, j).to_string();
    return "";
}

} // namespace

VImagesReport verify_v_images(int k, int i_max, const std::function<Word(int)>& word_for)
{
    if (i_max < k + 2)
        throw DomainError("verify_v_images: i_max must be >= k+2");
    const Representation rep(k);
    VImagesReport r;
    r.k = k;
    r.i_max = i_max;
    r.pass = true;
    const RepMatrix I = RepMatrix::identity(k);
    for (int i = 2; i <= i_max; ++i) {
        const RepMatrix img = rep(word_for(i));
        IdentityCheck c;
        if (i == k + 2) {
            const RepMatrix expected = identity_plus_corner(k, corner_prefactor(k));
            c.name = "rho_" + std::to_string(k) + "(v_" + std::to_string(i) + ") = I + corner";
            c.expected = "I + (" + corner_prefactor(k).to_string() + ") e_{0," + std::to_string(I.size() - 1) + "}";
            c.pass = img == expected;
            c.computed = c.pass ? c.expected : first_difference(img, expected);
        } else {
            c.name = "rho_" + std::to_string(k) + "(v_" + std::to_string(i) + ") = I";
            c.expected = "I";
            c.pass = img.is_identity();
            c.computed = c.pass ? "I" : first_difference(img, I);
        }
        r.pass = r.pass && c.pass;
        r.checks.push_back(std::move(c));
    }
    return r;
}

CommutatorScalar commutator_scalar(const Representation& rep, const RepMatrix& v, const RepMatrix& v_inv,
                                   const Word& s)
{
    const int k = rep.level();
    const RhoWord sr = rewrite_to_rho_alphabet(s);
    const RhoWord sr_inv = rewrite_to_rho_alphabet(s.inverse());
    const RepMatrix S = rep(sr);
    const RepMatrix S_inv = rep(sr_inv);
    const RepMatrix I = RepMatrix::identity(k);
    // [S,V] = I + S (V-I) S^-1 V^-1 - (V-I) V^-1, cheap because V - I is sparse.
    const RepMatrix n = v - I;
    const RepMatrix comm = I + ((S * n) * S_inv) * v_inv - n * v_inv;

    CommutatorScalar out;
    std::tie(out.m, out.n) = exponent_sums_rho(s);
    const std::size_t last = comm.size() - 1;
    out.scalar = comm.at(0, last);
    RepMatrix rest = comm;
    rest.at(0, last) = LaurentPoly2();
    if (!rest.is_identity())
        throw CheckFailure("commutator with " + format_word(s) + " is not identity plus corner: " +
                           first_difference(rest, I));
    const LaurentPoly2 expected =
        (LaurentPoly2::monomial(static_cast<int>(out.m), static_cast<int>(-out.n)) - 1) * corner_prefactor(k);
    if (out.scalar != expected)
        throw CheckFailure("commutator scalar for " + format_word(s) + ": got " + out.scalar.to_string() +
                           ", expected " + expected.to_string());
    return out;
}

CommutatorScalar commutator_scalar(int k, const Word& s)
{
    const Representation rep(k);
    const RepMatrix v = rep(v_k(k + 2));
    const RepMatrix v_inv = rep(v_k(k + 2).inverse());
    return commutator_scalar(rep, v, v_inv, s);
}

LaurentPoly2 impossibility_polynomial(std::span<const ExponentTerm> terms)
{
    LaurentPoly2 p = -1;
    for (const ExponentTerm& t : terms) {
        if (t.m == 0 && t.n == 0)
            throw DomainError("impossibility_check: term with (m, n) = (0, 0)");
        p += LaurentPoly2::monomial(static_cast<int>(t.m), static_cast<int>(-t.n), mpq_class(t.lambda));
        p -= LaurentPoly2(mpq_class(t.lambda));
    }
    return p;
}

bool impossibility_check(std::span<const ExponentTerm> terms) { return !impossibility_polynomial(terms).is_zero(); }

std::string DepthCertificate::to_json() const
{
    nlohmann::ordered_json j;
    j["k"] = k;
    j["samples"] = samples;
    j["seed"] = seed;
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const IdentityCheck& c : checks)
        arr.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
    j["pass"] = pass;
    return j.dump(2);
}

DepthCertificate depth_certificate(int k, int samples, std::uint64_t seed, int substitute_index)
{
    DepthCertificate cert;
    cert.k = k;
    cert.samples = samples;
    cert.seed = seed;
    cert.pass = false;

    const int target = k + 2;
    auto word_for = [&](int i) { return (i == target && substitute_index > 0) ? v_k(substitute_index) : v_k(i); };
    const VImagesReport images = verify_v_images(k, k + 4, word_for);
    for (const IdentityCheck& c : images.checks) {
        cert.checks.push_back(c);
        if (!c.pass)
            return cert;
    }

    const Representation rep(k);
    const Word v = word_for(target);
    const RepMatrix V = rep(v), V_inv = rep(v.inverse());
    RandomWords gen(seed);
    std::vector<ExponentTerm> harvested;
    std::mt19937_64 lambda_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long> lambda_dist(-5, 5);
    int failures = 0;
    for (int s = 0; s < samples; ++s) {
        const Word w = gen.next();
        IdentityCheck c;
        c.name = "commutator scalar #" + std::to_string(s);
        try {
            const CommutatorScalar cs = commutator_scalar(rep, V, V_inv, w);
            c.pass = true;
            c.computed = cs.scalar.to_string();
            c.expected = c.computed;
            if (cs.m != 0 || cs.n != 0)
                harvested.push_back({lambda_dist(lambda_rng), cs.m, cs.n});
        } catch (const CheckFailure& e) {
            c.pass = false;
            c.computed = e.what();
            c.expected = "(a^m c^-n - 1) * (" + corner_prefactor(k).to_string() + ")";
            ++failures;
        }
        cert.checks.push_back(std::move(c));
        if (failures)
            return cert;
    }

    if (!harvested.empty()) {
        // Drop zero multiplicities so the list is a genuine relation candidate.
        std::vector<ExponentTerm> terms;
        for (const ExponentTerm& t : harvested)
            if (t.lambda != 0)
                terms.push_back(t);
        IdentityCheck c;
        c.name = "no relation rho(v_k+2) = prod [rho(s_j), rho(v_k+2)] over harvested exponents";
        c.expected = "nonzero obstruction polynomial";
        const LaurentPoly2 p = impossibility_polynomial(terms);
        c.pass = !p.is_zero();
        c.computed = p.to_string();
        cert.checks.push_back(std::move(c));
        if (!cert.checks.back().pass)
            return cert;
    }
    cert.pass = true;
    return cert;
}

} // namespace orbitdepth
