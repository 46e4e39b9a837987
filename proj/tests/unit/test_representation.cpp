#include "orbitdepth/error.hpp"
#include "orbitdepth/representation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbitdepth;

namespace {

using LP = LaurentPoly2;

LP a() { return LP::a(); }
LP c() { return LP::c(); }
LP inv_a() { return LP::monomial(-1, 0); }
LP inv_c() { return LP::monomial(0, -1); }

} // namespace

TEST(Laurent, RingBasics)
{
    const LP p = a() + c() - 2;
    const LP q = a() - inv_c();
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) * p, p * p + q * p);
    EXPECT_EQ(p - p, LP());
    EXPECT_EQ((a() * inv_a()), LP(1));
    EXPECT_EQ(LP::monomial(2, -3, 5).unit_inverse(), LP::monomial(-2, 3, mpq_class(1, 5)));
    EXPECT_THROW(p.unit_inverse(), DomainError);
    EXPECT_EQ(p.evaluate(2, 3), 3);
    EXPECT_EQ(q.evaluate(2, 3), mpq_class(5, 3));
    EXPECT_EQ((a() - 1).to_string(), "-1 + a");
}

TEST(BaseMatrices, SmallLevels)
{
    const BaseMatrices m1 = base_matrices(1);
    EXPECT_EQ(m1.B.at(0, 0), LP(1));
    EXPECT_EQ(m1.B.at(0, 1), LP(1));
    EXPECT_EQ(m1.B.at(1, 0), LP());
    EXPECT_EQ(m1.B.at(1, 1), LP(1));
    EXPECT_EQ(m1.A.at(0, 0), a());
    EXPECT_EQ(m1.A.at(1, 1), LP(1));
    EXPECT_EQ(m1.A.nonzero_count(), 2u);
    const BaseMatrices m2 = base_matrices(2);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(m2.C.at(i, i), LP(1));
    EXPECT_EQ(m2.C.at(3, 3), c());
    EXPECT_EQ(m2.C.nonzero_count(), 4u);
    EXPECT_THROW(base_matrices(0), DomainError);
    EXPECT_THROW(base_matrices(9), DomainError);
}

TEST(BaseMatrices, ClosedFormsMatchRecursion)
{
    for (int k = 1; k <= 6; ++k) {
        const BaseMatrices r = base_matrices(k), f = closed_form_matrices(k);
        EXPECT_EQ(r.A, f.A) << k;
        EXPECT_EQ(r.B, f.B) << k;
        EXPECT_EQ(r.C, f.C) << k;
    }
}

TEST(BaseMatrices, BetaPowers)
{
    for (int k = 1; k <= 6; ++k) {
        const RepMatrix beta = beta_matrix(k);
        RepMatrix p = RepMatrix::identity(k);
        for (int j = 0; j < k; ++j)
            p = p * beta;
        mpz_class kf = 1;
        for (int i = 2; i <= k; ++i)
            kf *= i;
        EXPECT_EQ(p, corner_tensor(k).to_matrix().scaled(LP(mpq_class(kf)))) << k;
        EXPECT_EQ((p * beta).nonzero_count(), 0u) << k;
    }
}

TEST(BaseMatrices, IteratedCommutatorsWithB)
{
    for (int k = 1; k <= 5; ++k) {
        const Representation rep(k);
        const RepMatrix I = RepMatrix::identity(k);
        const RepMatrix B = rep.image(RhoGen::D2, 1), Bi = rep.image(RhoGen::D2, -1);
        RepMatrix X = rep.image(RhoGen::Z, 1), Xi = rep.image(RhoGen::Z, -1);
        for (int l = 1; l <= k; ++l) {
            const RepMatrix next = B * X * Bi * Xi;
            const RepMatrix next_inv = X * B * Xi * Bi;
            X = next;
            Xi = next_inv;
            EXPECT_EQ(X, I - epsilon_matrix(k, l).scaled(inv_c() - 1)) << "k=" << k << " l=" << l;
        }
    }
}

TEST(Rho, Examples)
{
    for (int k = 1; k <= 3; ++k) {
        EXPECT_TRUE(rho(k, gamma()).is_identity());
        EXPECT_TRUE(rho(k, delta_word()).is_identity());
        EXPECT_TRUE(rho(k, parse_word("d2 d2'")).is_identity());
    }
    const RepMatrix m = rho(1, commutator(Word::gen(Gen::D2), z_word()));
    EXPECT_EQ(m.at(0, 0), LP(1));
    EXPECT_EQ(m.at(1, 1), LP(1));
    EXPECT_EQ(m.at(1, 0), LP());
    EXPECT_EQ(m.at(0, 1), -(inv_c() - 1));
}

TEST(Rho, GeneratorInverses)
{
    for (int k = 1; k <= 5; ++k) {
        const Representation rep(k);
        for (RhoGen g : {RhoGen::X, RhoGen::D2, RhoGen::Z})
            EXPECT_TRUE((rep.image(g, 1) * rep.image(g, -1)).is_identity());
    }
}

TEST(Rho, Homomorphism)
{
    RandomWords gen(4242, 20);
    for (int k = 1; k <= 4; ++k) {
        const Representation rep(k);
        for (int i = 0; i < 100; ++i) {
            const Word u = gen.next(), v = gen.next();
            EXPECT_EQ(rep(u * v), rep(u) * rep(v));
        }
    }
}

TEST(Rho, DiagonalPlusStrictlyUpper)
{
    RandomWords gen(99);
    for (int k = 1; k <= 4; ++k) {
        const Representation rep(k);
        for (int i = 0; i < 30; ++i) {
            const Word s = gen.next();
            const RepMatrix m = rep(s);
            const auto [mm, nn] = exponent_sums_rho(s);
            ASSERT_TRUE(m.is_upper_triangular());
            const std::size_t last = m.size() - 1;
            EXPECT_EQ(m.at(0, 0), LP::monomial(static_cast<int>(mm), 0));
            EXPECT_EQ(m.at(last, last), LP::monomial(0, static_cast<int>(nn)));
            for (std::size_t j = 1; j < last; ++j)
                EXPECT_EQ(m.at(j, j), LP(1));
        }
    }
}

TEST(Rho, EvaluationHomomorphism)
{
    RandomWords gen(1234, 16);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int k = 1; k <= 3; ++k) {
        const Representation rep(k);
        for (int i = 0; i < 20; ++i) {
            mpq_class av, cv;
            do {
                av = mpq_class(num(rng), den(rng));
                av.canonicalize();
            } while (av == 0 || av == 1);
            do {
                cv = mpq_class(num(rng), den(rng));
                cv.canonicalize();
            } while (cv == 0 || cv == 1);
            const Word u = gen.next(), v = gen.next();
            const auto lhs = rep(u * v).evaluate(av, cv);
            const auto rhs = rational_matmul(rep(u).evaluate(av, cv), rep(v).evaluate(av, cv), rep(u).size());
            EXPECT_EQ(lhs, rhs);
            // and on the v_{k+2} corner identity
            const auto vk = rep(v_k(k + 2)).evaluate(av, cv);
            EXPECT_EQ(vk[rep(u).size() - 1], corner_prefactor(k).evaluate(av, cv));
        }
    }
}

TEST(VImages, Levels)
{
    for (int k = 1; k <= 3; ++k) {
        const VImagesReport r = verify_v_images(k, k + 4);
        EXPECT_TRUE(r.pass) << k;
        EXPECT_EQ(r.checks.size(), static_cast<std::size_t>(k + 3));
    }
    EXPECT_THROW(verify_v_images(2, 3), DomainError);
}

TEST(VImages, CornerValues)
{
    // Reference values from an independent symbolic matrix computation:
    // k=1: (a-1)(c-1)/c, k=2: 2(a-1)(c-1)/c.
    EXPECT_EQ(rho(1, v_k(3)).at(0, 1), (a() - 1) * (LP(1) - inv_c()));
    const RepMatrix m = rho(2, v_k(4));
    EXPECT_EQ(m.at(0, 3), (a() - 1) * (LP(1) - inv_c()) * LP(2));
    EXPECT_EQ(m.at(0, 3), corner_prefactor(2));
    EXPECT_TRUE(rho(2, v_k(5)).is_identity());
    // k = 3 at a=2, c=3: 6 * 1 * (2/3) = 4
    EXPECT_EQ(rho(3, v_k(5)).at(0, 7).evaluate(2, 3), 4);
}

TEST(VImages, StatedClosedFormDiffersByUnitA)
{
    for (int k = 1; k <= 4; ++k) {
        EXPECT_NE(corner_prefactor(k), stated_corner_prefactor(k));
        EXPECT_EQ(corner_prefactor(k), stated_corner_prefactor(k) * a());
    }
    EXPECT_EQ(stated_corner_prefactor(3).evaluate(2, 3), 2);
}

TEST(CommutatorScalar, Examples)
{
    const CommutatorScalar x = commutator_scalar(1, x_word());
    EXPECT_EQ(x.m, 1);
    EXPECT_EQ(x.n, 0);
    EXPECT_EQ(x.scalar, (a() - 1) * corner_prefactor(1));
    const CommutatorScalar g = commutator_scalar(2, gamma());
    EXPECT_EQ(g.m, 0);
    EXPECT_EQ(g.n, 0);
    EXPECT_TRUE(g.scalar.is_zero());
    const CommutatorScalar s = commutator_scalar(2, z_word().inverse() * x_word() * x_word());
    EXPECT_EQ(s.m, 2);
    EXPECT_EQ(s.n, -1);
    EXPECT_EQ(s.scalar, (LP::monomial(2, 1) - 1) * corner_prefactor(2));
}

TEST(Impossibility, Examples)
{
    const std::vector<ExponentTerm> one{{1, 1, 0}};
    EXPECT_TRUE(impossibility_check(one));
    EXPECT_EQ(impossibility_polynomial(one), a() - 2);
    const std::vector<ExponentTerm> cancel{{3, 1, 1}, {-3, 1, 1}};
    EXPECT_TRUE(impossibility_check(cancel));
    EXPECT_EQ(impossibility_polynomial(cancel), LP(-1));
    const std::vector<ExponentTerm> bad{{1, 0, 0}};
    EXPECT_THROW(impossibility_check(bad), DomainError);
}

TEST(Impossibility, RandomLists)
{
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> lam(-6, 6), ex(-4, 4);
    std::uniform_int_distribution<int> len(1, 6);
    for (int i = 0; i < 100; ++i) {
        std::vector<ExponentTerm> terms(static_cast<std::size_t>(len(rng)));
        for (auto& t : terms) {
            do {
                t = {lam(rng), ex(rng), ex(rng)};
            } while (t.m == 0 && t.n == 0);
        }
        EXPECT_TRUE(impossibility_check(terms));
    }
}

TEST(Certificate, PassesAndNegativeControl)
{
    const DepthCertificate ok = depth_certificate(2, 10, 7);
    EXPECT_TRUE(ok.pass);
    const DepthCertificate bad = depth_certificate(2, 10, 7, 3);
    EXPECT_FALSE(bad.pass);
    const DepthCertificate images_only = depth_certificate(1, 0, 7);
    EXPECT_TRUE(images_only.pass);
    EXPECT_NE(ok.to_json().find("\"pass\": true"), std::string::npos);
}
