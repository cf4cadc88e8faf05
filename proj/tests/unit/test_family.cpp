#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace hnormal;
using namespace hnormal::test;

TEST_CASE("family names round-trip")
{
    for (FamilyTag f : all_families()) {
        const auto back = family_from_name(family_name(f));
        REQUIRE(back);
        CHECK(*back == f);
    }
    CHECK_FALSE(family_from_name("D2_N9"));
    CHECK(rank2_families().size() == 18);
}

TEST_CASE("sampled canonical forms are H-normal and in domain")
{
    for (FamilyTag f : all_families()) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CAPTURE(family_name(f));
            CAPTURE(seed);
            const auto [pair, p] = sample_canonical(SampleSpec{f, seed, {}, 1});
            CHECK(pair.size() == family_dimension(f));
            CHECK(p.slots() == family_slots(f));
            CHECK(satisfies_constraints(f, p));
            CHECK(is_h_normal(pair));
            const int expected_rank = f == FamilyTag::RANK0 ? 0 : f >= FamilyTag::RANK1_N2 ? 1 : 2;
            CHECK(signature(pair.H).rank() == expected_rank);
        }
    }
}

TEST_CASE("canonical entries outside slots are exact constants")
{
    InvariantRecord p;
    p.lambda1 = cplx(0.5, 0.25);
    p.z = std::polar(1.0, 0.3);
    p.r = 1.5;
    const CanonicalForm c = make_canonical(FamilyTag::D2_N5_B, p);
    CHECK(c.n_tilde(0, 2) == 1.0);
    CHECK(c.n_tilde(1, 3) == 1.5 * 1.0);
    CHECK(c.n_tilde(4, 0) == 0.0);
    CHECK(c.h_tilde(2, 2) == 1.0);
    CHECK(c.h_tilde(0, 3) == 1.0);
    CHECK(c.h_tilde(0, 0) == 0.0);
}

TEST_CASE("make_canonical rejects missing slots and bad sign")
{
    InvariantRecord p;
    p.lambda1 = 0.0;
    CHECK_THROWS_AS(make_canonical(FamilyTag::D2_N6, p), Error);
    p.z = 1.0;
    p.sign = 3;
    CHECK_THROWS_AS(make_canonical(FamilyTag::RANK1_N2, p), Error);
}

TEST_CASE("domain constraints")
{
    std::string why;

    InvariantRecord two;
    two.lambda1 = 1.0;
    two.lambda2 = cplx(1.0, 1.0);
    two.x = 0.7;
    CHECK_FALSE(satisfies_constraints(FamilyTag::TWO_EIG, two, 1e-9, &why));
    CHECK_FALSE(why.empty());
    two.x = 0.0;
    CHECK(satisfies_constraints(FamilyTag::TWO_EIG, two));
    two.lambda1 = I;
    two.lambda2 = 0.0;
    two.x = 2.0;
    CHECK(satisfies_constraints(FamilyTag::TWO_EIG, two));

    InvariantRecord d6;
    d6.lambda1 = 0.0;
    d6.z = -1.0;
    d6.r1 = 0.3;
    d6.r2 = 1.2;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D2_N6, d6));
    d6.z = std::polar(1.0, pi / 5.0);
    CHECK(satisfies_constraints(FamilyTag::D2_N6, d6));
    d6.r2 = -1.0;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D2_N6, d6));

    InvariantRecord d7;
    d7.lambda1 = 0.0;
    d7.alpha = 0.5;
    d7.beta = pi / 2.0;
    d7.z1 = I;
    d7.z2 = 1.0;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D2_N7, d7));
    d7.z1 = 1.0;
    CHECK(satisfies_constraints(FamilyTag::D2_N7, d7));

    InvariantRecord d4;
    d4.lambda1 = 0.0;
    d4.z = 1.0;
    d4.r = 1.0;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D2_N4_A, d4));
    d4.r = std::sqrt(3.0);
    d4.z = std::polar(1.0, 4.0);
    CHECK(satisfies_constraints(FamilyTag::D2_N4_A, d4));
    d4.r = 2.0;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D2_N4_A, d4));

    InvariantRecord b5;
    b5.lambda1 = 0.0;
    b5.z = I;
    b5.r1 = b5.r2 = b5.r3 = 1.0;
    CHECK_FALSE(satisfies_constraints(FamilyTag::D1_IND_N5_B, b5));
}

TEST_CASE("invariant_distance")
{
    const InvariantRecord a = params(FamilyTag::D2_N8, 4);
    CHECK(invariant_distance(a, a) == 0.0);
    InvariantRecord b = a;
    *b.beta += 1e-3;
    CHECK(invariant_distance(a, b) == doctest::Approx(1e-3));
    b.sign = -1;
    CHECK(std::isinf(invariant_distance(a, b)));
    CHECK(std::isinf(invariant_distance(a, params(FamilyTag::D2_N7, 4))));
}

TEST_CASE("make_certificate reports residuals")
{
    const auto [pair, p] = sample_canonical(SampleSpec{FamilyTag::D1_DEC_N5, 2, {}, 1});
    const CanonicalForm c = make_canonical(FamilyTag::D1_DEC_N5, p);
    const Certificate cert = make_certificate(pair.N, pair.H, c, CMatrix::Identity(5, 5));
    CHECK(cert.residual_similarity == 0.0);
    CHECK(cert.residual_congruence == 0.0);
}
