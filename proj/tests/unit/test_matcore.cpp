#include <doctest.h>

#include "support.hpp"

using namespace hnormal;
using namespace hnormal::test;

TEST_CASE("signature of standard forms")
{
    CHECK(signature(secondary_identity(4)) == Signature{2, 2});
    CHECK(signature(CMatrix::Identity(3, 3)) == Signature{0, 3});
    Eigen::MatrixXd d = Eigen::Vector3d(1.0, -1.0, 5.0).asDiagonal();
    CHECK(signature(d) == Signature{1, 2});
    CHECK(signature(d).rank() == 1);
}

TEST_CASE("signature rejects bad H")
{
    CMatrix h = CMatrix::Identity(2, 2);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(signature(h), Error);
    try {
        signature(h);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
    h(0, 1) = 0.0;
    h(1, 1) = 0.0;
    try {
        signature(h);
        FAIL("expected NearSingular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NearSingular);
    }
}

TEST_CASE("h_adjoint")
{
    const CMatrix a = random_matrix(3, 1);
    CHECK(max_abs(h_adjoint(a, CMatrix::Identity(3, 3)) - CMatrix(a.adjoint())) < 1e-14);

    const cplx l{0.3, -1.2};
    CMatrix j(2, 2);
    j << l, 1.0, 0.0, l;
    CMatrix expect(2, 2);
    expect << std::conj(l), 1.0, 0.0, std::conj(l);
    CHECK(max_abs(h_adjoint(j, secondary_identity(2)) - expect) < 1e-14);
}

TEST_CASE("is_h_normal")
{
    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << 1.0, I, -2.0;
    CHECK(is_h_normal(make_indefinite_pair(d, CMatrix(CMatrix::Identity(3, 3)))));

    InvariantRecord p;
    p.lambda1 = 0.0;
    p.z = 1.0;
    p.r1 = 0.0;
    p.r2 = 0.0;
    CHECK(is_h_normal(canonical_pair(FamilyTag::D1_IND_N4, p)));

    CMatrix nil = CMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    CHECK_FALSE(is_h_normal(make_indefinite_pair(nil, CMatrix(CMatrix::Identity(2, 2)))));
}

TEST_CASE("is_h_unitary")
{
    CHECK(is_h_unitary(CMatrix::Identity(4, 4), secondary_identity(4)));
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(3, 2));
    const CMatrix q = qr.householderQ();
    CHECK(is_h_unitary(q, CMatrix::Identity(3, 3)));
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = 2.0;
    u(1, 1) = 0.5;
    CHECK(is_h_unitary(u, secondary_identity(2)));
    CHECK_FALSE(is_h_unitary(u, CMatrix::Identity(2, 2)));
}

TEST_CASE("conjugate_pair")
{
    const IndefinitePair p = sampled_pair(FamilyTag::D2_N5_B, 3);
    const IndefinitePair same = conjugate_pair(p, CMatrix::Identity(5, 5));
    CHECK(max_abs(same.N - p.N) < 1e-15);
    CHECK(max_abs(same.H - p.H) < 1e-15);

    const cplx c{1.5, -2.0};
    const IndefinitePair scaled = conjugate_pair(p, c * CMatrix::Identity(5, 5));
    CHECK(max_abs(scaled.N - p.N) < 1e-13);
    CHECK(max_abs(scaled.H - std::norm(c) * p.H) < 1e-13);

    CHECK_THROWS_AS(conjugate_pair(p, CMatrix::Zero(5, 5)), Error);
}

TEST_CASE("make_indefinite_pair validates")
{
    const CMatrix n = CMatrix::Zero(2, 2);
    CHECK_THROWS_AS(make_indefinite_pair(n, CMatrix(CMatrix::Identity(3, 3))), Error);
    CMatrix h = CMatrix::Identity(2, 2);
    h(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_indefinite_pair(n, h), Error);
}

TEST_CASE("matcore operations work on real scalars")
{
    Eigen::MatrixXd n(2, 2), h(2, 2);
    n << 1.0, 2.0, 0.0, 1.0;
    h << 0.0, 1.0, 1.0, 0.0;
    const auto p = make_indefinite_pair<double>(n, h);
    CHECK(signature(p.H) == Signature{1, 1});
    CHECK(is_h_normal(p));
    const auto q = make_indefinite_pair<double>(n, Eigen::MatrixXd::Identity(2, 2));
    CHECK(commutator_residual(q) > 0.1);
}
