#include <doctest.h>

#include <cmath>

#include "hnormal/congr2.hpp"
#include "support.hpp"

using namespace hnormal;
using namespace hnormal::test;

namespace {

void check_same(const CongruenceForm2& a, const CongruenceForm2& b, double tol)
{
    REQUIRE(a.kind == b.kind);
    if (a.kind == CongruenceKind::Triangular) {
        CHECK(std::abs(a.z - b.z) <= tol);
        CHECK(std::abs(a.rho - b.rho) <= tol);
    } else {
        CHECK(std::abs(a.z1 - b.z1) <= tol);
        CHECK(std::abs(a.z2 - b.z2) <= tol);
    }
}

double residual(const CMatrix& a, const CongruenceForm2& f)
{
    return max_abs(f.T * a * f.T.adjoint() - f.form());
}

}  // namespace

TEST_CASE("identity is diagonal with unit entries")
{
    const auto f = congruence_canonical_2x2(CMatrix::Identity(2, 2));
    CHECK(f.kind == CongruenceKind::Diagonal);
    CHECK(std::abs(f.z1 - 1.0) < 1e-12);
    CHECK(std::abs(f.z2 - 1.0) < 1e-12);
}

TEST_CASE("diagonal entries are ordered by argument")
{
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = I;
    a(1, 1) = 1.0;
    const auto f = congruence_canonical_2x2(a);
    CHECK(f.kind == CongruenceKind::Diagonal);
    CHECK(std::abs(f.z1 - 1.0) < 1e-12);
    CHECK(std::abs(f.z2 - I) < 1e-12);
    CHECK(residual(a, f) < 1e-12);
}

TEST_CASE("antidiagonal input lands on the triangular form with rho = 2")
{
    const double f2 = (-3.0 - std::sqrt(5.0)) / 2.0;
    CHECK(rho_function(2.0) == doctest::Approx(f2).epsilon(1e-15));
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = std::polar(1.0, pi / 3.0) * f2;
    const auto f = congruence_canonical_2x2(a);
    REQUIRE(f.kind == CongruenceKind::Triangular);
    CHECK(f.rho == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(f.z - 1.0) < 1e-10);
    CHECK(residual(a, f) < 1e-10);
}

TEST_CASE("solve_rho")
{
    CHECK(rho_function(std::sqrt(3.0)) == -1.0);
    CHECK(solve_rho(-1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(solve_rho(-3.0) == doctest::Approx(std::sqrt(13.0 / 3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(solve_rho(-0.5), Error);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const double s = -std::pow(10.0, u(rng));
        const double rho = solve_rho(s);
        CHECK(std::abs(rho_function(rho) - s) <= 1e-10 * std::abs(s));
    }
}

TEST_CASE("solve_rho agrees with bisection on f")
{
    for (double s : {-1.5, -7.0, -123.0, -4.5e4}) {
        double lo = std::sqrt(3.0), hi = 2.0;
        while (rho_function(hi) > s)
            hi *= 2.0;
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (lo + hi);
            (rho_function(mid) > s ? lo : hi) = mid;
        }
        CHECK(solve_rho(s) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
    }
}

TEST_CASE("canonical form is a congruence invariant")
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const CMatrix a = random_matrix(2, seed);
        const auto base = congruence_canonical_2x2(a);
        CHECK(residual(a, base) < 1e-8);
        const CMatrix t = random_matrix(2, seed + 50000);
        const CMatrix b = t * a * t.adjoint();
        const auto moved = congruence_canonical_2x2(b);
        check_same(base, moved, 1e-6);
    }
}

TEST_CASE("triangular and diagonal kinds exclude each other")
{
    const CMatrix tri = triangular_congruence_form(std::polar(1.0, 0.7), 2.5);
    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = std::polar(1.0, 2.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CMatrix t = random_invertible(2, seed);
        CHECK(congruence_canonical_2x2(CMatrix(t * tri * t.adjoint())).kind == CongruenceKind::Triangular);
        CHECK(congruence_canonical_2x2(CMatrix(t * diag * t.adjoint())).kind == CongruenceKind::Diagonal);
    }
}

TEST_CASE("spectrum of A A*^{-1} is preserved")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const CMatrix a = random_matrix(2, seed + 7);
        const auto f = congruence_canonical_2x2(a);
        auto spectrum = [](const CMatrix& m) {
            const CMatrix c = m * m.adjoint().inverse();
            Eigen::ComplexEigenSolver<CMatrix> es(c, false);
            return Eigen::Vector2cd(es.eigenvalues());
        };
        const Eigen::Vector2cd x = spectrum(a), y0 = spectrum(f.form());
        const Eigen::Vector2cd y = std::abs(x(0) - y0(0)) + std::abs(x(1) - y0(1)) <=
                                           std::abs(x(0) - y0(1)) + std::abs(x(1) - y0(0))
                                       ? y0
                                       : Eigen::Vector2cd(y0(1), y0(0));
        CHECK((x - y).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("rho = sqrt(3) is the Jordan boundary")
{
    auto cosquare = [](double rho) {
        const CMatrix a = triangular_congruence_form(1.0, rho);
        return CMatrix(a * a.adjoint().inverse());
    };
    const CMatrix at = cosquare(std::sqrt(3.0));
    Eigen::ComplexEigenSolver<CMatrix> es(at, false);
    const cplx x = es.eigenvalues()(0);
    CHECK(std::abs(es.eigenvalues()(0) - es.eigenvalues()(1)) < 1e-6);
    CHECK(max_abs(CMatrix(at - x * CMatrix::Identity(2, 2))) > 1e-3);

    Eigen::ComplexEigenSolver<CMatrix> es2(cosquare(2.0), false);
    CHECK(std::abs(es2.eigenvalues()(0) - es2.eigenvalues()(1)) > 1e-2);

    const auto f = congruence_canonical_2x2(triangular_congruence_form(std::polar(1.0, 0.4), std::sqrt(3.0)));
    REQUIRE(f.kind == CongruenceKind::Triangular);
    CHECK(f.rho == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("principal_arg range")
{
    CHECK(principal_arg(cplx(1.0, 0.0)) == 0.0);
    CHECK(principal_arg(cplx(0.0, -1.0)) == doctest::Approx(1.5 * pi));
    CHECK(principal_arg(cplx(-1.0, -1e-300)) < 2.0 * pi);
}
