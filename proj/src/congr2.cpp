#include "hnormal/congr2.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace hnormal {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};
const cplx w3 = std::polar(1.0, pi / 3.0);

// Below this gap the eigenvalues of A' are treated as one repeated value.
constexpr double repeated_gap = 1e-4;
constexpr double unimodular_tol = 1e-7;

cplx unit(cplx w) { return w / std::abs(w); }

CMatrix diag2(cplx a, cplx b)
{
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

// Orders a diagonal result so that arg z1 <= arg z2.
void order_diagonal(CongruenceForm2& f)
{
    if (principal_arg(f.z1) > principal_arg(f.z2)) {
        std::swap(f.z1, f.z2);
        f.T.row(0).swap(f.T.row(1));
    }
}

CongruenceForm2 distinct_case(const CMatrix& a, Eigen::Vector2cd ev, CMatrix v)
{
    if (std::abs(ev(0)) > std::abs(ev(1))) {
        std::swap(ev(0), ev(1));
        v.col(0).swap(v.col(1));
    }
    const CMatrix p = v.inverse();
    const CMatrix at = p * a * p.adjoint();
    CongruenceForm2 f;
    if (std::abs(std::abs(ev(0)) - 1.0) > unimodular_tol) {
        const cplx x2 = ev(1);
        const double rho = solve_rho(-std::abs(x2));
        const cplx zsq = -std::conj(w3) * x2 / std::abs(x2);
        const cplx z = std::polar(1.0, principal_arg(zsq) / 2.0);
        const cplx b = at(0, 1);
        const double fr = rho_function(rho);
        CMatrix t(2, 2);
        t(0, 0) = 1.0;
        t(0, 1) = std::conj(z) * (std::conj(w3) * fr - 1.0) / (std::conj(b) * (fr * fr - 1.0));
        t(1, 0) = w3 * w3 * rho * fr / (w3 * fr - 1.0);
        t(1, 1) = -w3 * std::conj(z) * rho / (std::conj(b) * (fr * fr - 1.0));
        f.kind = CongruenceKind::Triangular;
        f.z = z;
        f.rho = rho;
        f.T = t * p;
        return f;
    }
    const cplx d0 = at(0, 0), d1 = at(1, 1);
    f.kind = CongruenceKind::Diagonal;
    f.z1 = unit(d0);
    f.z2 = unit(d1);
    f.T = diag2(1.0 / std::sqrt(std::abs(d0)), 1.0 / std::sqrt(std::abs(d1))) * p;
    order_diagonal(f);
    return f;
}

// A A*^{-1} = x I: A = e^{i theta/2} B with B Hermitian.
CongruenceForm2 scalar_case(const CMatrix& a, cplx x)
{
    const double theta = std::arg(x);
    const cplx half = std::polar(1.0, theta / 2.0);
    CMatrix b = a / half;
    b = (b + b.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
    const auto& w = es.eigenvalues();
    CongruenceForm2 f;
    f.kind = CongruenceKind::Diagonal;
    f.z1 = w(0) < 0 ? -half : half;
    f.z2 = w(1) < 0 ? -half : half;
    f.T = diag2(1.0 / std::sqrt(std::abs(w(0))), 1.0 / std::sqrt(std::abs(w(1)))) * es.eigenvectors().adjoint();
    order_diagonal(f);
    return f;
}

// A A*^{-1} similar to a Jordan block; lands on rho = sqrt(3).
CongruenceForm2 jordan_case(const CMatrix& a, const CMatrix& ap, cplx x)
{
    const CMatrix shifted = ap - x * CMatrix::Identity(2, 2);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const CVector v2 = svd.matrixV().col(0);
    const CVector v1 = shifted * v2;
    CMatrix v(2, 2);
    v << v1, v2;
    const CMatrix p = v.inverse();
    const CMatrix at = p * a * p.adjoint();
    cplx z = std::sqrt(-std::conj(w3) * x);
    const cplx a0 = at(0, 0);
    if ((w3 * a0 * std::conj(z)).imag() < 0)
        z = -z;
    const cplx b = at(0, 1);
    const double ab = std::abs(b);
    const double im = (a0 * std::conj(z)).imag();
    CMatrix t(2, 2);
    t(0, 0) = ab;
    t(0, 1) = (2.0 / 3.0) * I * std::conj(z) * im * ab / std::conj(b);
    t(1, 0) = w3 * std::conj(z) * std::conj(b);
    t(1, 1) = std::conj(z) * std::conj(z) * (-(2.0 / 3.0) * I * im + a0 * std::conj(z));
    t *= std::pow(3.0, 0.25) / std::pow(ab, 1.5);
    CongruenceForm2 f;
    f.kind = CongruenceKind::Triangular;
    f.z = z;
    f.rho = std::sqrt(3.0);
    f.T = t * p;
    return f;
}

}  // namespace

double principal_arg(cplx w)
{
    double a = std::arg(w);
    if (a < 0)
        a += 2.0 * pi;
    if (a >= 2.0 * pi)
        a -= 2.0 * pi;
    return a;
}

CMatrix triangular_congruence_form(cplx z, double rho)
{
    CMatrix f = CMatrix::Zero(2, 2);
    f(0, 0) = z;
    f(0, 1) = rho * std::conj(w3) * z;
    f(1, 1) = w3 * z;
    return f;
}

CMatrix CongruenceForm2::form() const
{
    if (kind == CongruenceKind::Triangular)
        return triangular_congruence_form(z, rho);
    return diag2(z1, z2);
}

double rho_function(double rho)
{
    const double r2 = rho * rho;
    double q = r2 - 3.0;
    if (q < -1e-14)
        throw Error(ErrorCode::OutOfDomain, "rho below sqrt(3)");
    // rho within rounding of sqrt(3) is the boundary point itself.
    if (q <= 8.0 * std::numeric_limits<double>::epsilon() * 3.0)
        return -1.0;
    return 0.5 * (1.0 - r2 - std::sqrt((r2 + 1.0) * q));
}

double solve_rho(double s)
{
    if (!(s <= -1.0))
        throw Error(ErrorCode::OutOfDomain, "solve_rho needs s <= -1");
    const double u = 2.0 * s - 1.0;
    double rho = std::sqrt(-(3.0 + u * u) / (4.0 * s));
    const double q = rho * rho - 3.0;
    if (q > 1e-8) {
        const double root = std::sqrt((rho * rho + 1.0) * q);
        const double df = -rho - rho * (rho * rho - 1.0) / root;
        rho -= (rho_function(rho) - s) / df;
    }
    return rho;
}

CongruenceForm2 congruence_canonical_2x2(const CMatrix& a)
{
    if (a.rows() != 2 || a.cols() != 2)
        throw Error(ErrorCode::ValidationError, "congruence form needs a 2x2 matrix");
    const auto sv = singular_values(a);
    if (!a.allFinite() || !(sv(1) > 1e-10 * std::max(1.0, sv(0))))
        throw Error(ErrorCode::Singular, "A is not invertible");
    const CMatrix ap = a * a.adjoint().inverse();
    Eigen::ComplexEigenSolver<CMatrix> es(ap);
    const Eigen::Vector2cd ev = es.eigenvalues();
    CongruenceForm2 f;
    if (std::abs(ev(0) - ev(1)) > repeated_gap) {
        f = distinct_case(a, ev, es.eigenvectors());
    } else {
        const cplx x = (ev(0) + ev(1)) / 2.0;
        if (max_abs(ap - x * CMatrix::Identity(2, 2)) < repeated_gap)
            f = scalar_case(a, x);
        else
            f = jordan_case(a, ap, x);
    }
    f.residual = max_abs(f.T * a * f.T.adjoint() - f.form());
    return f;
}

}  // namespace hnormal
