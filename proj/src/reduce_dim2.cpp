#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hnormal/congr2.hpp"
#include "reducers.hpp"

namespace hnormal::detail {

namespace {

constexpr double pi = std::numbers::pi;

struct Blocks {
    CMatrix n1, n2, n3;
};

Blocks blocks(const Chain& c)
{
    const CMatrix m = c.M();
    const Eigen::Index s = c.s, k = c.m;
    return {m.block(0, s, s, k), m.block(0, s + k, s, s), m.block(s, s + k, k, s)};
}

void apply_sum(Chain& c, const CMatrix& t1, const CMatrix& ts) { c.apply(block_sum(t1, ts)); }

void apply_shear(Chain& c, const CMatrix& t2) { c.apply(block_shear(t2)); }

void phase(Chain& c, std::initializer_list<Eigen::Index> idx, cplx w)
{
    CMatrix d = identity(c.size());
    for (Eigen::Index i : idx)
        d(i, i) = w;
    c.apply(d);
}

cplx unit_or_one(cplx w) { return std::abs(w) > 1e-9 ? w / std::abs(w) : cplx(1.0); }

Reduction d2_n4(Chain& c)
{
    const CMatrix n2 = blocks(c).n2;
    const auto sv = singular_values(n2);
    if (sv(1) > rank_tol * std::max(1.0, sv(0))) {
        const CongruenceForm2 cf = congruence_canonical_2x2(n2);
        if (cf.kind != CongruenceKind::Triangular)
            throw DecomposableError(CMatrix(4, 0), "N2 is congruent to a diagonal form");
        apply_sum(c, cf.T.inverse(), CMatrix(0, 0));
        InvariantRecord p;
        p.z = cf.z;
        p.r = cf.rho;
        return finish(c, FamilyTag::D2_N4_A, p);
    }
    Eigen::JacobiSVD<CMatrix> svd(n2, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMatrix t1(2, 2);
    t1 << svd.matrixV().col(0), svd.singularValues()(0) * svd.matrixU().col(0);
    apply_sum(c, t1, CMatrix(0, 0));
    return finish(c, FamilyTag::D2_N4_B, {});
}

// T1 ⊕ 1 ⊕ T1^{-*} followed by the coupling T5, for the 2 + 1 + 2 block layout.
CMatrix coupled_sum5(const CMatrix& t1, const CMatrix& t5)
{
    CMatrix t = CMatrix::Zero(5, 5);
    t.block(0, 0, 2, 2) = t1;
    t.block(0, 2, 2, 1) = -t1 * t5.adjoint();
    t.block(0, 3, 2, 2) = -0.5 * t1 * t5.adjoint() * t5;
    t(2, 2) = 1.0;
    t.block(2, 3, 1, 2) = t5;
    t.block(3, 3, 2, 2) = t1.inverse().adjoint();
    return t;
}

Reduction d2_n5(Chain& c)
{
    Blocks b = blocks(c);
    const cplx a = b.n1(0, 0), bb = b.n1(1, 0);
    CMatrix t1(2, 2);
    t1 << a, -std::conj(bb), bb, std::conj(a);
    if (std::abs(t1.determinant()) < rank_tol)
        throw DecomposableError(CMatrix(5, 0), "N1 vanishes");
    apply_sum(c, t1, identity(1));
    b = blocks(c);
    CMatrix sh(2, 1);
    sh << 0.0, std::conj(b.n2(0, 1));
    apply_shear(c, sh);
    b = blocks(c);
    const cplx cc = b.n2(0, 0), e = b.n2(1, 0), f = b.n2(1, 1);
    if (std::abs(f) < rank_tol) {
        CMatrix u(2, 2);
        u << 1.0, cc, 0.0, e;
        apply_sum(c, u, identity(1));
        InvariantRecord p;
        p.z = c.M()(2, 3);
        return finish(c, FamilyTag::D2_N5_A, p);
    }
    const double q = std::sqrt(std::abs(f));
    CMatrix d = identity(5);
    d(1, 1) = q;
    d(4, 4) = 1.0 / q;
    c.apply(d);
    b = blocks(c);
    const cplx z1 = b.n2(1, 1), z = b.n3(0, 0);
    if (std::abs(z1 * z1 - z) > rank_tol)
        throw DecomposableError(CMatrix(5, 0), "z1^2 != z");
    const cplx c2v = b.n2(0, 0), e2 = b.n2(1, 0);
    if (std::abs(e2) < rank_tol)
        throw DecomposableError(CMatrix(5, 0), "e'' = 0");
    const double ae = std::abs(e2);
    const double c1 = (c2v * std::conj(z1)).real(), c2 = (c2v * std::conj(z1)).imag();
    CMatrix u(2, 2);
    u << 1.0, I * z1 * c2 / ae, 0.0, std::polar(1.0, std::arg(e2));
    CMatrix t5(1, 2);
    t5 << -z1 * (c1 + c2 * c2 / (ae * ae)) / 2.0, I * z1 * z1 * c2 / ae;
    c.apply(coupled_sum5(u, t5));
    const CMatrix m = c.M();
    InvariantRecord p;
    p.z = m(1, 4);
    p.r = m(1, 3).real();
    return finish(c, FamilyTag::D2_N5_B, p);
}

Reduction d2_n6(Chain& c)
{
    Blocks b = blocks(c);
    if (singular_values(b.n1)(1) <= rank_tol * std::max(1.0, max_abs(b.n1)))
        throw DecomposableError(CMatrix(6, 0), "rank N1 = 1");
    apply_sum(c, b.n1, identity(2));
    b = blocks(c);
    Eigen::ComplexSchur<CMatrix> schur(b.n3);
    const CVector diag = schur.matrixT().diagonal();
    std::array<Eigen::Index, 2> order{0, 1};
    if (principal_arg(diag(1)) < principal_arg(diag(0)))
        std::swap(order[0], order[1]);
    CMatrix u(2, 2);
    u << schur.matrixU().col(order[0]), schur.matrixU().col(order[1]);
    apply_sum(c, u, u);
    const cplx z1 = diag(order[0]), z2 = diag(order[1]);
    if (std::abs(z1 - z2) > rank_tol)
        throw DecomposableError(CMatrix(6, 0), "z1 != z2");
    const cplx z = 0.5 * (z1 + z2);
    if (std::abs(z + 1.0) < rank_tol)
        throw DecomposableError(CMatrix(6, 0), "z = -1");

    b = blocks(c);
    CMatrix sh = CMatrix::Zero(2, 2);
    sh(1, 0) = std::conj(b.n2(0, 1));
    apply_shear(c, sh);
    b = blocks(c);
    sh.setZero();
    sh(0, 0) = b.n2(0, 0).real() / (1.0 + z.real());
    sh(1, 1) = b.n2(1, 1).real() / (1.0 + z.real());
    apply_shear(c, sh);
    b = blocks(c);
    phase(c, {1, 3, 5}, unit_or_one(b.n2(1, 0)));

    b = blocks(c);
    const double r1 = b.n2(0, 0).imag(), r2 = b.n2(1, 1).imag(), r3 = b.n2(1, 0).real();
    const double az = std::abs(z + 1.0);
    const cplx zb = std::conj(z + 1.0) / az;
    CMatrix u1(2, 2);
    u1 << 1.0, 1.0, -zb, zb;
    u1 /= std::sqrt(2.0);
    CMatrix u2(2, 2);
    u2 << -r3 / az, 0.0, (I * r2 - I * r1) - r3 * zb, r3 / az;
    u2 *= 0.5;
    CMatrix t = CMatrix::Zero(6, 6);
    t.block(0, 0, 2, 2) = u1;
    t.block(0, 2, 2, 2) = u1 * u2;
    t.block(0, 4, 2, 2) = -0.5 * u1 * u2 * u2.adjoint();
    t.block(2, 2, 2, 2) = u1;
    t.block(2, 4, 2, 2) = -u1 * u2.adjoint();
    t.block(4, 4, 2, 2) = u1;
    c.apply(t);
    b = blocks(c);
    phase(c, {1, 3, 5}, unit_or_one(b.n2(1, 0)));

    b = blocks(c);
    InvariantRecord p;
    p.z = b.n3(0, 0);
    p.r1 = b.n2(0, 0).imag();
    p.r2 = b.n2(1, 0).real();
    return finish(c, FamilyTag::D2_N6, p);
}

// Brings N1 to (I 0) by column moves in S and congruences on S0.
void staircase(Chain& c)
{
    const Eigen::Index m = c.m;
    Blocks b = blocks(c);
    Eigen::Index bi = 0, bj = 1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) {
            CMatrix sub(2, 2);
            sub << b.n1.col(i), b.n1.col(j);
            const double d = std::abs(sub.determinant());
            if (d > best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    if (best <= rank_tol * std::max(1.0, max_abs(b.n1) * max_abs(b.n1)))
        throw DecomposableError(CMatrix(c.size(), 0), "rank N1 = 1");
    std::vector<Eigen::Index> perm{bi, bj};
    for (Eigen::Index k = 0; k < m; ++k)
        if (k != bi && k != bj)
            perm.push_back(k);
    CMatrix p = CMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
        p(perm[static_cast<std::size_t>(k)], k) = 1.0;
    apply_sum(c, identity(2), p);
    b = blocks(c);
    apply_sum(c, b.n1.leftCols(2), identity(m));

    for (Eigen::Index j = 2; j < m; ++j) {
        b = blocks(c);
        const cplx f = b.n1(1, j);
        double q = std::sqrt(1.0 + std::norm(f));
        CMatrix t2 = identity(m);
        t2(1, 1) = 1.0 / q;
        t2(1, j) = -f / q;
        t2(j, 1) = std::conj(f) / q;
        t2(j, j) = 1.0 / q;
        CMatrix d = identity(2);
        d(1, 1) = q;
        apply_sum(c, d, t2);

        b = blocks(c);
        const cplx bb = b.n1(0, 1), cc = b.n1(0, j);
        q = std::sqrt(1.0 + std::norm(cc));
        t2 = identity(m);
        t2(0, 0) = 1.0 / q;
        t2(0, j) = -cc / q;
        t2(j, 0) = std::conj(cc) / q;
        t2(j, j) = 1.0 / q;
        CMatrix u(2, 2);
        u << q, bb, 0.0, 1.0;
        apply_sum(c, u, t2);
    }
}

// Phase that makes the (0,1) entry of N3 real positive, or the (1,0) entry when the former vanishes.
cplx balancing_phase(const CMatrix& n3)
{
    if (std::abs(n3(0, 1)) > 1e-9)
        return std::polar(1.0, std::arg(n3(0, 1)));
    if (std::abs(n3(1, 0)) > 1e-9)
        return std::polar(1.0, -std::arg(n3(1, 0)));
    return 1.0;
}

Reduction d2_n7(Chain& c)
{
    staircase(c);
    Blocks b = blocks(c);
    const cplx v = b.n3(2, 0), w = b.n3(2, 1);
    const double q = std::sqrt(std::norm(v) + std::norm(w));
    CMatrix t1(2, 2);
    t1 << w, std::conj(v), -v, std::conj(w);
    t1 /= q;
    CMatrix t = identity(7);
    t.block(0, 0, 2, 2) = t1;
    t.block(2, 2, 2, 2) = t1;
    t.block(5, 5, 2, 2) = t1;
    c.apply(t);
    phase(c, {0, 2, 5}, balancing_phase(blocks(c).n3));

    b = blocks(c);
    const double beta = std::atan2(b.n3(2, 1).real(), std::hypot(std::abs(b.n3(0, 1)), std::abs(b.n3(1, 1))));
    const double alpha = std::atan2(std::abs(b.n3(1, 0)), std::abs(b.n3(0, 0)));
    if (std::abs(alpha) < rank_tol)
        throw DecomposableError(CMatrix(7, 0), "alpha = 0");
    const cplx z1 = std::abs(b.n3(0, 1)) > 1e-9 ? unit(b.n3(1, 0)) : cplx(1.0);
    cplx z2 = 1.0;
    if (std::abs(b.n3(1, 1)) > std::abs(b.n3(0, 0)) && std::abs(b.n3(1, 1)) > 1e-9)
        z2 = unit(b.n3(1, 1));
    else if (std::abs(b.n3(0, 0)) > 1e-9)
        z2 = std::conj(-b.n3(0, 0) / (z1 * std::cos(alpha)));
    apply_shear(c, min_norm_block_solve(b.n1, b.n2, b.n3));

    InvariantRecord p;
    p.z1 = z1;
    p.z2 = unit(z2);
    p.alpha = alpha;
    p.beta = beta;
    return finish(c, FamilyTag::D2_N7, p);
}

Reduction d2_n8(Chain& c)
{
    staircase(c);
    Blocks b = blocks(c);
    const CMatrix a = b.n3.bottomRows(2);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    CMatrix u1(2, 2);
    u1 << svd.matrixU().col(1), svd.matrixU().col(0);
    const CMatrix x = u.adjoint() * u1;
    CMatrix t = CMatrix::Zero(8, 8);
    t.block(0, 0, 2, 2) = x;
    t.block(2, 2, 2, 2) = x;
    t.block(4, 4, 2, 2) = u1;
    t.block(6, 6, 2, 2) = x;
    c.apply(t);

    b = blocks(c);
    const double r1 = b.n3(2, 0).real(), r2 = b.n3(3, 1).real();
    if (std::min(r1, r2) < rank_tol)
        throw Error(ErrorCode::InternalFormMismatch, "vanishing singular value in N3");
    const cplx rp = b.n3(1, 0), sp = b.n3(1, 1);
    const cplx k = b.n2(0, 0), l = b.n2(0, 1), mm = b.n2(1, 0), nn = b.n2(1, 1);
    CMatrix t2 = CMatrix::Zero(2, 4);
    t2(0, 1) = std::conj(mm);
    t2(0, 2) = (k - rp * std::conj(mm)) / r1;
    t2(0, 3) = (l - sp * std::conj(mm)) / r2;
    t2(1, 3) = nn / r2;
    apply_shear(c, t2);
    if (std::abs(r1 - r2) < rank_tol)
        throw DecomposableError(CMatrix(8, 0), "r1 = r2");

    phase(c, {0, 2, 4, 6}, balancing_phase(blocks(c).n3));
    b = blocks(c);
    const double beta = std::atan2(b.n3(2, 0).real(), std::hypot(std::abs(b.n3(0, 0)), std::abs(b.n3(1, 0))));
    const double gamma = std::atan2(b.n3(3, 1).real(), std::hypot(std::abs(b.n3(0, 1)), std::abs(b.n3(1, 1))));
    const double alpha = std::atan2(std::abs(b.n3(0, 0)) + std::abs(b.n3(1, 1)), std::abs(b.n3(1, 0)) + std::abs(b.n3(0, 1)));
    if (std::abs(alpha - pi / 2) < rank_tol)
        throw DecomposableError(CMatrix(8, 0), "alpha = pi/2");
    const cplx z1 = std::abs(b.n3(0, 1)) > 1e-9 ? unit(b.n3(1, 0)) : cplx(1.0);
    cplx z2 = 1.0;
    if (std::abs(b.n3(1, 1)) > std::abs(b.n3(0, 0)) && std::abs(b.n3(1, 1)) > 1e-9)
        z2 = unit(b.n3(1, 1));
    else if (std::abs(b.n3(0, 0)) > 1e-9)
        z2 = std::conj(-b.n3(0, 0) / (z1 * std::sin(alpha) * std::cos(beta)));

    InvariantRecord p;
    p.z1 = z1;
    p.z2 = unit(z2);
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = gamma;
    return finish(c, FamilyTag::D2_N8, p);
}

}  // namespace

Reduction reduce_d2(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    if (c.s != 2)
        throw Error(ErrorCode::InternalFormMismatch, "dim S0 != 2");
    if (c.m > 0) {
        const CMatrix h1 = c.H.block(2, 2, c.m, c.m);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h1 + h1.adjoint()));
        if (es.eigenvalues()(0) <= 0)
            throw Error(ErrorCode::InternalFormMismatch, "internal H is not positive definite");
        c.embed(es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal(), 2);
    }
    switch (c.size()) {
    case 4:
        return d2_n4(c);
    case 5:
        return d2_n5(c);
    case 6:
        return d2_n6(c);
    case 7:
        return d2_n7(c);
    case 8:
        return d2_n8(c);
    default:
        throw Error(ErrorCode::InternalFormMismatch, "n = " + std::to_string(c.size()) + " with dim S0 = 2");
    }
}

}  // namespace hnormal::detail
