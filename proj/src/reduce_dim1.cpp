#include <cmath>

#include <Eigen/Eigenvalues>

#include "reducers.hpp"

namespace hnormal::detail {

namespace {

struct Internal {
    CMatrix n1, h1, m1, x, g;
};

Internal internal_structure(const Chain& c)
{
    Internal in;
    in.n1 = c.N.block(1, 1, c.m, c.m);
    in.h1 = c.H.block(1, 1, c.m, c.m);
    in.m1 = in.n1 - c.lambda * identity(c.m);
    in.x = joint_kernel(in.m1, in.h1);
    in.g = in.x.adjoint() * in.h1 * in.x;
    return in;
}

// Internal Jordan-type pair brought to H1 = D_m (m = 2, 3).
CMatrix sub_tri(const CMatrix& m1, const CMatrix& h1)
{
    CMatrix t = tri_basis(m1, h1).T;
    if (m1.rows() == 3) {
        const double hm = (t.adjoint() * h1 * t)(1, 1).real();
        if (hm <= 0)
            throw Error(ErrorCode::InternalFormMismatch, "middle internal vector is not positive");
        t.col(1) /= std::sqrt(hm);
    }
    return t;
}

void normalize_corner(Chain& c)
{
    const cplx a = c.M()(0, 1);
    CMatrix d = identity(c.size());
    d(0, 0) = a;
    d(c.size() - 1, c.size() - 1) = 1.0 / std::conj(a);
    c.apply(d);
}

CMatrix upper(Eigen::Index n, std::initializer_list<std::tuple<int, int, cplx>> entries)
{
    CMatrix t = identity(n);
    for (const auto& [i, j, v] : entries)
        t(i, j) = v;
    return t;
}

Reduction indec_n4(Chain& c)
{
    const Internal in = internal_structure(c);
    const CMatrix ts = sub_tri(in.m1, in.h1);
    const CMatrix mi = ts.fullPivLu().solve(CMatrix(in.m1 * ts));
    const auto [t2, z] = normalize_rank1_2(mi);
    c.embed(ts * t2, 1);
    normalize_corner(c);
    const cplx d = c.M()(1, 3);
    c.apply(upper(4, {{0, 1, z * std::conj(d)}, {2, 3, -std::conj(z) * d}}));
    const double k = (c.M()(0, 3) * std::conj(z)).real();
    c.apply(upper(4, {{0, 2, 0.5 * std::conj(z) * k}, {1, 3, -0.5 * z * k}}));
    const CMatrix m = c.M();
    InvariantRecord p;
    p.z = z;
    p.r1 = m(0, 2).imag();
    p.r2 = (m(0, 3) * std::conj(z)).imag();
    return finish(c, FamilyTag::D1_IND_N4, p);
}

Reduction indec_n5(Chain& c)
{
    const Internal in = internal_structure(c);
    const CMatrix ts = sub_tri(in.m1, in.h1);
    const CMatrix mi = ts.fullPivLu().solve(CMatrix(in.m1 * ts));
    const auto [t2, zp] = normalize_rank1_3(mi);
    c.embed(ts * t2, 1);
    normalize_corner(c);

    CMatrix m = c.M();
    const cplx b = m(0, 2), cc = m(0, 3), x = m(1, 3);
    const cplx zb = std::conj(zp);
    const cplx w = cc - x * zb * b;
    c.apply(upper(5, {{0, 1, zb * b},
                      {0, 2, zb * w},
                      {0, 4, -0.5 * std::norm(w)},
                      {2, 4, -zp * std::conj(w)},
                      {3, 4, -zp * std::conj(b)}}));

    const cplx d = c.M()(0, 4);
    const bool is_i = std::abs(zp - I) < 1e-9;
    if (!is_i) {
        const double k = d.real() / ((zp * zp).real() + 1.0);
        c.apply(upper(5, {{0, 3, k}, {1, 4, -k}}));
    } else {
        const cplx k = -0.5 * I * d.imag();
        c.apply(upper(5, {{0, 3, k}, {1, 4, k}}));
    }
    m = c.M();
    InvariantRecord p;
    if (zp == cplx(1.0)) {
        p.r1 = m(1, 3).imag();
        p.r2 = m(1, 4).imag();
        p.r3 = m(0, 4).imag();
        return finish(c, FamilyTag::D1_IND_N5_A, p);
    }
    if (is_i) {
        p.r1 = m(1, 3).real();
        p.r2 = m(1, 4).imag();
        p.r3 = m(0, 4).real();
        return finish(c, FamilyTag::D1_IND_N5_C, p);
    }
    p.z = zp;
    p.r1 = m(1, 3).real();
    p.r2 = (m(1, 4) * std::conj(zp) * std::conj(zp)).imag();
    p.r3 = m(0, 4).imag();
    return finish(c, FamilyTag::D1_IND_N5_B, p);
}

// Basis of the internal space taking H1 to D2 (signature (1, 1)).
CMatrix to_d2(const CMatrix& h1)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h1 + h1.adjoint()));
    const auto& w = es.eigenvalues();
    if (w(0) >= 0 || w(1) <= 0)
        throw Error(ErrorCode::InternalFormMismatch, "internal H is not of signature (1, 1)");
    const CVector un = es.eigenvectors().col(0) / std::sqrt(-w(0));
    const CVector up = es.eigenvectors().col(1) / std::sqrt(w(1));
    CMatrix t(2, 2);
    t << (up + un) / std::sqrt(2.0), (up - un) / std::sqrt(2.0);
    return t;
}

// D2-unitary family used to tune rho; mirrored by diag(1, -1) when beta < 0.
CMatrix k_transform(double t, double beta)
{
    CMatrix k(2, 2);
    k << -I * t, 1.0, 1.0, -I * t;
    k /= (1.0 - I * t);
    if (beta < 0) {
        k(0, 1) = -k(0, 1);
        k(1, 0) = -k(1, 0);
    }
    return k;
}

Reduction dec_n4(Chain& c)
{
    c.embed(to_d2(c.H.block(1, 1, 2, 2)), 1);
    CMatrix m = c.M();
    if (std::abs(m(0, 1)) < std::abs(m(0, 2))) {
        CMatrix s(2, 2);
        s << 1.0, 0.0, I, 1.0;
        c.embed(s, 1);
    }
    normalize_corner(c);
    const cplx b = c.M()(0, 2);
    double beta = 0.0;
    if (std::abs(b.real()) > 1e-8) {
        const double q = std::sqrt(std::abs(b.real()));
        CMatrix x = CMatrix::Zero(4, 4);
        x(0, 0) = q;
        x(1, 1) = q;
        x(1, 2) = -I * b.imag() / q;
        x(2, 2) = 1.0 / q;
        x(3, 3) = 1.0 / q;
        c.apply(x);
        beta = b.real() > 0 ? 1.0 : -1.0;
    } else {
        c.apply(upper(4, {{1, 2, -b}}));
    }
    m = c.M();
    const cplx d = m(1, 3), e = m(2, 3);
    InvariantRecord p;
    if (beta == 0.0) {
        const double r1 = std::abs(d);
        const cplx z = d / r1;
        const double r2 = (e * std::conj(z)).imag();
        const double q = std::sqrt(r1);
        CMatrix x = CMatrix::Zero(4, 4);
        x(0, 0) = q;
        x(1, 1) = q;
        x(2, 1) = I * r2 / q;
        x(2, 2) = 1.0 / q;
        x(3, 3) = 1.0 / q;
        c.apply(x);
        const cplx cc = c.M()(0, 3);
        c.apply(upper(4, {{0, 2, std::conj(cc)}, {1, 3, -cc}}));
        p.z = c.M()(1, 3);
        return finish(c, FamilyTag::D1_DEC_N4_A, p);
    }

    const double rho = std::abs(d);
    const cplx z = d / rho;
    const double r = (beta * e * std::conj(z)).imag();
    const double qa = rho * rho - 1.0, qb = 2.0 * rho * r, qc = 1.0 / (rho * rho) + r * r - 1.0;
    double t;
    if (std::abs(qa) < 1e-12) {
        t = std::abs(qb) > 1e-14 ? -qc / qb : 0.0;
    } else {
        const double disc = std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0));
        const double t1 = (-qb + disc) / (2.0 * qa), t2 = (-qb - disc) / (2.0 * qa);
        t = std::abs(t1) <= std::abs(t2) ? t1 : t2;
    }
    c.embed(k_transform(t, beta), 1);
    m = c.M();
    const double rp = (beta * m(2, 3) * std::conj(m(1, 3))).imag();
    if (std::abs(rp) < 1e-9)
        throw DecomposableError(CMatrix(4, 0), "r' = 0");
    if (rp < 0)
        c.embed(k_transform(-rp / 2.0, beta), 1);

    m = c.M();
    const cplx zf = m(1, 3);
    const double rf = (beta * m(2, 3) * std::conj(zf)).imag();
    const cplx cc = m(0, 3);
    const cplx hh = std::polar(1.0, -std::arg(zf) / 2.0);
    const double c1 = (cc * hh).real(), c2 = (cc * hh).imag();
    cplx t12, t13;
    if (beta > 0) {
        t12 = hh * (rf * c1 - 2.0 * c2) / (2.0 * rf);
        t13 = hh * c2 / rf;
    } else {
        t12 = 0.0;
        const double s2 = c1 / rf;
        const double s1 = -(c2 + 2.0 * s2) / rf;
        t13 = hh * cplx(s1, s2);
    }
    c.apply(upper(4, {{0, 1, t12},
                      {0, 2, t13},
                      {0, 3, -(t12 * std::conj(t13)).real()},
                      {1, 3, -std::conj(t13)},
                      {2, 3, -std::conj(t12)}}));
    m = c.M();
    p.z = m(1, 3);
    p.r = (beta * m(2, 3) * std::conj(m(1, 3))).imag();
    return finish(c, beta > 0 ? FamilyTag::D1_DEC_N4_B : FamilyTag::D1_DEC_N4_C, p);
}

struct PositiveSplit {
    CVector v;   // positive joint eigenvector of the internal pair, v* H1 v = 1
    CMatrix c;   // orthonormal basis of its H1-complement
    CMatrix m2;  // internal operator restricted to the complement
    CMatrix h2;
};

PositiveSplit split_positive(const Chain& ch)
{
    const Internal in = internal_structure(ch);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (in.g + in.g.adjoint()));
    const Eigen::Index last = es.eigenvalues().size() - 1;
    if (es.eigenvalues()(last) <= 0)
        throw Error(ErrorCode::InternalFormMismatch, "internal joint kernel has no positive vector");
    PositiveSplit ps;
    ps.v = in.x * es.eigenvectors().col(last);
    ps.v /= std::sqrt((ps.v.adjoint() * in.h1 * ps.v)(0, 0).real());
    ps.c = null_space_dim(CMatrix((in.h1 * ps.v).adjoint()), ch.m - 1);
    ps.m2 = ps.c.adjoint() * in.m1 * ps.c;
    ps.h2 = ps.c.adjoint() * in.h1 * ps.c;
    return ps;
}

Reduction dec_n5(Chain& c)
{
    const PositiveSplit ps = split_positive(c);
    const CMatrix t2 = tri_basis(ps.m2, ps.h2).T;
    const CMatrix m2b = t2.fullPivLu().solve(CMatrix(ps.m2 * t2));
    const auto [tz, z] = normalize_rank1_2(m2b);
    const CMatrix b = ps.c * t2 * tz;
    CMatrix e(3, 3);
    e << b.col(0), ps.v, b.col(1);
    c.embed(e, 1);
    normalize_corner(c);

    const cplx bb = c.M()(0, 2);
    c.apply(upper(5, {{1, 2, -bb}, {1, 3, -0.5 * std::norm(bb)}, {2, 3, std::conj(bb)}}));
    CMatrix m = c.M();
    const cplx ee = m(1, 4), ff = m(2, 4);
    CMatrix x = upper(5, {{1, 3, I * (ee * std::conj(z) * std::conj(z)).imag()}});
    x(2, 2) = std::polar(1.0, std::arg(ff));
    c.apply(x);

    m = c.M();
    const double r1 = (m(1, 4) * std::conj(z) * std::conj(z)).real();
    const double r2 = m(2, 4).real();
    if (std::abs(r2) < rank_tol)
        throw Error(ErrorCode::InternalFormMismatch, "vanishing coupling to the positive vector");
    const double r3 = m(0, 3).imag();
    const cplx d = m(0, 4);
    const cplx t12 = r1 * std::conj(z);
    const cplx t13 = (d - r1 * z * (r1 + 0.5 * r2 * r2 + I * r3)) / r2;
    c.apply(upper(5, {{0, 1, t12},
                      {0, 2, t13},
                      {0, 4, -0.5 * std::norm(t13)},
                      {2, 4, -std::conj(t13)},
                      {3, 4, -std::conj(t12)}}));
    m = c.M();
    InvariantRecord p;
    p.z = m(1, 3);
    p.r1 = m(2, 4).real();
    p.r2 = m(0, 3).imag();
    return finish(c, FamilyTag::D1_DEC_N5, p);
}

Reduction dec_n6(Chain& c)
{
    const PositiveSplit ps = split_positive(c);
    CMatrix t2 = tri_basis(ps.m2, ps.h2).T;
    const double hm = (t2.adjoint() * ps.h2 * t2)(1, 1).real();
    if (hm <= 0)
        throw Error(ErrorCode::InternalFormMismatch, "middle internal vector is not positive");
    t2.col(1) /= std::sqrt(hm);
    const CMatrix m2b = t2.fullPivLu().solve(CMatrix(ps.m2 * t2));
    const auto [tz, zp] = normalize_rank1_3(m2b);
    const CMatrix b = ps.c * t2 * tz;
    CMatrix e(4, 4);
    e << b, ps.v;
    c.embed(e, 1);
    normalize_corner(c);

    const cplx d = c.M()(0, 4);
    CMatrix x = upper(6, {{1, 3, -0.5 * std::norm(d)}, {1, 4, -d}});
    x(4, 3) = std::conj(d);
    c.apply(x);

    CMatrix m = c.M();
    const cplx cc = m(0, 3), g = m(2, 5), xx = m(1, 3);
    const cplx w = std::conj(zp) * cc - xx * std::conj(g);
    c.apply(upper(6, {{0, 1, zp * std::conj(g)},
                      {0, 2, w},
                      {0, 5, -0.5 * std::norm(w)},
                      {2, 5, -std::conj(w)},
                      {3, 5, -std::conj(zp) * g}}));

    c.phase({4}, std::polar(1.0, std::arg(c.M()(4, 5))));
    m = c.M();
    const double r2 = m(4, 5).real();
    if (std::abs(r2) < rank_tol)
        throw Error(ErrorCode::InternalFormMismatch, "vanishing coupling to the positive vector");
    const cplx ev = m(0, 5) / r2;
    c.apply(upper(6, {{0, 4, ev}, {0, 5, -0.5 * std::norm(ev)}, {4, 5, -std::conj(ev)}}));

    m = c.M();
    InvariantRecord p;
    p.r2 = m(4, 5).real();
    if (zp == cplx(1.0)) {
        p.r1 = m(1, 3).imag();
        p.r3 = m(1, 5).imag();
        return finish(c, FamilyTag::D1_DEC_N6_A, p);
    }
    p.z = zp;
    p.r1 = m(1, 3).real();
    p.r3 = (m(1, 5) * std::conj(zp) * std::conj(zp)).imag();
    return finish(c, FamilyTag::D1_DEC_N6_B, p);
}

}  // namespace

bool internal_decomposable(const CMatrix& n1, const CMatrix& h1, cplx lambda)
{
    const CMatrix x = joint_kernel(n1 - lambda * identity(n1.rows()), h1);
    if (x.cols() == 0)
        return false;
    const CMatrix g = x.adjoint() * h1 * x;
    return max_abs(g) > 1e-6 * std::max(1.0, max_abs(h1));
}

Reduction reduce_d1_indec(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    if (c.s != 1)
        throw Error(ErrorCode::InternalFormMismatch, "dim S0 != 1");
    switch (c.size()) {
    case 4:
        return indec_n4(c);
    case 5:
        return indec_n5(c);
    case 6:
        throw Error(ErrorCode::ImpossibleCase, "indecomposable n = 6 block with dim S0 = 1");
    default:
        throw Error(ErrorCode::InternalFormMismatch, "n = " + std::to_string(c.size()) + " with dim S0 = 1");
    }
}

Reduction reduce_d1_dec(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    if (c.s != 1)
        throw Error(ErrorCode::InternalFormMismatch, "dim S0 != 1");
    switch (c.size()) {
    case 4:
        return dec_n4(c);
    case 5:
        return dec_n5(c);
    case 6:
        return dec_n6(c);
    case 7:
        throw Error(ErrorCode::ImpossibleCase, "n = 7 block with dim S0 = 1");
    default:
        throw Error(ErrorCode::InternalFormMismatch, "n = " + std::to_string(c.size()) + " with dim S0 = 1");
    }
}

}  // namespace hnormal::detail
