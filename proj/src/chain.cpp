#include "chain.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace hnormal::detail {

namespace {
constexpr double pi = std::numbers::pi;
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix null_space(const CMatrix& a, double tol)
{
    const Eigen::Index n = a.cols();
    if (a.rows() == 0)
        return identity(n);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr)
            ++rank;
    return svd.matrixV().rightCols(n - rank);
}

CMatrix null_space_dim(const CMatrix& a, Eigen::Index dim)
{
    const Eigen::Index n = a.cols();
    if (dim <= 0)
        return CMatrix(n, 0);
    if (a.rows() == 0)
        return identity(n).leftCols(dim);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(dim);
}

CMatrix joint_kernel(const CMatrix& m, const CMatrix& h, double tol)
{
    const Eigen::Index n = m.rows();
    CMatrix stacked(2 * n, n);
    stacked << m, h_adjoint(m, h);
    return null_space(stacked, tol);
}

TriBasis tri_basis(const CMatrix& m, const CMatrix& h)
{
    const Eigen::Index n = m.rows();
    const CMatrix x = joint_kernel(m, h);
    const Eigen::Index s = x.cols();
    if (s == 0)
        throw Error(ErrorCode::EmptyS0, "joint kernel is empty");
    const CMatrix g = x.adjoint() * h * x;
    if (max_abs(g) > 1e-6 * std::max(1.0, max_abs(h)))
        throw Error(ErrorCode::S0NotNeutral, "|X* H X| = " + std::to_string(max_abs(g)));
    const CMatrix hx = h * x;
    const CMatrix y0 = hx * (hx.adjoint() * hx).inverse();
    const CMatrix c = y0.adjoint() * h * y0;
    const CMatrix y = y0 - 0.5 * x * c;
    CMatrix z(n, 0);
    if (n - 2 * s > 0) {
        CMatrix cons(2 * s, n);
        cons << hx.adjoint(), (h * y).adjoint();
        z = null_space_dim(cons, n - 2 * s);
    }
    TriBasis out;
    out.T.resize(n, n);
    out.T << x, z, y;
    out.s = s;
    return out;
}

int sign_flip(const CMatrix& h)
{
    const Signature sg = signature(h, 1e-12 * std::max(1.0, max_abs(h)));
    return sg.v_minus > sg.v_plus ? -1 : 1;
}

cplx unit(cplx w) { return w / std::abs(w); }

double arg_mod_pi(cplx w)
{
    double th = std::fmod(std::arg(w), pi);
    if (th < 0)
        th += pi;
    if (th > pi - 1e-9 || th < 1e-9)
        th = 0.0;
    if (std::abs(th - pi / 2) < 1e-9)
        th = pi / 2;
    return th;
}

Chain::Chain(const CMatrix& n, const CMatrix& h, int sign)
    : N(n), H(h), T(identity(n.rows())), lambda(n.trace() / static_cast<double>(n.rows())), eps(sign)
{
}

void Chain::apply(const CMatrix& x)
{
    N = x.fullPivLu().solve(CMatrix(N * x));
    H = x.adjoint() * H * x;
    T = T * x;
}

CMatrix Chain::M() const { return N - lambda * identity(size()); }

void Chain::embed(const CMatrix& ts, Eigen::Index at)
{
    CMatrix x = identity(size());
    x.block(at, at, ts.rows(), ts.cols()) = ts;
    apply(x);
}

void Chain::phase(std::initializer_list<Eigen::Index> idx, cplx w)
{
    CMatrix x = identity(size());
    for (Eigen::Index i : idx)
        x(i, i) = w;
    apply(x);
}

Chain prepared_chain(const CMatrix& n, const CMatrix& h)
{
    const int eps = sign_flip(h);
    Chain c(n, static_cast<double>(eps) * h, eps);
    const TriBasis tb = tri_basis(c.M(), c.H);
    c.apply(tb.T);
    c.s = tb.s;
    c.m = c.size() - 2 * tb.s;
    return c;
}

std::pair<CMatrix, cplx> normalize_rank1_2(const CMatrix& m)
{
    const cplx a = m(0, 1);
    const double t = std::sqrt(std::abs(a));
    CMatrix x = CMatrix::Zero(2, 2);
    x(0, 0) = t;
    x(1, 1) = 1.0 / t;
    return {x, unit(a)};
}

std::pair<CMatrix, cplx> normalize_rank1_3(const CMatrix& m)
{
    const cplx a = m(0, 1), c = m(1, 2);
    const double t = std::abs(a);
    const cplx w = std::polar(1.0, (std::arg(a) + std::arg(c)) / 2.0);
    const double th = arg_mod_pi(w);
    const cplx zp = th == 0.0 ? cplx(1.0) : (th == pi / 2 ? I : std::polar(1.0, th));
    const cplx sigma = zp * t / a;
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = t;
    d(1, 1) = sigma;
    d(2, 2) = 1.0 / t;
    const CMatrix m1 = d.fullPivLu().solve(CMatrix(m * d));
    const cplx x = m1(0, 2);
    const double shift = th == 0.0 ? x.real() : x.imag() / zp.imag();
    const double p = shift / 2.0;
    CMatrix t2 = identity(3);
    t2(0, 1) = p;
    t2(0, 2) = -p * p / 2.0;
    t2(1, 2) = -p;
    return {d * t2, zp};
}

CMatrix min_norm_block_solve(const CMatrix& n1, const CMatrix& n2, const CMatrix& n3)
{
    const Eigen::Index s = n1.rows(), m = n1.cols();
    const Eigen::Index unknowns = 2 * s * m;
    const Eigen::Index eqs = 2 * n2.size();
    auto op = [&](const Eigen::VectorXd& v) {
        CMatrix t2(s, m);
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < s; ++i)
                t2(i, j) = cplx(v(j * s + i), v(s * m + j * s + i));
        const CMatrix r = n1 * t2.adjoint() + t2 * n3;
        Eigen::VectorXd out(eqs);
        for (Eigen::Index k = 0; k < r.size(); ++k) {
            out(k) = r.data()[k].real();
            out(r.size() + k) = r.data()[k].imag();
        }
        return out;
    };
    Eigen::MatrixXd a(eqs, unknowns);
    for (Eigen::Index k = 0; k < unknowns; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(unknowns);
        e(k) = 1.0;
        a.col(k) = op(e);
    }
    Eigen::VectorXd b(eqs);
    for (Eigen::Index k = 0; k < n2.size(); ++k) {
        b(k) = n2.data()[k].real();
        b(n2.size() + k) = n2.data()[k].imag();
    }
    const Eigen::VectorXd v = a.completeOrthogonalDecomposition().solve(b);
    CMatrix t2(s, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < s; ++i)
            t2(i, j) = cplx(v(j * s + i), v(s * m + j * s + i));
    return t2;
}

CMatrix block_shear(const CMatrix& t2)
{
    const Eigen::Index s = t2.rows(), m = t2.cols();
    CMatrix x = identity(2 * s + m);
    x.block(0, s, s, m) = t2;
    x.block(s, s + m, m, s) = -t2.adjoint();
    x.block(0, s + m, s, s) = -0.5 * t2 * t2.adjoint();
    return x;
}

CMatrix block_sum(const CMatrix& t1, const CMatrix& ts)
{
    const Eigen::Index s = t1.rows(), m = ts.rows();
    CMatrix x = CMatrix::Zero(2 * s + m, 2 * s + m);
    x.topLeftCorner(s, s) = t1;
    if (m > 0)
        x.block(s, s, m, m) = ts;
    x.bottomRightCorner(s, s) = t1.inverse().adjoint();
    return x;
}

Reduction finish(const Chain& c, FamilyTag f, InvariantRecord p)
{
    if (!p.lambda1)
        p.lambda1 = c.lambda;
    p.sign = c.eps;
    return Reduction{f, std::move(p), c.T};
}

}  // namespace hnormal::detail
