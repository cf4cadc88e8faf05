#include <cmath>

#include <Eigen/SVD>

#include "reducers.hpp"
#include "split_detail.hpp"

namespace hnormal::detail {

namespace {

bool ordered(cplx l1, cplx l2)
{
    const cplx d = l1 - l2;
    if (std::abs(d.imag()) > 1e-12 * std::max(1.0, std::abs(d)))
        return d.imag() > 0;
    return d.real() > 0;
}

bool is_scalar(const CMatrix& a)
{
    const cplx mu = a.trace() / static_cast<double>(a.rows());
    return max_abs(a - mu * identity(a.rows())) <= rank_tol * std::max(1.0, max_abs(a));
}

struct TwoEigBasis {
    CMatrix T;
    CMatrix N1, N2;
};

// Basis [E F'] with F' = F (E* H F)^{-1}, so that H becomes [[0, I], [I, 0]].
TwoEigBasis dual_basis(const CMatrix& n, const CMatrix& h, const CMatrix& e, const CMatrix& f)
{
    const Eigen::Index k = e.cols();
    const CMatrix g = e.adjoint() * h * f;
    if (singular_values(g)(k - 1) <= 1e-10 * std::max(1.0, max_abs(g)))
        throw Error(ErrorCode::WrongEigStructure, "root subspaces are not dual under H");
    TwoEigBasis out;
    out.T.resize(n.rows(), 2 * k);
    out.T << e, f * g.inverse();
    const CMatrix nt = out.T.fullPivLu().solve(CMatrix(n * out.T));
    out.N1 = nt.topLeftCorner(k, k);
    out.N2 = nt.bottomRightCorner(k, k);
    return out;
}

}  // namespace

Reduction reduce_two_eig(const CMatrix& n, const CMatrix& h)
{
    if (n.rows() != 4)
        throw Error(ErrorCode::WrongEigStructure, "two-eigenvalue rank-2 blocks are four-dimensional");
    const SchurClusters sc = schur_clusters(n);
    if (sc.clusters.size() != 2)
        throw Error(ErrorCode::WrongEigStructure, "expected exactly two eigenvalues");
    CMatrix e = cluster_subspace(sc, {0});
    CMatrix f = cluster_subspace(sc, {1});
    if (e.cols() != 2 || f.cols() != 2)
        throw Error(ErrorCode::WrongEigStructure, "root subspaces must both be two-dimensional");

    TwoEigBasis b = dual_basis(n, h, e, f);
    const bool s1 = is_scalar(b.N1), s2 = is_scalar(b.N2);
    if (s1 && s2)
        throw Error(ErrorCode::WrongEigStructure, "both restrictions are scalar");
    bool swap = s1;
    if (!s1 && !s2) {
        const cplx l1 = b.N1.trace() / 2.0, l2 = b.N2.trace() / 2.0;
        swap = !ordered(l1, l2);
    }
    if (swap)
        b = dual_basis(n, h, f, e);

    const cplx l1 = b.N1.trace() / 2.0;
    Eigen::JacobiSVD<CMatrix> svd(b.N1 - l1 * identity(2), Eigen::ComputeFullV);
    const CVector w = svd.matrixV().col(0);
    CMatrix t1(2, 2);
    t1 << (b.N1 - l1 * identity(2)) * w, w;
    CMatrix x = CMatrix::Zero(4, 4);
    x.topLeftCorner(2, 2) = t1;
    x.bottomRightCorner(2, 2) = t1.inverse().adjoint();

    const CMatrix t = b.T * x;
    const CMatrix nt = t.fullPivLu().solve(CMatrix(n * t));
    InvariantRecord p;
    p.lambda1 = 0.5 * (nt(0, 0) + nt(1, 1));
    p.lambda2 = 0.5 * (nt(2, 2) + nt(3, 3));
    p.x = nt(3, 2);
    return Reduction{FamilyTag::TWO_EIG, p, t};
}

}  // namespace hnormal::detail
