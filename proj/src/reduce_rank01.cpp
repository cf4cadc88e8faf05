#include <cmath>
#include <numbers>

#include "reducers.hpp"
#include "split_detail.hpp"

namespace hnormal::detail {

namespace {

// Rule shared with the two-eigenvalue form: Im(l1 - l2) > 0, or Im = 0 and Re > 0.
bool ordered(cplx l1, cplx l2)
{
    const cplx d = l1 - l2;
    if (std::abs(d.imag()) > 1e-12 * std::max(1.0, std::abs(d)))
        return d.imag() > 0;
    return d.real() > 0;
}

Reduction rank1_two_eig(const CMatrix& n, const CMatrix& h)
{
    const SchurClusters sc = schur_clusters(n);
    if (sc.clusters.size() != 2)
        throw Error(ErrorCode::WrongEigStructure, "expected two eigenvalues");
    CMatrix e = cluster_subspace(sc, {0});
    CMatrix f = cluster_subspace(sc, {1});
    if (!ordered(sc.clusters[0].center, sc.clusters[1].center))
        std::swap(e, f);
    const cplx g = (e.adjoint() * h * f)(0, 0);
    CMatrix t(2, 2);
    t << e, f / g;
    const CMatrix nt = t.fullPivLu().solve(CMatrix(n * t));
    InvariantRecord p;
    p.lambda1 = nt(0, 0);
    p.lambda2 = nt(1, 1);
    return Reduction{FamilyTag::RANK1_TWO_EIG, p, t};
}

Reduction rank1_n2(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    const auto [t, z] = normalize_rank1_2(c.M());
    c.apply(t);
    InvariantRecord p;
    p.z = z;
    return finish(c, FamilyTag::RANK1_N2, p);
}

Reduction rank1_n3(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    if (c.s != 1)
        throw Error(ErrorCode::UnsupportedRank1Form, "three-dimensional block with dim S0 != 1");
    const double hm = c.H(1, 1).real();
    if (hm <= 0)
        throw Error(ErrorCode::UnsupportedRank1Form, "internal H is not positive");
    c.phase({1}, 1.0 / std::sqrt(hm));
    const auto [t, zp] = normalize_rank1_3(c.M());
    c.apply(t);
    const cplx x = c.M()(0, 2);
    InvariantRecord p;
    if (zp == cplx(1.0)) {
        p.r = x.imag();
        return finish(c, FamilyTag::RANK1_N3_A, p);
    }
    p.z = zp;
    p.r = x.real();
    return finish(c, FamilyTag::RANK1_N3_B, p);
}

Reduction rank1_n4(const CMatrix& n, const CMatrix& h)
{
    Chain c = prepared_chain(n, h);
    if (c.s != 1)
        throw Error(ErrorCode::UnsupportedRank1Form, "four-dimensional block with dim S0 != 1");
    const CMatrix h1 = c.H.block(1, 1, 2, 2);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h1 + h1.adjoint()));
    if (es.eigenvalues()(0) <= 0)
        throw Error(ErrorCode::UnsupportedRank1Form, "internal H is not positive definite");
    c.embed(es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal(), 1);

    const CVector col = c.M().block(1, 3, 2, 1);
    const double t = col.norm();
    if (t < rank_tol)
        throw Error(ErrorCode::UnsupportedRank1Form, "internal column vanishes");
    const CVector u = col / t;
    CMatrix x = identity(4);
    x(0, 0) = t;
    x(1, 1) = u(0);
    x(2, 1) = u(1);
    x(1, 2) = -std::conj(u(1));
    x(2, 2) = std::conj(u(0));
    x(3, 3) = 1.0 / t;
    c.apply(x);

    const cplx r2 = c.M()(0, 2);
    if (std::abs(r2) > 1e-12)
        c.phase({2}, std::conj(unit(r2)));
    const CMatrix m = c.M();
    c.apply(block_shear(min_norm_block_solve(m.block(0, 1, 1, 2), m.block(0, 3, 1, 1), m.block(1, 3, 2, 1))));

    // N^2 = c N^[*] N with c = M(0, 1): an invariant, and the form needs c in [0, 1).
    const CMatrix mf = c.M();
    const cplx cv = mf(0, 1);
    if (std::abs(cv.imag()) > 1e-8 || cv.real() < -1e-8)
        throw Error(ErrorCode::UnsupportedRank1Form,
                    "four-dimensional block with N^2 = c N^[*] N, c = " + std::to_string(cv.real()) + " + " +
                        std::to_string(cv.imag()) + "i outside [0, 1)");
    InvariantRecord p;
    p.alpha = std::atan2(std::abs(mf(0, 2)), cv.real());
    return finish(c, FamilyTag::RANK1_N4, p);
}

}  // namespace

Reduction reduce_rank0(const CMatrix& n, const CMatrix& h)
{
    if (n.rows() != 1)
        throw Error(ErrorCode::WrongEigStructure, "definite blocks are one-dimensional");
    const double hv = h(0, 0).real();
    CMatrix t(1, 1);
    t(0, 0) = 1.0 / std::sqrt(std::abs(hv));
    InvariantRecord p;
    p.lambda1 = n(0, 0);
    p.sign = hv < 0 ? -1 : 1;
    return Reduction{FamilyTag::RANK0, p, t};
}

Reduction reduce_rank1(const CMatrix& n, const CMatrix& h)
{
    const std::size_t eigs = schur_clusters(n).clusters.size();
    const Eigen::Index dim = n.rows();
    if (eigs == 2 && dim == 2)
        return rank1_two_eig(n, h);
    if (eigs == 1) {
        switch (dim) {
        case 2:
            return rank1_n2(n, h);
        case 3:
            return rank1_n3(n, h);
        case 4:
            return rank1_n4(n, h);
        default:
            break;
        }
    }
    throw Error(ErrorCode::UnsupportedRank1Form,
                "n = " + std::to_string(dim) + " with " + std::to_string(eigs) + " eigenvalues");
}

}  // namespace hnormal::detail
