#pragma once

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "hnormal/errors.hpp"

namespace hnormal {

using cplx = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using CMatrix = Matrix<cplx>;
using CVector = Eigen::VectorXcd;

inline constexpr double default_tol = 1e-9;
inline constexpr int max_dimension = 16;

// Max absolute entry; the residual norm used throughout.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a)
{
    return a.size() == 0 ? 0.0 : static_cast<double>(a.cwiseAbs().maxCoeff());
}

template <typename Derived>
Eigen::Matrix<double, Eigen::Dynamic, 1> singular_values(const Eigen::MatrixBase<Derived>& a)
{
    using Plain = Matrix<typename Derived::Scalar>;
    return Eigen::JacobiSVD<Plain>(a.eval()).singularValues();
}

struct Signature {
    int v_minus = 0;
    int v_plus = 0;

    int rank() const { return std::min(v_minus, v_plus); }
    int size() const { return v_minus + v_plus; }
    bool operator==(const Signature&) const = default;
};

template <typename Derived>
Signature signature(const Eigen::MatrixBase<Derived>& h, double tol = default_tol)
{
    using Plain = Matrix<typename Derived::Scalar>;
    const Plain hm = h.eval();
    if (hm.rows() != hm.cols())
        throw Error(ErrorCode::ValidationError, "H is not square");
    if (max_abs(hm - hm.adjoint()) > tol)
        throw Error(ErrorCode::NotHermitian, "|H - H*| = " + std::to_string(max_abs(hm - hm.adjoint())));
    const Plain sym = (hm + hm.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Plain> es(sym, Eigen::EigenvaluesOnly);
    Signature s;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (std::abs(ev) <= tol)
            throw Error(ErrorCode::NearSingular, "H has eigenvalue " + std::to_string(ev));
        (ev < 0 ? s.v_minus : s.v_plus)++;
    }
    return s;
}

// H^{-1} A* H.
template <typename DA, typename DH>
Matrix<typename DA::Scalar> h_adjoint(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DH>& h)
{
    using Plain = Matrix<typename DA::Scalar>;
    const Plain hm = h.eval();
    if (hm.rows() != a.rows() || a.rows() != a.cols() || hm.rows() != hm.cols())
        throw Error(ErrorCode::ValidationError, "size mismatch in h_adjoint");
    const auto sv = singular_values(hm);
    if (sv.size() > 0 && !(sv(sv.size() - 1) > 1e-14 * sv(0)))
        throw Error(ErrorCode::SingularH, "H is numerically singular");
    return hm.fullPivLu().solve(Plain(a.adjoint() * hm));
}

template <typename Scalar>
struct BasicPair {
    Matrix<Scalar> N;
    Matrix<Scalar> H;
    double tol = default_tol;

    Eigen::Index size() const { return N.rows(); }
};

using IndefinitePair = BasicPair<cplx>;

// Builds a pair and enforces its invariants: square, matching sizes,
// finite entries, H Hermitian and nondegenerate within tol.
template <typename Scalar>
BasicPair<Scalar> make_indefinite_pair(Matrix<Scalar> n, Matrix<Scalar> h, double tol = default_tol)
{
    if (n.rows() != n.cols() || h.rows() != h.cols() || n.rows() != h.rows())
        throw Error(ErrorCode::ValidationError, "N and H must be square and of equal size");
    if (n.rows() < 1 || n.rows() > max_dimension)
        throw Error(ErrorCode::ValidationError, "dimension must be in [1, 16]");
    if (!n.allFinite() || !h.allFinite())
        throw Error(ErrorCode::ValidationError, "non-finite entry");
    if (!(tol >= 0))
        throw Error(ErrorCode::ValidationError, "tolerance must be nonnegative");
    if (max_abs(h - h.adjoint()) > tol)
        throw Error(ErrorCode::NotHermitian, "|H - H*| = " + std::to_string(max_abs(h - h.adjoint())));
    const auto sv = singular_values(h);
    if (!(sv(sv.size() - 1) > tol))
        throw Error(ErrorCode::NearSingular, "smallest singular value of H is " + std::to_string(sv(sv.size() - 1)));
    return BasicPair<Scalar>{std::move(n), std::move(h), tol};
}

template <typename Scalar>
double commutator_residual(const BasicPair<Scalar>& p)
{
    const Matrix<Scalar> ns = h_adjoint(p.N, p.H);
    return max_abs(p.N * ns - ns * p.N);
}

template <typename Scalar>
bool is_h_normal(const BasicPair<Scalar>& p)
{
    const auto sv = singular_values(p.H);
    const double cond = sv(0) / sv(sv.size() - 1);
    const double nn = max_abs(p.N);
    const double scale = std::max(1.0, nn * nn * cond);
    return commutator_residual(p) <= p.tol * scale;
}

template <typename DU, typename DH>
bool is_h_unitary(const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DH>& h, double tol = default_tol)
{
    using Plain = Matrix<typename DU::Scalar>;
    const Plain um = u.eval();
    const Plain prod = um * h_adjoint(um, h);
    return max_abs(prod - Plain::Identity(um.rows(), um.cols())) <= tol;
}

// (T^{-1} N T, T* H T).
template <typename Scalar, typename DT>
BasicPair<Scalar> conjugate_pair(const BasicPair<Scalar>& p, const Eigen::MatrixBase<DT>& t)
{
    const Matrix<Scalar> tm = t.eval();
    if (tm.rows() != p.size() || tm.cols() != p.size())
        throw Error(ErrorCode::ValidationError, "T has the wrong size");
    const auto sv = singular_values(tm);
    if (!(sv(sv.size() - 1) > p.tol * std::max(1.0, static_cast<double>(sv(0)))))
        throw Error(ErrorCode::SingularT, "T is numerically singular");
    BasicPair<Scalar> out;
    out.N = tm.fullPivLu().solve(Matrix<Scalar>(p.N * tm));
    out.H = tm.adjoint() * p.H * tm;
    out.tol = p.tol;
    return out;
}

// D_r: ones on the secondary diagonal.
inline CMatrix secondary_identity(Eigen::Index r)
{
    return CMatrix::Identity(r, r).rowwise().reverse();
}

}  // namespace hnormal
