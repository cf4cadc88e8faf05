#pragma once

#include <utility>

#include "hnormal/family.hpp"
#include "hnormal/matcore.hpp"

namespace hnormal::detail {

inline const cplx I{0.0, 1.0};

// Relative threshold for numerical rank decisions inside reductions.
inline constexpr double rank_tol = 1e-7;

CMatrix identity(Eigen::Index n);

// Orthonormal kernel basis; rank decided by sv > tol * max(1, sv_max).
CMatrix null_space(const CMatrix& a, double tol = rank_tol);
CMatrix null_space_dim(const CMatrix& a, Eigen::Index dim);

// ker(M) ∩ ker(M^[*]).
CMatrix joint_kernel(const CMatrix& m, const CMatrix& h, double tol = rank_tol);

// Basis [X Z Y] of S0, S, S1 in which H = [[0,0,I],[0,H1,0],[I,0,0]].
struct TriBasis {
    CMatrix T;
    Eigen::Index s = 0;
};
TriBasis tri_basis(const CMatrix& m, const CMatrix& h);

// -1 when H has more negative than positive eigenvalues.
int sign_flip(const CMatrix& h);

cplx unit(cplx w);

// arg w reduced mod pi, snapped to 0 and pi/2 within 1e-9.
double arg_mod_pi(cplx w);

// Running similarity: N <- X^{-1} N X, H <- X* H X, T <- T X.
struct Chain {
    CMatrix N, H, T;
    cplx lambda;
    int eps = 1;
    Eigen::Index s = 0;
    Eigen::Index m = 0;

    Chain(const CMatrix& n, const CMatrix& h, int sign = 1);

    Eigen::Index size() const { return N.rows(); }
    void apply(const CMatrix& x);
    CMatrix M() const;
    // Applies ts on the middle block of size ts.rows() starting at `at`.
    void embed(const CMatrix& ts, Eigen::Index at);
    void phase(std::initializer_list<Eigen::Index> idx, cplx w);
};

// Chain after the S0/S/S1 split, with eps chosen so that v- <= v+.
Chain prepared_chain(const CMatrix& n, const CMatrix& h);

// 2x2 [[0,a],[0,0]] with H = D2: D2-unitary T and z = a/|a|.
std::pair<CMatrix, cplx> normalize_rank1_2(const CMatrix& m);

// 3x3 strictly upper with H = D3: D3-unitary T and z' (exactly 1 or i on the boundaries).
std::pair<CMatrix, cplx> normalize_rank1_3(const CMatrix& m);

// Minimum-norm T2 with N2 - N1 T2* - T2 N3 = 0 (least squares when inconsistent).
CMatrix min_norm_block_solve(const CMatrix& n1, const CMatrix& n2, const CMatrix& n3);

// [[I, T2, -T2 T2*/2], [0, I, -T2*], [0, 0, I]] for s = T2.rows(), m = T2.cols().
CMatrix block_shear(const CMatrix& t2);

// T1 ⊕ TS ⊕ T1^{-*}.
CMatrix block_sum(const CMatrix& t1, const CMatrix& ts);

struct Reduction {
    FamilyTag family;
    InvariantRecord params;
    CMatrix T;
};

// Returns the result with sign and lambda filled in from the chain.
Reduction finish(const Chain& c, FamilyTag f, InvariantRecord p);

}  // namespace hnormal::detail
