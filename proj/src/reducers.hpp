#pragma once

#include "chain.hpp"

namespace hnormal::detail {

// Each reducer returns T with T^{-1} N T equal to the family template and
// T* H T equal to sign times its H pattern.

Reduction reduce_rank0(const CMatrix& n, const CMatrix& h);
Reduction reduce_rank1(const CMatrix& n, const CMatrix& h);
Reduction reduce_two_eig(const CMatrix& n, const CMatrix& h);

// Jordan-type internal operator; n in {4, 5}.
Reduction reduce_d1_indec(const CMatrix& n, const CMatrix& h);
// Internal operator with a positive joint eigenvector; n in {4, 5, 6}.
Reduction reduce_d1_dec(const CMatrix& n, const CMatrix& h);
// Two-dimensional S0; n in 4..8.
Reduction reduce_d2(const CMatrix& n, const CMatrix& h);

// True when the joint kernel of the internal operator carries a non-neutral vector.
bool internal_decomposable(const CMatrix& n1, const CMatrix& h1, cplx lambda);

}  // namespace hnormal::detail
