#pragma once

#include <vector>

#include "hnormal/matcore.hpp"

namespace hnormal {

struct Block {
    CMatrix basis;  // columns span the summand in original coordinates
    IndefinitePair pair;
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    // [V_1 ... V_k]; conjugates the input into the direct sum of the block pairs.
    CMatrix combining_transform;
};

struct TriSplit {
    Eigen::Index s0_dim = 0;
    cplx lambda;
    CMatrix transform;
    IndefinitePair transformed_pair;
    IndefinitePair internal_pair;
};

BlockDecomposition split_orthogonal(const IndefinitePair& pair);

// Orthonormal basis of ker(N - lambda) ∩ ker(N^[*] - conj(lambda)).
CMatrix compute_S0(const IndefinitePair& pair, cplx lambda);

TriSplit split_S0_S_S1(const IndefinitePair& pair);

// Distinct eigenvalues of N after clustering.
std::vector<cplx> eigenvalue_clusters(const CMatrix& n);

// Indecomposable block of signature rank k: n = 1 for k = 0, n = 2k with two
// eigenvalues, 2k <= n <= 4k with one.
bool check_dimension_bounds(const IndefinitePair& block);

}  // namespace hnormal
