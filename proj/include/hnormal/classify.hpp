#pragma once

#include <vector>

#include "hnormal/decomp.hpp"
#include "hnormal/family.hpp"

namespace hnormal {

struct ClassifiedBlock {
    CanonicalForm form;
    // T maps the block's canonical coordinates into the input coordinates.
    Certificate certificate;
};

std::vector<ClassifiedBlock> classify_pair(const IndefinitePair& pair);

// Certificate for the whole input: T = [T_1 ... T_k], canonical pair = direct sum of the blocks.
struct GlobalCertificate {
    CMatrix T;
    CMatrix n_tilde;
    CMatrix h_tilde;
    double residual_similarity = 0.0;
    double residual_congruence = 0.0;
};

GlobalCertificate compose_certificate(const IndefinitePair& pair, const std::vector<ClassifiedBlock>& blocks);

ClassifiedBlock reduce_two_eigenvalues(const IndefinitePair& block);
ClassifiedBlock reduce_dim1_indec(const IndefinitePair& block, const TriSplit& split);
ClassifiedBlock reduce_dim1_dec(const IndefinitePair& block, const TriSplit& split);
ClassifiedBlock reduce_dim2(const IndefinitePair& block, const TriSplit& split);

// Classifies a single indecomposable block in its own coordinates.
ClassifiedBlock classify_block(const IndefinitePair& block);

// Parameter tolerance used when comparing invariant records.
inline constexpr double equivalence_tol = 1e-6;

bool pairs_equivalent(const IndefinitePair& p1, const IndefinitePair& p2);

}  // namespace hnormal
