#pragma once

#include <vector>

#include "hnormal/matcore.hpp"

namespace hnormal::detail {

// Single-linkage radius for eigenvalue clusters of a; wide enough to hold the
// spread of a perturbed Jordan block of index <= 5.
double cluster_radius(const CMatrix& a);

struct Cluster {
    cplx center;
    std::vector<Eigen::Index> members;
};

// Clusters sorted by (Re, Im) of their centers.
std::vector<Cluster> cluster_values(const CVector& values, double radius);

struct SchurClusters {
    CMatrix T;  // upper triangular Schur factor
    CMatrix U;  // a = U T U*
    std::vector<Cluster> clusters;  // members index the diagonal of T
};

SchurClusters schur_clusters(const CMatrix& a);

// Orthonormal basis of the invariant subspace belonging to the chosen clusters.
CMatrix cluster_subspace(const SchurClusters& sc, const std::vector<std::size_t>& cluster_ids);

// Orthonormal basis of {x : W* H x = 0}.
CMatrix h_complement(const CMatrix& h, const CMatrix& w);

// Nondegenerate subspaces invariant for N and N^[*] whose sum is the whole
// space, found from a random H-selfadjoint element of the commutant of
// {N, N^[*]}. Returns a single identity basis when no split is found.
std::vector<CMatrix> commutant_split(const CMatrix& n, const CMatrix& h);

// Finest split by recursing on commutant_split.
std::vector<CMatrix> refine_orthogonal(const CMatrix& n, const CMatrix& h);

// A proper nondegenerate joint-invariant subspace, or an empty matrix.
CMatrix find_witness(const CMatrix& n, const CMatrix& h);

// True when w spans a nondegenerate subspace invariant for N and N^[*].
bool is_reducing_subspace(const CMatrix& n, const CMatrix& h, const CMatrix& w);

}  // namespace hnormal::detail
