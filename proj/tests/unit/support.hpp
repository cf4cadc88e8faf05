#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "hnormal/classify.hpp"
#include "hnormal/genfuzz.hpp"

namespace hnormal::test {

inline constexpr double pi = std::numbers::pi;
inline const cplx I{0.0, 1.0};

inline IndefinitePair canonical_pair(FamilyTag f, const InvariantRecord& p)
{
    const CanonicalForm c = make_canonical(f, p);
    return make_indefinite_pair(c.n_tilde, c.h_tilde);
}

inline IndefinitePair sampled_pair(FamilyTag f, std::uint64_t seed)
{
    return sample_canonical(SampleSpec{f, seed, {}, 1}).first;
}

inline CMatrix random_matrix(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = cplx(g(rng), g(rng));
    return a;
}

// Identity plus a moderate random perturbation; well conditioned.
inline CMatrix random_invertible(Eigen::Index n, std::uint64_t seed)
{
    return CMatrix::Identity(n, n) + 0.3 * random_matrix(n, seed);
}

inline IndefinitePair direct_sum(const IndefinitePair& a, const IndefinitePair& b)
{
    const Eigen::Index n = a.size(), m = b.size();
    CMatrix nn = CMatrix::Zero(n + m, n + m), hh = CMatrix::Zero(n + m, n + m);
    nn.topLeftCorner(n, n) = a.N;
    nn.bottomRightCorner(m, m) = b.N;
    hh.topLeftCorner(n, n) = a.H;
    hh.bottomRightCorner(m, m) = b.H;
    return make_indefinite_pair(nn, hh);
}

inline InvariantRecord params(FamilyTag f, std::uint64_t seed)
{
    return sample_canonical(SampleSpec{f, seed, {}, 1}).second;
}

}  // namespace hnormal::test
