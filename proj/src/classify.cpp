#include "hnormal/classify.hpp"

#include <deque>

#include <Eigen/QR>

#include "reducers.hpp"
#include "split_detail.hpp"

namespace hnormal {

namespace {

ClassifiedBlock package(const IndefinitePair& block, const detail::Reduction& r)
{
    std::string why;
    if (!satisfies_constraints(r.family, r.params, 1e-9, &why)) {
        const bool rank1 = r.family >= FamilyTag::RANK1_N2;
        throw Error(rank1 ? ErrorCode::UnsupportedRank1Form : ErrorCode::InternalFormMismatch,
                    std::string(family_name(r.family)) + ": " + why);
    }
    CanonicalForm form = make_canonical(r.family, r.params);
    Certificate cert = make_certificate(block.N, block.H, form, r.T);
    return ClassifiedBlock{std::move(form), std::move(cert)};
}

int block_rank(const IndefinitePair& block)
{
    const int k = signature(block.H, block.tol).rank();
    if (k > 2)
        throw Error(ErrorCode::RankTooHigh, "signature rank " + std::to_string(k));
    return k;
}

void require_one_dimensional_s0(const TriSplit& split)
{
    if (split.s0_dim != 1)
        throw Error(ErrorCode::InternalFormMismatch, "dim S0 = " + std::to_string(split.s0_dim) + ", expected 1");
}

CMatrix orthonormal_columns(const CMatrix& w)
{
    Eigen::HouseholderQR<CMatrix> qr(w);
    return qr.householderQ() * CMatrix::Identity(w.rows(), w.cols());
}

IndefinitePair restrict_to(const IndefinitePair& p, const CMatrix& v)
{
    IndefinitePair out;
    out.N = v.adjoint() * p.N * v;
    const CMatrix g = v.adjoint() * p.H * v;
    out.H = 0.5 * (g + g.adjoint());
    out.tol = p.tol;
    return out;
}

}  // namespace

ClassifiedBlock reduce_two_eigenvalues(const IndefinitePair& block)
{
    if (block_rank(block) != 2)
        throw Error(ErrorCode::WrongEigStructure, "two-eigenvalue reduction needs rank 2");
    return package(block, detail::reduce_two_eig(block.N, block.H));
}

ClassifiedBlock reduce_dim1_indec(const IndefinitePair& block, const TriSplit& split)
{
    require_one_dimensional_s0(split);
    if (detail::internal_decomposable(split.internal_pair.N, split.internal_pair.H, split.lambda))
        throw Error(ErrorCode::InternalFormMismatch, "internal operator is decomposable");
    if (block.size() == 6)
        throw Error(ErrorCode::ImpossibleCase, "indecomposable n = 6 block cannot have dim S0 = 1");
    return package(block, detail::reduce_d1_indec(block.N, block.H));
}

ClassifiedBlock reduce_dim1_dec(const IndefinitePair& block, const TriSplit& split)
{
    require_one_dimensional_s0(split);
    if (block.size() == 7)
        throw Error(ErrorCode::ImpossibleCase, "n = 7 block cannot have dim S0 = 1");
    if (!detail::internal_decomposable(split.internal_pair.N, split.internal_pair.H, split.lambda))
        throw Error(ErrorCode::InternalFormMismatch, "internal operator is indecomposable");
    return package(block, detail::reduce_d1_dec(block.N, block.H));
}

ClassifiedBlock reduce_dim2(const IndefinitePair& block, const TriSplit& split)
{
    if (split.s0_dim != 2)
        throw Error(ErrorCode::InternalFormMismatch, "dim S0 = " + std::to_string(split.s0_dim) + ", expected 2");
    return package(block, detail::reduce_d2(block.N, block.H));
}

ClassifiedBlock classify_block(const IndefinitePair& block)
{
    const int k = block_rank(block);
    if (k == 0)
        return package(block, detail::reduce_rank0(block.N, block.H));
    if (k == 1)
        return package(block, detail::reduce_rank1(block.N, block.H));
    const std::size_t eigs = eigenvalue_clusters(block.N).size();
    if (eigs == 2)
        return reduce_two_eigenvalues(block);
    if (eigs != 1)
        throw Error(ErrorCode::WrongEigStructure, std::to_string(eigs) + " eigenvalues in an indecomposable block");
    const TriSplit split = split_S0_S_S1(block);
    if (split.s0_dim == 2)
        return reduce_dim2(block, split);
    if (split.s0_dim != 1)
        throw Error(ErrorCode::WrongEigStructure, "dim S0 = " + std::to_string(split.s0_dim));
    if (detail::internal_decomposable(split.internal_pair.N, split.internal_pair.H, split.lambda))
        return reduce_dim1_dec(block, split);
    return reduce_dim1_indec(block, split);
}

std::vector<ClassifiedBlock> classify_pair(const IndefinitePair& pair)
{
    if (!is_h_normal(pair))
        throw Error(ErrorCode::NotHNormal, "commutator residual " + std::to_string(commutator_residual(pair)));
    block_rank(pair);

    std::deque<Block> pending;
    for (Block& b : split_orthogonal(pair).blocks)
        pending.push_back(std::move(b));
    std::vector<ClassifiedBlock> out;
    while (!pending.empty()) {
        Block b = std::move(pending.front());
        pending.pop_front();
        try {
            ClassifiedBlock cb = classify_block(b.pair);
            cb.certificate = make_certificate(pair.N, pair.H, cb.form, b.basis * cb.certificate.T);
            out.push_back(std::move(cb));
        } catch (const DecomposableError& e) {
            CMatrix w = e.witness().cols() > 0 ? CMatrix(e.witness()) : detail::find_witness(b.pair.N, b.pair.H);
            if (w.cols() == 0 || w.cols() == b.pair.size())
                throw Error(ErrorCode::DecomposableDetected, e.detail() + "; no reducing subspace found");
            w = orthonormal_columns(w);
            const CMatrix rest = detail::h_complement(b.pair.H, w);
            for (const CMatrix& part : {w, rest}) {
                const CMatrix v = b.basis * part;
                pending.push_back(Block{v, restrict_to(pair, v)});
            }
        }
    }
    return out;
}

GlobalCertificate compose_certificate(const IndefinitePair& pair, const std::vector<ClassifiedBlock>& blocks)
{
    const Eigen::Index n = pair.size();
    GlobalCertificate g;
    g.T = CMatrix::Zero(n, n);
    g.n_tilde = CMatrix::Zero(n, n);
    g.h_tilde = CMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const ClassifiedBlock& b : blocks) {
        const Eigen::Index k = b.form.n_tilde.rows();
        if (at + k > n)
            throw Error(ErrorCode::ValidationError, "block sizes exceed the input dimension");
        g.T.middleCols(at, k) = b.certificate.T;
        g.n_tilde.block(at, at, k, k) = b.form.n_tilde;
        g.h_tilde.block(at, at, k, k) = b.form.h_tilde;
        at += k;
    }
    if (at != n)
        throw Error(ErrorCode::ValidationError, "block sizes do not cover the input dimension");
    g.residual_similarity = max_abs(pair.N * g.T - g.T * g.n_tilde);
    g.residual_congruence = max_abs(g.T.adjoint() * pair.H * g.T - g.h_tilde);
    return g;
}

bool pairs_equivalent(const IndefinitePair& p1, const IndefinitePair& p2)
{
    if (p1.size() != p2.size())
        return false;
    const auto a = classify_pair(p1);
    const auto b = classify_pair(p2);
    if (a.size() != b.size())
        return false;
    std::vector<bool> used(b.size(), false);
    for (const ClassifiedBlock& x : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size() && !matched; ++j) {
            if (used[j] || b[j].form.family != x.form.family)
                continue;
            if (invariant_distance(x.form.params, b[j].form.params) <= equivalence_tol) {
                used[j] = true;
                matched = true;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

}  // namespace hnormal
