#include "hnormal/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "chain.hpp"
#include "split_detail.hpp"

namespace hnormal {

namespace detail {

namespace {

// Givens rotation zeroing g against f: [c s; -conj(s) c] [f; g] = [r; 0].
void givens(cplx f, cplx g, double& c, cplx& s)
{
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double d = std::hypot(af, ag);
    c = af / d;
    s = (f / af) * std::conj(g) / d;
}

// x <- c x + s y, y <- c y - conj(s) x
template <typename X, typename Y>
void rotate(X&& x, Y&& y, double c, cplx s)
{
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const cplx xi = x(i), yi = y(i);
        x(i) = c * xi + s * yi;
        y(i) = c * yi - std::conj(s) * xi;
    }
}

// Swaps diagonal entries k and k+1 of the Schur form, keeping a = U T U*.
void swap_adjacent(CMatrix& t, CMatrix& u, Eigen::Index k)
{
    const Eigen::Index n = t.rows();
    const cplx t11 = t(k, k), t22 = t(k + 1, k + 1);
    double c;
    cplx s;
    givens(t(k, k + 1), t22 - t11, c, s);
    if (k + 2 < n)
        rotate(t.row(k).tail(n - k - 2), t.row(k + 1).tail(n - k - 2), c, s);
    if (k > 0)
        rotate(t.col(k).head(k), t.col(k + 1).head(k), c, std::conj(s));
    t(k, k) = t22;
    t(k + 1, k + 1) = t11;
    rotate(u.col(k), u.col(k + 1), c, std::conj(s));
}

std::mt19937_64& commutant_rng()
{
    thread_local std::mt19937_64 rng;
    return rng;
}

}  // namespace

double cluster_radius(const CMatrix& a)
{
    const double s = std::max(1.0, max_abs(a));
    const double p = static_cast<double>(std::min<Eigen::Index>(a.rows(), 5));
    return std::max(1e-6 * s, 8.0 * std::pow(1e-14, 1.0 / p) * s);
}

std::vector<Cluster> cluster_values(const CVector& values, double radius)
{
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i)
            i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        return i;
    };
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(values(i) - values(j)) <= radius)
                parent[static_cast<std::size_t>(find(i))] = find(j);
    std::vector<Cluster> out;
    std::vector<Eigen::Index> root_of;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index r = find(i);
        auto it = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            out.push_back(Cluster{0.0, {}});
            it = root_of.end() - 1;
        }
        out[static_cast<std::size_t>(it - root_of.begin())].members.push_back(i);
    }
    for (auto& c : out) {
        cplx sum = 0.0;
        for (Eigen::Index i : c.members)
            sum += values(i);
        c.center = sum / static_cast<double>(c.members.size());
    }
    std::stable_sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        if (a.center.real() != b.center.real())
            return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

SchurClusters schur_clusters(const CMatrix& a)
{
    Eigen::ComplexSchur<CMatrix> cs(a);
    SchurClusters sc;
    sc.T = cs.matrixT().triangularView<Eigen::Upper>();
    sc.U = cs.matrixU();
    sc.clusters = cluster_values(sc.T.diagonal(), cluster_radius(a));
    return sc;
}

CMatrix cluster_subspace(const SchurClusters& sc, const std::vector<std::size_t>& cluster_ids)
{
    const Eigen::Index n = sc.T.rows();
    std::vector<bool> sel(static_cast<std::size_t>(n), false);
    for (std::size_t id : cluster_ids)
        for (Eigen::Index i : sc.clusters[id].members)
            sel[static_cast<std::size_t>(i)] = true;
    CMatrix t = sc.T, u = sc.U;
    Eigen::Index target = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!sel[static_cast<std::size_t>(j)])
            continue;
        for (Eigen::Index k = j - 1; k >= target; --k) {
            swap_adjacent(t, u, k);
            std::swap(sel[static_cast<std::size_t>(k)], sel[static_cast<std::size_t>(k + 1)]);
        }
        ++target;
    }
    return u.leftCols(target);
}

CMatrix h_complement(const CMatrix& h, const CMatrix& w)
{
    return null_space_dim(CMatrix(w.adjoint() * h), h.rows() - w.cols());
}

bool is_reducing_subspace(const CMatrix& n, const CMatrix& h, const CMatrix& w)
{
    if (w.cols() == 0)
        return false;
    const CMatrix ns = h_adjoint(n, h);
    const CMatrix pinv = w.completeOrthogonalDecomposition().pseudoInverse();
    const double rn = max_abs(n * w - w * (pinv * n * w));
    const double rs = max_abs(ns * w - w * (pinv * ns * w));
    if (rn > 1e-7 * std::max(1.0, max_abs(n)) || rs > 1e-7 * std::max(1.0, max_abs(ns)))
        return false;
    const auto sv = singular_values(CMatrix(w.adjoint() * h * w));
    return sv(sv.size() - 1) > 1e-6 * std::max(1.0, max_abs(h));
}

// Newton steps on span(W + W_perp X) toward a subspace invariant under both N and N^[*].
// Stops at the first step that does not lower the invariance defect.
CMatrix polish_subspace(const CMatrix& n, const CMatrix& h, const CMatrix& w)
{
    const Eigen::Index d = n.rows(), k = w.cols(), m = d - k;
    if (k == 0 || m == 0)
        return w;
    const CMatrix ns = h_adjoint(n, h);
    const double floor = 1e-15 * std::max(1.0, max_abs(n));
    CMatrix u = Eigen::HouseholderQR<CMatrix>(w).householderQ() * identity(d);
    CMatrix lhs(2 * m * k, m * k);
    CVector rhs(2 * m * k);
    auto defect = [&](const CMatrix& basis) {
        double worst = 0.0;
        for (int part = 0; part < 2; ++part) {
            const CMatrix a = basis.adjoint() * (part == 0 ? n : ns) * basis;
            const CMatrix a11 = a.topLeftCorner(k, k), a21 = a.bottomLeftCorner(m, k), a22 = a.bottomRightCorner(m, m);
            worst = std::max(worst, max_abs(a21));
            // vec(A22 X - X A11) = (I ⊗ A22 - A11^T ⊗ I) vec(X)
            for (Eigen::Index q = 0; q < k; ++q)
                for (Eigen::Index p = 0; p < k; ++p) {
                    CMatrix blk = -a11(q, p) * identity(m);
                    if (p == q)
                        blk += a22;
                    lhs.block(part * m * k + p * m, q * m, m, m) = blk;
                }
            rhs.segment(part * m * k, m * k) = -Eigen::Map<const CVector>(a21.data(), m * k);
        }
        return worst;
    };
    double worst = defect(u);
    for (int it = 0; it < 6 && worst > floor; ++it) {
        Eigen::JacobiSVD<CMatrix> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-8);
        const CVector x = svd.solve(rhs);
        const CMatrix shifted = u.leftCols(k) + u.rightCols(m) * Eigen::Map<const CMatrix>(x.data(), m, k);
        const CMatrix next = Eigen::HouseholderQR<CMatrix>(shifted).householderQ() * identity(d);
        const double w2 = defect(next);
        if (!(w2 < worst))
            break;
        u = next;
        worst = w2;
    }
    return u.leftCols(k);
}

std::vector<CMatrix> commutant_split(const CMatrix& n, const CMatrix& h)
{
    const Eigen::Index d = n.rows();
    std::vector<CMatrix> best{identity(d)};
    if (d == 1)
        return best;
    const CMatrix ns = h_adjoint(n, h);
    const Eigen::Index d2 = d * d;
    // vec(A X - X A) = (I ⊗ A - A^T ⊗ I) vec(X)
    CMatrix k = CMatrix::Zero(2 * d2, d2);
    const CMatrix id = identity(d);
    for (int part = 0; part < 2; ++part) {
        const CMatrix& a = part == 0 ? n : ns;
        for (Eigen::Index q = 0; q < d; ++q)
            for (Eigen::Index p = 0; p < d; ++p) {
                k.block(part * d2 + p * d, q * d, d, d) += id(p, q) * a;
                k.block(part * d2 + p * d, q * d, d, d) -= a(q, p) * id;
            }
    }
    Eigen::BDCSVD<CMatrix> svd(k, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double floor = 1e-9 * std::max({sv(0), max_abs(n), max_abs(ns)});
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > floor)
            ++rank;
    const CMatrix kernel = svd.matrixV().rightCols(d2 - rank);
    if (kernel.cols() <= 1)
        return best;

    // Candidate splits are scored by the smallest singular value of H on each part.
    auto h_floor = [&h](const CMatrix& w) {
        const auto s = singular_values(CMatrix(w.adjoint() * h * w));
        return s(s.size() - 1);
    };
    const double target = 0.25 * singular_values(h).minCoeff();
    double best_score = 0.0;
    auto& rng = commutant_rng();
    rng.seed(0x5eedu + static_cast<unsigned>(d));
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 12 && best_score < target; ++attempt) {
        CVector c(kernel.cols());
        for (Eigen::Index i = 0; i < c.size(); ++i)
            c(i) = cplx(gauss(rng), gauss(rng));
        const CVector v = kernel * c;
        const CMatrix x = Eigen::Map<const CMatrix>(v.data(), d, d);
        const CMatrix xs = 0.5 * (x + h_adjoint(x, h));
        const SchurClusters sc = schur_clusters(xs);
        const double r = cluster_radius(xs);
        std::vector<std::vector<std::size_t>> groups;
        std::vector<bool> used(sc.clusters.size(), false);
        for (std::size_t i = 0; i < sc.clusters.size(); ++i) {
            if (used[i])
                continue;
            used[i] = true;
            std::vector<std::size_t> g{i};
            const cplx ci = sc.clusters[i].center;
            if (std::abs(ci.imag()) > r) {
                for (std::size_t j = i + 1; j < sc.clusters.size(); ++j)
                    if (!used[j] && std::abs(sc.clusters[j].center - std::conj(ci)) <= r) {
                        used[j] = true;
                        g.push_back(j);
                        break;
                    }
            }
            groups.push_back(std::move(g));
        }
        if (groups.size() < 2)
            continue;
        // One polished part and its H-complement; recursion splits further.
        for (const auto& g : groups) {
            const CMatrix raw = cluster_subspace(sc, g);
            if (!is_reducing_subspace(n, h, raw))
                continue;
            const CMatrix first = polish_subspace(n, h, raw);
            if (!is_reducing_subspace(n, h, first))
                continue;
            CMatrix rest = h_complement(h, first);
            const double score = std::min(h_floor(first), h_floor(rest));
            if (score > best_score) {
                best_score = score;
                best = {first, std::move(rest)};
            }
        }
    }
    return best;
}

std::vector<CMatrix> refine_orthogonal(const CMatrix& n, const CMatrix& h)
{
    const std::vector<CMatrix> parts = commutant_split(n, h);
    if (parts.size() == 1)
        return parts;
    std::vector<CMatrix> out;
    for (const CMatrix& w : parts) {
        const CMatrix sn = w.adjoint() * n * w;
        CMatrix sh = w.adjoint() * h * w;
        sh = (0.5 * (sh + sh.adjoint())).eval();
        for (const CMatrix& sub : refine_orthogonal(sn, sh))
            out.push_back(w * sub);
    }
    return out;
}

CMatrix find_witness(const CMatrix& n, const CMatrix& h)
{
    const std::vector<CMatrix> parts = commutant_split(n, h);
    if (parts.size() < 2)
        return CMatrix(n.rows(), 0);
    return parts.front();
}

}  // namespace detail

namespace {

struct JointRoot {
    cplx mu, nu;
    CMatrix basis;
};

// Parts spanned by W(mu, nu) + W(conj nu, conj mu): one or two eigenvalues each.
std::vector<CMatrix> spectral_parts(const CMatrix& n, const CMatrix& h)
{
    const CMatrix ns = h_adjoint(n, h);
    const detail::SchurClusters sc = detail::schur_clusters(n);
    std::vector<JointRoot> roots;
    for (std::size_t c = 0; c < sc.clusters.size(); ++c) {
        const CMatrix r = detail::cluster_subspace(sc, {c});
        const CMatrix b = r.adjoint() * ns * r;
        const detail::SchurClusters sb = detail::schur_clusters(b);
        for (std::size_t e = 0; e < sb.clusters.size(); ++e)
            roots.push_back({sc.clusters[c].center, sb.clusters[e].center, r * detail::cluster_subspace(sb, {e})});
    }
    const double rad = std::max(detail::cluster_radius(n), detail::cluster_radius(ns));
    std::vector<CMatrix> parts;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        const JointRoot& a = roots[i];
        if (std::abs(a.nu - std::conj(a.mu)) <= rad) {
            parts.push_back(a.basis);
            continue;
        }
        std::size_t partner = roots.size();
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j].mu - std::conj(a.nu)) <= rad && std::abs(roots[j].nu - std::conj(a.mu)) <= rad) {
                partner = j;
                break;
            }
        if (partner == roots.size())
            throw Error(ErrorCode::NotHNormal, "joint eigenvalue pair without a partner");
        used[partner] = true;
        CMatrix both(n.rows(), a.basis.cols() + roots[partner].basis.cols());
        both << a.basis, roots[partner].basis;
        parts.push_back(both);
    }
    return parts;
}

IndefinitePair restrict_pair(const IndefinitePair& p, const CMatrix& v)
{
    IndefinitePair out;
    out.N = v.adjoint() * p.N * v;
    const CMatrix g = v.adjoint() * p.H * v;
    out.H = 0.5 * (g + g.adjoint());
    out.tol = p.tol;
    return out;
}

}  // namespace

BlockDecomposition split_orthogonal(const IndefinitePair& pair)
{
    if (!is_h_normal(pair))
        throw Error(ErrorCode::NotHNormal, "commutator residual " + std::to_string(commutator_residual(pair)));
    BlockDecomposition out;
    for (const CMatrix& part : spectral_parts(pair.N, pair.H)) {
        // Orthonormalize the part basis so the restriction is a plain projection.
        const CMatrix q = Eigen::HouseholderQR<CMatrix>(part).householderQ() * CMatrix::Identity(part.rows(), part.cols());
        const IndefinitePair sub = restrict_pair(pair, q);
        for (const CMatrix& b : detail::refine_orthogonal(sub.N, sub.H)) {
            const CMatrix v = q * b;
            out.blocks.push_back(Block{v, restrict_pair(pair, v)});
        }
    }
    out.combining_transform.resize(pair.size(), pair.size());
    Eigen::Index col = 0;
    for (const Block& b : out.blocks) {
        out.combining_transform.middleCols(col, b.basis.cols()) = b.basis;
        col += b.basis.cols();
    }
    return out;
}

CMatrix compute_S0(const IndefinitePair& pair, cplx lambda)
{
    const CMatrix m = pair.N - lambda * CMatrix::Identity(pair.size(), pair.size());
    CMatrix x = detail::joint_kernel(m, pair.H);
    if (x.cols() == 0)
        throw Error(ErrorCode::EmptyS0, "lambda is not a joint eigenvalue");
    return x;
}

TriSplit split_S0_S_S1(const IndefinitePair& pair)
{
    const Eigen::Index n = pair.size();
    TriSplit out;
    out.lambda = pair.N.trace() / static_cast<double>(n);
    const CMatrix m = pair.N - out.lambda * CMatrix::Identity(n, n);
    const detail::TriBasis tb = detail::tri_basis(m, pair.H);
    out.s0_dim = tb.s;
    out.transform = tb.T;
    out.transformed_pair = conjugate_pair(pair, tb.T);
    const Eigen::Index s = tb.s, mid = n - 2 * s;
    out.internal_pair.N = out.transformed_pair.N.block(s, s, mid, mid);
    out.internal_pair.H = out.transformed_pair.H.block(s, s, mid, mid);
    out.internal_pair.tol = pair.tol;
    return out;
}

std::vector<cplx> eigenvalue_clusters(const CMatrix& n)
{
    Eigen::ComplexEigenSolver<CMatrix> es(n, false);
    std::vector<cplx> out;
    for (const auto& c : detail::cluster_values(es.eigenvalues(), detail::cluster_radius(n)))
        out.push_back(c.center);
    return out;
}

bool check_dimension_bounds(const IndefinitePair& block)
{
    const Eigen::Index n = block.size();
    const int k = signature(block.H, block.tol).rank();
    const std::size_t eig = eigenvalue_clusters(block.N).size();
    if (k == 0)
        return n == 1 && eig == 1;
    if (eig == 2)
        return n == 2 * k;
    if (eig == 1)
        return 2 * k <= n && n <= 4 * k;
    return false;
}

}  // namespace hnormal
