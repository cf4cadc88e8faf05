#include "hnormal/family.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hnormal {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

struct FamilyInfo {
    FamilyTag tag;
    std::string_view name;
    Eigen::Index dim;
    unsigned slots;
};

constexpr std::array<FamilyInfo, 24> infos{{
    {FamilyTag::TWO_EIG, "TWO_EIG", 4, SlotLambda1 | SlotLambda2 | SlotX},
    {FamilyTag::D1_IND_N4, "D1_IND_N4", 4, SlotLambda1 | SlotZ | SlotR1 | SlotR2},
    {FamilyTag::D1_IND_N5_A, "D1_IND_N5_A", 5, SlotLambda1 | SlotR1 | SlotR2 | SlotR3},
    {FamilyTag::D1_IND_N5_B, "D1_IND_N5_B", 5, SlotLambda1 | SlotZ | SlotR1 | SlotR2 | SlotR3},
    {FamilyTag::D1_IND_N5_C, "D1_IND_N5_C", 5, SlotLambda1 | SlotR1 | SlotR2 | SlotR3},
    {FamilyTag::D1_DEC_N4_A, "D1_DEC_N4_A", 4, SlotLambda1 | SlotZ},
    {FamilyTag::D1_DEC_N4_B, "D1_DEC_N4_B", 4, SlotLambda1 | SlotZ | SlotR},
    {FamilyTag::D1_DEC_N4_C, "D1_DEC_N4_C", 4, SlotLambda1 | SlotZ | SlotR},
    {FamilyTag::D1_DEC_N5, "D1_DEC_N5", 5, SlotLambda1 | SlotZ | SlotR1 | SlotR2},
    {FamilyTag::D1_DEC_N6_A, "D1_DEC_N6_A", 6, SlotLambda1 | SlotR1 | SlotR2 | SlotR3},
    {FamilyTag::D1_DEC_N6_B, "D1_DEC_N6_B", 6, SlotLambda1 | SlotZ | SlotR1 | SlotR2 | SlotR3},
    {FamilyTag::D2_N4_A, "D2_N4_A", 4, SlotLambda1 | SlotZ | SlotR},
    {FamilyTag::D2_N4_B, "D2_N4_B", 4, SlotLambda1},
    {FamilyTag::D2_N5_A, "D2_N5_A", 5, SlotLambda1 | SlotZ},
    {FamilyTag::D2_N5_B, "D2_N5_B", 5, SlotLambda1 | SlotZ | SlotR},
    {FamilyTag::D2_N6, "D2_N6", 6, SlotLambda1 | SlotZ | SlotR1 | SlotR2},
    {FamilyTag::D2_N7, "D2_N7", 7, SlotLambda1 | SlotZ1 | SlotZ2 | SlotAlpha | SlotBeta},
    {FamilyTag::D2_N8, "D2_N8", 8, SlotLambda1 | SlotZ1 | SlotZ2 | SlotAlpha | SlotBeta | SlotGamma},
    {FamilyTag::RANK0, "RANK0", 1, SlotLambda1},
    {FamilyTag::RANK1_N2, "RANK1_N2", 2, SlotLambda1 | SlotZ},
    {FamilyTag::RANK1_N3_A, "RANK1_N3_A", 3, SlotLambda1 | SlotR},
    {FamilyTag::RANK1_N3_B, "RANK1_N3_B", 3, SlotLambda1 | SlotZ | SlotR},
    {FamilyTag::RANK1_N4, "RANK1_N4", 4, SlotLambda1 | SlotAlpha},
    {FamilyTag::RANK1_TWO_EIG, "RANK1_TWO_EIG", 2, SlotLambda1 | SlotLambda2},
}};

constexpr std::array<FamilyTag, 18> rank2_tags{
    FamilyTag::TWO_EIG,     FamilyTag::D1_IND_N4,   FamilyTag::D1_IND_N5_A, FamilyTag::D1_IND_N5_B,
    FamilyTag::D1_IND_N5_C, FamilyTag::D1_DEC_N4_A, FamilyTag::D1_DEC_N4_B, FamilyTag::D1_DEC_N4_C,
    FamilyTag::D1_DEC_N5,   FamilyTag::D1_DEC_N6_A, FamilyTag::D1_DEC_N6_B, FamilyTag::D2_N4_A,
    FamilyTag::D2_N4_B,     FamilyTag::D2_N5_A,     FamilyTag::D2_N5_B,     FamilyTag::D2_N6,
    FamilyTag::D2_N7,       FamilyTag::D2_N8,
};

constexpr std::array<FamilyTag, 24> all_tags = [] {
    std::array<FamilyTag, 24> out{};
    for (std::size_t i = 0; i < infos.size(); ++i)
        out[i] = infos[i].tag;
    return out;
}();

const FamilyInfo& info(FamilyTag f)
{
    return infos[static_cast<std::size_t>(f)];
}

template <typename T>
T need(const std::optional<T>& v, std::string_view slot, FamilyTag f)
{
    if (!v)
        throw Error(ErrorCode::BadRange, std::string(family_name(f)) + " needs slot " + std::string(slot));
    return *v;
}

// [[0,0,I_s],[0,mid,0],[I_s,0,0]]
CMatrix anti_block(Eigen::Index s, const CMatrix& mid)
{
    const Eigen::Index m = mid.rows();
    const Eigen::Index n = 2 * s + m;
    CMatrix h = CMatrix::Zero(n, n);
    h.block(0, s + m, s, s).setIdentity();
    h.block(s + m, 0, s, s).setIdentity();
    if (m > 0)
        h.block(s, s, m, m) = mid;
    return h;
}

CMatrix h_form18()
{
    CMatrix mid = CMatrix::Zero(4, 4);
    mid.topLeftCorner(3, 3) = secondary_identity(3);
    mid(3, 3) = 1.0;
    return anti_block(1, mid);
}

bool unit_modulus(cplx z, double tol) { return std::abs(std::abs(z) - 1.0) <= tol; }

bool fail(std::string* why, const std::string& msg)
{
    if (why)
        *why = msg;
    return false;
}

bool eigen_order_ok(cplx l1, cplx l2, double tol)
{
    const cplx d = l1 - l2;
    if (d.imag() > tol)
        return true;
    return std::abs(d.imag()) <= tol && d.real() > 0;
}

}  // namespace

std::string_view family_name(FamilyTag f) { return info(f).name; }

std::optional<FamilyTag> family_from_name(std::string_view name)
{
    for (const auto& i : infos)
        if (i.name == name)
            return i.tag;
    return std::nullopt;
}

std::span<const FamilyTag> rank2_families() { return rank2_tags; }
std::span<const FamilyTag> all_families() { return all_tags; }

Eigen::Index family_dimension(FamilyTag f) { return info(f).dim; }

unsigned family_slots(FamilyTag f) { return info(f).slots; }

unsigned InvariantRecord::slots() const
{
    unsigned s = 0;
    if (lambda1) s |= SlotLambda1;
    if (lambda2) s |= SlotLambda2;
    if (x) s |= SlotX;
    if (z) s |= SlotZ;
    if (z1) s |= SlotZ1;
    if (z2) s |= SlotZ2;
    if (r) s |= SlotR;
    if (r1) s |= SlotR1;
    if (r2) s |= SlotR2;
    if (r3) s |= SlotR3;
    if (alpha) s |= SlotAlpha;
    if (beta) s |= SlotBeta;
    if (gamma) s |= SlotGamma;
    return s;
}

double invariant_distance(const InvariantRecord& a, const InvariantRecord& b)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.slots() != b.slots() || a.sign != b.sign)
        return inf;
    double d = 0.0;
    auto take = [&d](const auto& u, const auto& v) {
        if (u)
            d = std::max(d, static_cast<double>(std::abs(*u - *v)));
    };
    take(a.lambda1, b.lambda1);
    take(a.lambda2, b.lambda2);
    take(a.x, b.x);
    take(a.z, b.z);
    take(a.z1, b.z1);
    take(a.z2, b.z2);
    take(a.r, b.r);
    take(a.r1, b.r1);
    take(a.r2, b.r2);
    take(a.r3, b.r3);
    take(a.alpha, b.alpha);
    take(a.beta, b.beta);
    take(a.gamma, b.gamma);
    return d;
}

CanonicalForm make_canonical(FamilyTag f, const InvariantRecord& p)
{
    const Eigen::Index n = family_dimension(f);
    CMatrix m = CMatrix::Zero(n, n);
    CMatrix h;
    const cplx lam = need(p.lambda1, "lambda1", f);
    switch (f) {
    case FamilyTag::TWO_EIG: {
        const cplx l2 = need(p.lambda2, "lambda2", f);
        m(0, 0) = m(1, 1) = lam;
        m(0, 1) = 1.0;
        m(2, 2) = m(3, 3) = l2;
        m(3, 2) = need(p.x, "x", f);
        h = anti_block(2, CMatrix(0, 0));
        break;
    }
    case FamilyTag::D1_IND_N4: {
        const cplx z = need(p.z, "z", f);
        m(0, 1) = 1.0;
        m(0, 2) = I * need(p.r1, "r1", f);
        m(0, 3) = I * need(p.r2, "r2", f) * z;
        m(1, 2) = z;
        m(2, 3) = z * z;
        h = secondary_identity(4);
        break;
    }
    case FamilyTag::D1_IND_N5_A: {
        const double r1 = need(p.r1, "r1", f);
        m(0, 1) = 1.0;
        m(0, 4) = I * need(p.r3, "r3", f);
        m(1, 2) = 1.0;
        m(1, 3) = I * r1;
        m(1, 4) = -2.0 * r1 * r1 + I * need(p.r2, "r2", f);
        m(2, 3) = 1.0;
        m(2, 4) = 2.0 * I * r1;
        m(3, 4) = 1.0;
        h = secondary_identity(5);
        break;
    }
    case FamilyTag::D1_IND_N5_B: {
        const cplx z = need(p.z, "z", f);
        const double r1 = need(p.r1, "r1", f);
        const double iz = z.imag();
        m(0, 1) = 1.0;
        m(0, 4) = I * need(p.r3, "r3", f);
        m(1, 2) = z;
        m(1, 3) = r1;
        m(1, 4) = -2.0 * z * z * r1 * r1 * iz * iz + I * need(p.r2, "r2", f) * z * z;
        m(2, 3) = z;
        m(2, 4) = -2.0 * I * r1 * z * z * iz;
        m(3, 4) = z * z;
        h = secondary_identity(5);
        break;
    }
    case FamilyTag::D1_IND_N5_C: {
        const double r1 = need(p.r1, "r1", f);
        m(0, 1) = 1.0;
        m(0, 4) = need(p.r3, "r3", f);
        m(1, 2) = I;
        m(1, 3) = r1;
        m(1, 4) = 2.0 * r1 * r1 + I * need(p.r2, "r2", f);
        m(2, 3) = I;
        m(2, 4) = 2.0 * I * r1;
        m(3, 4) = -1.0;
        h = secondary_identity(5);
        break;
    }
    case FamilyTag::D1_DEC_N4_A:
        m(0, 1) = 1.0;
        m(1, 3) = need(p.z, "z", f);
        h = secondary_identity(4);
        break;
    case FamilyTag::D1_DEC_N4_B:
    case FamilyTag::D1_DEC_N4_C: {
        const double s = f == FamilyTag::D1_DEC_N4_B ? 1.0 : -1.0;
        const cplx z = need(p.z, "z", f);
        m(0, 1) = 1.0;
        m(0, 2) = s;
        m(1, 3) = z;
        m(2, 3) = s * (1.0 + I * need(p.r, "r", f)) * z;
        h = secondary_identity(4);
        break;
    }
    case FamilyTag::D1_DEC_N5: {
        const cplx z = need(p.z, "z", f);
        const double r1 = need(p.r1, "r1", f);
        m(0, 1) = 1.0;
        m(0, 3) = 0.5 * r1 * r1 + I * need(p.r2, "r2", f);
        m(1, 3) = z;
        m(2, 4) = r1;
        m(3, 4) = z * z;
        h = secondary_identity(5);
        break;
    }
    case FamilyTag::D1_DEC_N6_A: {
        const double r1 = need(p.r1, "r1", f);
        const double r2 = need(p.r2, "r2", f);
        m(0, 1) = 1.0;
        m(0, 2) = 2.0 * I * r1;
        m(1, 2) = 1.0;
        m(1, 3) = I * r1;
        m(1, 5) = 2.0 * r1 * r1 - r2 * r2 / 2.0 + I * need(p.r3, "r3", f);
        m(2, 3) = 1.0;
        m(3, 5) = 1.0;
        m(4, 5) = r2;
        h = h_form18();
        break;
    }
    case FamilyTag::D1_DEC_N6_B: {
        const cplx z = need(p.z, "z", f);
        const double r1 = need(p.r1, "r1", f);
        const double r2 = need(p.r2, "r2", f);
        const double iz = z.imag();
        m(0, 1) = 1.0;
        m(0, 2) = -2.0 * I * r1 * iz;
        m(1, 2) = z;
        m(1, 3) = r1;
        m(1, 5) = (2.0 * r1 * r1 * iz * iz - r2 * r2 / 2.0 + I * need(p.r3, "r3", f)) * z * z;
        m(2, 3) = z;
        m(3, 5) = z * z;
        m(4, 5) = r2;
        h = h_form18();
        break;
    }
    case FamilyTag::D2_N4_A: {
        const cplx z = need(p.z, "z", f);
        m(0, 2) = z;
        m(0, 3) = need(p.r, "r", f) * std::polar(1.0, -pi / 3.0) * z;
        m(1, 3) = std::polar(1.0, pi / 3.0) * z;
        h = anti_block(2, CMatrix(0, 0));
        break;
    }
    case FamilyTag::D2_N4_B:
        m(1, 2) = 1.0;
        h = anti_block(2, CMatrix(0, 0));
        break;
    case FamilyTag::D2_N5_A:
        m(0, 2) = 1.0;
        m(1, 3) = 1.0;
        m(2, 3) = need(p.z, "z", f);
        h = anti_block(2, CMatrix::Identity(1, 1));
        break;
    case FamilyTag::D2_N5_B: {
        const cplx z = need(p.z, "z", f);
        m(0, 2) = 1.0;
        m(1, 3) = need(p.r, "r", f);
        m(1, 4) = z;
        m(2, 3) = z * z;
        h = anti_block(2, CMatrix::Identity(1, 1));
        break;
    }
    case FamilyTag::D2_N6: {
        const cplx z = need(p.z, "z", f);
        const double r1 = need(p.r1, "r1", f);
        m(0, 2) = 1.0;
        m(1, 3) = 1.0;
        m(0, 4) = I * r1;
        m(1, 4) = need(p.r2, "r2", f);
        m(1, 5) = I * r1;
        m(2, 4) = z;
        m(3, 5) = z;
        h = anti_block(2, CMatrix::Identity(2, 2));
        break;
    }
    case FamilyTag::D2_N7: {
        const cplx z1 = need(p.z1, "z1", f), z2 = need(p.z2, "z2", f);
        const double a = need(p.alpha, "alpha", f), b = need(p.beta, "beta", f);
        m(0, 2) = 1.0;
        m(1, 3) = 1.0;
        m(2, 5) = -z1 * std::conj(z2) * std::cos(a);
        m(2, 6) = std::sin(a) * std::cos(b);
        m(3, 5) = z1 * std::sin(a);
        m(3, 6) = z2 * std::cos(a) * std::cos(b);
        m(4, 6) = std::sin(b);
        h = anti_block(2, CMatrix::Identity(3, 3));
        break;
    }
    case FamilyTag::D2_N8: {
        const cplx z1 = need(p.z1, "z1", f), z2 = need(p.z2, "z2", f);
        const double a = need(p.alpha, "alpha", f), b = need(p.beta, "beta", f);
        const double g = need(p.gamma, "gamma", f);
        m(0, 2) = 1.0;
        m(1, 3) = 1.0;
        m(2, 6) = -z1 * std::conj(z2) * std::sin(a) * std::cos(b);
        m(2, 7) = std::cos(a) * std::cos(g);
        m(3, 6) = z1 * std::cos(a) * std::cos(b);
        m(3, 7) = z2 * std::sin(a) * std::cos(g);
        m(4, 6) = std::sin(b);
        m(5, 7) = std::sin(g);
        h = anti_block(2, CMatrix::Identity(4, 4));
        break;
    }
    case FamilyTag::RANK0:
        h = CMatrix::Identity(1, 1);
        break;
    case FamilyTag::RANK1_N2:
        m(0, 1) = need(p.z, "z", f);
        h = secondary_identity(2);
        break;
    case FamilyTag::RANK1_N3_A:
        m(0, 1) = m(1, 2) = 1.0;
        m(0, 2) = I * need(p.r, "r", f);
        h = secondary_identity(3);
        break;
    case FamilyTag::RANK1_N3_B: {
        const cplx z = need(p.z, "z", f);
        m(0, 1) = m(1, 2) = z;
        m(0, 2) = need(p.r, "r", f);
        h = secondary_identity(3);
        break;
    }
    case FamilyTag::RANK1_N4: {
        const double a = need(p.alpha, "alpha", f);
        m(0, 1) = std::cos(a);
        m(0, 2) = std::sin(a);
        m(1, 3) = 1.0;
        h = anti_block(1, CMatrix::Identity(2, 2));
        break;
    }
    case FamilyTag::RANK1_TWO_EIG:
        m(1, 1) = need(p.lambda2, "lambda2", f) - lam;
        h = secondary_identity(2);
        break;
    }
    if (f != FamilyTag::TWO_EIG)
        m.diagonal().array() += lam;
    if (p.sign != 1 && p.sign != -1)
        throw Error(ErrorCode::BadRange, "sign must be +1 or -1");
    CanonicalForm out;
    out.family = f;
    out.params = p;
    out.n_tilde = std::move(m);
    out.h_tilde = static_cast<double>(p.sign) * h;
    return out;
}

bool satisfies_constraints(FamilyTag f, const InvariantRecord& p, double tol, std::string* why)
{
    if (p.slots() != family_slots(f))
        return fail(why, "populated slots do not match the family");
    if (p.sign != 1 && p.sign != -1)
        return fail(why, "sign must be +1 or -1");
    for (const auto& u : {p.z, p.z1, p.z2})
        if (u && !unit_modulus(*u, tol))
            return fail(why, "unit-modulus slot has |z| != 1");
    auto arg_open_upper = [tol](cplx z) {
        const double a = std::arg(z);
        return a > tol && a < pi - tol;
    };
    switch (f) {
    case FamilyTag::TWO_EIG:
        if (std::abs(*p.lambda1 - *p.lambda2) <= tol)
            return fail(why, "lambda1 == lambda2");
        if (std::abs(*p.x) > tol && !eigen_order_ok(*p.lambda1, *p.lambda2, tol))
            return fail(why, "eigenvalue order violated for x != 0");
        return true;
    case FamilyTag::RANK1_TWO_EIG:
        if (std::abs(*p.lambda1 - *p.lambda2) <= tol)
            return fail(why, "lambda1 == lambda2");
        if (!eigen_order_ok(*p.lambda1, *p.lambda2, tol))
            return fail(why, "eigenvalue order violated");
        return true;
    case FamilyTag::D1_IND_N5_B:
        if (!arg_open_upper(*p.z) || std::abs(*p.z - I) <= tol)
            return fail(why, "need 0 < arg z < pi and z != i");
        return true;
    case FamilyTag::D1_DEC_N4_B:
    case FamilyTag::D1_DEC_N4_C:
    case FamilyTag::D2_N5_B:
        if (!(*p.r > tol))
            return fail(why, "need r > 0");
        return true;
    case FamilyTag::D1_DEC_N5:
        if (!(*p.r1 > tol))
            return fail(why, "need r1 > 0");
        return true;
    case FamilyTag::D1_DEC_N6_A:
        if (!(*p.r2 > tol))
            return fail(why, "need r2 > 0");
        return true;
    case FamilyTag::D1_DEC_N6_B:
        if (!(*p.r2 > tol))
            return fail(why, "need r2 > 0");
        if (!arg_open_upper(*p.z))
            return fail(why, "need 0 < arg z < pi");
        return true;
    case FamilyTag::D2_N4_A: {
        const double s3 = std::sqrt(3.0);
        if (*p.r < s3 - tol)
            return fail(why, "need r >= sqrt(3)");
        const double a = std::arg(*p.z);
        if (*p.r > s3 + tol && !(a >= -tol && a < pi - tol))
            return fail(why, "need 0 <= arg z < pi when r > sqrt(3)");
        return true;
    }
    case FamilyTag::D2_N6:
        if (std::abs(*p.z + 1.0) <= tol)
            return fail(why, "z = -1");
        if (!(*p.r2 > tol))
            return fail(why, "need r2 > 0");
        return true;
    case FamilyTag::D2_N7: {
        const double a = *p.alpha, b = *p.beta;
        if (!(a > tol && a <= pi / 2 + tol) || !(b > tol && b <= pi / 2 + tol))
            return fail(why, "need 0 < alpha, beta <= pi/2");
        if (std::abs(b - pi / 2) <= tol && std::abs(*p.z1 - 1.0) > tol)
            return fail(why, "z1 must be 1 when beta = pi/2");
        if (std::abs(a - pi / 2) <= tol && std::abs(*p.z2 - 1.0) > tol)
            return fail(why, "z2 must be 1 when alpha = pi/2");
        return true;
    }
    case FamilyTag::D2_N8: {
        const double a = *p.alpha, b = *p.beta, g = *p.gamma;
        if (!(a >= -tol && a < pi / 2 - tol))
            return fail(why, "need 0 <= alpha < pi/2");
        if (!(b > tol && b < g - tol && g <= pi / 2 + tol))
            return fail(why, "need 0 < beta < gamma <= pi/2");
        if (std::abs(g - pi / 2) <= tol && std::abs(*p.z1 - 1.0) > tol)
            return fail(why, "z1 must be 1 when gamma = pi/2");
        if (std::abs(a) <= tol && std::abs(*p.z2 - 1.0) > tol)
            return fail(why, "z2 must be 1 when alpha = 0");
        return true;
    }
    case FamilyTag::RANK1_N3_B:
        if (!arg_open_upper(*p.z))
            return fail(why, "need 0 < arg z < pi");
        return true;
    case FamilyTag::RANK1_N4:
        if (!(*p.alpha > tol && *p.alpha <= pi / 2 + tol))
            return fail(why, "need 0 < alpha <= pi/2");
        return true;
    default:
        return true;
    }
}

Certificate make_certificate(const CMatrix& n, const CMatrix& h, const CanonicalForm& form, CMatrix t)
{
    Certificate c;
    c.residual_similarity = max_abs(n * t - t * form.n_tilde);
    c.residual_congruence = max_abs(t.adjoint() * h * t - form.h_tilde);
    c.T = std::move(t);
    return c;
}

}  // namespace hnormal
