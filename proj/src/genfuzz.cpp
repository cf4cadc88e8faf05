#include "hnormal/genfuzz.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hnormal/classify.hpp"

namespace hnormal {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double snap_tol = 1e-9;

// Uniform doubles from the raw 64-bit stream, independent of the standard library's distributions.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(const Interval& iv) { return iv.lo + (iv.hi - iv.lo) * uniform(); }
    double normal()
    {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

private:
    std::mt19937_64 rng_;
};

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

const Interval full_turn{0.0, 2.0 * pi};
const Interval upper_half{0.05, pi - 0.05};
const Interval free_real{-2.0, 2.0};
const Interval positive{0.2, 3.0};

std::string bad_range(FamilyTag f, const std::string& msg)
{
    return std::string(family_name(f)) + ": " + msg;
}

const Interval& range_of(const ParamRanges& r, std::string_view key)
{
    return r.find(key)->second;
}

cplx unit_at(double theta)
{
    if (std::abs(theta) <= snap_tol || std::abs(theta - 2.0 * pi) <= snap_tol)
        return 1.0;
    if (std::abs(theta - pi / 2) <= snap_tol)
        return {0.0, 1.0};
    return std::polar(1.0, theta);
}

double snap_angle(double a)
{
    for (double b : {0.0, pi / 2})
        if (std::abs(a - b) <= snap_tol)
            return b;
    return a;
}

bool balanced_pattern(FamilyTag f)
{
    InvariantRecord p;
    const unsigned s = family_slots(f);
    if (s & SlotLambda1)
        p.lambda1 = 0.0;
    if (s & SlotLambda2)
        p.lambda2 = 1.0;
    if (s & SlotX)
        p.x = 0.0;
    for (auto* z : {&p.z, &p.z1, &p.z2})
        *z = 1.0;
    for (auto* r : {&p.r, &p.r1, &p.r2, &p.r3, &p.alpha, &p.beta, &p.gamma})
        *r = 0.5;
    p.gamma = 1.0;
    const CMatrix h = make_canonical(f, p).h_tilde;
    const Signature sg = signature(h, 1e-12);
    return sg.v_minus == sg.v_plus;
}

}  // namespace

ParamRanges default_ranges(FamilyTag f)
{
    ParamRanges r;
    const unsigned s = family_slots(f);
    if (s & SlotLambda1) {
        r["lambda_re"] = free_real;
        r["lambda_im"] = free_real;
    }
    if (s & SlotLambda2) {
        r["lambda2_re"] = free_real;
        r["lambda2_im"] = free_real;
    }
    if (s & SlotX) {
        r["x_re"] = free_real;
        r["x_im"] = free_real;
    }
    if (s & SlotZ)
        r["z_arg"] = full_turn;
    if (s & SlotZ1)
        r["z1_arg"] = full_turn;
    if (s & SlotZ2)
        r["z2_arg"] = full_turn;
    for (auto [bit, key] : {std::pair{SlotR, "r"}, {SlotR1, "r1"}, {SlotR2, "r2"}, {SlotR3, "r3"}})
        if (s & bit)
            r[key] = free_real;
    switch (f) {
    case FamilyTag::D1_IND_N5_B:
    case FamilyTag::D1_DEC_N6_B:
    case FamilyTag::RANK1_N3_B:
        r["z_arg"] = upper_half;
        break;
    case FamilyTag::D2_N4_A:
        r["z_arg"] = upper_half;
        r["r"] = {std::sqrt(3.0) + 0.05, 4.0};
        break;
    default:
        break;
    }
    switch (f) {
    case FamilyTag::D1_DEC_N4_B:
    case FamilyTag::D1_DEC_N4_C:
    case FamilyTag::D2_N5_B:
        r["r"] = positive;
        break;
    case FamilyTag::D1_DEC_N5:
        r["r1"] = positive;
        break;
    case FamilyTag::D1_DEC_N6_A:
    case FamilyTag::D1_DEC_N6_B:
    case FamilyTag::D2_N6:
        r["r2"] = positive;
        break;
    case FamilyTag::D2_N7:
        r["alpha"] = {0.2, pi / 2 - 0.05};
        r["beta"] = {0.2, pi / 2 - 0.05};
        break;
    case FamilyTag::D2_N8:
        r["alpha"] = {0.05, pi / 2 - 0.2};
        r["beta"] = {0.2, pi / 2 - 0.3};
        r["gamma"] = {0.35, pi / 2 - 0.05};
        break;
    case FamilyTag::RANK1_N4:
        r["alpha"] = {0.2, pi / 2 - 0.05};
        break;
    default:
        break;
    }
    return r;
}

CMatrix random_h_unitary(const CMatrix& h, std::uint64_t seed, double magnitude)
{
    const Eigen::Index n = h.rows();
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
        throw Error(ErrorCode::BadRange, "magnitude must be finite and nonnegative");
    const auto sv = singular_values(h);
    if (n == 0 || sv(n - 1) <= 1e-14 * std::max(1.0, sv(0)))
        throw Error(ErrorCode::SingularH, "H is singular");
    Stream st(mix(seed));
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = st.normal();
            a(i, j) = cplx(re, st.normal());
        }
    const CMatrix s = 0.5 * (a - a.adjoint());
    const CMatrix k = magnitude * h.fullPivLu().solve(s);
    return k.exp();
}

std::pair<IndefinitePair, InvariantRecord> sample_canonical(const SampleSpec& spec)
{
    const FamilyTag f = spec.family;
    ParamRanges ranges = default_ranges(f);
    for (const auto& [key, iv] : spec.param_ranges) {
        auto it = ranges.find(key);
        if (it == ranges.end())
            throw Error(ErrorCode::BadRange, bad_range(f, "no slot named '" + key + "'"));
        if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw Error(ErrorCode::BadRange, bad_range(f, "empty or non-finite interval for '" + key + "'"));
        it->second = iv;
    }
    if (spec.sign != 1 && spec.sign != -1)
        throw Error(ErrorCode::BadRange, bad_range(f, "sign must be +1 or -1"));
    if (spec.sign == -1 && balanced_pattern(f))
        throw Error(ErrorCode::BadRange, bad_range(f, "sign -1 is not canonical for a balanced H pattern"));

    Stream st(mix(spec.seed ^ (static_cast<std::uint64_t>(f) << 48)));
    auto draw = [&](std::string_view key) { return st.uniform(range_of(ranges, key)); };
    auto has = [&](std::string_view key) { return ranges.find(key) != ranges.end(); };
    // Redraws until `ok` holds, at most 256 times.
    auto draw_until = [&](std::string_view key, auto ok) {
        double v = draw(key);
        for (int i = 0; i < 256 && !ok(v); ++i)
            v = draw(key);
        return v;
    };

    InvariantRecord p;
    p.sign = spec.sign;
    if (has("lambda_re"))
        p.lambda1 = cplx(draw("lambda_re"), draw("lambda_im"));
    if (has("lambda2_re")) {
        cplx l2 = cplx(draw("lambda2_re"), draw("lambda2_im"));
        for (int i = 0; i < 256 && std::abs(l2 - *p.lambda1) < 0.5; ++i)
            l2 = cplx(draw("lambda2_re"), draw("lambda2_im"));
        p.lambda2 = l2;
        const cplx d = *p.lambda1 - *p.lambda2;
        if (d.imag() < 0 || (d.imag() == 0 && d.real() < 0))
            std::swap(*p.lambda1, *p.lambda2);
    }
    if (has("x_re"))
        p.x = cplx(draw("x_re"), draw("x_im"));
    if (has("z_arg")) {
        double th;
        if (f == FamilyTag::D1_IND_N5_B)
            th = draw_until("z_arg", [](double t) { return std::abs(t - pi / 2) > 0.05; });
        else if (f == FamilyTag::D2_N6)
            th = draw_until("z_arg", [](double t) {
                const cplx z = std::polar(1.0, t);
                return std::abs(z + 1.0) > 0.3 && std::abs(z - 1.0) > 0.3;
            });
        else
            th = draw("z_arg");
        p.z = unit_at(th);
    }
    if (has("z1_arg"))
        p.z1 = unit_at(draw("z1_arg"));
    if (has("z2_arg"))
        p.z2 = unit_at(draw("z2_arg"));
    if (has("r"))
        p.r = draw("r");
    if (has("r1"))
        p.r1 = draw("r1");
    if (has("r2"))
        p.r2 = draw("r2");
    if (has("r3"))
        p.r3 = draw("r3");
    if (has("alpha"))
        p.alpha = snap_angle(draw("alpha"));
    if (has("beta"))
        p.beta = snap_angle(draw("beta"));
    if (has("gamma")) {
        Interval g = range_of(ranges, "gamma");
        if (g.lo < *p.beta + 0.15 && g.hi >= *p.beta + 0.15)
            g.lo = *p.beta + 0.15;
        p.gamma = snap_angle(st.uniform(g));
    }

    if (f == FamilyTag::D2_N7) {
        if (*p.beta == pi / 2)
            p.z1 = 1.0;
        if (*p.alpha == pi / 2)
            p.z2 = 1.0;
    }
    if (f == FamilyTag::D2_N8) {
        if (*p.gamma == pi / 2)
            p.z1 = 1.0;
        if (*p.alpha == 0.0)
            p.z2 = 1.0;
    }
    if (f == FamilyTag::D2_N4_A && std::abs(*p.r - std::sqrt(3.0)) <= snap_tol)
        p.r = std::sqrt(3.0);

    std::string why;
    if (!satisfies_constraints(f, p, snap_tol, &why))
        throw Error(ErrorCode::BadRange, bad_range(f, why));
    const CanonicalForm form = make_canonical(f, p);
    IndefinitePair pair = make_indefinite_pair(form.n_tilde, form.h_tilde);
    if (commutator_residual(pair) > 1e-12 * std::max(1.0, max_abs(pair.N) * max_abs(pair.N)))
        throw Error(ErrorCode::BadRange, bad_range(f, "sampled template is not H-normal"));
    return {std::move(pair), std::move(p)};
}

std::uint64_t conjugation_seed(std::uint64_t seed, int k)
{
    return mix(seed * 0x100000001b3ull + static_cast<std::uint64_t>(k) + 1);
}

OracleReport roundtrip_oracle(const SampleSpec& spec, int n_conjugations, double magnitude)
{
    const auto [pair, params] = sample_canonical(spec);
    OracleReport rep;
    rep.family = spec.family;
    rep.seed = spec.seed;
    auto fail = [&](int k, const std::string& msg) {
        std::ostringstream os;
        os.precision(17);
        os << family_name(spec.family) << " seed " << spec.seed << " conjugation " << k << ": " << msg;
        throw Error(ErrorCode::OracleFailure, os.str());
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", v);
        return std::string(buf);
    };
    for (int k = 0; k < n_conjugations; ++k) {
        const CMatrix u = random_h_unitary(pair.H, conjugation_seed(spec.seed, k), magnitude);
        const IndefinitePair conj = conjugate_pair(pair, u);
        std::vector<ClassifiedBlock> blocks;
        try {
            blocks = classify_pair(conj);
        } catch (const Error& e) {
            fail(k, e.what());
        }
        if (blocks.size() != 1)
            fail(k, std::to_string(blocks.size()) + " blocks");
        const ClassifiedBlock& b = blocks.front();
        if (b.form.family != spec.family)
            fail(k, "family " + std::string(family_name(b.form.family)));
        const double dev = invariant_distance(params, b.form.params);
        const double res = std::max(b.certificate.residual_similarity, b.certificate.residual_congruence);
        rep.max_param_deviation = std::max(rep.max_param_deviation, dev);
        rep.max_residual = std::max(rep.max_residual, res);
        if (dev > equivalence_tol)
            fail(k, "parameter deviation " + num(dev));
        if (res > 1e-8)
            fail(k, "certificate residual " + num(res));
        ++rep.conjugations;
    }
    return rep;
}

}  // namespace hnormal
