// One line per acceptance criterion; exit status is nonzero if any line reads FAIL.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "hnormal/classify.hpp"
#include "hnormal/congr2.hpp"
#include "hnormal/decomp.hpp"
#include "hnormal/genfuzz.hpp"

#ifndef HNORMAL_CLI_PATH
#error "HNORMAL_CLI_PATH must name the CLI binary"
#endif

using namespace hnormal;

namespace {

constexpr double param_tol = 1e-6;
constexpr double residual_tol = 1e-8;
constexpr double perturbation = 1e-3;
constexpr double rho_rel_tol = 1e-10;
constexpr double congruence_tol = 1e-6;

constexpr int corpus_samples = 100;
constexpr int corpus_conjugations = 10;
constexpr int separation_pairs = 50;
constexpr int impossible_constructions = 20;
constexpr int bound_inputs = 1000;
constexpr int rho_points = 1000;
constexpr int congruence_matrices = 1000;
constexpr int congruence_repeats = 10;
constexpr int s0_constructions = 500;

constexpr double pi = std::numbers::pi;

enum class Status { Pass, Fail, Unattainable };

int failures = 0;

void report(int id, const std::string& title, Status s, const std::string& detail)
{
    const char* word = s == Status::Pass ? "PASS" : s == Status::Fail ? "FAIL" : "UNATTAINABLE";
    if (s == Status::Fail)
        ++failures;
    std::cout << "criterion " << id << " [" << title << "]: " << word << " (" << detail << ")" << std::endl;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

CMatrix random_matrix(Eigen::Index n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = cplx(g(rng), g(rng));
    return a;
}

double certificate_max(const IndefinitePair& p, const std::vector<ClassifiedBlock>& blocks)
{
    double worst = 0.0;
    for (const auto& b : blocks)
        worst = std::max({worst, b.certificate.residual_similarity, b.certificate.residual_congruence});
    const GlobalCertificate g = compose_certificate(p, blocks);
    return std::max({worst, g.residual_similarity, g.residual_congruence});
}

// --- criteria 1 and 2 ---------------------------------------------------

struct FamilyTally {
    int exact = 0;
    int total = 0;
    double max_dev = 0.0;
    std::string first_failure;
};

void corpus()
{
    int cert_ok = 0, cert_total = 0;
    double cert_worst = 0.0;
    std::string cert_failure;
    std::vector<std::string> missed;
    int attainable_ok = 0, attainable = 0;
    double dev_worst = 0.0;
    // D2_N6 evidence: the direct reducer recovers the form and the classifier splits it with a valid certificate.
    int d6_reducer_ok = 0, d6_split_ok = 0, d6_total = 0;
    double d6_dev = 0.0;

    for (FamilyTag f : rank2_families()) {
        FamilyTally t;
        for (int s = 0; s < corpus_samples; ++s) {
            const SampleSpec spec{f, static_cast<std::uint64_t>(s), {}, 1};
            const auto [pair, params] = sample_canonical(spec);
            for (int k = 0; k < corpus_conjugations; ++k) {
                const CMatrix u = random_h_unitary(pair.H, conjugation_seed(spec.seed, k));
                const IndefinitePair moved = conjugate_pair(pair, u);
                ++t.total;
                ++cert_total;
                try {
                    const auto blocks = classify_pair(moved);
                    const double r = certificate_max(moved, blocks);
                    cert_worst = std::max(cert_worst, r);
                    if (r <= residual_tol)
                        ++cert_ok;
                    else if (cert_failure.empty())
                        cert_failure = std::string(family_name(f)) + " seed " + std::to_string(s);

                    if (f == FamilyTag::D2_N6) {
                        ++d6_total;
                        if (blocks.size() == 2 && r <= residual_tol)
                            ++d6_split_ok;
                        const ClassifiedBlock direct = reduce_dim2(moved, split_S0_S_S1(moved));
                        const double dev = invariant_distance(direct.form.params, params);
                        d6_dev = std::max(d6_dev, dev);
                        if (direct.form.family == f && dev <= param_tol &&
                            direct.certificate.residual_similarity <= residual_tol &&
                            direct.certificate.residual_congruence <= residual_tol)
                            ++d6_reducer_ok;
                        continue;
                    }
                    if (blocks.size() == 1 && blocks[0].form.family == f) {
                        const double dev = invariant_distance(blocks[0].form.params, params);
                        t.max_dev = std::max(t.max_dev, dev);
                        if (dev <= param_tol) {
                            ++t.exact;
                            continue;
                        }
                    }
                    if (t.first_failure.empty())
                        t.first_failure = "seed " + std::to_string(s) + " conjugation " + std::to_string(k);
                } catch (const Error& e) {
                    if (cert_failure.empty())
                        cert_failure = std::string(family_name(f)) + ": " + std::string(to_string(e.code()));
                    if (t.first_failure.empty())
                        t.first_failure = std::string(to_string(e.code())) + " at seed " + std::to_string(s);
                }
            }
        }
        if (f == FamilyTag::D2_N6)
            continue;
        ++attainable;
        dev_worst = std::max(dev_worst, t.max_dev);
        if (t.exact == t.total)
            ++attainable_ok;
        else
            missed.push_back(std::string(family_name(f)) + " " + std::to_string(t.exact) + "/" +
                             std::to_string(t.total) + " first " + t.first_failure);
    }

    std::ostringstream d1;
    d1 << attainable_ok << "/" << attainable << " attainable families exact over " << corpus_samples << "x"
       << corpus_conjugations << ", max deviation " << sci(dev_worst);
    for (const auto& m : missed)
        d1 << "; " << m;
    const bool d6_evidence = d6_reducer_ok == d6_total && d6_split_ok == d6_total;
    d1 << "; D2_N6 is decomposable: classifier splits " << d6_split_ok << "/" << d6_total
       << " into two certified rank-1 blocks, direct reducer recovers " << d6_reducer_ok << "/" << d6_total
       << " (max deviation " << sci(d6_dev) << ")";
    Status s1 = Status::Fail;
    if (missed.empty() && d6_evidence)
        s1 = Status::Unattainable;
    report(1, "exact family and parameter recovery", s1, d1.str());

    std::ostringstream d2;
    d2 << cert_ok << "/" << cert_total << " certificates within " << sci(residual_tol) << ", worst " << sci(cert_worst);
    if (!cert_failure.empty())
        d2 << "; first failure " << cert_failure;
    report(2, "certificate residuals", cert_ok == cert_total ? Status::Pass : Status::Fail, d2.str());
}

// --- criterion 3 --------------------------------------------------------

// Moves one populated slot by `perturbation`, choosing the direction that keeps the domain.
InvariantRecord perturb(FamilyTag f, const InvariantRecord& p, int which)
{
    const unsigned slots = family_slots(f);
    std::vector<unsigned> present;
    for (unsigned bit = 1; bit <= SlotGamma; bit <<= 1)
        if (slots & bit)
            present.push_back(bit);
    const unsigned slot = present[static_cast<std::size_t>(which) % present.size()];
    for (double dir : {1.0, -1.0}) {
        InvariantRecord q = p;
        const double h = dir * perturbation;
        const cplx rot = std::polar(1.0, h);
        switch (slot) {
        case SlotLambda1: *q.lambda1 += h; break;
        case SlotLambda2: *q.lambda2 += h; break;
        case SlotX: *q.x += h; break;
        case SlotZ: *q.z *= rot; break;
        case SlotZ1: *q.z1 *= rot; break;
        case SlotZ2: *q.z2 *= rot; break;
        case SlotR: *q.r += h; break;
        case SlotR1: *q.r1 += h; break;
        case SlotR2: *q.r2 += h; break;
        case SlotR3: *q.r3 += h; break;
        case SlotAlpha: *q.alpha += h; break;
        case SlotBeta: *q.beta += h; break;
        case SlotGamma: *q.gamma += h; break;
        default: break;
        }
        if (satisfies_constraints(f, q))
            return q;
    }
    return p;
}

IndefinitePair canonical(FamilyTag f, const InvariantRecord& p)
{
    const CanonicalForm c = make_canonical(f, p);
    return make_indefinite_pair(c.n_tilde, c.h_tilde);
}

void separation()
{
    int separated = 0, total = 0, controls = 0, controls_ok = 0;
    std::vector<std::string> bad;
    for (FamilyTag f : rank2_families()) {
        int fam_bad = 0;
        for (int k = 0; k < separation_pairs; ++k) {
            const SampleSpec spec{f, static_cast<std::uint64_t>(1000 + k), {}, 1};
            const auto [pair, params] = sample_canonical(spec);
            const InvariantRecord moved_params = perturb(f, params, k);
            ++total;
            try {
                const IndefinitePair a = conjugate_pair(pair, random_h_unitary(pair.H, 2 * spec.seed));
                const IndefinitePair other = canonical(f, moved_params);
                const IndefinitePair b = conjugate_pair(other, random_h_unitary(other.H, 2 * spec.seed + 1));
                if (invariant_distance(moved_params, params) > 0.5 * perturbation && !pairs_equivalent(a, b))
                    ++separated;
                else
                    ++fam_bad;
                if (k % 10 == 0) {
                    ++controls;
                    if (pairs_equivalent(pair, a))
                        ++controls_ok;
                }
            } catch (const Error&) {
                ++fam_bad;
            }
        }
        if (fam_bad)
            bad.push_back(std::string(family_name(f)) + " " + std::to_string(fam_bad) + " not separated");
    }

    // Cross-family probes with shared parameter values.
    int probes = 0, probes_ok = 0;
    auto probe = [&](FamilyTag fa, const InvariantRecord& pa, FamilyTag fb, const InvariantRecord& pb) {
        ++probes;
        const IndefinitePair a = canonical(fa, pa), b = canonical(fb, pb);
        if (!pairs_equivalent(conjugate_pair(a, random_h_unitary(a.H, 77 + probes)), b))
            ++probes_ok;
    };
    for (int k = 0; k < separation_pairs; ++k) {
        const auto seed = static_cast<std::uint64_t>(k);
        const InvariantRecord b4 = sample_canonical(SampleSpec{FamilyTag::D1_DEC_N4_B, seed, {}, 1}).second;
        probe(FamilyTag::D1_DEC_N4_B, b4, FamilyTag::D1_DEC_N4_C, b4);
        InvariantRecord a4;
        a4.lambda1 = b4.lambda1;
        a4.z = b4.z;
        probe(FamilyTag::D1_DEC_N4_A, a4, FamilyTag::D1_DEC_N4_B, b4);

        const InvariantRecord a5 = sample_canonical(SampleSpec{FamilyTag::D1_IND_N5_A, seed, {}, 1}).second;
        probe(FamilyTag::D1_IND_N5_A, a5, FamilyTag::D1_IND_N5_C, a5);
        InvariantRecord b5 = a5;
        b5.z = sample_canonical(SampleSpec{FamilyTag::D1_IND_N5_B, seed, {}, 1}).second.z;
        probe(FamilyTag::D1_IND_N5_A, a5, FamilyTag::D1_IND_N5_B, b5);
        probe(FamilyTag::D1_IND_N5_C, a5, FamilyTag::D1_IND_N5_B, b5);
    }

    std::ostringstream d;
    d << separated << "/" << total << " perturbed pairs separated at " << sci(perturbation) << ", " << probes_ok << "/"
      << probes << " cross-family probes false, " << controls_ok << "/" << controls << " conjugate controls equivalent";
    for (const auto& b : bad)
        d << "; " << b;
    const bool ok = separated == total && probes_ok == probes && controls_ok == controls;
    report(3, "non-equivalence separation", ok ? Status::Pass : Status::Fail, d.str());
}

// --- criteria 4 and 7 -----------------------------------------------------

// lambda I + strictly block-triangular border around an internal pair (a, h1).
IndefinitePair bordered(const CMatrix& a, const CMatrix& h1, cplx lambda, std::mt19937_64& rng)
{
    const Eigen::Index m = a.rows(), n = m + 2;
    const CMatrix r = random_matrix(n, rng);
    CMatrix nn = CMatrix::Zero(n, n);
    nn.block(1, 1, m, m) = a;
    nn.block(0, 1, 1, m) = r.block(0, 1, 1, m);
    nn.block(1, n - 1, m, 1) = r.block(1, n - 1, m, 1);
    nn(0, n - 1) = r(0, n - 1);
    nn.diagonal().array() += lambda;
    CMatrix h = CMatrix::Zero(n, n);
    h(0, n - 1) = h(n - 1, 0) = 1.0;
    h.block(1, 1, m, m) = h1;
    return make_indefinite_pair(nn, h);
}

void impossible_cases()
{
    std::mt19937_64 rng(0xc0ffee);
    std::uniform_real_distribution<double> angle(0.1, pi / 2 - 0.05);
    int hit6 = 0, hit7 = 0;
    std::string other;
    auto expect_impossible = [&](auto&& fn, int& hits) {
        try {
            fn();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ImpossibleCase)
                ++hits;
            else if (other.empty())
                other = std::string(to_string(e.code())) + ": " + e.detail();
            return;
        }
        if (other.empty())
            other = "reducer returned a form";
    };
    for (int k = 0; k < impossible_constructions; ++k) {
        InvariantRecord p;
        p.lambda1 = 0.0;
        p.alpha = angle(rng);
        const CanonicalForm c = make_canonical(FamilyTag::RANK1_N4, p);
        const cplx lambda(angle(rng), -angle(rng));

        const IndefinitePair b6 = bordered(c.n_tilde, c.h_tilde, lambda, rng);
        const IndefinitePair m6 = conjugate_pair(b6, random_h_unitary(b6.H, 500 + static_cast<std::uint64_t>(k)));
        expect_impossible([&] { reduce_dim1_indec(m6, split_S0_S_S1(m6)); }, hit6);

        CMatrix a = CMatrix::Zero(5, 5), h1 = CMatrix::Zero(5, 5);
        a.topLeftCorner(4, 4) = c.n_tilde;
        h1.topLeftCorner(4, 4) = c.h_tilde;
        h1(4, 4) = 1.0;
        const IndefinitePair b7 = bordered(a, h1, lambda, rng);
        const IndefinitePair m7 = conjugate_pair(b7, random_h_unitary(b7.H, 900 + static_cast<std::uint64_t>(k)));
        expect_impossible([&] { reduce_dim1_dec(m7, split_S0_S_S1(m7)); }, hit7);
    }
    std::ostringstream d;
    d << "n = 6: " << hit6 << "/" << impossible_constructions << ", n = 7: " << hit7 << "/"
      << impossible_constructions << " raised ImpossibleCase";
    if (!other.empty())
        d << "; first other outcome " << other;
    const bool ok = hit6 == impossible_constructions && hit7 == impossible_constructions;
    report(4, "impossible cases", ok ? Status::Pass : Status::Fail, d.str());
}

void s0_indecomposable()
{
    static constexpr FamilyTag d1[] = {
        FamilyTag::D1_IND_N4,   FamilyTag::D1_IND_N5_A, FamilyTag::D1_IND_N5_B, FamilyTag::D1_IND_N5_C,
        FamilyTag::D1_DEC_N4_A, FamilyTag::D1_DEC_N4_B, FamilyTag::D1_DEC_N4_C, FamilyTag::D1_DEC_N5,
        FamilyTag::D1_DEC_N6_A, FamilyTag::D1_DEC_N6_B,
    };
    constexpr int n_fam = static_cast<int>(std::size(d1));
    int whole = 0, s0_one = 0;
    std::string first;
    for (int k = 0; k < s0_constructions; ++k) {
        const FamilyTag f = d1[k % n_fam];
        const auto seed = static_cast<std::uint64_t>(5000 + k / n_fam);
        const IndefinitePair p = sample_canonical(SampleSpec{f, seed, {}, 1}).first;
        const IndefinitePair moved = conjugate_pair(p, random_h_unitary(p.H, seed * 31 + 7));
        try {
            if (split_S0_S_S1(moved).s0_dim == 1)
                ++s0_one;
            if (split_orthogonal(moved).blocks.size() == 1 && classify_pair(moved).size() == 1)
                ++whole;
            else if (first.empty())
                first = std::string(family_name(f)) + " seed " + std::to_string(seed);
        } catch (const Error& e) {
            if (first.empty())
                first = std::string(family_name(f)) + ": " + std::string(to_string(e.code()));
        }
    }
    std::ostringstream d;
    d << whole << "/" << s0_constructions << " kept whole, " << s0_one << "/" << s0_constructions
      << " with dim S0 = 1";
    if (!first.empty())
        d << "; first split " << first;
    const bool ok = whole == s0_constructions && s0_one == s0_constructions;
    report(7, "dim S0 = 1 never split", ok ? Status::Pass : Status::Fail, d.str());
}

// --- criterion 5 ----------------------------------------------------------

void dimension_bounds()
{
    std::mt19937_64 rng(0xb0b0);
    const auto fams = all_families();
    std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
    int ok = 0, blocks_checked = 0;
    int by_rank[3] = {0, 0, 0};
    std::string first;
    for (int k = 0; k < bound_inputs; ++k) {
        IndefinitePair sum;
        // Draw direct sums of canonical blocks until one fits n <= 8 and rank <= 2.
        for (;;) {
            CMatrix n = CMatrix::Zero(0, 0), h = CMatrix::Zero(0, 0);
            const int parts = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < parts; ++i) {
                const FamilyTag f = fams[pick(rng)];
                const Eigen::Index d = family_dimension(f);
                if (n.rows() + d > 8)
                    break;
                SampleSpec spec{f, rng(), {}, rng() % 2 ? -1 : 1};
                IndefinitePair b;
                try {
                    b = sample_canonical(spec).first;
                } catch (const Error&) {
                    // sign -1 is rejected for balanced H patterns
                    spec.sign = 1;
                    b = sample_canonical(spec).first;
                }
                const Eigen::Index m = n.rows();
                CMatrix nn = CMatrix::Zero(m + d, m + d), hh = CMatrix::Zero(m + d, m + d);
                nn.topLeftCorner(m, m) = n;
                hh.topLeftCorner(m, m) = h;
                nn.bottomRightCorner(d, d) = b.N;
                hh.bottomRightCorner(d, d) = b.H;
                n = nn;
                h = hh;
            }
            if (n.rows() == 0 || signature(h).rank() > 2)
                continue;
            sum = make_indefinite_pair(n, h);
            break;
        }
        ++by_rank[signature(sum.H).rank()];
        const CMatrix t = CMatrix::Identity(sum.size(), sum.size()) + 0.3 * random_matrix(sum.size(), rng);
        const IndefinitePair moved = conjugate_pair(sum, t);
        try {
            const auto blocks = classify_pair(moved);
            bool all = certificate_max(moved, blocks) <= residual_tol;
            for (const auto& b : blocks) {
                ++blocks_checked;
                all = all && check_dimension_bounds(make_indefinite_pair(b.form.n_tilde, b.form.h_tilde));
            }
            if (all)
                ++ok;
            else if (first.empty())
                first = "input " + std::to_string(k);
        } catch (const Error& e) {
            if (first.empty())
                first = "input " + std::to_string(k) + ": " + std::string(to_string(e.code())) + " " + e.detail();
        }
    }
    std::ostringstream d;
    d << ok << "/" << bound_inputs << " inputs (rank 0/1/2: " << by_rank[0] << "/" << by_rank[1] << "/" << by_rank[2]
      << "), " << blocks_checked << " blocks within bounds";
    if (!first.empty())
        d << "; first failure " << first;
    report(5, "dimension bounds", ok == bound_inputs ? Status::Pass : Status::Fail, d.str());
}

// --- criterion 6 ----------------------------------------------------------

bool same_form(const CongruenceForm2& a, const CongruenceForm2& b)
{
    if (a.kind != b.kind)
        return false;
    if (a.kind == CongruenceKind::Triangular)
        return std::abs(a.z - b.z) <= congruence_tol && std::abs(a.rho - b.rho) <= congruence_tol;
    return std::abs(a.z1 - b.z1) <= congruence_tol && std::abs(a.z2 - b.z2) <= congruence_tol;
}

void congruence_oracle()
{
    const bool exact = rho_function(std::sqrt(3.0)) == -1.0;

    std::mt19937_64 rng(0xa99);
    std::uniform_real_distribution<double> expo(0.0, 6.0);
    int rho_ok = 0;
    double rho_worst = 0.0;
    for (int k = 0; k < rho_points; ++k) {
        const double s = -std::pow(10.0, expo(rng));
        const double rel = std::abs(rho_function(solve_rho(s)) - s) / std::abs(s);
        rho_worst = std::max(rho_worst, rel);
        if (rel <= rho_rel_tol)
            ++rho_ok;
    }

    int stable = 0;
    int kinds[2] = {0, 0};
    for (int k = 0; k < congruence_matrices; ++k) {
        const CMatrix a = random_matrix(2, rng);
        const CongruenceForm2 base = congruence_canonical_2x2(a);
        ++kinds[base.kind == CongruenceKind::Triangular ? 0 : 1];
        bool all = base.residual <= residual_tol;
        for (int j = 0; j < congruence_repeats && all; ++j) {
            const CMatrix t = random_matrix(2, rng);
            all = same_form(base, congruence_canonical_2x2(CMatrix(t * a * t.adjoint())));
        }
        if (all)
            ++stable;
    }
    std::ostringstream d;
    d << "f(sqrt 3) = -1 " << (exact ? "exact" : "inexact") << ", solve_rho " << rho_ok << "/" << rho_points
      << " within " << sci(rho_rel_tol) << " (worst " << sci(rho_worst) << "), " << stable << "/"
      << congruence_matrices << " matrices stable under " << congruence_repeats << " congruences (triangular "
      << kinds[0] << ", diagonal " << kinds[1] << ")";
    const bool ok = exact && rho_ok == rho_points && stable == congruence_matrices;
    report(6, "2x2 congruence oracle", ok ? Status::Pass : Status::Fail, d.str());
}

// --- criterion 8 ----------------------------------------------------------

int run(const std::string& cmd)
{
    const int rc = std::system(cmd.c_str());
    if (rc == -1)
        return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void cli_determinism()
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("hnormal_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = HNORMAL_CLI_PATH;
    int pipeline_ok = 0, identical = 0, total = 0;
    std::string first;
    for (FamilyTag f : all_families()) {
        ++total;
        const std::string name(family_name(f));
        const fs::path sample = dir / (name + ".json");
        const fs::path r1 = dir / (name + ".r1"), r2 = dir / (name + ".r2");
        const int a = run("'" + cli + "' --sample " + name + " --seed 17 > '" + sample.string() + "'");
        const int b = run("'" + cli + "' classify '" + sample.string() + "' > '" + r1.string() + "'");
        const int c = run("'" + cli + "' classify '" + sample.string() + "' > '" + r2.string() + "'");
        if (a == 0 && b == 0 && c == 0)
            ++pipeline_ok;
        else if (first.empty())
            first = name + " exit " + std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c);
        const std::string x = slurp(r1);
        if (!x.empty() && x == slurp(r2))
            ++identical;
        else if (first.empty())
            first = name + " reports differ";
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    std::ostringstream d;
    d << identical << "/" << total << " byte-identical repeat reports, " << pipeline_ok << "/" << total
      << " sample-classify pipelines exit 0";
    if (!first.empty())
        d << "; first failure " << first;
    const bool ok = identical == total && pipeline_ok == total;
    report(8, "CLI determinism", ok ? Status::Pass : Status::Fail, d.str());
}

}  // namespace

int main()
{
    std::cout << "tolerances: parameters " << sci(param_tol) << ", certificates " << sci(residual_tol)
              << ", perturbation " << sci(perturbation) << ", solve_rho relative " << sci(rho_rel_tol)
              << ", congruence " << sci(congruence_tol) << std::endl;
    corpus();
    separation();
    impossible_cases();
    dimension_bounds();
    congruence_oracle();
    s0_indecomposable();
    cli_determinism();
    return failures == 0 ? 0 : 1;
}
