#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hnormal/report.hpp"

using namespace hnormal;

namespace {

std::string read_source(const std::string& path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

IndefinitePair load(const std::string& path, std::optional<double> tol)
{
    IndefinitePair p = parse_input(read_source(path));
    if (tol)
        p = make_indefinite_pair(p.N, p.H, *tol);
    return p;
}

FamilyTag family_arg(const std::string& name)
{
    const auto f = family_from_name(name);
    if (!f)
        throw Error(ErrorCode::ParseError, "unknown family \"" + name + "\"");
    return *f;
}

void print_error(const Error& e)
{
    std::cerr << "hnormal: " << to_string(e.code()) << ": " << e.detail() << '\n';
}

int do_classify(const std::string& path, std::optional<double> tol)
{
    IndefinitePair pair;
    try {
        pair = load(path, tol);
    } catch (const Error& e) {
        print_error(e);
        return exit_code(e.code());
    }
    const ReportDocument doc = run_classify(pair);
    std::cout << serialize_report(doc);
    return exit_code(doc);
}

int do_check_equiv(const std::vector<std::string>& paths, std::optional<double> tol)
{
    const IndefinitePair a = load(paths[0], tol);
    const IndefinitePair b = load(paths[1], tol);
    const auto ca = classify_pair(a);
    const auto cb = classify_pair(b);
    std::cout << serialize_equivalence(pairs_equivalent(a, b), ca, cb);
    return 0;
}

int do_sample(const std::string& family, std::uint64_t seed)
{
    SampleSpec spec;
    spec.family = family_arg(family);
    spec.seed = seed;
    const auto [pair, params] = sample_canonical(spec);
    std::cout << serialize_sample(spec.family, pair, params);
    return 0;
}

int do_fuzz(const std::string& family, std::uint64_t seed, int runs, int conjugations)
{
    SampleSpec spec;
    spec.family = family_arg(family);
    std::vector<OracleReport> reports;
    std::optional<ReportError> failure;
    for (int i = 0; i < runs && !failure; ++i) {
        spec.seed = seed + static_cast<std::uint64_t>(i);
        try {
            reports.push_back(roundtrip_oracle(spec, conjugations));
        } catch (const Error& e) {
            failure = ReportError{std::string(to_string(e.code())), e.detail()};
        }
    }
    std::cout << serialize_oracle(reports, failure);
    return failure ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Classify H-normal operators in indefinite scalar product spaces of rank at most 2."};
    app.require_subcommand(0, 1);

    std::optional<double> tol;
    app.add_option("--tol", tol, "Tolerance overriding the document's \"tol\"")->check(CLI::PositiveNumber);

    std::vector<std::string> equiv;
    auto* equiv_opt = app.add_option("--check-equiv", equiv, "Decide unitary similarity of two documents")
                          ->expected(2)
                          ->type_name("A B");
    std::string sample_family;
    auto* sample_opt = app.add_option("--sample", sample_family, "Emit a canonical sample of FAMILY");
    std::string fuzz_family;
    auto* fuzz_opt = app.add_option("--fuzz", fuzz_family, "Round-trip oracle over FAMILY");
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Sampling seed (first seed for --fuzz)");
    int runs = 10;
    app.add_option("--runs", runs, "Number of --fuzz samples")->check(CLI::NonNegativeNumber);
    int conjugations = 10;
    app.add_option("--conjugations", conjugations, "Random H-unitary conjugations per --fuzz sample")
        ->check(CLI::NonNegativeNumber);
    equiv_opt->excludes(sample_opt)->excludes(fuzz_opt);
    sample_opt->excludes(fuzz_opt);

    auto* classify = app.add_subcommand("classify", "Classify the pair in FILE (- for stdin)");
    std::string input;
    classify->add_option("file", input, "Input document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify)
            return do_classify(input, tol);
        if (*equiv_opt)
            return do_check_equiv(equiv, tol);
        if (*sample_opt)
            return do_sample(sample_family, seed);
        if (*fuzz_opt)
            return do_fuzz(fuzz_family, seed, runs, conjugations);
    } catch (const Error& e) {
        print_error(e);
        return exit_code(e.code());
    }
    std::cerr << app.help();
    return 2;
}
