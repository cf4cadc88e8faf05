#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "hnormal/family.hpp"

namespace hnormal {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Slot keys: "lambda_re", "lambda_im" (also "lambda2_re", "lambda2_im", "x_re",
// "x_im"), "z_arg", "z1_arg", "z2_arg", "r", "r1", "r2", "r3", "alpha", "beta", "gamma".
using ParamRanges = std::map<std::string, Interval, std::less<>>;

struct SampleSpec {
    FamilyTag family = FamilyTag::RANK0;
    std::uint64_t seed = 0;
    // Overrides of default_ranges(family); unknown keys are rejected.
    ParamRanges param_ranges;
    // -1 is only allowed for families whose H pattern has v- != v+.
    int sign = 1;
};

// Bulk-fuzzing ranges, kept at least 1e-3 inside every strict constraint.
ParamRanges default_ranges(FamilyTag f);

// exp(magnitude * H^{-1} S) with S a random skew-Hermitian matrix.
CMatrix random_h_unitary(const CMatrix& h, std::uint64_t seed, double magnitude = 0.5);

std::pair<IndefinitePair, InvariantRecord> sample_canonical(const SampleSpec& spec);

struct OracleReport {
    FamilyTag family = FamilyTag::RANK0;
    std::uint64_t seed = 0;
    int conjugations = 0;
    double max_param_deviation = 0.0;
    double max_residual = 0.0;
};

// Seed of the k-th conjugation in a round-trip run.
std::uint64_t conjugation_seed(std::uint64_t seed, int k);

// Throws OracleFailure naming the family, seed and deviation on the first mismatch.
OracleReport roundtrip_oracle(const SampleSpec& spec, int n_conjugations, double magnitude = 0.5);

}  // namespace hnormal
