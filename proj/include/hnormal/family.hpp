#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hnormal/matcore.hpp"

namespace hnormal {

enum class FamilyTag {
    TWO_EIG,
    D1_IND_N4,
    D1_IND_N5_A,
    D1_IND_N5_B,
    D1_IND_N5_C,
    D1_DEC_N4_A,
    D1_DEC_N4_B,
    D1_DEC_N4_C,
    D1_DEC_N5,
    D1_DEC_N6_A,
    D1_DEC_N6_B,
    D2_N4_A,
    D2_N4_B,
    D2_N5_A,
    D2_N5_B,
    D2_N6,
    D2_N7,
    D2_N8,
    RANK0,
    RANK1_N2,
    RANK1_N3_A,
    RANK1_N3_B,
    RANK1_N4,
    RANK1_TWO_EIG,
};

std::string_view family_name(FamilyTag f);
std::optional<FamilyTag> family_from_name(std::string_view name);

// The 18 indecomposable rank-2 families.
std::span<const FamilyTag> rank2_families();
std::span<const FamilyTag> all_families();

Eigen::Index family_dimension(FamilyTag f);

// Slots a family populates.
enum Slot : unsigned {
    SlotLambda1 = 1u << 0,
    SlotLambda2 = 1u << 1,
    SlotX = 1u << 2,
    SlotZ = 1u << 3,
    SlotZ1 = 1u << 4,
    SlotZ2 = 1u << 5,
    SlotR = 1u << 6,
    SlotR1 = 1u << 7,
    SlotR2 = 1u << 8,
    SlotR3 = 1u << 9,
    SlotAlpha = 1u << 10,
    SlotBeta = 1u << 11,
    SlotGamma = 1u << 12,
};

unsigned family_slots(FamilyTag f);

struct InvariantRecord {
    std::optional<cplx> lambda1, lambda2, x, z, z1, z2;
    std::optional<double> r, r1, r2, r3, alpha, beta, gamma;
    // H-tilde is sign times the family's H pattern; -1 when v- > v+.
    int sign = 1;

    unsigned slots() const;
};

// Largest slot difference; infinity when the populated slots or signs differ.
double invariant_distance(const InvariantRecord& a, const InvariantRecord& b);

struct CanonicalForm {
    FamilyTag family = FamilyTag::RANK0;
    InvariantRecord params;
    CMatrix n_tilde;
    CMatrix h_tilde;
};

// Instantiates the family template; throws BadRange when a required slot is missing.
CanonicalForm make_canonical(FamilyTag f, const InvariantRecord& p);

// Domain constraints of the family; on failure `why` names the violated rule.
bool satisfies_constraints(FamilyTag f, const InvariantRecord& p, double tol = 1e-9, std::string* why = nullptr);

struct Certificate {
    CMatrix T;
    double residual_similarity = 0.0;
    double residual_congruence = 0.0;
};

Certificate make_certificate(const CMatrix& n, const CMatrix& h, const CanonicalForm& form, CMatrix t);

}  // namespace hnormal
