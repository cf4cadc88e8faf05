#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnormal/classify.hpp"
#include "hnormal/genfuzz.hpp"

namespace hnormal {

// Residual bound a report must meet to carry pass = true.
inline constexpr double certificate_tol = 1e-8;

struct BlockReport {
    FamilyTag family = FamilyTag::RANK0;
    InvariantRecord params;
    CMatrix n_tilde;
    CMatrix h_tilde;
    CMatrix T;
    double residual_similarity = 0.0;
    double residual_congruence = 0.0;
};

struct ReportError {
    std::string code;
    std::string detail;
    bool operator==(const ReportError&) const = default;
};

struct ReportDocument {
    Eigen::Index n = 0;
    Signature signature;
    double tol = default_tol;
    std::vector<BlockReport> blocks;
    double residual_similarity = 0.0;
    double residual_congruence = 0.0;
    bool pass = false;
    std::optional<ReportError> error;
};

// {"N": [[[re, im], ...], ...], "H": ..., "tol": x}; throws ParseError or ValidationError.
IndefinitePair parse_input(std::string_view text);
std::string serialize_input(const IndefinitePair& pair);

// Never throws on classification failures; they are recorded in `error`.
ReportDocument run_classify(const IndefinitePair& pair);

std::string serialize_report(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

std::string serialize_sample(FamilyTag family, const IndefinitePair& pair, const InvariantRecord& params);
std::string serialize_equivalence(bool equivalent, const std::vector<ClassifiedBlock>& a, const std::vector<ClassifiedBlock>& b);
std::string serialize_oracle(const std::vector<OracleReport>& runs, const std::optional<ReportError>& failure);

// 0 success, 2 parse/validation, 3 classification error, 4 oracle failure.
int exit_code(ErrorCode code);
int exit_code(const ReportDocument& doc);

}  // namespace hnormal
