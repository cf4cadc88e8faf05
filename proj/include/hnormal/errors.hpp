#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hnormal {

enum class ErrorCode {
    NotHermitian,
    NearSingular,
    SingularH,
    SingularT,
    NotHNormal,
    EmptyS0,
    S0NotNeutral,
    RankTooHigh,
    UnsupportedRank1Form,
    WrongEigStructure,
    ImpossibleCase,
    InternalFormMismatch,
    DecomposableDetected,
    Singular,
    OutOfDomain,
    BadRange,
    OracleFailure,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

// Carries a nondegenerate subspace invariant for N and its adjoint, in the
// coordinates of the block that was being reduced.
class DecomposableError : public Error {
public:
    DecomposableError(Eigen::MatrixXcd witness, const std::string& detail);

    const Eigen::MatrixXcd& witness() const noexcept { return witness_; }

private:
    Eigen::MatrixXcd witness_;
};

}  // namespace hnormal
