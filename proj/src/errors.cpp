#include "hnormal/errors.hpp"

#include <utility>

namespace hnormal {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NearSingular: return "NearSingular";
    case ErrorCode::SingularH: return "SingularH";
    case ErrorCode::SingularT: return "SingularT";
    case ErrorCode::NotHNormal: return "NotHNormal";
    case ErrorCode::EmptyS0: return "EmptyS0";
    case ErrorCode::S0NotNeutral: return "S0NotNeutral";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::UnsupportedRank1Form: return "UnsupportedRank1Form";
    case ErrorCode::WrongEigStructure: return "WrongEigStructure";
    case ErrorCode::ImpossibleCase: return "ImpossibleCase";
    case ErrorCode::InternalFormMismatch: return "InternalFormMismatch";
    case ErrorCode::DecomposableDetected: return "DecomposableDetected";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail)
{
}

DecomposableError::DecomposableError(Eigen::MatrixXcd witness, const std::string& detail)
    : Error(ErrorCode::DecomposableDetected, detail), witness_(std::move(witness))
{
}

}  // namespace hnormal
