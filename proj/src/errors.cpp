#include "coarsedim/errors.hpp"

namespace coarsedim {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::LabelMismatch: return "LabelMismatch";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::NonSymmetric: return "NonSymmetric";
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
        case ErrorCode::TriangleViolation: return "TriangleViolation";
        case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ExactTooLarge: return "ExactTooLarge";
        case ErrorCode::DegenerateGrid: return "DegenerateGrid";
        case ErrorCode::BadOrdering: return "BadOrdering";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotSeparated: return "NotSeparated";
        case ErrorCode::MismatchedParams: return "MismatchedParams";
        case ErrorCode::InputCertInvalid: return "InputCertInvalid";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::GapsTooSmall: return "GapsTooSmall";
        case ErrorCode::RadiiNotExhaustive: return "RadiiNotExhaustive";
        case ErrorCode::NotEnoughColors: return "NotEnoughColors";
        case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
        case ErrorCode::RadiusInfeasible: return "RadiusInfeasible";
        case ErrorCode::ResidualNonempty: return "ResidualNonempty";
        case ErrorCode::BadScales: return "BadScales";
        case ErrorCode::EmptyCorrespondence: return "EmptyCorrespondence";
        case ErrorCode::MiddleMismatch: return "MiddleMismatch";
        case ErrorCode::CenterNotFound: return "CenterNotFound";
        case ErrorCode::OracleFailure: return "OracleFailure";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace coarsedim
