#ifndef COARSEDIM_ERRORS_HPP
#define COARSEDIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarsedim {

enum class ErrorCode {
    // metric_core
    NonSquare,
    LabelMismatch,
    DuplicateLabel,
    NonSymmetric,
    NegativeEntry,
    NonzeroDiagonal,
    TriangleViolation,
    NonPositiveLambda,
    EmptySet,
    IndexOutOfRange,
    // covering
    ExactTooLarge,
    DegenerateGrid,
    BadOrdering,
    // nagata
    TooLarge,
    NotSeparated,
    MismatchedParams,
    InputCertInvalid,
    EmptyWindow,
    GapsTooSmall,
    RadiiNotExhaustive,
    NotEnoughColors,
    EpsilonTooLarge,
    RadiusInfeasible,
    ResidualNonempty,
    BadScales,
    // gromov_hausdorff
    EmptyCorrespondence,
    MiddleMismatch,
    CenterNotFound,
    OracleFailure,
    // tangents
    WindowTooLarge,
    // plumbing
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `indices` names the offending points
/// (or classes/sets) when the error is about specific data.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::vector<std::size_t> indices = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code),
          indices_(std::move(indices)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    ErrorCode code_;
    std::vector<std::size_t> indices_;
};

}  // namespace coarsedim

#endif
