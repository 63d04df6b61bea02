#pragma once

#include <stdexcept>
#include <string>

namespace polybend {

enum class ErrorCode {
    ContractViolation,
    ClosingViolation,
    NonUnitEdge,
    IndexOutOfRange,
    LengthMismatch,
    TangencyViolation,
    CrossingDiagonals,
    WrongCount,
    SideNotDiagonal,
    ZeroDiagonal,
    SingularPoint,
    InfeasibleFiber,
    NotOnFiber,
    FaceNotDegenerate,
    NotInDenseSet,
    DiagonalNotVanishing,
    NotAFrame,
    PartialSumNonzero,
    DegenerateNormalization,
    SchemaViolation,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace polybend
