#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvfront {

enum class ErrorKind {
    InvalidParams,
    StepRejected,
    FlowSingular,
    NewtonStall,
    MonotonicityViolation,
    NoFront,
    StabilityViolation,
    FrontTooClose,
    Extinction,
    SelfIntersection,
    ProjectionAmbiguous,
    FitOutOfBracket,
    EmptyWindow,
    Config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure the library reports carries a kind so callers (the CLI in
/// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lvfront
