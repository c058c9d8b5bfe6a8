#include "lvfront/error.hpp"

namespace lvfront {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::StepRejected: return "StepRejected";
        case ErrorKind::FlowSingular: return "FlowSingular";
        case ErrorKind::NewtonStall: return "NewtonStall";
        case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
        case ErrorKind::NoFront: return "NoFront";
        case ErrorKind::StabilityViolation: return "StabilityViolation";
        case ErrorKind::FrontTooClose: return "FrontTooClose";
        case ErrorKind::Extinction: return "Extinction";
        case ErrorKind::SelfIntersection: return "SelfIntersection";
        case ErrorKind::ProjectionAmbiguous: return "ProjectionAmbiguous";
        case ErrorKind::FitOutOfBracket: return "FitOutOfBracket";
        case ErrorKind::EmptyWindow: return "EmptyWindow";
        case ErrorKind::Config: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace lvfront
