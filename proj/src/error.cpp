#include "qmk/error.hpp"

namespace qmk {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorCode::UnsupportedClass: return "UnsupportedClass";
        case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
        case ErrorCode::ZeroGraph: return "ZeroGraph";
        case ErrorCode::OutsideModuliImage: return "OutsideModuliImage";
        case ErrorCode::NotAGeneralizedTree: return "NotAGeneralizedTree";
        case ErrorCode::BadParameterCount: return "BadParameterCount";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::UndefinableProjector: return "UndefinableProjector";
        case ErrorCode::NotRootOfUnity: return "NotRootOfUnity";
        case ErrorCode::InvalidSolution: return "InvalidSolution";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace qmk
