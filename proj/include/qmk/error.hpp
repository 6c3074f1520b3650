#pragma once
#include <stdexcept>
#include <string>

namespace qmk {

enum class ErrorCode {
    DisconnectedGraph,
    SizeLimitExceeded,
    UnsupportedClass,
    NotAnEigenvalue,
    ZeroGraph,
    OutsideModuliImage,
    NotAGeneralizedTree,
    BadParameterCount,
    ArityMismatch,
    UndefinableProjector,
    NotRootOfUnity,
    InvalidSolution,
    ParseError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace qmk
