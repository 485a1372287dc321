#pragma once

#include <stdexcept>
#include <string>

namespace gentle {

enum class ErrorCode {
    ParseError,
    NotGentle,
    RelationNotComposable,
    NotProper,
    NotSmooth,
    UnsupportedLoop,
    NotConnected,
    InvalidIdempotent,
    NotAnForm2,
    NotAnFormGe2,
    IndexOutOfRange,
    InconsistentWalk,
    NotEmbedded,
    SymplecticBasisNotFound,
    GenusOutOfRange,
    ArfUndefined,
    InternalInconsistency,
};

const char* error_code_name(ErrorCode code);

// Domain failure. Carries a stable machine-readable code plus a human message.
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw DomainError(code, message);
}

} // namespace gentle
