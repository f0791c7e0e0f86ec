#pragma once

#include <stdexcept>
#include <string>

namespace chu {

/// Error taxonomy shared by all modules. The CLI maps categories to exit
/// codes: invalid input -> 2, cap exceeded -> 3, numerical failure -> 4,
/// inconclusive-by-design -> 5.
enum class ErrorCode {
    InvalidInput = 2,
    CapExceeded = 3,
    NumericalFailure = 4,
    Inconclusive = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string kind, const std::string& msg)
        : std::runtime_error(msg), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const { return code_; }
    const std::string& kind() const { return kind_; }

private:
    ErrorCode code_;
    std::string kind_;
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "InvalidSpec", msg) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg)
        : Error(ErrorCode::CapExceeded, "CapExceeded", msg) {}
};

struct NotNormal : Error {
    explicit NotNormal(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "NotNormal", msg) {}
};

struct TrivialGroup : Error {
    explicit TrivialGroup(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "TrivialGroup", msg) {}
};

struct NoSuitablePrime : Error {
    explicit NoSuitablePrime(const std::string& msg)
        : Error(ErrorCode::NumericalFailure, "NoSuitablePrime", msg) {}
};

struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& msg)
        : Error(ErrorCode::NumericalFailure, "NumericalFailure", msg) {}
};

struct GroupMismatch : Error {
    explicit GroupMismatch(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "GroupMismatch", msg) {}
};

struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "DegreeMismatch", msg) {}
};

struct NotAProduct : Error {
    explicit NotAProduct(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "NotAProduct", msg) {}
};

struct NotSimpleFamily : Error {
    explicit NotSimpleFamily(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "NotSimpleFamily", msg) {}
};

struct BoundTooSmall : Error {
    explicit BoundTooSmall(const std::string& msg)
        : Error(ErrorCode::InvalidInput, "BoundTooSmall", msg) {}
};

struct Inconclusive : Error {
    explicit Inconclusive(const std::string& msg)
        : Error(ErrorCode::Inconclusive, "Inconclusive", msg) {}
};

} // namespace chu
