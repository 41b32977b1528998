#pragma once

#include <stdexcept>
#include <string>

namespace hasse {

enum class ErrorKind {
    BudgetExceeded,
    NotAUnit,
    DivisionByZero,
    PrecisionExceeded,
    InternalInconsistency,
    ResolventDegenerate,
    SearchExhausted,
    VerificationFailed,
    NotApplicable,
    InvalidArgument,
    Parse,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers can map
// budget problems to an "Unsupported" verdict instead of a wrong answer.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_budget() const noexcept {
        return kind_ == ErrorKind::BudgetExceeded || kind_ == ErrorKind::PrecisionExceeded ||
               kind_ == ErrorKind::SearchExhausted;
    }

private:
    ErrorKind kind_;
};

} // namespace hasse
