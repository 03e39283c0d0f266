#pragma once

#include <stdexcept>
#include <string>

namespace csp {

// Error categories map onto the CLI exit codes: Validation -> 2,
// Budget -> 3, Verification -> 4. Internal means a broken invariant.
enum class ErrorKind { Validation, Budget, Verification, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), kind_(kind), code_(code) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

struct ValidationError : Error {
    ValidationError(const std::string& code, const std::string& msg)
        : Error(ErrorKind::Validation, code, msg) {}
    explicit ValidationError(const std::string& msg)
        : Error(ErrorKind::Validation, "ValidationError", msg) {}
};

struct BudgetError : Error {
    BudgetError(const std::string& code, const std::string& msg)
        : Error(ErrorKind::Budget, code, msg) {}
};

struct VerificationError : Error {
    VerificationError(const std::string& code, const std::string& msg)
        : Error(ErrorKind::Verification, code, msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg)
        : Error(ErrorKind::Internal, "InternalError", msg) {}
};

// Shorthands for the error names that appear in module contracts.
inline BudgetError enumeration_budget_exceeded(const std::string& what) {
    return BudgetError("EnumerationBudgetExceeded", what);
}
inline BudgetError search_cap_exceeded(const std::string& what) {
    return BudgetError("SearchCapExceeded", what);
}
inline BudgetError size_budget_exceeded(const std::string& what) {
    return BudgetError("SizeBudgetExceeded", what);
}

} // namespace csp
