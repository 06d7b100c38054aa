#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chromaclust {

// Error category; the CLI maps these to distinct exit codes
// (validation -> 2, solver -> 3, budget -> 4).
enum class ErrorClass { validation, solver, budget };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg)
        : std::runtime_error(std::move(msg)), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

struct EmptySetError : Error {
    explicit EmptySetError(std::string msg = "empty point set")
        : Error(ErrorClass::validation, std::move(msg)) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(std::string msg = "dimension mismatch")
        : Error(ErrorClass::validation, std::move(msg)) {}
};

struct BadSpecError : Error {
    explicit BadSpecError(std::string msg = "invalid specification")
        : Error(ErrorClass::validation, std::move(msg)) {}
};

struct NotFullInstanceError : Error {
    explicit NotFullInstanceError(std::string msg = "instance is not full")
        : Error(ErrorClass::validation, std::move(msg)) {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(std::string msg = "iteration cap exceeded")
        : Error(ErrorClass::solver, std::move(msg)) {}
};

struct TooFewPointsError : Error {
    explicit TooFewPointsError(std::string msg = "too few points")
        : Error(ErrorClass::solver, std::move(msg)) {}
};

struct GridTooLargeError : Error {
    explicit GridTooLargeError(std::string msg = "grid exceeds point cap")
        : Error(ErrorClass::budget, std::move(msg)) {}
};

struct TooLargeError : Error {
    explicit TooLargeError(std::string msg = "enumeration bound exceeded")
        : Error(ErrorClass::budget, std::move(msg)) {}
};

struct BudgetExceededError : Error {
    explicit BudgetExceededError(std::string msg = "node budget exceeded")
        : Error(ErrorClass::budget, std::move(msg)) {}
};

}  // namespace chromaclust
