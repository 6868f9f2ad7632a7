#pragma once

#include <stdexcept>
#include <string>

namespace eet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct NonOrthonormalInput : Error {
    explicit NonOrthonormalInput(const std::string& msg) : Error(msg) {}
};

struct IncompleteBasis : Error {
    explicit IncompleteBasis(const std::string& msg) : Error(msg) {}
};

struct DuplicatePhase : Error {
    explicit DuplicatePhase(const std::string& msg) : Error(msg) {}
};

struct NotAPairPartition : Error {
    explicit NotAPairPartition(const std::string& msg) : Error(msg) {}
};

struct KTooLarge : Error {
    explicit KTooLarge(const std::string& msg) : Error(msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

struct InsufficientLength : Error {
    explicit InsufficientLength(const std::string& msg) : Error(msg) {}
};

struct NotAnEigenvector : Error {
    explicit NotAnEigenvector(const std::string& msg) : Error(msg) {}
};

struct ModelNotMaterializable : Error {
    explicit ModelNotMaterializable(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace eet
