#pragma once

#include <stdexcept>
#include <string>

namespace efron_dual {

inline constexpr const char* artifact_version = "1.0.0";

/// Thrown when a caller breaks a documented precondition.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what)
        : std::invalid_argument(what) {}
};

} // namespace efron_dual
