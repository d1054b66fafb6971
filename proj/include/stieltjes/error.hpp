// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

enum class ErrorKind {
    invalid_interval,
    out_of_domain,
    invalid_domain,
    invalid_derivator,
    parse,
    evaluation,
    invalid_arity,
    invalid_argument,
    quotient_undefined,
    unsupported,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/// Every library failure is reported as an Error carrying its kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace stieltjes
