// SPDX-License-Identifier: MIT
#pragma once

#include "stieltjes/derivator.hpp"

#include <map>
#include <optional>
#include <string>

namespace stieltjes {

/// Parsed derivator file: the derivator plus any named expressions bundled with it.
struct DerivatorFile {
    Derivator derivator;
    std::map<std::string, std::string> expressions;
    /// Default working interval, "domain": [a, b].
    std::optional<Interval> domain;
};

/// Decimal or rational literal ("7/24", "-1/3", "0.25").
[[nodiscard]] double parse_number(const std::string& text);

[[nodiscard]] DerivatorFile parse_derivator(const std::string& json_text);

/// Loads `path`, falling back to `path + ".json"`.
[[nodiscard]] DerivatorFile load_derivator(const std::string& path);

}  // namespace stieltjes
