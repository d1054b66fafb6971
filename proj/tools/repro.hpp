// SPDX-License-Identifier: MIT
#pragma once

#include "report.hpp"

#include "stieltjes/derivator.hpp"

#include <string>
#include <vector>

namespace cli {

struct ReproResult {
    ojson body;
    bool match = true;
};

[[nodiscard]] const std::vector<std::string>& repro_names();

/// Runs one worked computation on the embedded fixtures. Throws
/// invalid_argument for an unknown name.
[[nodiscard]] ReproResult run_repro(const std::string& name);

/// Derivator bundled into the binary at build time.
[[nodiscard]] stieltjes::Derivator embedded_derivator(const std::string& name);

/// 1 on C_g inside (0, 1), 0 elsewhere: differentiable only after the star.
[[nodiscard]] stieltjes::PointFn flat_indicator(const stieltjes::Derivator& g);

}  // namespace cli
