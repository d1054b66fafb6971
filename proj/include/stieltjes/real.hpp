// SPDX-License-Identifier: MIT
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <concepts>
#include <cstdint>

namespace stieltjes {

/// Extended scalar used by the numeric oracle: 113-bit significand with a
/// 64-bit exponent, so geometric masses q^n stay representable for n up to
/// the family index cap.
using wide = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<113, boost::multiprecision::backends::digit_base_2, void,
                                                   std::int64_t, -(std::int64_t{1} << 62),
                                                   (std::int64_t{1} << 62)>,
    boost::multiprecision::et_off>;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, wide>;

inline double to_double(double x) noexcept { return x; }
inline double to_double(const wide& x) { return x.convert_to<double>(); }

}  // namespace stieltjes
