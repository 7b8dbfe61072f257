#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fracstoch {

/// 50-digit float used by the high-precision Gaver-Stehfest route.
using Mp = boost::multiprecision::cpp_bin_float_50;

/// 100-digit float used when a double-precision series loses too much to
/// cancellation.
using MpWide = boost::multiprecision::cpp_bin_float_100;

}  // namespace fracstoch
