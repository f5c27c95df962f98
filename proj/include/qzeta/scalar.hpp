#pragma once

#include <complex>
#include <numbers>

namespace qzeta {

// Swap these two aliases for an extended-precision build.
using Real = double;
using Complex = std::complex<Real>;

inline constexpr Real pi = std::numbers::pi_v<Real>;
inline constexpr Real ln2 = std::numbers::ln2_v<Real>;

}  // namespace qzeta
