#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qzeta/qmzf.hpp"

namespace qzeta {

struct ExtrapolationReport {
  std::vector<std::pair<Real, Complex>> estimates;  // (q, zeta_q value), increasing q
  Complex extrapolated{};
  /// |extrapolated - extrapolation without the smallest q|
  Real error_estimate = 0;
  Real observed_order = 0;
  std::optional<Complex> reference;
  std::vector<std::string> warnings;
};

/// q_j = 1 - 2^{-j}, j = 3..10.
std::vector<QParam> default_q_grid();

/// Polynomial extrapolation in eps = 1 - q to eps = 0 (Neville). The order is
/// measured from the last three estimates; below 0.5 a warning is attached.
/// reference is filled with mzv_reference for admissible integer indices.
ExtrapolationReport q_to_1_extrapolate(const MultiIndex& index, const std::vector<QParam>& q_grid,
                                       const TruncationPolicy& policy, bool with_reference = true);

/// Classical multiple zeta value by nested summation to precision_terms plus
/// an integral estimate of the outer tail.
Complex mzv_reference(const MultiIndex& index, std::int64_t precision_terms = 1'000'000);

}  // namespace qzeta
