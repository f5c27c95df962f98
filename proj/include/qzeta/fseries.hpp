#pragma once

#include <string>
#include <vector>

#include "qzeta/sumformula.hpp"

namespace qzeta {

/// Selects F^{(i)}(D; s; d).
struct FSpec {
  int i = 0;
  int D = 0;
  Complex s{};
  int d = 1;

  void validate() const;
};

/// Weight of the second series. The shipped reading carries q^{(s-d-2)t} on
/// the outer index t; the printed definition puts q^{(s-d-2)m} on the inner m.
enum class F2Weight { outer_t, inner_m };

SummationResult f_series(const FSpec& spec, QParam q, const TruncationPolicy& policy,
                         F2Weight w2 = F2Weight::outer_t);

/// Same series with every summation index <= n_max; no domain check.
Complex f_series_partial(const FSpec& spec, QParam q, std::int64_t n_max, F2Weight w2 = F2Weight::outer_t);

/// Residuals of the three candidate identities
///   A: F0(d)   - [F1(d)   - F2(d) - F3(d)]
///   B: F0(d+1) - [F1(d+1) - F2(d) - F3(d)]
///   C: F0(d+1) - [F1(d)   - F2(d) - F3(d)]
struct FResiduals {
  Real a = 0, b = 0, c = 0;
};

struct FIdentityReport {
  /// Convention C with the shipped F2: lhs = F0(d+1), rhs = F1(d) - F2(d) - F3(d).
  SumFormulaReport report;
  FResiduals shipped;  // F2Weight::outer_t
  FResiduals printed;  // F2Weight::inner_m
  bool a_vanishes = false;  // under either F2 weight
  bool b_vanishes = false;
  bool c_vanishes = false;  // shipped F2
};

inline constexpr Real f_identity_threshold = 1e-9;

FIdentityReport check_f_identity(int D, Complex s, int d, QParam q, const TruncationPolicy& policy,
                                 Real threshold = f_identity_threshold);

/// max_i |F^{(i)}(D;s;d)| over i = 1,2,3 divided by the majorant
/// sum_{t>D} q^{(sigma-d-2)t} (log t)^{d+1} / [t]^{sigma-d-1}.
Real check_f_bound(int D, Complex s, int d, QParam q, const TruncationPolicy& policy = {});

}  // namespace qzeta
