#pragma once

#include <cstdint>
#include <utility>

#include "qzeta/sumformula.hpp"

namespace qzeta {

struct DecayFit {
  Real exponent = 0;   // slope of log|value| against log(alpha) or log(n)
  Real amplitude = 0;  // exp(intercept)
  Real r_squared = 0;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
};

/// Least-squares line through (log x, log|y|).
DecayFit fit_power_law(const std::vector<Real>& x, const std::vector<Complex>& y);

SumFormulaReport lemma1_check(std::int64_t m1, QParam q, const TruncationPolicy& policy);

/// Integral of v^{-alpha} over the m2-th cell of the grid v_k = [k]_q / q^k,
/// in closed form (v_{m2-1}^{1-alpha} - v_{m2}^{1-alpha}) / (alpha - 1).
Complex inner_integral(std::int64_t m2, Complex alpha, QParam q);

SumFormulaReport lemma2_check(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy);

/// i = 1: ramp integral; i = 2: same with the -log kernel weight; i = 3: zeta_q(s-1)/(alpha-1)^2.
Complex h_function(int i, Complex s, Complex alpha, QParam q, const TruncationPolicy& policy);

/// Finite-difference alpha-derivative of zeta_q(s-alpha, alpha) against
/// -H1 + alpha H2 - H3. rel_diff carries |lhs - rhs|/|rhs|.
SumFormulaReport dalpha_zeta_check(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy);

/// (lemma 3 holds, lemma 4 holds) at one point, compared in log space.
std::pair<bool, bool> check_pointwise_bounds(std::int64_t m, Real u, Real alpha, Real s, QParam q);

struct BoundScan {
  std::int64_t points = 0;
  std::int64_t lemma3_violations = 0;
  std::int64_t lemma4_violations = 0;
  /// first violating point (m, u, alpha, s, q), if any
  std::int64_t first_m = 0;
  Real first_u = 0, first_alpha = 0, first_s = 0, first_q = 0;
};

/// Random grid m in [1,100], u in [0,u_max], alpha in (1,20], s in (1,2),
/// q in {0.1,...,0.9}; deterministic for a given seed.
BoundScan scan_pointwise_bounds(std::int64_t points, std::uint64_t seed, Real u_max = 1e3);

enum class DecayKind { h1_alpha, h2_alpha, thm3_terms };

/// Ceiling the fitted exponent is compared against.
Real decay_ceiling(DecayKind kind, Complex s);

/// Fits over every integer alpha (or n) in [lo, hi]. Theorem 3 summands use
/// the gap evaluator, which keeps relative accuracy on the tiny summands.
DecayFit tail_decay_fit(DecayKind kind, Complex s, QParam q, std::int64_t lo, std::int64_t hi,
                        const TruncationPolicy& policy);

}  // namespace qzeta
