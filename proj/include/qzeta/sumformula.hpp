#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qzeta/qmzf.hpp"

namespace qzeta {

struct SumFormulaReport {
  Complex lhs{};
  Complex rhs{};
  Real abs_diff = 0;  // |lhs - rhs|
  std::int64_t terms_used = 0;
  Real tail_estimate = 0;
  std::string convention_note;
  /// Combined error estimate of both sides.
  Real error_estimate = 0;
  bool converged = true;
  /// |lhs - rhs| / |rhs| where a relative comparison is the natural one.
  std::optional<Real> rel_diff;
  /// Second evaluation of lhs by an independent route, when available.
  std::optional<Complex> cross_value;
  std::optional<Real> cross_diff;
};

SumFormulaReport make_report(const SummationResult& lhs, const SummationResult& rhs, std::string note = {});

/// Compositions of k into r positive parts with last part >= 2, lexicographic.
std::vector<MultiIndex> enumerate_I0(int k, int r);

SumFormulaReport check_sum_formula_qmzv(int k, int r, QParam q, const TruncationPolicy& policy);

/// How each summand zeta_q(s-alpha, alpha) of the interpolated sum is computed.
enum class Thm3Evaluator {
  automatic,  // direct series when Re(s) > 2, ramp integral otherwise
  direct,
  ramp,
  gap,
};

/// n-th summand zeta_q(s-n-2, n+2) - zeta_q(-n, s+n).
SummationResult theorem3_summand(Complex s, std::int64_t n, QParam q, const TruncationPolicy& policy,
                                 Thm3Evaluator how = Thm3Evaluator::automatic);

struct NSeriesResult {
  SummationResult result;
  std::vector<Complex> summands;  // summand n at position n
  Real tail_estimate = 0;
  Real fitted_exponent = 0;  // free log-log slope over the last tail_fit_window summands
};

inline constexpr std::int64_t default_n_max = 400;

NSeriesResult interpolated_sum_depth2(Complex s, QParam q, const TruncationPolicy& policy,
                                      std::int64_t n_max = default_n_max,
                                      Thm3Evaluator how = Thm3Evaluator::automatic);

/// |zeta_q(k-n-2, n+2) - zeta_q(-m, k+m)|, m = n-k+2, for n = k-2 .. n_hi.
std::vector<Real> telescoping_residuals(int k, std::int64_t n_hi, QParam q, const TruncationPolicy& policy);

struct GSpec {
  int a = 0;
  int b = 1;
  std::vector<Complex> prefix;
  Complex s{};

  void validate() const;
};

enum class ChainLength {
  b_minus_1,  // shipped: reduces to zeta_q(s) at a = 0
  b_minus_2,  // as printed in the closed-form statement
};

inline constexpr const char* chain_convention_note =
    "closed form: chain length b-1, lower bound m-m_a (m when a=0)";

SummationResult g_value_recursive(const GSpec& spec, QParam q, const TruncationPolicy& policy,
                                  std::int64_t n_max = default_n_max);

SummationResult g_closed_form(const GSpec& spec, QParam q, const TruncationPolicy& policy,
                              ChainLength conv = ChainLength::b_minus_1);

SumFormulaReport check_theorem4(int b, Complex s, QParam q, const TruncationPolicy& policy);

struct ChainConventionVerdict {
  Real residual_b_minus_1 = 0;
  Real residual_b_minus_2 = 0;
  ChainLength winner = ChainLength::b_minus_1;
};

/// Compares both chain lengths against the recursion on a few specs.
ChainConventionVerdict resolve_chain_convention(QParam q, const TruncationPolicy& policy);

}  // namespace qzeta
