#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qzeta/qcore.hpp"

namespace qzeta {

/// Evaluations closer than this to the pole set are refused.
inline constexpr Real pole_guard = 1e-6;

class MultiIndex {
 public:
  MultiIndex(std::vector<Complex> entries);
  MultiIndex(std::initializer_list<Complex> entries) : MultiIndex(std::vector<Complex>(entries)) {}

  std::size_t depth() const { return entries_.size(); }
  const Complex& operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<Complex>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  MultiIndex conj() const;

 private:
  std::vector<Complex> entries_;
};

struct DomainReport {
  bool in_domain = false;
  Real margin = 0;
  Real pole_distance = 0;
  bool admissible_integer = false;
};

DomainReport convergence_margin(const MultiIndex& index, QParam q);
Real pole_distance(const MultiIndex& index, QParam q);

/// Distance from z to {n + i*period*k : n <= n_max integer, k in Z}, with
/// k = 0 dropped when exclude_real_axis is set.
Real lattice_distance(Complex z, Real n_max, Real period, bool exclude_real_axis = false);

/// Distance from s to the pole set of the depth-1 function.
Real depth1_pole_distance(Complex s, QParam q);

SummationResult zeta_q(const MultiIndex& index, QParam q, const TruncationPolicy& policy);

/// Same nested sum restricted to n_r <= n_max, no stopping rule and no domain check.
Complex zeta_q_partial(const MultiIndex& index, QParam q, std::int64_t n_max);

/// Depth-1 value continued to the whole plane minus poles; identical to
/// zeta_q inside the convergence domain.
SummationResult zeta_q_one_cont(Complex s, QParam q, const TruncationPolicy& policy);

/// zeta_q(s - alpha, alpha) for Re(s) > 1, Re(alpha) > 1 through the ramp
/// integral representation.
SummationResult zeta_q_two_cont(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy);

/// zeta_q(s - alpha, alpha) for Re(s) > 1, Re(alpha) > 1 through an expansion
/// in the gap m2 - m1. Relative accuracy, so it resolves tiny values.
SummationResult zeta_q_two_gap(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy);

enum class RampWeight { plain, log_kernel };

/// The ramp integral H(s, alpha) behind zeta_q_two_cont:
///   zeta_q(s - alpha, alpha) = -alpha * H + zeta_q(s - 1)/(alpha - 1).
/// With RampWeight::log_kernel the integrand carries the extra -log(kernel)
/// factor, i.e. the result is -dH/dalpha.
SummationResult ramp_kernel_sum(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy,
                                RampWeight weight);

/// Guards shared by the strip evaluators; throws DomainError/PoleProximityError.
void check_two_cont_args(Complex s, Complex alpha, QParam q);

}  // namespace qzeta
