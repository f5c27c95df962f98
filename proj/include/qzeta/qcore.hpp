#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qzeta/errors.hpp"
#include "qzeta/scalar.hpp"

namespace qzeta {

/// Deformation parameter, 0 < q < 1.
class QParam {
 public:
  explicit QParam(Real q);

  Real value() const { return q_; }
  Real log_q() const { return log_q_; }
  /// Imaginary period 2*pi/|log q| of the pole lattice.
  Real period() const { return 2 * pi / std::abs(log_q_); }

 private:
  Real q_;
  Real log_q_;
};

struct TruncationPolicy {
  Real tol = 1e-13;
  std::int64_t max_outer = 1'000'000;
  int stall_window = 3;
  int quad_order = 16;
  int tail_fit_window = 8;

  /// Throws ArgumentError when the invariants do not hold.
  void validate() const;
};

struct SummationResult {
  Complex value{};
  Real abs_error_estimate = 0;
  std::int64_t terms_used = 0;
  bool converged = false;
};

Real q_int(std::int64_t m, QParam q);
/// log [m]_q without cancellation for small m or q near 1.
Real log_q_int(std::int64_t m, QParam q);

/// log of q^{(s-1)n}/[n]_q^s.
Complex log_q_term(Complex s, std::int64_t n, QParam q);
Complex q_term(Complex s, std::int64_t n, QParam q);

/// q-floor: [n]_q for x in [[n]_q, [n+1]_q).
Real lbag(Real x, QParam q);
/// The n with lbag(x) = [n]_q.
std::int64_t lbag_index(Real x, QParam q);

Complex log_gamma(Complex z);
Complex beta_fn(Complex x, Complex y);

/// Weakly increasing chain sums C_L(lo, hi) = sum_{lo <= x_1 <= ... <= x_L <= hi}
/// prod_j q^{x_j}/[x_j]_q. Entry lo-1 of the result holds C_L(lo, hi), lo = 1..hi.
std::vector<Real> chain_suffix_sums(std::int64_t hi, int L, QParam q);
Real chain_sum(std::int64_t lo, std::int64_t hi, int L, QParam q);

/// exp(z) - 1 accurate for small |z|.
Complex expm1(Complex z);

/// Neumaier compensated sum, applied to each component.
class NeumaierSum {
 public:
  void add(Complex x) {
    add_part(sum_re_, comp_re_, x.real());
    add_part(sum_im_, comp_im_, x.imag());
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(Real& sum, Real& comp, Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  Real sum_re_ = 0, comp_re_ = 0, sum_im_ = 0, comp_im_ = 0;
};

/// Compensated sum stored as mantissa * 2^exponent so that partial sums far
/// outside the double range (negative indices in inner slots) stay finite.
class ScaledSum {
 public:
  /// Adds exp(log_factor) * (other's value).
  void add_product(Complex log_factor, const ScaledSum& other);
  /// Adds exp(log_term).
  void add_exp(Complex log_term);

  bool is_zero() const { return zero_; }
  /// Value as an ordinary complex number (may overflow to inf).
  Complex value() const;
  /// Value times exp(log_factor), rescaled before leaving the scaled form.
  Complex value_times_exp(Complex log_factor) const;

 private:
  void add_scaled(Complex mant, std::int64_t exp2);
  void normalize();

  Real s_re_ = 0, c_re_ = 0, s_im_ = 0, c_im_ = 0;
  std::int64_t exp2_ = 0;
  bool zero_ = true;
};

enum class SumMode {
  absolute,  // stop when |term| < tol * max(1, |partial|)
  relative,  // stop when |term| < tol * |partial|
};

namespace detail {

struct TailRatio {
  std::vector<Real> ring;
  std::size_t count = 0;

  explicit TailRatio(int window) : ring(static_cast<std::size_t>(window < 2 ? 2 : window), 0) {}
  void push(Real mag) {
    ring[count % ring.size()] = mag;
    ++count;
  }
  Real estimate() const;
};

}  // namespace detail

/// Compensated accumulation of term(1), term(2), ... in ascending order.
/// Converged means the stall rule held for stall_window consecutive terms
/// and the geometric tail estimate is within tol.
template <class TermFn>
SummationResult series_sum(TermFn&& term, const TruncationPolicy& policy,
                           SumMode mode = SumMode::absolute) {
  NeumaierSum acc;
  detail::TailRatio tail(policy.tail_fit_window);
  SummationResult res;
  int stalled = 0;
  Real last = 0;
  for (std::int64_t n = 1; n <= policy.max_outer; ++n) {
    const Complex t = term(n);
    acc.add(t);
    last = std::abs(t);
    tail.push(last);
    res.terms_used = n;
    const Real partial = std::abs(acc.value());
    const Real scale = mode == SumMode::absolute ? std::max<Real>(1, partial) : partial;
    if (last < policy.tol * scale || last == 0)
      ++stalled;
    else
      stalled = 0;
    if (!std::isfinite(last)) break;
    if (stalled >= policy.stall_window) {
      const Real rho = tail.estimate();
      const Real err = last * rho / (1 - rho);
      const Real bound = mode == SumMode::absolute ? policy.tol : policy.tol * partial;
      if (err <= bound) {
        res.value = acc.value();
        res.abs_error_estimate = err;
        res.converged = true;
        return res;
      }
    }
  }
  const Real rho = tail.estimate();
  res.value = acc.value();
  res.abs_error_estimate = std::isfinite(last) ? last * rho / (1 - rho) : last;
  res.converged = false;
  return res;
}

/// Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const { return static_cast<int>(nodes_.size()); }

  template <class F>
  auto integrate(F&& f, Real a, Real b) const {
    const Real half = (b - a) / 2, mid = (a + b) / 2;
    using R = decltype(f(mid));
    R acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
    return acc * half;
  }

  const std::vector<Real>& nodes() const { return nodes_; }
  const std::vector<Real>& weights() const { return weights_; }

 private:
  std::vector<Real> nodes_;
  std::vector<Real> weights_;
};

}  // namespace qzeta
