// Ramp integral H(s, alpha) used by the strip continuation of zeta_q(s - alpha, alpha).
//
// The u-range [0, 1/(1-q)) splits into pieces u in [[k]_q, [k+1]_q), k >= 0,
// parametrized by tau in [0, 1): u = [k]_q + q^k tau, y = 1 - (1-q)u.
// The m-th kernel is kappa_m = y (1-q^m)/(1 - q^m y); as m -> inf it tends to y.
//
//   H = (1-q)^{s-1} [ sum_m q^{(s-2)m} J_m + I_inf q^{s-2}/(1-q^{s-2}) ]
//   I_inf = sum_k int_0^1 K y^{alpha+1} w_inf dtau
//   J_m   = sum_k int_0^1 K y^{alpha+1} D_m dtau
//   K     = (1-q)^2 tau q^{-2k} (1-(1-q)tau)^{-3}
//
// D_m is the difference between the m-th kernel (with its [m]^{-s-1} weight)
// and the limiting one, formed without cancellation:
//   E_m = (1-q^m)^{alpha-s} (1-q^m y)^{-alpha-1}
//   plain:      w = 1,            D_m = E_m - 1
//   log_kernel: w = -log kappa,   D_m = (E_m - 1)(-log y) + E_m (log1p(-q^m y) - log1p(-q^m))

#include <algorithm>
#include <cmath>

#include "qzeta/qmzf.hpp"

namespace qzeta {

namespace {

class RampPieces {
 public:
  RampPieces(Complex s, Complex alpha, QParam q, RampWeight weight, const GaussLegendre& gl)
      : s_(s), alpha_(alpha), weight_(weight), gl_(gl), lq_(q.log_q()), omq_(1 - q.value()) {}

  /// J_m for m >= 1, I_inf for m == 0.
  Complex integral(std::int64_t m) const {
    const bool diff = m > 0;
    const Real qm = diff ? std::exp(static_cast<Real>(m) * lq_) : 0;
    const Real l1qm = diff ? std::log1p(-qm) : 0;
    auto kernel = [&](Real ly) -> Complex {
      if (!diff) return weight_ == RampWeight::log_kernel ? Complex(-ly) : Complex(1);
      const Real l2 = std::log1p(-qm * std::exp(ly));
      const Complex em1 = expm1((alpha_ - s_) * l1qm - (alpha_ + Real(1)) * l2);
      if (weight_ == RampWeight::plain) return em1;
      return em1 * (-ly) + (em1 + Real(1)) * (l2 - l1qm);
    };
    auto log_y = [&](std::int64_t k, Real tau) { return static_cast<Real>(k) * lq_ + std::log1p(-omq_ * tau); };

    const Real ar = alpha_.real() + 1;
    const Real decay = -std::expm1((alpha_.real() - 1) * lq_);
    const Real pre = omq_ * omq_;
    const Real dw = -lq_;
    const auto n_sub = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(alpha_ + Real(1)) * dw / 2)));
    NeumaierSum acc;
    const std::int64_t cap = 200000;
    for (std::int64_t k = 0; k < cap; ++k) {
      const Real ly0 = log_y(k, 0), ly1 = log_y(k, 1);
      const Real kmax = 2 * std::max(std::abs(kernel(ly0)), std::abs(kernel(ly1)));
      // pieces beyond this one are bounded by a geometric series led by it
      const Real lead = pre * std::exp(ar * ly0 - 2 * static_cast<Real>(k) * lq_ - 3 * lq_) * kmax;
      if (k > 0 && lead / decay <= 1e-18 * std::abs(acc.value())) break;
      auto f = [&](Real tau) -> Complex {
        const Real ly = log_y(k, tau);
        const Real jac = tau / std::pow(1 - omq_ * tau, 3);
        return pre * jac * std::exp((alpha_ + Real(1)) * ly - 2 * static_cast<Real>(k) * lq_) * kernel(ly);
      };
      for (std::int64_t i = 0; i < n_sub; ++i) {
        const Real lo = static_cast<Real>(i) / static_cast<Real>(n_sub);
        const Real hi = static_cast<Real>(i + 1) / static_cast<Real>(n_sub);
        if (i > 0) {
          const Real rest = pre * std::exp(ar * log_y(k, lo) - 2 * static_cast<Real>(k) * lq_ - 3 * lq_) * (1 - lo) * kmax;
          if (rest <= 1e-18 * std::abs(acc.value())) break;
        }
        acc.add(gl_.integrate(f, lo, hi));
      }
    }
    return acc.value();
  }

 private:
  Complex s_;
  Complex alpha_;
  RampWeight weight_;
  const GaussLegendre& gl_;
  Real lq_;
  Real omq_;
};

}  // namespace

SummationResult ramp_kernel_sum(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy, RampWeight weight) {
  policy.validate();
  check_two_cont_args(s, alpha, q);
  const GaussLegendre gl(policy.quad_order);
  const RampPieces pieces(s, alpha, q, weight, gl);
  const Real lq = q.log_q();
  const Complex scale = std::exp((s - Real(1)) * std::log1p(-q.value()));
  auto term = [&](std::int64_t m) -> Complex {
    return std::exp((s - Real(2)) * (static_cast<Real>(m) * lq)) * pieces.integral(m);
  };
  TruncationPolicy inner = policy;
  inner.tol = policy.tol / std::max<Real>(1, std::abs(scale));
  SummationResult res = series_sum(term, inner);
  const Complex es = (s - Real(2)) * lq;
  const Complex resummed = pieces.integral(0) * std::exp(es) / -expm1(es);
  res.value = (res.value + resummed) * scale;
  res.abs_error_estimate *= std::abs(scale);
  return res;
}

}  // namespace qzeta
