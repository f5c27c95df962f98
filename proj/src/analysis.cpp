#include "qzeta/analysis.hpp"

#include <cmath>
#include <random>

namespace qzeta {

DecayFit fit_power_law(const std::vector<Real>& x, const std::vector<Complex>& y) {
  DecayFit fit;
  const auto n = static_cast<Real>(x.size());
  if (x.size() < 2) return fit;
  Real mx = 0, my = 0;
  std::vector<Real> lx(x.size()), ly(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  Real sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1;
  return fit;
}

SumFormulaReport lemma1_check(std::int64_t m1, QParam q, const TruncationPolicy& policy) {
  if (m1 < 1) throw ArgumentError("m1 must be >= 1");
  const SummationResult lhs = series_sum(
      [&](std::int64_t m) {
        // 1/[m] - 1/[m+m1] = q^m [m1] / ([m][m+m1]), free of cancellation
        return Complex(std::exp(static_cast<Real>(m) * q.log_q() + log_q_int(m1, q) - log_q_int(m, q) -
                                log_q_int(m + m1, q)));
      },
      policy);
  NeumaierSum acc;
  for (std::int64_t j = 1; j <= m1; ++j) acc.add(Complex(1 / q_int(j, q)));
  acc.add(Complex(-static_cast<Real>(m1) * (1 - q.value())));
  SummationResult rhs;
  rhs.value = acc.value();
  rhs.converged = true;
  SumFormulaReport rep = make_report(lhs, rhs);
  rep.tail_estimate = lhs.abs_error_estimate;
  return rep;
}

namespace {

// log v_k = log [k]_q - k log q
Real log_v(std::int64_t k, QParam q) { return log_q_int(k, q) - static_cast<Real>(k) * q.log_q(); }

void check_alpha_pole(Complex alpha) {
  if (std::abs(alpha - Complex(1)) < pole_guard) throw PoleProximityError("pole proximity");
}

}  // namespace

Complex inner_integral(std::int64_t m2, Complex alpha, QParam q) {
  if (m2 < 2) throw ArgumentError("inner_integral requires m2 >= 2");
  check_alpha_pole(alpha);
  const Complex e = Real(1) - alpha;
  return (std::exp(e * log_v(m2 - 1, q)) - std::exp(e * log_v(m2, q))) / (alpha - Real(1));
}

SumFormulaReport lemma2_check(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy) {
  check_alpha_pole(alpha);
  if (!(alpha.real() > 1) || !(s.real() > 2)) throw DomainError("out of convergence domain");
  const SummationResult lhs = zeta_q(MultiIndex{s - alpha, alpha}, q, policy);
  const Real lq = q.log_q();
  Real inner_err = 0;
  const SummationResult outer = series_sum(
      [&](std::int64_t m1) {
        const SummationResult in = series_sum(
            [&](std::int64_t j) {
              const std::int64_t m2 = m1 + j;
              const Complex head = std::exp((alpha - Real(1)) * (static_cast<Real>(m2) * lq) - alpha * log_q_int(m2, q));
              return head - inner_integral(m2, alpha, q);
            },
            policy, SumMode::relative);
        const Complex w = std::exp((s - alpha - Real(1)) * (static_cast<Real>(m1) * lq) + (alpha - s) * log_q_int(m1, q));
        inner_err += std::abs(w) * in.abs_error_estimate;
        return w * in.value;
      },
      policy);
  const SummationResult z1 = zeta_q_one_cont(s - Real(1), q, policy);
  SummationResult rhs;
  rhs.value = outer.value + z1.value / (alpha - Real(1));
  rhs.abs_error_estimate = outer.abs_error_estimate + inner_err + z1.abs_error_estimate / std::abs(alpha - Real(1));
  rhs.terms_used = outer.terms_used + z1.terms_used;
  rhs.converged = outer.converged && z1.converged;
  return make_report(lhs, rhs,
                     "cells of v = [m]_q/q^m with weights q^{(s-alpha-1)m1}, q^{(alpha-1)m2}; the unweighted form "
                     "diverges for q < 1");
}

Complex h_function(int i, Complex s, Complex alpha, QParam q, const TruncationPolicy& policy) {
  switch (i) {
    case 1:
      return ramp_kernel_sum(s, alpha, q, policy, RampWeight::plain).value;
    case 2:
      return ramp_kernel_sum(s, alpha, q, policy, RampWeight::log_kernel).value;
    case 3: {
      check_alpha_pole(alpha);
      const Complex am1 = alpha - Real(1);
      return zeta_q_one_cont(s - Real(1), q, policy).value / (am1 * am1);
    }
    default:
      throw ArgumentError("h_function selector must be 1, 2 or 3");
  }
}

SumFormulaReport dalpha_zeta_check(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy) {
  check_two_cont_args(s, alpha, q);
  const Real h = 1e-4 * std::max<Real>(1, std::abs(alpha));
  const SummationResult zp = zeta_q_two_cont(s, alpha + h, q, policy);
  const SummationResult zm = zeta_q_two_cont(s, alpha - h, q, policy);
  SummationResult lhs;
  lhs.value = (zp.value - zm.value) / (2 * h);
  lhs.abs_error_estimate = (zp.abs_error_estimate + zm.abs_error_estimate) / (2 * h);
  lhs.terms_used = zp.terms_used + zm.terms_used;
  lhs.converged = zp.converged && zm.converged;
  const SummationResult h1 = ramp_kernel_sum(s, alpha, q, policy, RampWeight::plain);
  const SummationResult h2 = ramp_kernel_sum(s, alpha, q, policy, RampWeight::log_kernel);
  const Complex h3 = h_function(3, s, alpha, q, policy);
  SummationResult rhs;
  rhs.value = -h1.value + alpha * h2.value - h3;
  rhs.abs_error_estimate = h1.abs_error_estimate + std::abs(alpha) * h2.abs_error_estimate;
  rhs.terms_used = h1.terms_used + h2.terms_used;
  rhs.converged = h1.converged && h2.converged;
  SumFormulaReport rep = make_report(lhs, rhs, "central difference, step 1e-4*max(1,|alpha|)");
  rep.rel_diff = rep.abs_diff / std::abs(rhs.value);
  return rep;
}

std::pair<bool, bool> check_pointwise_bounds(std::int64_t m, Real u, Real alpha, Real s, QParam q) {
  const Real lqm = log_q_int(m, q);
  const Real lm = std::log(static_cast<Real>(m));
  const Real shift = static_cast<Real>(m - 1) * q.log_q();
  // log([m] + q^{m-1}u) - log [m]  and  log(m + u) - log m
  const Real gq = std::log1p(std::exp(shift - lqm) * u);
  const Real gc = std::log1p(u / static_cast<Real>(m));
  const Real slack = 1e-12;

  const Real l3_lhs = (alpha + 1) * lqm + 2 * shift - (s + 1) * lqm - (alpha + 1) * (lqm + gq);
  const Real l3_rhs = (alpha + 1) * lm - (s + 1) * lm - (alpha + 1) * (lm + gc);
  const bool l3 = l3_lhs <= l3_rhs + slack;

  bool l4 = true;
  if (u > 0) {
    const Real l4_lhs = -(s + 1) * lqm + std::log(gq) - (alpha + 1) * gq + 2 * shift;
    const Real l4_rhs = -(s + 1) * lm + std::log(gc) - (alpha + 1) * gc;
    l4 = l4_lhs <= l4_rhs + slack;
  }
  return {l3, l4};
}

BoundScan scan_pointwise_bounds(std::int64_t points, std::uint64_t seed, Real u_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> m_dist(1, 100);
  std::uniform_int_distribution<int> q_dist(1, 9);
  std::uniform_real_distribution<Real> unit(0, 1);
  BoundScan scan;
  for (std::int64_t i = 0; i < points; ++i) {
    const std::int64_t m = m_dist(rng);
    const Real qv = q_dist(rng) / Real(10);
    const Real u = unit(rng) * u_max;
    const Real alpha = 20 - 19 * unit(rng);  // (1, 20]
    const Real s = 1 + unit(rng);
    const Real s_open = s > 1 ? s : std::nextafter(Real(1), Real(2));
    const auto [l3, l4] = check_pointwise_bounds(m, u, alpha, s_open, QParam(qv));
    ++scan.points;
    if (!l3) ++scan.lemma3_violations;
    if (!l4) ++scan.lemma4_violations;
    if ((!l3 || !l4) && scan.first_m == 0) {
      scan.first_m = m;
      scan.first_u = u;
      scan.first_alpha = alpha;
      scan.first_s = s_open;
      scan.first_q = qv;
    }
  }
  return scan;
}

Real decay_ceiling(DecayKind kind, Complex s) {
  switch (kind) {
    case DecayKind::h1_alpha:
      return -s.real() + 0.15;
    case DecayKind::h2_alpha:
      return -(s.real() + 1) + 0.15;
    case DecayKind::thm3_terms:
    default: {
      const Real delta = std::min<Real>(1, s.real() - 1) * (1 - 1e-3);
      return -(1 + delta) + 0.15;
    }
  }
}

DecayFit tail_decay_fit(DecayKind kind, Complex s, QParam q, std::int64_t lo, std::int64_t hi,
                        const TruncationPolicy& policy) {
  if (lo < 1 || hi <= lo) throw ArgumentError("decay fit range must satisfy 1 <= lo < hi");
  if (kind != DecayKind::thm3_terms && (s.imag() != 0 || !(s.real() > 1 && s.real() < 2)))
    throw DomainError("H decay fits require real s in (1, 2)");
  if (kind == DecayKind::thm3_terms && std::abs(s.imag()) > 3) throw DomainError("|Im(s)| must not exceed 3");
  std::vector<Real> x;
  std::vector<Complex> y;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const auto kr = static_cast<Real>(k);
    Complex v;
    switch (kind) {
      case DecayKind::h1_alpha:
        v = ramp_kernel_sum(s, Complex(kr), q, policy, RampWeight::plain).value;
        break;
      case DecayKind::h2_alpha:
        v = ramp_kernel_sum(s, Complex(kr), q, policy, RampWeight::log_kernel).value;
        break;
      case DecayKind::thm3_terms:
        v = theorem3_summand(s, k, q, policy, Thm3Evaluator::gap).value;
        break;
    }
    x.push_back(kr);
    y.push_back(v);
  }
  DecayFit fit = fit_power_law(x, y);
  fit.window_lo = lo;
  fit.window_hi = hi;
  return fit;
}

}  // namespace qzeta
