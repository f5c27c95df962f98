#include "qzeta/sumformula.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qzeta {

SumFormulaReport make_report(const SummationResult& lhs, const SummationResult& rhs, std::string note) {
  SumFormulaReport rep;
  rep.lhs = lhs.value;
  rep.rhs = rhs.value;
  rep.abs_diff = std::abs(lhs.value - rhs.value);
  rep.terms_used = lhs.terms_used + rhs.terms_used;
  rep.error_estimate = lhs.abs_error_estimate + rhs.abs_error_estimate;
  rep.converged = lhs.converged && rhs.converged;
  rep.convention_note = std::move(note);
  return rep;
}

std::vector<MultiIndex> enumerate_I0(int k, int r) {
  if (r < 1 || r > k - 1) throw ArgumentError("enumerate_I0 requires 1 <= r <= k-1");
  std::vector<MultiIndex> out;
  std::vector<Complex> cur;
  std::function<void(int, int)> rec = [&](int remaining, int slots) {
    if (slots == 1) {
      if (remaining >= 2) {
        cur.emplace_back(remaining);
        out.emplace_back(cur);
        cur.pop_back();
      }
      return;
    }
    // leave at least 1 per middle slot and 2 for the last
    for (int part = 1; part <= remaining - (slots - 2) - 2; ++part) {
      cur.emplace_back(part);
      rec(remaining - part, slots - 1);
      cur.pop_back();
    }
  };
  rec(k, r);
  return out;
}

SumFormulaReport check_sum_formula_qmzv(int k, int r, QParam q, const TruncationPolicy& policy) {
  const auto indices = enumerate_I0(k, r);
  NeumaierSum acc;
  SummationResult lhs;
  lhs.converged = true;
  for (const auto& idx : indices) {
    const SummationResult z = zeta_q(idx, q, policy);
    acc.add(z.value);
    lhs.abs_error_estimate += z.abs_error_estimate;
    lhs.terms_used += z.terms_used;
    lhs.converged = lhs.converged && z.converged;
  }
  lhs.value = acc.value();
  const SummationResult rhs = zeta_q(MultiIndex{Complex(k)}, q, policy);
  return make_report(lhs, rhs);
}

namespace {

void check_two_strip_pole(Complex s, QParam q) {
  const Real period = q.period();
  const Real k = std::round(s.imag() / period);
  if (std::hypot(s.real() - 2, s.imag() - k * period) < pole_guard) throw PoleProximityError("pole proximity");
}

SummationResult difference(const SummationResult& a, const SummationResult& b) {
  SummationResult d;
  d.value = a.value - b.value;
  d.abs_error_estimate = a.abs_error_estimate + b.abs_error_estimate;
  d.terms_used = a.terms_used + b.terms_used;
  d.converged = a.converged && b.converged;
  return d;
}

// n = 0, 1, ... summation shared by the interpolated sum and the G recursion:
// stops after stall_window consecutive negligible summands or at n_max, then
// adds a c n^{-(1+delta)} tail fitted on the last tail_fit_window summands.
template <class F>
NSeriesResult n_series(F&& summand, Real delta, const TruncationPolicy& policy, std::int64_t n_max) {
  NSeriesResult out;
  NeumaierSum acc;
  Real err = 0;
  bool all_converged = true;
  bool stalled_out = false;
  int stalled = 0;
  std::int64_t terms = 0;
  for (std::int64_t n = 0; n < n_max; ++n) {
    const SummationResult t = summand(n);
    out.summands.push_back(t.value);
    acc.add(t.value);
    err += t.abs_error_estimate;
    terms += t.terms_used;
    all_converged = all_converged && t.converged;
    if (std::abs(t.value) < policy.tol * std::max<Real>(1, std::abs(acc.value())))
      ++stalled;
    else
      stalled = 0;
    if (stalled >= policy.stall_window) {
      stalled_out = true;
      break;
    }
  }
  // tail model and free slope over the last window (n >= 1, nonzero summands)
  std::vector<std::pair<Real, Real>> pts;
  for (auto n = static_cast<std::int64_t>(out.summands.size()) - 1; n >= 1; --n) {
    const Real mag = std::abs(out.summands[static_cast<std::size_t>(n)]);
    if (mag > 0) pts.emplace_back(std::log(static_cast<Real>(n)), std::log(mag));
    if (static_cast<int>(pts.size()) >= policy.tail_fit_window) break;
  }
  Real tail = 0;
  if (!pts.empty()) {
    Real logc = 0;
    for (const auto& [ln, lm] : pts) logc += lm + (1 + delta) * ln;
    logc /= static_cast<Real>(pts.size());
    const auto n_last = static_cast<Real>(out.summands.size() - 1);
    tail = std::exp(logc - delta * std::log(std::max<Real>(1, n_last))) / delta;
  }
  if (pts.size() >= 2) {
    Real mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<Real>(pts.size());
    my /= static_cast<Real>(pts.size());
    Real sxy = 0, sxx = 0;
    for (const auto& [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    out.fitted_exponent = sxx > 0 ? sxy / sxx : 0;
  }
  out.tail_estimate = tail;
  out.result.value = acc.value();
  out.result.abs_error_estimate = err + tail;
  out.result.terms_used = terms;
  out.result.converged = stalled_out && all_converged && out.result.abs_error_estimate <= policy.tol;
  return out;
}

Real tail_delta(Complex s, int b) { return std::min<Real>(1, s.real() - b + 1) * (1 - 1e-3); }

}  // namespace

SummationResult theorem3_summand(Complex s, std::int64_t n, QParam q, const TruncationPolicy& policy,
                                 Thm3Evaluator how) {
  const auto nr = static_cast<Real>(n);
  if (how == Thm3Evaluator::automatic) how = s.real() > 2 ? Thm3Evaluator::direct : Thm3Evaluator::ramp;
  switch (how) {
    case Thm3Evaluator::direct:
      return difference(zeta_q(MultiIndex{s - nr - Real(2), Complex(nr + 2)}, q, policy),
                        zeta_q(MultiIndex{Complex(-nr), s + nr}, q, policy));
    case Thm3Evaluator::ramp:
      return difference(zeta_q_two_cont(s, Complex(nr + 2), q, policy), zeta_q_two_cont(s, s + nr, q, policy));
    case Thm3Evaluator::gap:
    default:
      return difference(zeta_q_two_gap(s, Complex(nr + 2), q, policy), zeta_q_two_gap(s, s + nr, q, policy));
  }
}

NSeriesResult interpolated_sum_depth2(Complex s, QParam q, const TruncationPolicy& policy, std::int64_t n_max,
                                      Thm3Evaluator how) {
  policy.validate();
  if (!(s.real() > 1)) throw DomainError("out of convergence domain");
  check_two_strip_pole(s, q);
  return n_series([&](std::int64_t n) { return theorem3_summand(s, n, q, policy, how); }, tail_delta(s, 2), policy,
                  n_max);
}

std::vector<Real> telescoping_residuals(int k, std::int64_t n_hi, QParam q, const TruncationPolicy& policy) {
  std::vector<Real> out;
  const Complex s(k);
  for (std::int64_t n = k - 2; n <= n_hi; ++n) {
    const auto nr = static_cast<Real>(n);
    const auto m = static_cast<Real>(n - k + 2);
    const Complex a = zeta_q(MultiIndex{s - nr - Real(2), Complex(nr + 2)}, q, policy).value;
    const Complex b = zeta_q(MultiIndex{Complex(-m), Complex(k + m)}, q, policy).value;
    out.push_back(std::abs(a - b));
  }
  return out;
}

void GSpec::validate() const {
  if (a < 0 || b < 1) throw ArgumentError("GSpec requires a >= 0, b >= 1");
  if (static_cast<int>(prefix.size()) != a) throw ArgumentError("GSpec prefix length must equal a");
  if (!(s.real() > b)) throw DomainError("out of convergence domain");
  Complex tail = s;
  for (int k = 1; k <= a; ++k) {
    tail += prefix[static_cast<std::size_t>(a - k)];
    if (!(tail.real() > k + b)) throw DomainError("out of convergence domain");
  }
}

namespace {

SummationResult g_rec(const std::vector<Complex>& prefix, int b, Complex s, QParam q, const TruncationPolicy& policy,
                      std::int64_t n_max) {
  if (b == 1) {
    std::vector<Complex> idx = prefix;
    idx.push_back(s);
    return zeta_q(MultiIndex(std::move(idx)), q, policy);
  }
  auto summand = [&](std::int64_t n) {
    const auto nr = static_cast<Real>(n);
    std::vector<Complex> p1 = prefix, p2 = prefix;
    p1.push_back(s - nr - Real(b));
    p2.emplace_back(-nr);
    return difference(g_rec(p1, b - 1, Complex(nr + b), q, policy, n_max),
                      g_rec(p2, b - 1, s + nr, q, policy, n_max));
  };
  return n_series(summand, tail_delta(s, b), policy, n_max).result;
}

}  // namespace

SummationResult g_value_recursive(const GSpec& spec, QParam q, const TruncationPolicy& policy, std::int64_t n_max) {
  policy.validate();
  spec.validate();
  if (spec.b > 3) throw CostGuardError("g_value_recursive is limited to b <= 3");
  return g_rec(spec.prefix, spec.b, spec.s, q, policy, n_max);
}

SummationResult g_closed_form(const GSpec& spec, QParam q, const TruncationPolicy& policy, ChainLength conv) {
  policy.validate();
  spec.validate();
  const int L = conv == ChainLength::b_minus_1 ? spec.b - 1 : spec.b - 2;
  if (L < 0) throw ArgumentError("chain length must be non-negative");
  const Complex s = spec.s;
  const auto b = static_cast<Real>(spec.b);
  const Real lq = q.log_q();
  auto outer_log = [&](std::int64_t m) {
    return (s - b) * (static_cast<Real>(m) * lq) - (s - b + Real(1)) * log_q_int(m, q);
  };
  if (spec.a == 0) {
    // the chain collapses to x_1 = ... = x_L = m
    return series_sum(
        [&](std::int64_t m) {
          const Real lw = static_cast<Real>(m) * lq - log_q_int(m, q);
          return std::exp(outer_log(m) + static_cast<Real>(L) * lw);
        },
        policy);
  }
  // prefix weights P(m_a) = t_a(m_a) * sum_{m_1<...<m_{a-1}<m_a} prod t_j(m_j)
  const std::size_t a = spec.prefix.size();
  std::vector<ScaledSum> levels(a);
  levels[0].add_exp(Complex{});
  std::vector<Complex> weight;  // weight[k-1] = P(k)
  std::vector<Complex> logs(a);
  std::int64_t next_k = 1;
  auto extend_prefix = [&](std::int64_t upto) {
    for (; next_k <= upto; ++next_k) {
      const Real lk = static_cast<Real>(next_k) * lq;
      const Real lm = log_q_int(next_k, q);
      for (std::size_t j = 0; j < a; ++j) logs[j] = (spec.prefix[j] - Real(1)) * lk - spec.prefix[j] * lm;
      weight.push_back(levels[a - 1].value_times_exp(logs[a - 1]));
      for (std::size_t j = a - 1; j >= 1; --j) levels[j].add_product(logs[j - 1], levels[j - 1]);
    }
  };
  auto term = [&](std::int64_t i) -> Complex {
    const std::int64_t m = i + static_cast<std::int64_t>(a);  // first m with a nonzero prefix below it
    extend_prefix(m - 1);
    const std::vector<Real> chain = chain_suffix_sums(m, L, q);
    NeumaierSum inner;
    for (std::int64_t ma = static_cast<std::int64_t>(a); ma < m; ++ma)
      inner.add(weight[static_cast<std::size_t>(ma - 1)] * chain[static_cast<std::size_t>(m - ma - 1)]);
    return std::exp(outer_log(m)) * inner.value();
  };
  return series_sum(term, policy);
}

SumFormulaReport check_theorem4(int b, Complex s, QParam q, const TruncationPolicy& policy) {
  if (b < 1) throw ArgumentError("b must be >= 1");
  GSpec spec{0, b, {}, s};
  spec.validate();
  const SummationResult lhs = g_closed_form(spec, q, policy);
  const SummationResult rhs = zeta_q(MultiIndex{s}, q, policy);
  SumFormulaReport rep = make_report(lhs, rhs, chain_convention_note);
  if (b <= 3) {
    const SummationResult rec = g_value_recursive(spec, q, policy);
    rep.cross_value = rec.value;
    rep.cross_diff = std::abs(rec.value - lhs.value);
    rep.error_estimate += rec.abs_error_estimate;
    rep.converged = rep.converged && rec.converged;
  }
  return rep;
}

ChainConventionVerdict resolve_chain_convention(QParam q, const TruncationPolicy& policy) {
  const std::vector<GSpec> specs = {{0, 2, {}, Complex(4)}, {1, 2, {Complex(2)}, Complex(4.5)}};
  ChainConventionVerdict v;
  for (const auto& spec : specs) {
    const Complex rec = g_value_recursive(spec, q, policy).value;
    v.residual_b_minus_1 = std::max(v.residual_b_minus_1, std::abs(g_closed_form(spec, q, policy, ChainLength::b_minus_1).value - rec));
    v.residual_b_minus_2 = std::max(v.residual_b_minus_2, std::abs(g_closed_form(spec, q, policy, ChainLength::b_minus_2).value - rec));
  }
  v.winner = v.residual_b_minus_1 <= v.residual_b_minus_2 ? ChainLength::b_minus_1 : ChainLength::b_minus_2;
  return v;
}

}  // namespace qzeta
