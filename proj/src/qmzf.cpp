#include "qzeta/qmzf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qzeta {

MultiIndex::MultiIndex(std::vector<Complex> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ArgumentError("multi-index must have depth >= 1");
  for (const auto& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) throw ArgumentError("multi-index entries must be finite");
}

MultiIndex MultiIndex::conj() const {
  std::vector<Complex> c;
  c.reserve(entries_.size());
  for (const auto& e : entries_) c.push_back(std::conj(e));
  return MultiIndex(std::move(c));
}

DomainReport convergence_margin(const MultiIndex& index, QParam q) {
  DomainReport rep;
  const std::size_t r = index.depth();
  Real tail = 0;
  rep.margin = std::numeric_limits<Real>::infinity();
  for (std::size_t k = 1; k <= r; ++k) {
    tail += index[r - k].real();
    rep.margin = std::min(rep.margin, tail - static_cast<Real>(k));
  }
  rep.in_domain = rep.margin > 0;
  rep.pole_distance = pole_distance(index, q);
  rep.admissible_integer = true;
  for (std::size_t j = 0; j < r; ++j) {
    const Complex e = index[j];
    const bool pos_int = e.imag() == 0 && e.real() >= 1 && std::floor(e.real()) == e.real();
    if (!pos_int) rep.admissible_integer = false;
  }
  if (rep.admissible_integer && index[r - 1].real() < 2) rep.admissible_integer = false;
  return rep;
}

Real lattice_distance(Complex z, Real n_max, Real period, bool exclude_real_axis) {
  const Real x = z.real(), y = z.imag();
  const Real dx = x >= n_max ? x - n_max : std::abs(x - std::round(x));
  const Real k = std::round(y / period);
  Real dy = std::abs(y - k * period);
  if (exclude_real_axis && k == 0) dy = std::min(std::abs(y - period), std::abs(y + period));
  return std::hypot(dx, dy);
}

Real depth1_pole_distance(Complex s, QParam q) {
  const Real period = q.period();
  const Real k = std::round(s.imag() / period);
  const Real d_one = std::hypot(s.real() - 1, s.imag() - k * period);
  return std::min(d_one, lattice_distance(s, 0, period, true));
}

Real pole_distance(const MultiIndex& index, QParam q) {
  const std::size_t r = index.depth();
  Real best = depth1_pole_distance(index[r - 1], q);
  Complex tail = index[r - 1];
  for (std::size_t k = 2; k <= r; ++k) {
    tail += index[r - k];
    best = std::min(best, lattice_distance(tail, static_cast<Real>(k), q.period()));
  }
  return best;
}

namespace {

// DP over prefix sums S_j(M) = sum_{n<M} t_j(n) S_{j-1}(n), S_0 = 1.
class NestedSum {
 public:
  NestedSum(const MultiIndex& index, QParam q) : s_(index.entries()), q_(q), levels_(s_.size()), logs_(s_.size()) {
    levels_[0].add_exp(Complex{});
    // outer terms vanish until M reaches the depth
    for (std::size_t m = 1; m < s_.size(); ++m) advance();
  }

  std::int64_t next_index() const { return m_; }

  /// Outer term t_r(M) S_{r-1}(M) at the current M, then moves to M+1.
  Complex next() {
    compute_logs();
    const Complex t = levels_.back().value_times_exp(logs_.back());
    update_levels();
    ++m_;
    return t;
  }

 private:
  void compute_logs() {
    const Real lq = static_cast<Real>(m_) * q_.log_q();
    const Real lm = log_q_int(m_, q_);
    for (std::size_t j = 0; j < s_.size(); ++j) logs_[j] = (s_[j] - Real(1)) * lq - s_[j] * lm;
  }
  void update_levels() {
    for (std::size_t j = s_.size() - 1; j >= 1; --j) levels_[j].add_product(logs_[j - 1], levels_[j - 1]);
  }
  void advance() {
    compute_logs();
    update_levels();
    ++m_;
  }

  std::vector<Complex> s_;
  QParam q_;
  std::vector<ScaledSum> levels_;
  std::vector<Complex> logs_;
  std::int64_t m_ = 1;
};

void check_zeta_args(const MultiIndex& index, QParam q) {
  const DomainReport rep = convergence_margin(index, q);
  if (!rep.in_domain) throw DomainError("out of convergence domain");
  if (rep.pole_distance < pole_guard) throw PoleProximityError("pole proximity");
}

}  // namespace

SummationResult zeta_q(const MultiIndex& index, QParam q, const TruncationPolicy& policy) {
  policy.validate();
  check_zeta_args(index, q);
  NestedSum engine(index, q);
  return series_sum([&](std::int64_t) { return engine.next(); }, policy);
}

Complex zeta_q_partial(const MultiIndex& index, QParam q, std::int64_t n_max) {
  NestedSum engine(index, q);
  NeumaierSum acc;
  while (engine.next_index() <= n_max) acc.add(engine.next());
  return acc.value();
}

SummationResult zeta_q_one_cont(Complex s, QParam q, const TruncationPolicy& policy) {
  policy.validate();
  if (depth1_pole_distance(s, q) < pole_guard) throw PoleProximityError("pole proximity");
  if (s.real() > 2) return zeta_q(MultiIndex{s}, q, policy);
  // (1-q)^s sum_k binom(s+k-1, k) q^{s-1+k}/(1-q^{s-1+k})
  const Real lq = q.log_q();
  Complex coef{1};
  auto term = [&](std::int64_t n) -> Complex {
    const auto k = n - 1;
    if (k > 0) coef *= (s + static_cast<Real>(k - 1)) / static_cast<Real>(k);
    if (coef == Complex{}) return {};
    const Complex e = (s - Real(1) + static_cast<Real>(k)) * lq;
    return coef * std::exp(e) / -expm1(e);
  };
  SummationResult res = series_sum(term, policy);
  const Complex pre = std::exp(s * std::log1p(-q.value()));
  res.value *= pre;
  res.abs_error_estimate *= std::abs(pre);
  return res;
}

void check_two_cont_args(Complex s, Complex alpha, QParam q) {
  if (!(s.real() > 1)) throw DomainError("out of convergence domain");
  if (!(alpha.real() > 1)) throw DomainError("out of convergence domain");
  const Real period = q.period();
  const Real k = std::round(s.imag() / period);
  if (std::hypot(s.real() - 2, s.imag() - k * period) < pole_guard) throw PoleProximityError("pole proximity");
  if (depth1_pole_distance(s - Real(1), q) < pole_guard) throw PoleProximityError("pole proximity");
}

SummationResult zeta_q_two_gap(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy) {
  policy.validate();
  check_two_cont_args(s, alpha, q);
  const Real lq = q.log_q();
  bool all_converged = true;
  Real err = 0;
  std::int64_t terms = 0;
  auto outer = [&](std::int64_t j) -> Complex {
    const Real lqj = static_cast<Real>(j) * lq;
    auto inner = [&](std::int64_t m1) -> Complex {
      const Real lx = static_cast<Real>(m1) * lq;
      const Real x = std::exp(lx);
      const Real l1 = std::log1p(-x);
      const Real l2 = std::log1p(-std::exp(lx + lqj));
      return std::exp((s - Real(2)) * lx) * expm1(-s * l1 + alpha * (l1 - l2));
    };
    const SummationResult in = series_sum(inner, policy, SumMode::relative);
    all_converged = all_converged && in.converged;
    const Complex w = std::exp((alpha - Real(1)) * lqj);
    err += std::abs(w) * in.abs_error_estimate;
    terms += in.terms_used;
    return w * in.value;
  };
  SummationResult res = series_sum(outer, policy, SumMode::relative);
  const Complex es = (s - Real(2)) * lq, ea = (alpha - Real(1)) * lq;
  const Complex closed = std::exp(es) / -expm1(es) * std::exp(ea) / -expm1(ea);
  const Complex pre = std::exp(s * std::log1p(-q.value()));
  res.value = pre * (res.value + closed);
  res.abs_error_estimate = std::abs(pre) * (res.abs_error_estimate + err);
  res.converged = res.converged && all_converged;
  res.terms_used += terms;
  return res;
}

SummationResult zeta_q_two_cont(Complex s, Complex alpha, QParam q, const TruncationPolicy& policy) {
  policy.validate();
  check_two_cont_args(s, alpha, q);
  if (std::abs(alpha - Complex(1)) < pole_guard) throw PoleProximityError("pole proximity");
  TruncationPolicy ph = policy, pz = policy;
  ph.tol = policy.tol / (2 * std::max<Real>(1, std::abs(alpha)));
  pz.tol = policy.tol * std::min<Real>(1, std::abs(alpha - Real(1))) / 2;
  const SummationResult h = ramp_kernel_sum(s, alpha, q, ph, RampWeight::plain);
  const SummationResult z1 = zeta_q_one_cont(s - Real(1), q, pz);
  SummationResult res;
  res.value = -alpha * h.value + z1.value / (alpha - Real(1));
  res.abs_error_estimate = std::abs(alpha) * h.abs_error_estimate + z1.abs_error_estimate / std::abs(alpha - Real(1));
  res.terms_used = h.terms_used + z1.terms_used;
  res.converged = h.converged && z1.converged;
  return res;
}

}  // namespace qzeta
