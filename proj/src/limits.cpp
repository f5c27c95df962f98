#include "qzeta/limits.hpp"

#include <algorithm>
#include <cmath>

namespace qzeta {

std::vector<QParam> default_q_grid() {
  std::vector<QParam> grid;
  for (int j = 3; j <= 10; ++j) grid.emplace_back(1 - std::ldexp(Real(1), -j));
  return grid;
}

ExtrapolationReport q_to_1_extrapolate(const MultiIndex& index, const std::vector<QParam>& q_grid,
                                       const TruncationPolicy& policy, bool with_reference) {
  if (q_grid.size() < 3) throw ArgumentError("extrapolation needs at least three q values");
  std::vector<QParam> grid = q_grid;
  std::sort(grid.begin(), grid.end(), [](QParam a, QParam b) { return a.value() < b.value(); });
  if (grid.back().value() > 1 - std::ldexp(Real(1), -10)) throw ArgumentError("q above 1 - 2^-10 is not supported");
  ExtrapolationReport rep;
  for (const QParam q : grid) {
    const SummationResult z = zeta_q(index, q, policy);
    if (!z.converged) rep.warnings.push_back("zeta_q did not converge at q=" + std::to_string(q.value()));
    rep.estimates.emplace_back(q.value(), z.value);
  }
  const std::size_t n = grid.size();
  std::vector<Real> eps(n);
  std::vector<Complex> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps[i] = 1 - rep.estimates[i].first;
    p[i] = rep.estimates[i].second;
  }
  // Neville tableau evaluated at eps = 0
  Complex without_first{};
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) p[i] = (eps[i] * p[i + 1] - eps[i + k] * p[i]) / (eps[i] - eps[i + k]);
    if (k == n - 2) without_first = p[1];
  }
  rep.extrapolated = p[0];
  rep.error_estimate = std::abs(p[0] - without_first);

  const Complex f0 = rep.estimates[n - 3].second, f1 = rep.estimates[n - 2].second, f2 = rep.estimates[n - 1].second;
  const Real d1 = std::abs(f1 - f0), d2 = std::abs(f2 - f1);
  rep.observed_order = (d1 > 0 && d2 > 0) ? std::log(d1 / d2) / std::log(eps[n - 3] / eps[n - 2]) : 0;
  if (rep.observed_order < 0.5) rep.warnings.push_back("observed order below 0.5; extrapolation unreliable");
  if (with_reference && convergence_margin(index, grid.front()).admissible_integer)
    rep.reference = mzv_reference(index);
  return rep;
}

namespace {

// sum_{n > N} n^{-k}, Euler-Maclaurin
Real power_tail(Real N, int k) {
  return std::pow(N, 1 - k) / (k - 1) - std::pow(N, -k) / 2 + k * std::pow(N, -k - 1) / 12;
}

}  // namespace

Complex mzv_reference(const MultiIndex& index, std::int64_t precision_terms) {
  if (!convergence_margin(index, QParam(0.5)).admissible_integer)
    throw ArgumentError("mzv_reference requires an admissible index");
  if (precision_terms < 10) throw ArgumentError("precision_terms too small");
  const std::size_t r = index.depth();
  std::vector<int> k(r);
  for (std::size_t j = 0; j < r; ++j) k[j] = static_cast<int>(index[j].real());
  // P[j] = sum over n_1 < ... < n_j <= current n
  std::vector<NeumaierSum> P(r + 1);
  std::vector<Real> cur(r + 1, 0);
  cur[0] = 1;
  for (std::int64_t n = 1; n <= precision_terms; ++n) {
    const auto nr = static_cast<Real>(n);
    for (std::size_t j = r; j >= 1; --j) {
      P[j].add(Complex(std::pow(nr, -k[j - 1]) * cur[j - 1]));
      cur[j] = P[j].value().real();
    }
  }
  // tail: the last j variables exceed N, the first r-j are summed exactly
  // (cur[r-j]); the j-fold sum is replaced by its iterated integral
  // N^{j-K_j} / prod_{i<=j} (K_i - i), K_i = sum of the last i entries,
  // with Euler-Maclaurin corrections for j = 1
  const auto N = static_cast<Real>(precision_terms);
  Real tail = cur[r - 1] * power_tail(N, k[r - 1]);
  int K = k[r - 1];
  Real denom = K - 1;
  for (std::size_t j = 2; j <= r; ++j) {
    K += k[r - j];
    denom *= K - static_cast<int>(j);
    tail += cur[r - j] * std::pow(N, static_cast<Real>(j) - K) / denom;
  }
  return Complex(cur[r] + tail);
}

}  // namespace qzeta
