// Brute-force reference implementations used by the tests. Everything here is
// written directly from the definitions, with plain loops and no reuse of the
// library's summation engines.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline double qint(std::int64_t m, double q) { return (1 - std::pow(q, static_cast<double>(m))) / (1 - q); }

inline C qterm(C s, std::int64_t n, double q) {
  return std::pow(C(q), (s - 1.0) * static_cast<double>(n)) / std::pow(C(qint(n, q)), s);
}

/// sum over 0 < n_1 < ... < n_r <= N of prod_j q^{(s_j-1)n_j}/[n_j]^{s_j}
inline C zeta(const std::vector<C>& s, double q, std::int64_t N) {
  const std::size_t r = s.size();
  std::vector<std::vector<C>> table(r, std::vector<C>(N + 1));
  for (std::size_t j = 0; j < r; ++j)
    for (std::int64_t n = 1; n <= N; ++n) table[j][n] = qterm(s[j], n, q);
  std::complex<long double> acc = 0;
  std::function<void(std::size_t, std::int64_t, C)> rec = [&](std::size_t j, std::int64_t lo, C prod) {
    if (j == r) {
      acc += std::complex<long double>(prod);
      return;
    }
    for (std::int64_t n = lo; n <= N; ++n) rec(j + 1, n + 1, prod * table[j][n]);
  };
  rec(0, 1, C(1));
  return C(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

/// sum over lo <= x_1 <= ... <= x_L <= hi of prod q^{x_j}/[x_j]
inline double chain(std::int64_t lo, std::int64_t hi, int L, double q) {
  if (L == 0) return 1;
  long double acc = 0;
  std::function<void(int, std::int64_t, long double)> rec = [&](int j, std::int64_t from, long double prod) {
    if (j == L) {
      acc += prod;
      return;
    }
    for (std::int64_t x = from; x <= hi; ++x) rec(j + 1, x, prod * std::pow(q, static_cast<double>(x)) / qint(x, q));
  };
  rec(0, lo, 1);
  return static_cast<double>(acc);
}

/// F-series with every summation index <= N. f2_on_t selects the weight
/// q^{(s-d-2)t} (true) or q^{(s-d-2)m} (false) for the second series.
inline C f_series(int i, int D, C s, int d, double q, std::int64_t N, bool f2_on_t = true) {
  const C sd = s - static_cast<double>(d);
  auto pw = [&](C e, std::int64_t x) { return std::pow(C(q), e * static_cast<double>(x)); };
  auto br = [&](C e, std::int64_t x) { return std::pow(C(qint(x, q)), e); };
  C acc = 0;
  if (i == 0) {
    for (std::int64_t m = D + 1; m <= N; ++m) acc += pw(sd - 1.0, m) / br(sd, m) * chain(m - D, m, d, q);
    return acc;
  }
  for (std::int64_t t = D + 1; t <= N; ++t) {
    for (std::int64_t m = t + 1; m <= N; ++m) {
      const double c = chain(m - t, m, d, q);
      const double w_diff = std::pow(q, static_cast<double>(m - t)) / qint(m - t, q);
      const double w_m = std::pow(q, static_cast<double>(m)) / qint(m, q);
      C term;
      if (i == 1) {
        term = pw(sd - 2.0, t) / br(sd - 1.0, t) * w_diff;
      } else if (i == 2) {
        term = (f2_on_t ? pw(sd - 2.0, t) : pw(sd - 2.0, m)) / br(sd - 1.0, t) * w_m;
      } else {
        term = pw(sd - 2.0, m) / br(sd - 1.0, m) * w_diff;
      }
      acc += term * c;
    }
  }
  return acc;
}

/// Smallest [n]_q not exceeding x, by scanning n upward.
inline double lbag_scan(double x, double q) {
  std::int64_t n = 0;
  while (qint(n + 1, q) <= x) ++n;
  return qint(n, q);
}

/// Distance from z to the points re + i*period*k, re <= re_max, |k| <= k_max;
/// k = 0 skipped when skip_real_axis is set.
inline double lattice_distance(C z, int re_max, double period, int k_max, bool skip_real_axis = false) {
  double best = INFINITY;
  for (int re = re_max; re >= re_max - 200; --re)
    for (int k = -k_max; k <= k_max; ++k) {
      if (skip_real_axis && k == 0) continue;
      best = std::min(best, std::abs(z - C(re, period * k)));
    }
  return best;
}

/// Composite Simpson rule with n (even) panels.
inline C simpson(const std::function<C(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  C acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * (h / 3);
}

}  // namespace oracle
