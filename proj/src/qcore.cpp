#include "qzeta/qcore.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace qzeta {

QParam::QParam(Real q) : q_(q), log_q_(0) {
  if (!(q > 0 && q < 1)) throw ArgumentError("q must satisfy 0 < q < 1");
  log_q_ = std::log(q);
}

void TruncationPolicy::validate() const {
  if (!(tol > 0)) throw ArgumentError("tol must be positive");
  if (stall_window < 1) throw ArgumentError("stall_window must be >= 1");
  if (max_outer < stall_window) throw ArgumentError("max_outer must be >= stall_window");
  if (quad_order < 2) throw ArgumentError("quad_order must be >= 2");
  if (tail_fit_window < 2) throw ArgumentError("tail_fit_window must be >= 2");
}

Real q_int(std::int64_t m, QParam q) {
  return -std::expm1(static_cast<Real>(m) * q.log_q()) / -std::expm1(q.log_q());
}

Real log_q_int(std::int64_t m, QParam q) {
  return std::log(-std::expm1(static_cast<Real>(m) * q.log_q())) - std::log(-std::expm1(q.log_q()));
}

Complex log_q_term(Complex s, std::int64_t n, QParam q) {
  return (s - Real(1)) * (static_cast<Real>(n) * q.log_q()) - s * log_q_int(n, q);
}

Complex q_term(Complex s, std::int64_t n, QParam q) { return std::exp(log_q_term(s, n, q)); }

std::int64_t lbag_index(Real x, QParam q) {
  const Real qv = q.value();
  if (!(x >= 0) || !(x < 1 / (1 - qv))) throw DomainError("lbag: x outside [0, 1/(1-q))");
  const Real arg = 1 - (1 - qv) * x;
  auto n = static_cast<std::int64_t>(std::floor(std::log(arg) / q.log_q()));
  if (n < 0) n = 0;
  // the floor of the log ratio can be off by one at piece boundaries
  auto qi = [&](std::int64_t k) { return k == 0 ? Real(0) : q_int(k, q); };
  while (n > 0 && qi(n) > x) --n;
  while (qi(n + 1) <= x) ++n;
  return n;
}

Real lbag(Real x, QParam q) {
  const std::int64_t n = lbag_index(x, q);
  return n == 0 ? Real(0) : q_int(n, q);
}

namespace {

// suffix recurrence c_l(lo) = c_l(lo+1) + w(lo) c_{l-1}(lo) on [lo_min, hi]
std::vector<Real> chain_range(std::int64_t lo_min, std::int64_t hi, int L, QParam q) {
  const auto n = static_cast<std::size_t>(hi - lo_min + 1);
  std::vector<Real> c(n, 1);
  if (L == 0) return c;
  std::vector<Real> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = lo_min + static_cast<std::int64_t>(i);
    w[i] = std::exp(static_cast<Real>(x) * q.log_q() - log_q_int(x, q));
  }
  for (int l = 1; l <= L; ++l) {
    Real run = 0;
    for (std::size_t i = n; i-- > 0;) {
      run += w[i] * c[i];
      c[i] = run;
    }
  }
  return c;
}

}  // namespace

std::vector<Real> chain_suffix_sums(std::int64_t hi, int L, QParam q) {
  if (hi < 1) return {};
  return chain_range(1, hi, L, q);
}

Real chain_sum(std::int64_t lo, std::int64_t hi, int L, QParam q) {
  if (lo < 1) lo = 1;
  if (lo > hi) return L == 0 ? 1 : 0;
  return chain_range(lo, hi, L, q).front();
}

Complex expm1(Complex z) {
  const Real a = z.real(), b = z.imag();
  const Real sh = std::sin(b / 2);
  return {std::expm1(a) * std::cos(b) - 2 * sh * sh, std::exp(a) * std::sin(b)};
}

Complex log_gamma(Complex z) {
  // shift to Re z >= 10, then Stirling; logs of the shift factors are summed
  // individually so the branch stays continuous for Re z > 0
  Complex shift{};
  while (z.real() < 10) {
    shift += std::log(z);
    z += Real(1);
  }
  static constexpr std::array<Real, 8> b2k = {1.0 / 6,        -1.0 / 30,   1.0 / 42,       -1.0 / 30,
                                              5.0 / 66,       -691.0 / 2730, 7.0 / 6,      -3617.0 / 510};
  const Complex zinv = Real(1) / z, zinv2 = zinv * zinv;
  Complex series{};
  Complex zp = zinv;
  for (std::size_t k = 1; k <= b2k.size(); ++k) {
    series += b2k[k - 1] / static_cast<Real>((2 * k) * (2 * k - 1)) * zp;
    zp *= zinv2;
  }
  return (z - Real(0.5)) * std::log(z) - z + Real(0.5) * std::log(2 * pi) + series - shift;
}

Complex beta_fn(Complex x, Complex y) {
  if (!(x.real() > 0) || !(y.real() > 0)) throw DomainError("beta_fn requires Re(x) > 0 and Re(y) > 0");
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

// ---- ScaledSum ----

void ScaledSum::normalize() {
  const Real big = std::max({std::abs(s_re_), std::abs(s_im_)});
  if (big == 0 || !std::isfinite(big)) return;
  int e = 0;
  std::frexp(big, &e);
  if (e == 0) return;
  s_re_ = std::ldexp(s_re_, -e);
  c_re_ = std::ldexp(c_re_, -e);
  s_im_ = std::ldexp(s_im_, -e);
  c_im_ = std::ldexp(c_im_, -e);
  exp2_ += e;
}

void ScaledSum::add_scaled(Complex mant, std::int64_t exp2) {
  if (mant == Complex{}) return;
  if (zero_) {
    s_re_ = mant.real();
    s_im_ = mant.imag();
    c_re_ = c_im_ = 0;
    exp2_ = exp2;
    zero_ = false;
    normalize();
    return;
  }
  if (exp2 > exp2_) {
    // rebase the accumulator to the incoming exponent; exact power-of-two shifts
    const auto d = static_cast<int>(std::max<std::int64_t>(exp2_ - exp2, -2000));
    s_re_ = std::ldexp(s_re_, d);
    c_re_ = std::ldexp(c_re_, d);
    s_im_ = std::ldexp(s_im_, d);
    c_im_ = std::ldexp(c_im_, d);
    exp2_ = exp2;
  } else {
    const auto d = static_cast<int>(std::max<std::int64_t>(exp2 - exp2_, -2000));
    mant = {std::ldexp(mant.real(), d), std::ldexp(mant.imag(), d)};
  }
  auto add_part = [](Real& sum, Real& comp, Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };
  add_part(s_re_, c_re_, mant.real());
  add_part(s_im_, c_im_, mant.imag());
  normalize();
}

void ScaledSum::add_exp(Complex log_term) {
  const Real k = std::round(log_term.real() / ln2);
  if (!std::isfinite(k)) {
    if (log_term.real() > 0) add_scaled(Complex(std::numeric_limits<Real>::infinity()), 0);
    return;
  }
  add_scaled(std::exp(log_term - Complex(k * ln2)), static_cast<std::int64_t>(k));
}

void ScaledSum::add_product(Complex log_factor, const ScaledSum& other) {
  if (other.zero_) return;
  const Real k = std::round(log_factor.real() / ln2);
  if (!std::isfinite(k)) return;
  const Complex f = std::exp(log_factor - Complex(k * ln2));
  const Complex m{other.s_re_ + other.c_re_, other.s_im_ + other.c_im_};
  add_scaled(f * m, other.exp2_ + static_cast<std::int64_t>(k));
}

Complex ScaledSum::value() const {
  if (zero_) return {};
  const auto e = static_cast<int>(std::clamp<std::int64_t>(exp2_, -4000, 4000));
  return {std::ldexp(s_re_ + c_re_, e), std::ldexp(s_im_ + c_im_, e)};
}

Complex ScaledSum::value_times_exp(Complex log_factor) const {
  if (zero_) return {};
  const Real k = std::round(log_factor.real() / ln2);
  const Complex f = std::exp(log_factor - Complex(k * ln2));
  const Complex m = f * Complex{s_re_ + c_re_, s_im_ + c_im_};
  const auto e = static_cast<int>(std::clamp<std::int64_t>(exp2_ + static_cast<std::int64_t>(k), -4000, 4000));
  return {std::ldexp(m.real(), e), std::ldexp(m.imag(), e)};
}

// ---- tail ratio ----

Real detail::TailRatio::estimate() const {
  if (count < 2) return 0;
  const std::size_t w = std::min(count, ring.size());
  const Real newest = ring[(count - 1) % ring.size()];
  const Real oldest = ring[(count - w) % ring.size()];
  if (!(oldest > 0) || !(newest > 0)) return 0;
  const Real rho = std::pow(newest / oldest, Real(1) / static_cast<Real>(w - 1));
  if (!std::isfinite(rho)) return 0.99;
  return std::clamp<Real>(rho, 0, 0.99);
}

// ---- Gauss-Legendre ----

GaussLegendre::GaussLegendre(int order) : nodes_(static_cast<std::size_t>(order)), weights_(nodes_.size()) {
  if (order < 2) throw ArgumentError("quadrature order must be >= 2");
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(pi * (i + 0.75) / (n + 0.5));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    nodes_[static_cast<std::size_t>(i)] = -x;
    nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
    weights_[static_cast<std::size_t>(i)] = w;
    weights_[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

}  // namespace qzeta
