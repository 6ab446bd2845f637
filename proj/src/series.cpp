#include "cogrowth/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cogrowth {

namespace {

bool is_zero(const mpq_class& q) { return sgn(q) == 0; }

}  // namespace

Series multiply(const Series& a, const Series& b, std::size_t order) {
  Series out(order);
  const std::size_t na = std::min(a.order(), order);
  for (std::size_t i = 0; i <= na && i < a.coefficients().size(); ++i) {
    if (is_zero(a[i])) continue;
    const std::size_t nb = std::min(b.order(), order - i);
    for (std::size_t j = 0; j <= nb && j < b.coefficients().size(); ++j) {
      if (is_zero(b[j])) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Series reciprocal(const Series& a, std::size_t order) {
  if (a.coefficients().empty() || is_zero(a[0])) {
    throw std::invalid_argument("series reciprocal needs a nonzero constant term");
  }
  Series out(order);
  const mpq_class inv0 = 1 / a[0];
  out[0] = inv0;
  for (std::size_t n = 1; n <= order; ++n) {
    mpq_class acc = 0;
    for (std::size_t k = 1; k <= n && k <= a.order(); ++k) {
      if (!is_zero(a[k])) acc += a[k] * out[n - k];
    }
    out[n] = -acc * inv0;
  }
  return out;
}

Series square_root(const Series& a, std::size_t order) {
  if (a.coefficients().empty() || a[0] != 1) {
    throw std::invalid_argument("series square root needs constant term 1");
  }
  Series out(order);
  out[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    mpq_class acc = n <= a.order() ? a[n] : mpq_class(0);
    for (std::size_t k = 1; k < n; ++k) {
      if (!is_zero(out[k]) && !is_zero(out[n - k])) acc -= out[k] * out[n - k];
    }
    out[n] = acc / 2;
  }
  return out;
}

Series compose(const Series& outer, const Series& inner, std::size_t order) {
  if (!inner.coefficients().empty() && !is_zero(inner[0])) {
    throw std::invalid_argument("inner series must have zero constant term");
  }
  // Terms of outer beyond `order` cannot contribute since inner = O(z).
  const std::size_t top = std::min(outer.order(), order);
  Series acc(order);
  for (std::size_t k = top + 1; k-- > 0;) {
    acc = multiply(acc, inner, order);
    acc[0] += outer[k];
  }
  return acc;
}

SeriesPoly reduced_from_cogrowth(const SeriesPoly& d) {
  if (d.p < 1) throw std::invalid_argument("p must be >= 1");
  const std::size_t N = d.series.order();
  const mpq_class a(2 * d.p - 1);

  Series denom(2);  // 1 + (2p-1) z^2
  denom[0] = 1;
  denom[2] = a;
  const Series inv = reciprocal(denom, N);

  Series z(1);
  z[1] = 1;
  const Series inner = multiply(z, inv, N);

  Series num(2);  // 1 - z^2
  num[0] = 1;
  num[2] = -1;
  const Series prefactor = multiply(num, inv, N);

  return {multiply(prefactor, compose(d.series, inner, N), N), d.p};
}

SeriesPoly cogrowth_from_reduced(const SeriesPoly& c) {
  if (c.p < 1) throw std::invalid_argument("p must be >= 1");
  const std::size_t N = c.series.order();
  const mpq_class a(2 * c.p - 1);
  const mpq_class p(c.p);

  Series radicand(2);  // 1 - 4(2p-1) z^2
  radicand[0] = 1;
  radicand[2] = -4 * a;
  const Series root = square_root(radicand, N + 1);

  // (1 - root) / (2 a z): 1 - root has zero constant and linear terms.
  Series inner(N);
  for (std::size_t n = 0; n <= N; ++n) inner[n] = -root[n + 1] / (2 * a);
  inner[0] = 0;

  Series top(N);  // 1 - p + p root
  for (std::size_t n = 0; n <= N; ++n) top[n] = p * root[n];
  top[0] += 1 - p;

  Series bottom(2);  // 1 - 4p^2 z^2
  bottom[0] = 1;
  bottom[2] = -4 * p * p;
  const Series prefactor = multiply(top, reciprocal(bottom, N), N);

  return {multiply(prefactor, compose(c.series, inner, N), N), c.p};
}

namespace {

// Scans k upward from `start`; `passes(k)` says whether the ratio at k
// clears the threshold, `usable(k)` whether a_{2k} can be divided by.
template <typename Passes, typename Usable>
RFunctionTable scan_r(std::size_t horizon, std::size_t n_max, Passes passes, Usable usable) {
  RFunctionTable table;
  table.values.reserve(n_max);
  std::vector<bool> noted(horizon + 1, false);
  std::size_t k = 0;
  bool beyond = false;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!beyond) {
      for (;; ++k) {
        if (k + 1 > horizon) {
          beyond = true;
          break;
        }
        if (!usable(k)) {
          if (!noted[k]) {
            table.notes.push_back("coefficient " + std::to_string(2 * k) +
                                  " is not positive; k = " + std::to_string(k) + " skipped");
            noted[k] = true;
          }
          continue;
        }
        if (passes(k, n)) break;
      }
    }
    if (beyond) {
      table.values.push_back(std::nullopt);
    } else {
      table.values.push_back(static_cast<std::int64_t>(k));
    }
  }
  return table;
}

}  // namespace

RFunctionTable r_function(std::span<const mpq_class> coeffs, const mpq_class& limit_root_squared,
                          std::size_t n_max) {
  // a_{2k+2} must exist: 2k + 2 <= size - 1.
  const std::size_t horizon = coeffs.size() >= 3 ? (coeffs.size() - 1) / 2 : 0;
  auto usable = [&](std::size_t k) { return sgn(coeffs[2 * k]) > 0; };
  auto passes = [&](std::size_t k, std::size_t n) {
    // a_{2k+2} / a_{2k} > L - 1/n  <=>  n a_{2k+2} > (n L - 1) a_{2k}
    const mpq_class nn(static_cast<unsigned long>(n));
    return nn * coeffs[2 * k + 2] > (nn * limit_root_squared - 1) * coeffs[2 * k];
  };
  auto table = scan_r(horizon, n_max, passes, usable);
  table.limit_root_squared = limit_root_squared.get_d();
  return table;
}

RFunctionTable r_function_log(std::span<const double> log_coeffs, double limit_root_squared,
                              std::size_t n_max) {
  const std::size_t horizon = log_coeffs.size() >= 3 ? (log_coeffs.size() - 1) / 2 : 0;
  auto usable = [&](std::size_t k) { return std::isfinite(log_coeffs[2 * k]); };
  auto passes = [&](std::size_t k, std::size_t n) {
    const double threshold = limit_root_squared - 1.0 / static_cast<double>(n);
    if (threshold <= 0.0) return true;
    return log_coeffs[2 * k + 2] - log_coeffs[2 * k] > std::log(threshold);
  };
  auto table = scan_r(horizon, n_max, passes, usable);
  table.limit_root_squared = limit_root_squared;
  return table;
}

std::vector<double> model_cogrowth(double q, double p, std::size_t max_len) {
  if (!(q > 0.0)) throw std::invalid_argument("model q must be positive");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("model p must lie in (0, 1)");
  std::vector<double> out(max_len + 1);
  const double log3 = std::log(3.0);
  for (std::size_t n = 0; n <= max_len; ++n) {
    const double x = static_cast<double>(n);
    out[n] = (x - q * std::pow(x, p)) * log3;
  }
  return out;
}

std::vector<double> model_curve(double q, double p, double alpha, double beta, std::size_t max_len) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  auto out = model_cogrowth(q, p, max_len);
  for (std::size_t n = 0; n <= max_len; ++n) {
    const double x = static_cast<double>(n);
    out[n] += (1.0 + alpha) * std::log(x + 1.0) + x * std::log(beta);
  }
  return out;
}

std::vector<std::size_t> interior_maxima(std::span<const double> curve, std::size_t first) {
  std::vector<std::size_t> out;
  for (std::size_t n = first + 1; n + 1 < curve.size(); ++n) {
    if (curve[n] > curve[n - 1] && curve[n] > curve[n + 1]) out.push_back(n);
  }
  return out;
}

}  // namespace cogrowth
