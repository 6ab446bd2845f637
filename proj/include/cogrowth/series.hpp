#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cogrowth {

/// Truncated power series sum_{n<=N} a_n z^n with exact rational coefficients.
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t order) : coeffs_(order + 1) {}
  explicit Series(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t order() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const mpq_class& operator[](std::size_t i) const { return coeffs_[i]; }
  mpq_class& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::vector<mpq_class> coeffs_;
};

Series multiply(const Series& a, const Series& b, std::size_t order);
/// 1 / a; requires a[0] != 0.
Series reciprocal(const Series& a, std::size_t order);
/// Principal square root; requires a[0] == 1.
Series square_root(const Series& a, std::size_t order);
/// outer(inner(z)) by Horner's rule; requires inner[0] == 0.
Series compose(const Series& outer, const Series& inner, std::size_t order);

/// A cogrowth-type series together with p = |S| / 2.
struct SeriesPoly {
  Series series;
  unsigned p = 1;
};

/// C(z) = (1 - z^2) / (1 + (2p-1) z^2) * D(z / (1 + (2p-1) z^2)).
SeriesPoly reduced_from_cogrowth(const SeriesPoly& d);

/// D(z) = (1 - p + p sqrt(1 - 4(2p-1) z^2)) / (1 - 4p^2 z^2)
///        * C((1 - sqrt(1 - 4(2p-1) z^2)) / (2(2p-1) z)).
/// The division by z is done as a coefficient shift of a series whose
/// constant and linear terms vanish.
SeriesPoly cogrowth_from_reduced(const SeriesPoly& c);

/// R(n) / R'(n) for n = 1..n_max. nullopt marks BEYOND-HORIZON.
struct RFunctionTable {
  std::vector<std::optional<std::int64_t>> values;  // values[n-1] = R(n)
  double limit_root_squared = 0.0;
  std::vector<std::string> notes;

  std::optional<std::int64_t> at(std::size_t n) const { return values.at(n - 1); }
};

/// R(n) = min{k : a_{2k+2} / a_{2k} > L - 1/n} over exact coefficients, k
/// limited by the available data. Zero a_{2k} are skipped with a note.
RFunctionTable r_function(std::span<const mpq_class> coeffs, const mpq_class& limit_root_squared,
                          std::size_t n_max);

/// Same, with coefficients given as natural logs (-inf for zero).
RFunctionTable r_function_log(std::span<const double> log_coeffs, double limit_root_squared,
                              std::size_t n_max);

/// log c_n = (n - q n^p) log 3 for n = 0..max_len.
std::vector<double> model_cogrowth(double q, double p, std::size_t max_len);

/// log(c_n (n+1)^(1+alpha) beta^n) for the model coefficients.
std::vector<double> model_curve(double q, double p, double alpha, double beta, std::size_t max_len);

/// Indices n in (first, last) where the curve has a strict local maximum.
std::vector<std::size_t> interior_maxima(std::span<const double> curve, std::size_t first = 1);

}  // namespace cogrowth
