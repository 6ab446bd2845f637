#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cogrowth/walker.hpp"

namespace cogrowth {

/// Segment-mean visit count and its error bar for one length.
struct Tally {
  double mean = 0.0;   // W_n, mean of x_{i,n} over the segments used
  double error = 0.0;  // ΔW_n
  bool usable = false; // false when no used segment visited n
};

/// W_n = mean_i x_{i,n}; ΔW_n = sqrt(popvar_i{x_{i,n}} / (M-1)), over
/// segments burn_in..M-1.
Tally wn_with_error(const WalkRecord& record, std::size_t n, std::uint32_t burn_in = 0);

struct Provenance {
  std::size_t record = 0;
  std::size_t anchor = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CogrowthEstimate {
  std::size_t n = 0;
  double log_value = 0.0;  // natural log of the estimate of c_n
  double rel_error = 0.0;  // Δc_n / c_n
  std::vector<Provenance> provenance;
  std::size_t candidates = 0;

  double value() const;
};

/// The exactly known starting point c_0 = 1.
CogrowthEstimate base_estimate();

/// c_m ~ c_n (W_m / W_n) ((n+1)/(m+1))^(1+alpha) beta^(n-m), with proportional
/// errors adding. nullopt when either tally is unusable.
std::optional<CogrowthEstimate> estimate_from_anchor(const CogrowthEstimate& anchor,
                                                     const WalkRecord& record, std::size_t m,
                                                     std::uint32_t burn_in = 0,
                                                     std::size_t record_id = 0);

struct EstimatorOptions {
  std::size_t window = 100;
  double cutoff = 0.10;
  std::size_t max_len = 48;
  std::uint32_t burn_in_segments = 1;
  /// Anchor each length only on the most recent estimate (the window is
  /// then ignored): c_10 from c_0, c_12 from c_10, and so on.
  bool chain = false;
  /// Extra exactly known coefficients (n -> c_n); c_0 = 1 is always present.
  std::map<std::size_t, double> anchors;

  void validate() const;
};

struct EstimateTable {
  std::vector<CogrowthEstimate> estimates;  // increasing n, includes c_0
  std::size_t last_completed = 0;
  bool complete = false;                    // reached max_len without a coverage gap
  std::optional<std::size_t> halted_at;     // m at which no anchor could ever qualify again
};

/// Recursive estimation over increasing m. For each m, every record and every
/// estimated anchor n with m - window < n < m yields a candidate, provided both
/// W_n and W_m are at least cutoff times that record's largest W. Candidates
/// are combined by an inverse-error weighted mean; the combined error is the
/// same weighted mean of the candidate errors.
EstimateTable errr_estimate(std::span<const WalkRecord> records, const EstimatorOptions& options);

struct GammaEstimate {
  std::size_t n = 0;
  double gamma = 0.0;
  double gamma_error = 0.0;
  double lower() const { return gamma - gamma_error; }
  double upper() const { return gamma + gamma_error; }
};

/// gamma_n = c_n^(1/n), Δgamma_n = gamma_n Δc_n / (n c_n). Skips n = 0.
std::vector<GammaEstimate> gamma_series(std::span<const CogrowthEstimate> estimates);

/// Combines candidates for the same length; exposed for testing.
CogrowthEstimate combine_candidates(std::size_t m, std::span<const CogrowthEstimate> candidates);

}  // namespace cogrowth
