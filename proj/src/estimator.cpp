#include "cogrowth/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cogrowth {

Tally wn_with_error(const WalkRecord& record, std::size_t n, std::uint32_t burn_in) {
  const auto segments = static_cast<std::uint32_t>(record.segment_histograms.size());
  if (segments < burn_in + 2) {
    throw std::invalid_argument("need at least two segments after burn-in");
  }
  const double m = segments - burn_in;
  double sum = 0.0;
  for (std::uint32_t i = burn_in; i < segments; ++i) sum += static_cast<double>(record.tally(i, n));
  Tally t;
  t.mean = sum / m;
  if (sum == 0.0) return t;
  double ss = 0.0;
  for (std::uint32_t i = burn_in; i < segments; ++i) {
    const double d = static_cast<double>(record.tally(i, n)) - t.mean;
    ss += d * d;
  }
  t.error = std::sqrt((ss / m) / (m - 1.0));
  t.usable = true;
  return t;
}

double CogrowthEstimate::value() const { return std::exp(log_value); }

CogrowthEstimate base_estimate() { return CogrowthEstimate{0, 0.0, 0.0, {}, 0}; }

namespace {

double log_ratio_factor(std::size_t n, std::size_t m, double alpha, double beta) {
  return (1.0 + alpha) * (std::log(static_cast<double>(n + 1)) - std::log(static_cast<double>(m + 1))) +
         (static_cast<double>(n) - static_cast<double>(m)) * std::log(beta);
}

CogrowthEstimate candidate(const CogrowthEstimate& anchor, const Tally& wn, const Tally& wm,
                           std::size_t m, double alpha, double beta, std::size_t record_id) {
  CogrowthEstimate out;
  out.n = m;
  out.log_value = anchor.log_value + std::log(wm.mean) - std::log(wn.mean) +
                  log_ratio_factor(anchor.n, m, alpha, beta);
  out.rel_error = anchor.rel_error + wm.error / wm.mean + wn.error / wn.mean;
  out.provenance = anchor.provenance;
  out.provenance.push_back({record_id, anchor.n});
  out.candidates = 1;
  return out;
}

}  // namespace

std::optional<CogrowthEstimate> estimate_from_anchor(const CogrowthEstimate& anchor,
                                                     const WalkRecord& record, std::size_t m,
                                                     std::uint32_t burn_in, std::size_t record_id) {
  const Tally wn = wn_with_error(record, anchor.n, burn_in);
  const Tally wm = wn_with_error(record, m, burn_in);
  if (!wn.usable || !wm.usable) return std::nullopt;
  if (m == anchor.n) return anchor;
  return candidate(anchor, wn, wm, m, record.params.alpha, record.params.beta, record_id);
}

CogrowthEstimate combine_candidates(std::size_t m, std::span<const CogrowthEstimate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to combine");
  CogrowthEstimate out;
  out.n = m;
  out.candidates = candidates.size();

  const bool any_exact = std::any_of(candidates.begin(), candidates.end(),
                                     [](const CogrowthEstimate& c) { return c.rel_error == 0.0; });
  std::vector<double> weights(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double e = candidates[i].rel_error;
    weights[i] = any_exact ? (e == 0.0 ? 1.0 : 0.0) : 1.0 / e;
  }
  double wsum = 0.0;
  double lmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (weights[i] > 0.0) lmax = std::max(lmax, candidates[i].log_value);
    wsum += weights[i];
  }
  double acc = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (weights[i] == 0.0) continue;
    acc += weights[i] * std::exp(candidates[i].log_value - lmax);
    err += weights[i] * candidates[i].rel_error;
    for (const auto& p : candidates[i].provenance) out.provenance.push_back(p);
  }
  out.log_value = lmax + std::log(acc / wsum);
  out.rel_error = err / wsum;
  return out;
}

void EstimatorOptions::validate() const {
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw std::invalid_argument("cutoff must lie in (0, 1)");
  for (const auto& [n, v] : anchors) {
    if (!(v > 0.0)) throw std::invalid_argument("anchor values must be positive");
  }
}

EstimateTable errr_estimate(std::span<const WalkRecord> records, const EstimatorOptions& options) {
  options.validate();
  if (records.empty()) throw std::invalid_argument("need at least one walk record");

  const bool even = std::all_of(records.begin(), records.end(),
                                [](const WalkRecord& r) { return r.parity_even; });
  const std::size_t stride = even ? 2 : 1;

  // Tallies per record, with the cutoff already applied.
  struct Prepared {
    std::vector<Tally> tallies;
    double alpha = 0.0;
    double beta = 0.0;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(records.size());
  for (const auto& rec : records) {
    Prepared p;
    p.alpha = rec.params.alpha;
    p.beta = rec.params.beta;
    const std::size_t top = std::min(rec.histogram.size(), options.max_len + 1);
    double height = 0.0;
    for (std::size_t n = 0; n < rec.histogram.size(); ++n) {
      height = std::max(height, wn_with_error(rec, n, options.burn_in_segments).mean);
    }
    p.tallies.resize(top);
    for (std::size_t n = 0; n < top; ++n) {
      Tally t = wn_with_error(rec, n, options.burn_in_segments);
      if (t.mean < options.cutoff * height) t.usable = false;
      p.tallies[n] = t;
    }
    prepared.push_back(std::move(p));
  }
  auto tally = [&](std::size_t r, std::size_t n) -> const Tally* {
    const auto& t = prepared[r].tallies;
    return n < t.size() && t[n].usable ? &t[n] : nullptr;
  };

  EstimateTable table;
  std::vector<std::optional<CogrowthEstimate>> known(options.max_len + 1);
  known[0] = base_estimate();
  table.estimates.push_back(*known[0]);
  std::size_t last = 0;

  std::vector<CogrowthEstimate> candidates;
  for (std::size_t m = stride; m <= options.max_len; m += stride) {
    if (auto it = options.anchors.find(m); it != options.anchors.end()) {
      known[m] = CogrowthEstimate{m, std::log(it->second), 0.0, {}, 0};
      table.estimates.push_back(*known[m]);
      last = m;
      continue;
    }
    if (!options.chain && m - last >= options.window) {
      // Only a supplied anchor further on can restart the recursion.
      if (options.anchors.upper_bound(m) != options.anchors.end()) continue;
      table.halted_at = m;
      break;
    }
    candidates.clear();
    const std::size_t lo = options.chain ? last : (m > options.window ? m - options.window + 1 : 0);
    for (std::size_t r = 0; r < prepared.size(); ++r) {
      const Tally* wm = tally(r, m);
      if (!wm) continue;
      for (std::size_t n = lo; n < m; ++n) {
        if (!known[n]) continue;
        const Tally* wn = tally(r, n);
        if (!wn) continue;
        candidates.push_back(candidate(*known[n], *wn, *wm, m, prepared[r].alpha, prepared[r].beta, r));
      }
    }
    if (candidates.empty()) continue;
    CogrowthEstimate est = combine_candidates(m, candidates);
    // Provenance keeps only the direct (record, anchor) pairs.
    est.provenance.clear();
    for (const auto& c : candidates) est.provenance.push_back(c.provenance.back());
    known[m] = est;
    table.estimates.push_back(std::move(est));
    last = m;
  }

  table.last_completed = last;
  const std::size_t final_m = options.max_len - (options.max_len % stride);
  table.complete = !table.halted_at && last == final_m;
  return table;
}

std::vector<GammaEstimate> gamma_series(std::span<const CogrowthEstimate> estimates) {
  std::vector<GammaEstimate> out;
  for (const auto& e : estimates) {
    if (e.n == 0) continue;
    const double n = static_cast<double>(e.n);
    const double g = std::exp(e.log_value / n);
    out.push_back({e.n, g, g * e.rel_error / n});
  }
  return out;
}

}  // namespace cogrowth
