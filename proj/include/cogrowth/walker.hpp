#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cogrowth/presentation.hpp"
#include "cogrowth/word.hpp"

namespace cogrowth {

struct WalkParams {
  double alpha = 0.0;
  double beta = 0.3;
  std::uint64_t steps = 1'000'000;
  std::uint32_t segments = 10;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;  // walk index within a grid
  std::uint64_t stride = 1;
  std::uint64_t max_word_length = 1'000'000;

  /// Throws std::invalid_argument when the parameters are unusable.
  void validate() const;
};

/// Counter-based 64-bit stream keyed by (seed, stream): output i is the
/// SplitMix64 finalizer applied to key + i * golden-gamma. Bounded integers
/// use Lemire's multiply-shift with rejection; doubles take the top 53 bits.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() noexcept { return mix(key_ + (++counter_) * kGamma); }
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Uniform on the open interval (0, 1).
  double open01() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Acceptance probabilities min{1, exp(log_acceptance)} tabulated per
/// (current length, length change) for lengths below kRows; longer words fall
/// back to direct evaluation.
class AcceptanceTable {
 public:
  AcceptanceTable(double alpha, double beta, std::size_t max_delta);

  double conjugation(std::size_t from, std::size_t to) { return lookup(conj_, 1.0 + alpha_, from, to); }
  double insertion(std::size_t from, std::size_t to) { return lookup(ins_, alpha_, from, to); }

 private:
  static constexpr std::size_t kRows = 1 << 16;
  double lookup(std::vector<double>& table, double exponent, std::size_t from, std::size_t to);
  double evaluate(double exponent, std::size_t from, std::size_t to) const;

  double alpha_;
  double log_beta_;
  std::size_t max_delta_;
  std::size_t width_;
  std::size_t rows_ = 0;
  std::vector<double> conj_;
  std::vector<double> ins_;
};

enum class MoveKind : std::uint8_t { conjugation, insertion };

/// Natural log of the Metropolis acceptance ratio for a move changing the
/// word length from `from` to `to`: exponent 1+alpha for conjugation and
/// alpha for insertion, times (to-from) log(beta).
double log_acceptance(MoveKind kind, std::size_t from, std::size_t to, double alpha, double beta);
double acceptance_probability(MoveKind kind, std::size_t from, std::size_t to, double alpha,
                              double beta);

struct MoveOutcome {
  MoveKind kind = MoveKind::conjugation;
  bool rejected_unreduced = false;  // left insertion failed the junction check
  bool accepted = false;
  std::size_t relator = 0;          // index into closed relators (insertions)
  std::size_t old_length = 0;
  std::size_t new_length = 0;       // candidate length
};

struct ProposalStats {
  std::uint64_t conjugations_proposed = 0;
  std::uint64_t conjugations_accepted = 0;
  std::uint64_t insertions_proposed = 0;
  std::uint64_t insertions_unreduced = 0;
  std::uint64_t insertions_accepted = 0;

  friend bool operator==(const ProposalStats&, const ProposalStats&) = default;
};

/// One ERR chain. Proposals are 1/2 conjugation by a uniform letter of S,
/// 1/2 left insertion of a uniform closed relator at a uniform position in
/// 0..|w|. Acceptance tests are done in log space.
class Walker {
 public:
  Walker(const Presentation& presentation, const WalkParams& params);

  MoveOutcome step();

  const Word& word() const noexcept { return word_; }
  const ProposalStats& stats() const noexcept { return stats_; }
  /// Accepted insertions per user relator.
  const std::vector<std::uint64_t>& relator_acceptance() const noexcept { return accepted_by_origin_; }

 private:
  const Presentation& presentation_;
  WalkParams params_;
  Rng rng_;
  AcceptanceTable acceptance_;
  Word word_;
  ProposalStats stats_;
  std::vector<std::uint64_t> accepted_by_origin_;
  unsigned alphabet_size_;
};

enum class WalkStatus { completed, diverged };

struct WalkRecord {
  WalkParams params;
  std::string presentation;  // canonical text
  bool parity_even = true;
  std::vector<std::uint64_t> histogram;                  // W_n
  std::vector<std::vector<std::uint64_t>> segment_histograms;  // x_{i,n}
  std::vector<std::uint64_t> relator_acceptance;
  ProposalStats proposal_stats;
  Word final_word;
  WalkStatus status = WalkStatus::completed;
  std::uint64_t steps_done = 0;
  std::size_t max_length_seen = 0;
  double runtime_seconds = 0.0;

  std::uint64_t tally(std::uint32_t segment, std::size_t n) const {
    const auto& h = segment_histograms[segment];
    return n < h.size() ? h[n] : 0;
  }
  std::uint64_t total(std::size_t n) const { return n < histogram.size() ? histogram[n] : 0; }
  std::size_t max_visited_length() const { return histogram.empty() ? 0 : histogram.size() - 1; }
};

/// Runs `steps` proposals from the empty word, tallying the current length
/// after every stride-th step into the segment it falls in. A word longer
/// than max_word_length stops the walk with status `diverged`.
WalkRecord run_walk(const Presentation& presentation, const WalkParams& params);

/// Independent walks, one per parameter set, run concurrently with OpenMP.
/// Output order matches input order; identical to run_grid_serial.
std::vector<WalkRecord> run_grid(const Presentation& presentation, std::span<const WalkParams> grid,
                                 int threads = 0);
std::vector<WalkRecord> run_grid_serial(const Presentation& presentation,
                                        std::span<const WalkParams> grid);

struct RelatorShare {
  std::size_t relator = 0;
  std::uint64_t accepted = 0;
  double share = 0.0;
};

struct RelatorBalance {
  std::vector<RelatorShare> shares;
  std::uint64_t total_accepted = 0;
  double floor = 0.001;
  bool wrong_group_warning = false;
};

/// Per-user-relator share of accepted insertions; warns when any share is
/// below `floor`.
RelatorBalance diagnose_relator_balance(const WalkRecord& record, double floor = 0.001);

}  // namespace cogrowth
