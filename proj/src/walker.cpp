#include "cogrowth/walker.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace cogrowth {

void WalkParams::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (segments < 2) throw std::invalid_argument("need at least 2 segments");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (steps < segments) throw std::invalid_argument("steps must be >= segments");
  if (steps % stride) throw std::invalid_argument("stride must divide steps");
  if (steps / stride < segments) throw std::invalid_argument("fewer sampling events than segments");
  if (max_word_length < 1) throw std::invalid_argument("max word length must be >= 1");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ 0x243f6a8885a308d3ULL) ^ mix(mix(stream + 0x13198a2e03707344ULL))) {}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double log_acceptance(MoveKind kind, std::size_t from, std::size_t to, double alpha, double beta) {
  const double exponent = kind == MoveKind::conjugation ? 1.0 + alpha : alpha;
  const double lr = std::log(static_cast<double>(to + 1)) - std::log(static_cast<double>(from + 1));
  return exponent * lr + (static_cast<double>(to) - static_cast<double>(from)) * std::log(beta);
}

double acceptance_probability(MoveKind kind, std::size_t from, std::size_t to, double alpha,
                              double beta) {
  const double la = log_acceptance(kind, from, to, alpha, beta);
  return la >= 0.0 ? 1.0 : std::exp(la);
}

AcceptanceTable::AcceptanceTable(double alpha, double beta, std::size_t max_delta)
    : alpha_(alpha), log_beta_(std::log(beta)), max_delta_(max_delta), width_(2 * max_delta + 1) {}

double AcceptanceTable::evaluate(double exponent, std::size_t from, std::size_t to) const {
  const double la = exponent * (std::log(static_cast<double>(to + 1)) - std::log(static_cast<double>(from + 1))) +
                    (static_cast<double>(to) - static_cast<double>(from)) * log_beta_;
  return la >= 0.0 ? 1.0 : std::exp(la);
}

double AcceptanceTable::lookup(std::vector<double>& table, double exponent, std::size_t from,
                               std::size_t to) {
  if (from >= kRows || to + max_delta_ < from || to > from + max_delta_) return evaluate(exponent, from, to);
  if (from >= rows_) {
    const std::size_t rows = std::min(kRows, std::max<std::size_t>(2 * from + 1, 256));
    for (auto* t : {&conj_, &ins_}) {
      const double e = t == &conj_ ? 1.0 + alpha_ : alpha_;
      t->resize(rows * width_);
      for (std::size_t n = rows_; n < rows; ++n) {
        for (std::size_t d = 0; d < width_; ++d) {
          if (n + d < max_delta_) continue;  // negative target length
          (*t)[n * width_ + d] = evaluate(e, n, n + d - max_delta_);
        }
      }
    }
    rows_ = rows;
  }
  return table[from * width_ + (to + max_delta_ - from)];
}

Walker::Walker(const Presentation& presentation, const WalkParams& params)
    : presentation_(presentation),
      params_(params),
      rng_(params.seed, params.stream),
      acceptance_(params.alpha, params.beta, std::max<std::size_t>(2, presentation.max_relator_length())),
      accepted_by_origin_(presentation.user_relators().size(), 0),
      alphabet_size_(presentation.alphabet().size()) {
  params_.validate();
}

MoveOutcome Walker::step() {
  MoveOutcome out;
  out.old_length = word_.size();
  const std::size_t n = word_.size();
  const std::uint64_t coin = rng_.next();
  if (coin >> 63) {
    out.kind = MoveKind::conjugation;
    ++stats_.conjugations_proposed;
    const auto x = static_cast<Letter>(rng_.below(alphabet_size_));
    out.new_length = conjugated_length(word_, x);
    const double pa = acceptance_.conjugation(n, out.new_length);
    if (pa >= 1.0 || rng_.open01() < pa) {
      conjugate_in_place(word_, x);
      out.accepted = true;
      ++stats_.conjugations_accepted;
    }
    return out;
  }

  out.kind = MoveKind::insertion;
  ++stats_.insertions_proposed;
  const auto& closed = presentation_.closed_relators();
  out.relator = rng_.below(closed.size());
  const std::size_t pos = rng_.below(n + 1);
  const auto r = closed[out.relator].word.letters();
  auto plan = plan_left_insert(word_, r, pos);
  if (!plan) {
    out.rejected_unreduced = true;
    out.new_length = n;
    ++stats_.insertions_unreduced;
    return out;
  }
  out.new_length = plan->new_length;
  const double pa = acceptance_.insertion(n, out.new_length);
  if (pa >= 1.0 || rng_.open01() < pa) {
    apply_left_insert(word_, r, *plan);
    out.accepted = true;
    ++stats_.insertions_accepted;
    ++accepted_by_origin_[closed[out.relator].origin];
  }
  return out;
}

WalkRecord run_walk(const Presentation& presentation, const WalkParams& params) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  WalkRecord rec;
  rec.params = params;
  rec.presentation = render_presentation(presentation);
  rec.parity_even = presentation.parity_even();
  rec.segment_histograms.assign(params.segments, {});

  Walker walker(presentation, params);
  const std::uint64_t events = params.steps / params.stride;
  std::uint64_t event = 0;
  std::uint32_t segment = 0;
  // First event index belonging to the next segment.
  auto boundary = [&](std::uint32_t seg) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(seg) * events + params.segments - 1) /
                                      params.segments);
  };
  std::uint64_t next_boundary = boundary(1);
  std::vector<std::uint64_t>* hist = &rec.segment_histograms[0];
  std::uint64_t until_sample = params.stride;

  for (std::uint64_t s = 0; s < params.steps; ++s) {
    const MoveOutcome mv = walker.step();
    if (mv.accepted && mv.new_length > params.max_word_length) {
      rec.status = WalkStatus::diverged;
      rec.steps_done = s + 1;
      break;
    }
    if (--until_sample == 0) {
      until_sample = params.stride;
      while (event >= next_boundary) {
        ++segment;
        hist = &rec.segment_histograms[segment];
        next_boundary = boundary(segment + 1);
      }
      const std::size_t len = walker.word().size();
      if (len >= hist->size()) hist->resize(len + 1, 0);
      ++(*hist)[len];
      ++event;
    }
    rec.steps_done = s + 1;
  }

  std::size_t longest = 0;
  for (const auto& h : rec.segment_histograms) longest = std::max(longest, h.size());
  for (auto& h : rec.segment_histograms) h.resize(longest, 0);
  rec.histogram.assign(longest, 0);
  for (const auto& h : rec.segment_histograms) {
    for (std::size_t n = 0; n < longest; ++n) rec.histogram[n] += h[n];
  }
  // Drop trailing never-visited lengths.
  while (!rec.histogram.empty() && rec.histogram.back() == 0) rec.histogram.pop_back();
  for (auto& h : rec.segment_histograms) h.resize(rec.histogram.size());
  rec.max_length_seen = rec.histogram.empty() ? 0 : rec.histogram.size() - 1;

  rec.relator_acceptance = walker.relator_acceptance();
  rec.proposal_stats = walker.stats();
  rec.final_word = walker.word();
  rec.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

RelatorBalance diagnose_relator_balance(const WalkRecord& record, double floor) {
  RelatorBalance out;
  out.floor = floor;
  for (auto a : record.relator_acceptance) out.total_accepted += a;
  for (std::size_t i = 0; i < record.relator_acceptance.size(); ++i) {
    const auto a = record.relator_acceptance[i];
    const double share = out.total_accepted ? static_cast<double>(a) / out.total_accepted : 0.0;
    out.shares.push_back({i, a, share});
    if (share < floor) out.wrong_group_warning = true;
  }
  return out;
}

}  // namespace cogrowth
