#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace cogrowth {

// Generator g is letter 2g, its inverse is 2g+1.
using Letter = std::uint8_t;

constexpr Letter inverse(Letter x) noexcept { return x ^ Letter{1}; }
constexpr Letter generator_letter(unsigned g) noexcept { return static_cast<Letter>(2 * g); }

/// A freely reduced word over a symmetric alphabet.
///
/// Storage keeps slack at both ends so that conjugation (which edits both
/// ends) is amortized O(1); interior edits shift the shorter side.
class Word {
 public:
  Word() = default;

  /// Takes letters that are already freely reduced. Use free_reduce() for
  /// arbitrary input.
  static Word from_reduced(std::span<const Letter> letters);

  std::size_t size() const noexcept { return end_ - begin_; }
  bool empty() const noexcept { return begin_ == end_; }

  Letter operator[](std::size_t i) const noexcept { return buf_[begin_ + i]; }
  Letter front() const noexcept { return buf_[begin_]; }
  Letter back() const noexcept { return buf_[end_ - 1]; }

  std::span<const Letter> letters() const noexcept {
    return {buf_.data() + begin_, size()};
  }
  std::vector<Letter> to_vector() const { return {letters().begin(), letters().end()}; }

  bool is_freely_reduced() const noexcept;

  friend bool operator==(const Word& a, const Word& b) noexcept;
  friend bool operator<(const Word& a, const Word& b) noexcept;

  // In-place edits used by the walk. Callers maintain free reduction.
  void push_front(Letter x);
  void push_back(Letter x);
  void pop_front() noexcept { ++begin_; }
  void pop_back() noexcept { --end_; }
  /// Replaces letters [at, at + erase) with `with`.
  void splice(std::size_t at, std::size_t erase, std::span<const Letter> with);

 private:
  void regrow(std::size_t front_room, std::size_t back_room);

  std::vector<Letter> buf_;
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
};

Word free_reduce(std::span<const Letter> letters);
inline Word free_reduce(std::initializer_list<Letter> letters) {
  return free_reduce(std::span<const Letter>(letters.begin(), letters.size()));
}

/// Word for the inverse element: reversed, each letter inverted.
Word inverse(const Word& w);

/// Strips matching inverse pairs from the two ends (w must be freely reduced).
Word cyclically_reduce(const Word& w);

/// Length of free_reduce(x w x^-1) without building it.
std::size_t conjugated_length(const Word& w, Letter x) noexcept;

/// free_reduce(x w x^-1).
Word conjugate(const Word& w, Letter x);
void conjugate_in_place(Word& w, Letter x);

/// A left insertion that passed the reducedness check.
struct InsertionPlan {
  std::size_t position = 0;   // split point u|v in the original word
  std::size_t cancelled = 0;  // letters of u cancelled against the relator
  std::size_t new_length = 0;
};

/// Left insertion of relator r at pos: cancel trailing letters of u against
/// leading letters of r until blocked, then splice in what is left of r.
/// Returns nullopt (REJECT) when the result is not freely reduced at the
/// right-hand junction.
std::optional<InsertionPlan> plan_left_insert(const Word& w, std::span<const Letter> r,
                                              std::size_t pos) noexcept;
void apply_left_insert(Word& w, std::span<const Letter> r, const InsertionPlan& plan);

std::optional<Word> left_insert(const Word& w, std::span<const Letter> r, std::size_t pos);

}  // namespace cogrowth
