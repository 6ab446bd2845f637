#include "cogrowth/word.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace cogrowth {

Word Word::from_reduced(std::span<const Letter> letters) {
  Word w;
  w.regrow(8, letters.size() + 8);
  std::copy(letters.begin(), letters.end(), w.buf_.begin() + w.begin_);
  w.end_ = w.begin_ + letters.size();
  assert(w.is_freely_reduced());
  return w;
}

bool Word::is_freely_reduced() const noexcept {
  for (std::size_t i = begin_ + 1; i < end_; ++i) {
    if (buf_[i] == inverse(buf_[i - 1])) return false;
  }
  return true;
}

bool operator==(const Word& a, const Word& b) noexcept {
  auto x = a.letters();
  auto y = b.letters();
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

bool operator<(const Word& a, const Word& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  auto x = a.letters();
  auto y = b.letters();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

void Word::regrow(std::size_t front_room, std::size_t back_room) {
  const std::size_t n = size();
  const std::size_t slack = std::max<std::size_t>(16, n);
  std::vector<Letter> fresh(front_room + n + back_room + 2 * slack);
  const std::size_t nb = front_room + slack;
  if (n) std::memcpy(fresh.data() + nb, buf_.data() + begin_, n);
  buf_ = std::move(fresh);
  begin_ = nb;
  end_ = nb + n;
}

void Word::push_front(Letter x) {
  if (begin_ == 0) regrow(1, 0);
  buf_[--begin_] = x;
}

void Word::push_back(Letter x) {
  if (end_ == buf_.size()) regrow(0, 1);
  buf_[end_++] = x;
}

void Word::splice(std::size_t at, std::size_t erase, std::span<const Letter> with) {
  const std::size_t n = size();
  assert(at + erase <= n);
  const std::size_t tail = n - at - erase;
  if (with.size() >= erase) {
    const std::size_t grow = with.size() - erase;
    // Move whichever side is shorter.
    if (at <= tail) {
      if (begin_ < grow) regrow(grow, 0);
      Letter* p = buf_.data() + begin_;
      std::memmove(p - grow, p, at);
      begin_ -= grow;
    } else {
      if (buf_.size() - end_ < grow) regrow(0, grow);
      Letter* p = buf_.data() + begin_ + at + erase;
      std::memmove(p + grow, p, tail);
      end_ += grow;
    }
  } else {
    const std::size_t shrink = erase - with.size();
    if (at <= tail) {
      Letter* p = buf_.data() + begin_;
      std::memmove(p + shrink, p, at);
      begin_ += shrink;
    } else {
      Letter* p = buf_.data() + begin_ + at + erase;
      std::memmove(p - shrink, p, tail);
      end_ -= shrink;
    }
  }
  if (!with.empty()) std::memcpy(buf_.data() + begin_ + at, with.data(), with.size());
}

Word free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter x : letters) {
    if (!stack.empty() && stack.back() == inverse(x)) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word::from_reduced(stack);
}

Word inverse(const Word& w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = inverse(w[i]);
  return Word::from_reduced(out);
}

Word cyclically_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == inverse(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word::from_reduced(w.letters().subspan(lo, hi - lo));
}

std::size_t conjugated_length(const Word& w, Letter x) noexcept {
  if (w.empty()) return 0;
  std::size_t n = w.size();
  n = (w.front() == inverse(x)) ? n - 1 : n + 1;
  n = (w.back() == x) ? n - 1 : n + 1;
  return n;
}

void conjugate_in_place(Word& w, Letter x) {
  if (w.empty()) return;
  // Decide both ends on the original letters; for |w| = 1 the two edits
  // still compose to x w x^-1 reduced.
  const bool left_cancels = w.front() == inverse(x);
  const bool right_cancels = w.back() == x;
  if (w.size() == 1 && (left_cancels || right_cancels)) return;
  if (left_cancels) {
    w.pop_front();
  } else {
    w.push_front(x);
  }
  if (right_cancels) {
    w.pop_back();
  } else {
    w.push_back(inverse(x));
  }
}

Word conjugate(const Word& w, Letter x) {
  Word out = w;
  conjugate_in_place(out, x);
  return out;
}

std::optional<InsertionPlan> plan_left_insert(const Word& w, std::span<const Letter> r,
                                              std::size_t pos) noexcept {
  const std::size_t k = r.size();
  std::size_t j = 0;
  while (j < k && j < pos && w[pos - 1 - j] == inverse(r[j])) ++j;
  const bool has_right = pos < w.size();
  if (has_right) {
    // Letter that ends up immediately left of v.
    bool blocked;
    if (j < k) {
      blocked = r[k - 1] == inverse(w[pos]);
    } else {
      blocked = pos > j && w[pos - j - 1] == inverse(w[pos]);
    }
    if (blocked) return std::nullopt;
  }
  return InsertionPlan{pos, j, w.size() + k - 2 * j};
}

void apply_left_insert(Word& w, std::span<const Letter> r, const InsertionPlan& plan) {
  w.splice(plan.position - plan.cancelled, plan.cancelled, r.subspan(plan.cancelled));
}

std::optional<Word> left_insert(const Word& w, std::span<const Letter> r, std::size_t pos) {
  assert(pos <= w.size());
  auto plan = plan_left_insert(w, r, pos);
  if (!plan) return std::nullopt;
  Word out = w;
  apply_left_insert(out, r, *plan);
  return out;
}

}  // namespace cogrowth
