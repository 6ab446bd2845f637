// Independent reference computations shared by the unit tests. Nothing here
// calls into the library's own algorithms for the quantity being checked.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cogrowth/word.hpp"

namespace testing_support {

using cogrowth::Letter;

/// 'a' -> 0, 'A' -> 1, 'b' -> 2, ... (generators named a, b, c, ... in order).
inline std::vector<Letter> letters(std::string_view text) {
  std::vector<Letter> out;
  for (char c : text) {
    const bool upper = c >= 'A' && c <= 'Z';
    const int g = upper ? c - 'A' : c - 'a';
    out.push_back(static_cast<Letter>(2 * g + (upper ? 1 : 0)));
  }
  return out;
}

inline std::string text(const std::vector<Letter>& w) {
  std::string s;
  for (Letter x : w) s += static_cast<char>((x & 1 ? 'A' : 'a') + x / 2);
  return s;
}

/// Repeatedly deletes adjacent inverse pairs until none remain (quadratic,
/// deliberately unlike a one-pass stack reduction).
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if ((w[i] ^ 1) == w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline bool reduced(const std::vector<Letter>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if ((w[i] ^ 1) == w[i + 1]) return false;
  }
  return true;
}

/// Visits every freely reduced word of length exactly n over 2p letters.
inline void for_each_reduced(unsigned p, std::size_t n, const std::function<void(const std::vector<Letter>&)>& f) {
  std::vector<Letter> w;
  std::function<void()> rec = [&] {
    if (w.size() == n) {
      f(w);
      return;
    }
    for (unsigned x = 0; x < 2 * p; ++x) {
      if (!w.empty() && (w.back() ^ 1) == x) continue;
      w.push_back(static_cast<Letter>(x));
      rec();
      w.pop_back();
    }
  };
  rec();
}

/// Exponent-sum test: a word is trivial in Z^p iff every generator's
/// exponent sum is zero.
inline bool abelian_trivial(const std::vector<Letter>& w, unsigned p) {
  std::vector<long> e(p, 0);
  for (Letter x : w) e[x / 2] += (x & 1) ? -1 : 1;
  for (long v : e) {
    if (v != 0) return false;
  }
  return true;
}

/// Brute-force reduced cogrowth of Z^p.
inline std::vector<mpz_class> brute_abelian_c(unsigned p, std::size_t max_len) {
  std::vector<mpz_class> c(max_len + 1, 0);
  for (std::size_t n = 0; n <= max_len; ++n) {
    std::uint64_t count = 0;
    for_each_reduced(p, n, [&](const std::vector<Letter>& w) { count += abelian_trivial(w, p); });
    c[n] = static_cast<unsigned long>(count);
  }
  return c;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace testing_support
