#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "cogrowth/presentation.hpp"
#include "cogrowth/word.hpp"

namespace cogrowth {

// Word-problem solvers. Each maps words to canonical element keys by
// right-multiplying a key by one letter at a time. `norm` is a lower bound on
// the word length needed to get from the key back to the identity.

/// Z^k: key is the exponent vector.
class AbelianSolver {
 public:
  using Key = std::vector<int>;
  explicit AbelianSolver(unsigned rank) : rank_(rank) {}
  Key identity() const { return Key(rank_, 0); }
  void multiply(Key& key, Letter x) const { key[x / 2] += (x & 1) ? -1 : 1; }
  std::size_t norm(const Key& key) const;
  unsigned rank() const { return rank_; }

 private:
  unsigned rank_;
};

/// Free group: key is the freely reduced word.
class FreeSolver {
 public:
  using Key = std::vector<Letter>;
  explicit FreeSolver(unsigned rank) : rank_(rank) {}
  Key identity() const { return {}; }
  void multiply(Key& key, Letter x) const {
    if (!key.empty() && key.back() == inverse(x)) {
      key.pop_back();
    } else {
      key.push_back(x);
    }
  }
  std::size_t norm(const Key& key) const { return key.size(); }
  unsigned rank() const { return rank_; }

 private:
  unsigned rank_;
};

/// BS(1,N) = <a,t | t a t^-1 a^-N> acting faithfully by affine maps of Q:
/// a: x -> x + 1, t: x -> N x. A word w = g_1...g_n is the composition
/// g_1 o ... o g_n, held exactly as x -> N^k x + b.
class BaumslagSolitarSolver {
 public:
  struct Key {
    long k = 0;
    mpq_class b = 0;
    friend bool operator==(const Key& u, const Key& v) { return u.k == v.k && u.b == v.b; }
  };
  explicit BaumslagSolitarSolver(unsigned n) : n_(n) {}
  Key identity() const { return {}; }
  void multiply(Key& key, Letter x) const;
  std::size_t norm(const Key&) const { return 0; }
  unsigned base() const { return n_; }
  unsigned rank() const { return 2; }  // letters: a = 0, t = 2

 private:
  unsigned n_;
};

/// Every word is the identity.
class TrivialSolver {
 public:
  struct Key {
    friend bool operator==(const Key&, const Key&) { return true; }
  };
  explicit TrivialSolver(unsigned rank) : rank_(rank) {}
  Key identity() const { return {}; }
  void multiply(Key&, Letter) const {}
  std::size_t norm(const Key&) const { return 0; }
  unsigned rank() const { return rank_; }

 private:
  unsigned rank_;
};

using WordProblemSolver = std::variant<AbelianSolver, FreeSolver, BaumslagSolitarSolver, TrivialSolver>;

/// Canonical string form of a word's key (for hashing and comparison).
std::string evaluate(const WordProblemSolver& solver, std::span<const Letter> word);
bool is_identity(const WordProblemSolver& solver, std::span<const Letter> word);
unsigned solver_rank(const WordProblemSolver& solver);

/// Exact table entry; large published values may be given in scientific form.
struct TableValue {
  mpz_class exact;
  bool scientific = false;
  std::string printed;  // as printed, for scientific entries
  double approx() const;
};

struct ExactTable {
  std::string group;
  char kind = 'c';  // 'c' reduced-cogrowth, 'd' cogrowth
  std::map<std::size_t, TableValue> values;
  std::string source;
  std::size_t horizon = 0;  // values are complete for n <= horizon
  bool partial = false;

  std::vector<mpq_class> dense() const;  // index 0..horizon, missing -> 0
};

/// Counts freely reduced words of each length that evaluate to the identity.
/// Branches on the first letter run in parallel (OpenMP). If the word budget
/// would be exceeded the horizon is lowered and the table marked partial.
ExactTable enumerate_reduced_cogrowth(const WordProblemSolver& solver, std::size_t max_len,
                                      double word_budget = 1e8);
ExactTable enumerate_reduced_cogrowth_serial(const WordProblemSolver& solver, std::size_t max_len,
                                             double word_budget = 1e8);

/// d_k: walks of length k over S returning to the identity, by propagating
/// the distribution over element keys one letter at a time.
ExactTable dp_return_counts(const WordProblemSolver& solver, std::size_t max_len,
                            std::size_t key_budget = 20'000'000);

/// Published exact reduced-cogrowth values c_10..c_48 (even n) for
/// Thompson's group F; n >= 40 are known only to five significant digits.
ExactTable published_f_table();

/// Solver for a group id: "zk:K", "free:K", "bs:1:N", "trivial-family:N"
/// ("trivial:K" for K generators).
WordProblemSolver solver_from_id(const std::string& id);

}  // namespace cogrowth
