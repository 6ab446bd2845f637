#include <doctest.h>

#include <array>

#include "cogrowth/oracle.hpp"
#include "cogrowth/series.hpp"
#include "support.hpp"

using namespace cogrowth;
using testing_support::binomial;
using testing_support::letters;

namespace {

// BS(1,N) (letters a and b = t) as 2x2 rational matrices: a = [[1,1],[0,1]], t = [[N,0],[0,1]].
// Independent of the solver's affine bookkeeping.
using Matrix = std::array<mpq_class, 4>;

Matrix mat_mul(const Matrix& x, const Matrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

bool bs_matrix_identity(const std::vector<Letter>& w, unsigned n) {
  const Matrix gens[4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {mpq_class(n), 0, 0, 1}, {mpq_class(1, n), 0, 0, 1}};
  Matrix m{1, 0, 0, 1};
  for (Letter x : w) m = mat_mul(m, gens[x]);
  return m == Matrix{1, 0, 0, 1};
}

std::vector<mpz_class> exact_values(const ExactTable& t) {
  std::vector<mpz_class> out;
  for (std::size_t n = 0; n <= t.horizon; ++n) out.push_back(t.values.at(n).exact);
  return out;
}

std::vector<mpz_class> integers(const Series& s) {
  std::vector<mpz_class> out;
  for (const auto& q : s.coefficients()) {
    REQUIRE(q.get_den() == 1);
    out.push_back(q.get_num());
  }
  return out;
}

}  // namespace

TEST_CASE("word-problem solvers") {
  const WordProblemSolver z2 = AbelianSolver(2);
  CHECK(is_identity(z2, letters("abAB")));
  CHECK(is_identity(z2, letters("aabAAB")));
  CHECK_FALSE(is_identity(z2, letters("aab")));
  CHECK(evaluate(z2, letters("ab")) == evaluate(z2, letters("ba")));

  const WordProblemSolver f2 = FreeSolver(2);
  CHECK_FALSE(is_identity(f2, letters("abAB")));
  CHECK(is_identity(f2, letters("abBA")));

  for (unsigned n : {1u, 2u, 3u, 7u}) {
    const WordProblemSolver bs = BaumslagSolitarSolver(n);
    std::vector<Letter> relator = letters("baB");
    for (unsigned i = 0; i < n; ++i) relator.push_back(1);
    CHECK(is_identity(bs, relator));
    CHECK(bs_matrix_identity(relator, n));
    CHECK(is_identity(bs, letters("BbaA")));
    CHECK(is_identity(bs, letters("baBA")) == (n == 1));
  }
  // Conjugates of a commute with each other; a and t do not.
  const WordProblemSolver bs2 = BaumslagSolitarSolver(2);
  CHECK(is_identity(bs2, letters("aBabABAb")));
  CHECK_FALSE(is_identity(bs2, letters("abAB")));

  const WordProblemSolver trivial = TrivialSolver(3);
  CHECK(is_identity(trivial, letters("abcabc")));
  CHECK(solver_rank(trivial) == 3);
}

TEST_CASE("BS(1,N) solver agrees with a matrix representation on every short reduced word") {
  for (unsigned n : {2u, 3u}) {
    const WordProblemSolver bs = BaumslagSolitarSolver(n);
    for (std::size_t len = 0; len <= 8; ++len) {
      testing_support::for_each_reduced(2, len, [&](const std::vector<Letter>& w) {
        REQUIRE(is_identity(bs, w) == bs_matrix_identity(w, n));
      });
    }
  }
}

TEST_CASE("enumeration matches brute force") {
  for (unsigned p : {1u, 2u, 3u}) {
    const std::size_t max_len = p == 3 ? 8 : 12;
    const auto table = enumerate_reduced_cogrowth(AbelianSolver(p), max_len);
    CHECK_FALSE(table.partial);
    CHECK(table.horizon == max_len);
    CHECK(exact_values(table) == testing_support::brute_abelian_c(p, max_len));
  }
  // Z^2: 8 trivial reduced words of length 4 (the commutator conjugates).
  CHECK(enumerate_reduced_cogrowth(AbelianSolver(2), 4).values.at(4).exact == 8);

  // BS(1,2) by brute force through the matrix representation.
  const auto bs = enumerate_reduced_cogrowth(BaumslagSolitarSolver(2), 10);
  for (std::size_t len = 0; len <= 10; ++len) {
    std::uint64_t count = 0;
    testing_support::for_each_reduced(2, len, [&](const std::vector<Letter>& w) { count += bs_matrix_identity(w, 2); });
    CHECK(bs.values.at(len).exact == static_cast<unsigned long>(count));
  }

  // Free groups: only the empty word; trivial group: every reduced word.
  const auto free = enumerate_reduced_cogrowth(FreeSolver(2), 10);
  CHECK(free.values.at(0).exact == 1);
  for (std::size_t len = 1; len <= 10; ++len) CHECK(free.values.at(len).exact == 0);
  const auto all = enumerate_reduced_cogrowth(TrivialSolver(2), 9);
  for (std::size_t len = 1; len <= 9; ++len) {
    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 3, len - 1);
    CHECK(all.values.at(len).exact == 4 * expected);
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  for (const char* id : {"zk:2", "zk:3", "bs:1:2", "bs:1:7"}) {
    const auto s = solver_from_id(id);
    const auto par = enumerate_reduced_cogrowth(s, 11);
    const auto ser = enumerate_reduced_cogrowth_serial(s, 11);
    CHECK(exact_values(par) == exact_values(ser));
  }
}

TEST_CASE("enumeration lowers the horizon when over budget") {
  // 1 + 4 + 12 + 36 + 108 = 161 words up to length 4.
  const auto t = enumerate_reduced_cogrowth(AbelianSolver(2), 12, 161);
  CHECK(t.partial);
  CHECK(t.horizon == 4);
  CHECK(t.values.size() == 5);
  CHECK(t.values.at(4).exact == 8);
  CHECK(t.dense().size() == 5);
}

TEST_CASE("dynamic programming return counts") {
  const auto z = dp_return_counts(AbelianSolver(1), 100);
  CHECK(z.kind == 'd');
  for (unsigned long n = 0; n <= 50; ++n) {
    CHECK(z.values.at(2 * n).exact == binomial(2 * n, n));
    if (n < 50) CHECK(z.values.at(2 * n + 1).exact == 0);
  }
  const auto z2 = dp_return_counts(AbelianSolver(2), 40);
  for (unsigned long n = 0; n <= 20; ++n) {
    const mpz_class b = binomial(2 * n, n);
    CHECK(z2.values.at(2 * n).exact == b * b);
  }
  const auto trivial = dp_return_counts(TrivialSolver(2), 12);
  for (unsigned long n = 0; n <= 12; ++n) {
    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 4, n);
    CHECK(trivial.values.at(n).exact == expected);
  }
  const auto capped = dp_return_counts(AbelianSolver(3), 30, 50);
  CHECK(capped.partial);
  CHECK(capped.horizon < 30);
}

TEST_CASE("enumeration equals dynamic programming plus conversion") {
  for (const char* id : {"zk:2", "bs:1:2", "bs:1:3", "zk:3"}) {
    const auto s = solver_from_id(id);
    const unsigned p = solver_rank(s);
    const std::size_t order = p == 3 ? 10 : 12;
    const auto table = enumerate_reduced_cogrowth(s, order);
    REQUIRE_FALSE(table.partial);
    const auto enumerated = exact_values(table);
    const auto d = dp_return_counts(s, order);
    REQUIRE(d.horizon == order);
    CAPTURE(id);
    const auto c = reduced_from_cogrowth({Series(d.dense()), p});
    CHECK(integers(c.series) == enumerated);
    const auto back = cogrowth_from_reduced({Series(std::vector<mpq_class>(enumerated.begin(), enumerated.end())), p});
    CHECK(back.series == Series(d.dense()));
  }
}

TEST_CASE("parity of presentations shows in the counts") {
  // All Z^2 relators have even length: odd counts vanish. BS(1,2) has an odd
  // relator (length 5), so odd lengths occur.
  const auto z2 = enumerate_reduced_cogrowth(AbelianSolver(2), 11);
  for (std::size_t n = 1; n <= 11; n += 2) CHECK(z2.values.at(n).exact == 0);
  const auto bs = enumerate_reduced_cogrowth(BaumslagSolitarSolver(2), 11);
  CHECK(bs.values.at(5).exact > 0);
  CHECK(bs.values.at(3).exact == 0);
}

TEST_CASE("published reduced-cogrowth values for F") {
  const auto t = published_f_table();
  CHECK(t.kind == 'c');
  CHECK(t.horizon == 48);
  CHECK(t.values.at(0).exact == 1);
  CHECK(t.values.at(10).exact == 20);
  CHECK(t.values.at(24).exact == 531136);
  CHECK(t.values.at(38).exact == mpz_class("36877764000"));
  CHECK_FALSE(t.values.at(38).scientific);
  CHECK(t.values.at(48).scientific);
  CHECK(t.values.at(48).printed == "1.3920e14");
  CHECK(t.values.at(48).approx() == doctest::Approx(1.392e14));
  CHECK(t.values.at(40).exact == mpz_class("188480000000"));
  for (std::size_t n = 1; n < 10; ++n) CHECK(t.values.count(n) == 0);
  // Ratios of consecutive values creep up toward 9 from below.
  for (std::size_t n = 12; n <= 48; n += 2) {
    const double ratio = t.values.at(n).approx() / t.values.at(n - 2).approx();
    CHECK(ratio > 3.0);
    CHECK(ratio < 9.0);
  }
  const auto dense = t.dense();
  CHECK(dense.size() == 49);
  CHECK(dense[11] == 0);
}

TEST_CASE("solver ids") {
  CHECK(std::holds_alternative<AbelianSolver>(solver_from_id("zk:3")));
  CHECK(solver_rank(solver_from_id("zk:3")) == 3);
  CHECK(std::holds_alternative<FreeSolver>(solver_from_id("free:2")));
  CHECK(std::get<BaumslagSolitarSolver>(solver_from_id("bs:1:7")).base() == 7);
  CHECK(std::holds_alternative<TrivialSolver>(solver_from_id("trivial-family:4")));
  CHECK(solver_rank(solver_from_id("trivial-family:4")) == 2);
  CHECK(solver_rank(solver_from_id("trivial:3")) == 3);
  for (const char* bad : {"zk:", "zk:0", "zk:2x", "bs:1:-3", "surface:2", "", "free:two"}) {
    CHECK_THROWS_AS(solver_from_id(bad), std::invalid_argument);
  }
}
