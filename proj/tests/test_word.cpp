#include <doctest.h>

#include <random>

#include "cogrowth/word.hpp"
#include "support.hpp"

using namespace cogrowth;
using testing_support::letters;
using testing_support::naive_reduce;
using testing_support::reduced;
using testing_support::text;

namespace {

std::vector<Letter> random_reduced(std::mt19937_64& rng, unsigned p, std::size_t len) {
  std::vector<Letter> w;
  std::uniform_int_distribution<unsigned> pick(0, 2 * p - 1);
  while (w.size() < len) {
    const auto x = static_cast<Letter>(pick(rng));
    if (!w.empty() && (w.back() ^ 1) == x) continue;
    w.push_back(x);
  }
  return w;
}

std::vector<Letter> concat(std::initializer_list<std::vector<Letter>> parts) {
  std::vector<Letter> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST_CASE("letters pair up with their inverses") {
  CHECK(inverse(Letter{0}) == 1);
  CHECK(inverse(Letter{1}) == 0);
  CHECK(inverse(Letter{6}) == 7);
  CHECK(generator_letter(3) == 6);
}

TEST_CASE("free_reduce agrees with repeated pair deletion") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<unsigned> pick(0, 5);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Letter> raw(len(rng));
    for (auto& x : raw) x = static_cast<Letter>(pick(rng));
    const Word w = free_reduce(raw);
    CHECK(w.is_freely_reduced());
    CHECK(w.to_vector() == naive_reduce(raw));
  }
  CHECK(free_reduce({0, 2, 3, 1}).empty());
  CHECK(text(free_reduce({0, 2, 3, 2}).to_vector()) == "ab");
}

TEST_CASE("inverse and cyclic reduction") {
  const Word w = Word::from_reduced(letters("abAc"));
  CHECK(text(inverse(w).to_vector()) == "CaBA");
  CHECK(inverse(inverse(w)) == w);
  CHECK(naive_reduce(concat({w.to_vector(), inverse(w).to_vector()})).empty());

  CHECK(text(cyclically_reduce(Word::from_reduced(letters("abcBA"))).to_vector()) == "c");
  CHECK(text(cyclically_reduce(Word::from_reduced(letters("aba"))).to_vector()) == "aba");
  CHECK(cyclically_reduce(Word{}).empty());
  // A word whose core is a single letter keeps it.
  CHECK(text(cyclically_reduce(Word::from_reduced(letters("abA"))).to_vector()) == "b");
}

TEST_CASE("conjugation matches reduction of x w x^-1") {
  std::mt19937_64 rng(3);
  for (std::size_t len = 0; len <= 6; ++len) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto raw = random_reduced(rng, 2, len);
      const Word w = Word::from_reduced(raw);
      for (Letter x = 0; x < 4; ++x) {
        const auto expected = naive_reduce(concat({{x}, raw, {inverse(x)}}));
        CHECK(conjugated_length(w, x) == expected.size());
        CHECK(conjugate(w, x).to_vector() == expected);
      }
    }
  }
  // The empty word is fixed by conjugation.
  CHECK(conjugate(Word{}, 0).empty());
  // Conjugating a single letter by itself or its inverse leaves it alone.
  CHECK(text(conjugate(Word::from_reduced(letters("a")), 0).to_vector()) == "a");
  CHECK(text(conjugate(Word::from_reduced(letters("a")), 1).to_vector()) == "a");
  CHECK(text(conjugate(Word::from_reduced(letters("a")), 2).to_vector()) == "baB");
}

TEST_CASE("left insertion cancels only across the left boundary") {
  // Oracle: reduce u r (the only possible cancellation), then append v and
  // accept iff the result is freely reduced.
  std::mt19937_64 rng(5);
  const std::vector<std::vector<Letter>> relators = {letters("abAB"), letters("aBAbabAABa"), letters("aab"),
                                                     letters("ab")};
  int accepted = 0;
  int rejected = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const auto raw = random_reduced(rng, 2, rng() % 12);
    const auto& r = relators[rng() % relators.size()];
    const std::size_t pos = rng() % (raw.size() + 1);
    const std::vector<Letter> u(raw.begin(), raw.begin() + static_cast<long>(pos));
    const std::vector<Letter> v(raw.begin() + static_cast<long>(pos), raw.end());
    const auto candidate = concat({naive_reduce(concat({u, r})), v});

    const auto got = left_insert(Word::from_reduced(raw), r, pos);
    const auto plan = plan_left_insert(Word::from_reduced(raw), r, pos);
    REQUIRE(got.has_value() == plan.has_value());
    if (reduced(candidate)) {
      REQUIRE(got.has_value());
      CHECK(got->to_vector() == candidate);
      CHECK(plan->new_length == candidate.size());
      ++accepted;
    } else {
      CHECK_FALSE(got.has_value());
      ++rejected;
    }
  }
  CHECK(accepted > 500);
  CHECK(rejected > 500);
}

TEST_CASE("left insertion examples") {
  const Word w = Word::from_reduced(letters("AB"));
  // u = "A", r = "abAB": a cancels, giving "bAB" + "B" -> BB at the junction is fine.
  auto out = left_insert(w, letters("abAB"), 1);
  REQUIRE(out);
  CHECK(text(out->to_vector()) == "bABB");
  // Inserting r at the end of r^-1 consumes everything.
  const Word bab = Word::from_reduced(letters("baBA"));
  out = left_insert(bab, letters("abAB"), 4);
  REQUIRE(out);
  CHECK(out->empty());
  // Right junction: r ends with B, v starts with b -> reject.
  CHECK_FALSE(left_insert(Word::from_reduced(letters("b")), letters("abAB"), 0));
}

TEST_CASE("splice and end edits track a plain vector") {
  std::mt19937_64 rng(9);
  Word w;
  std::vector<Letter> model;
  for (int step = 0; step < 20000; ++step) {
    const auto op = rng() % 5;
    const auto x = static_cast<Letter>(rng() % 8);
    if (op == 0) {
      w.push_front(x);
      model.insert(model.begin(), x);
    } else if (op == 1) {
      w.push_back(x);
      model.push_back(x);
    } else if (op == 2 && !model.empty()) {
      w.pop_front();
      model.erase(model.begin());
    } else if (op == 3 && !model.empty()) {
      w.pop_back();
      model.pop_back();
    } else {
      const std::size_t at = rng() % (model.size() + 1);
      const std::size_t erase = rng() % (model.size() - at + 1);
      std::vector<Letter> with(rng() % 6);
      for (auto& y : with) y = static_cast<Letter>(rng() % 8);
      w.splice(at, erase, with);
      model.erase(model.begin() + static_cast<long>(at), model.begin() + static_cast<long>(at + erase));
      model.insert(model.begin() + static_cast<long>(at), with.begin(), with.end());
    }
    REQUIRE(w.size() == model.size());
  }
  CHECK(w.to_vector() == model);
}

TEST_CASE("word ordering is shortlex") {
  const Word a = Word::from_reduced(letters("b"));
  const Word b = Word::from_reduced(letters("aa"));
  const Word c = Word::from_reduced(letters("ab"));
  CHECK(a < b);
  CHECK(b < c);
  CHECK_FALSE(c < b);
}
