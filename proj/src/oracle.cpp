#include "cogrowth/oracle.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace cogrowth {

std::size_t AbelianSolver::norm(const Key& key) const {
  std::size_t s = 0;
  for (int e : key) s += static_cast<std::size_t>(std::abs(e));
  return s;
}

void BaumslagSolitarSolver::multiply(Key& key, Letter x) const {
  switch (x) {
    case 0:
    case 1: {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), n_, static_cast<unsigned long>(std::labs(key.k)));
      const mpq_class step = key.k >= 0 ? mpq_class(scale) : mpq_class(1, 1) / mpq_class(scale);
      if (x == 0) {
        key.b += step;
      } else {
        key.b -= step;
      }
      break;
    }
    case 2:
      ++key.k;
      break;
    case 3:
      --key.k;
      break;
    default:
      throw std::invalid_argument("BS(1,N) has only the letters a, t");
  }
}

namespace {

std::string encode(const AbelianSolver::Key& key) {
  std::string s;
  for (int e : key) s += std::to_string(e) + ",";
  return s;
}
std::string encode(const FreeSolver::Key& key) { return {key.begin(), key.end()}; }
std::string encode(const BaumslagSolitarSolver::Key& key) {
  return std::to_string(key.k) + ";" + key.b.get_str();
}
std::string encode(const TrivialSolver::Key&) { return {}; }

template <typename Solver>
bool key_is_identity(const Solver& solver, const typename Solver::Key& key) {
  return key == solver.identity();
}

// Depth-first over freely reduced words extending `prefix_key` (whose last
// letter is `last`), adding identity hits to counts[length].
template <typename Solver>
void dfs(const Solver& solver, typename Solver::Key& key, Letter last, std::size_t length,
         std::size_t max_len, unsigned letters, std::vector<std::uint64_t>& counts) {
  if (key_is_identity(solver, key)) ++counts[length];
  if (length == max_len) return;
  for (unsigned y = 0; y < letters; ++y) {
    const auto x = static_cast<Letter>(y);
    if (x == inverse(last)) continue;
    auto next = key;
    solver.multiply(next, x);
    if (solver.norm(next) > max_len - length - 1) continue;
    dfs(solver, next, x, length + 1, max_len, letters, counts);
  }
}

std::size_t feasible_horizon(unsigned letters, std::size_t max_len, double budget) {
  double total = 1.0;
  double level = 1.0;
  for (std::size_t n = 1; n <= max_len; ++n) {
    level *= (n == 1) ? letters : letters - 1;
    total += level;
    if (total > budget) return n - 1;
  }
  return max_len;
}

template <typename Solver>
ExactTable enumerate_impl(const Solver& solver, std::size_t max_len, double budget, bool parallel) {
  const unsigned letters = 2 * solver.rank();
  ExactTable table;
  table.kind = 'c';
  table.source = "enumeration";
  table.horizon = feasible_horizon(letters, max_len, budget);
  table.partial = table.horizon < max_len;
  const std::size_t L = table.horizon;

  std::vector<std::vector<std::uint64_t>> branch(letters, std::vector<std::uint64_t>(L + 1, 0));
  if (L > 0) {
    const int n = static_cast<int>(letters);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int y = 0; y < n; ++y) {
      auto key = solver.identity();
      const auto x = static_cast<Letter>(y);
      solver.multiply(key, x);
      if (solver.norm(key) <= L - 1) dfs(solver, key, x, 1, L, letters, branch[y]);
    }
  }
  for (std::size_t len = 0; len <= L; ++len) {
    mpz_class total = len == 0 ? 1 : 0;
    for (const auto& b : branch) total += mpz_class(static_cast<unsigned long>(b[len]));
    table.values[len] = TableValue{total, false, {}};
  }
  return table;
}

template <typename Solver>
ExactTable dp_impl(const Solver& solver, std::size_t max_len, std::size_t key_budget) {
  using Key = typename Solver::Key;
  struct Entry {
    Key key;
    mpz_class count;
  };
  const unsigned letters = 2 * solver.rank();
  const std::string id = encode(solver.identity());

  ExactTable table;
  table.kind = 'd';
  table.source = "dynamic programming";
  std::unordered_map<std::string, Entry> current;
  current.emplace(id, Entry{solver.identity(), 1});
  table.values[0] = TableValue{1, false, {}};
  table.horizon = 0;
  for (std::size_t k = 1; k <= max_len; ++k) {
    std::unordered_map<std::string, Entry> next;
    for (const auto& [code, entry] : current) {
      for (unsigned y = 0; y < letters; ++y) {
        Key key = entry.key;
        solver.multiply(key, static_cast<Letter>(y));
        // Keys farther from the identity than the remaining steps cannot return.
        if (solver.norm(key) > max_len - k) continue;
        auto [it, fresh] = next.try_emplace(encode(key), Entry{key, 0});
        it->second.count += entry.count;
      }
    }
    if (next.size() > key_budget) {
      table.partial = true;
      break;
    }
    current = std::move(next);
    auto hit = current.find(id);
    table.values[k] = TableValue{hit == current.end() ? mpz_class(0) : hit->second.count, false, {}};
    table.horizon = k;
  }
  return table;
}

}  // namespace

std::string evaluate(const WordProblemSolver& solver, std::span<const Letter> word) {
  return std::visit(
      [&](const auto& s) {
        auto key = s.identity();
        for (Letter x : word) s.multiply(key, x);
        return encode(key);
      },
      solver);
}

bool is_identity(const WordProblemSolver& solver, std::span<const Letter> word) {
  return std::visit(
      [&](const auto& s) {
        auto key = s.identity();
        for (Letter x : word) s.multiply(key, x);
        return key_is_identity(s, key);
      },
      solver);
}

unsigned solver_rank(const WordProblemSolver& solver) {
  return std::visit([](const auto& s) { return s.rank(); }, solver);
}

double TableValue::approx() const {
  if (scientific) return std::stod(printed);
  return exact.get_d();
}

std::vector<mpq_class> ExactTable::dense() const {
  std::vector<mpq_class> out(horizon + 1, 0);
  for (const auto& [n, v] : values) {
    if (n <= horizon) out[n] = v.exact;
  }
  return out;
}

ExactTable enumerate_reduced_cogrowth(const WordProblemSolver& solver, std::size_t max_len,
                                      double word_budget) {
  return std::visit([&](const auto& s) { return enumerate_impl(s, max_len, word_budget, true); }, solver);
}

ExactTable enumerate_reduced_cogrowth_serial(const WordProblemSolver& solver, std::size_t max_len,
                                             double word_budget) {
  return std::visit([&](const auto& s) { return enumerate_impl(s, max_len, word_budget, false); }, solver);
}

ExactTable dp_return_counts(const WordProblemSolver& solver, std::size_t max_len, std::size_t key_budget) {
  return std::visit([&](const auto& s) { return dp_impl(s, max_len, key_budget); }, solver);
}

ExactTable published_f_table() {
  ExactTable t;
  t.group = "thompson-f";
  t.kind = 'c';
  t.source = "Haagerup Haagerup and Ramirez-Solano 2015";
  const std::pair<std::size_t, const char*> exact[] = {
      {10, "20"},         {12, "64"},          {14, "336"},         {16, "1160"},
      {18, "5896"},       {20, "24652"},       {22, "117628"},      {24, "531136"},
      {26, "2559552"},    {28, "12142320"},    {30, "59416808"},    {32, "290915560"},
      {34, "1449601452"}, {36, "7269071976"},  {38, "36877764000"}};
  t.values[0] = TableValue{1, false, {}};  // the empty word
  for (const auto& [n, v] : exact) t.values[n] = TableValue{mpz_class(v), false, {}};
  const std::pair<std::size_t, const char*> sci[] = {
      {40, "1.8848e11"}, {42, "9.7200e11"}, {44, "5.0490e12"}, {46, "2.6423e13"}, {48, "1.3920e14"}};
  for (const auto& [n, v] : sci) {
    t.values[n] = TableValue{mpz_class(std::to_string(std::llround(std::stod(v)))), true, v};
  }
  t.horizon = 48;
  return t;
}

WordProblemSolver solver_from_id(const std::string& id) {
  auto param = [&](const std::string& prefix) -> long {
    if (id.rfind(prefix, 0) != 0) return -1;
    const std::string rest = id.substr(prefix.size());
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad group parameter in '" + id + "'");
    }
    if (used != rest.size() || v < 1) throw std::invalid_argument("bad group parameter in '" + id + "'");
    return v;
  };
  if (long k = param("zk:"); k > 0) return AbelianSolver(static_cast<unsigned>(k));
  if (long k = param("free:"); k > 0) return FreeSolver(static_cast<unsigned>(k));
  if (long n = param("bs:1:"); n > 0) return BaumslagSolitarSolver(static_cast<unsigned>(n));
  if (long n = param("trivial-family:"); n > 0) return TrivialSolver(2);
  if (long k = param("trivial:"); k > 0) return TrivialSolver(static_cast<unsigned>(k));
  throw std::invalid_argument("no word-problem solver for group '" + id + "'");
}

}  // namespace cogrowth
