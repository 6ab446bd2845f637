#include "cogrowth/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

namespace cogrowth {

GeneratorAlphabet::GeneratorAlphabet(std::vector<char> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (names_.empty()) throw std::invalid_argument("alphabet needs at least one generator");
  if (names_.size() > 26) throw std::invalid_argument("at most 26 generators");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] < 'a' || names_[i] > 'z') {
      throw std::invalid_argument(std::string("generator names must be lowercase letters, got '") +
                                  names_[i] + "'");
    }
    if (i && names_[i] == names_[i - 1]) {
      throw std::invalid_argument(std::string("duplicate generator '") + names_[i] + "'");
    }
  }
}

char GeneratorAlphabet::name(Letter x) const noexcept {
  const char c = names_[x / 2];
  return (x & 1) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
}

std::optional<Letter> GeneratorAlphabet::letter(char c) const noexcept {
  const bool upper = std::isupper(static_cast<unsigned char>(c));
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = std::lower_bound(names_.begin(), names_.end(), lower);
  if (it == names_.end() || *it != lower) return std::nullopt;
  const auto g = static_cast<unsigned>(it - names_.begin());
  return static_cast<Letter>(2 * g + (upper ? 1 : 0));
}

std::string GeneratorAlphabet::render(const Word& w) const {
  std::string out;
  out.reserve(w.size());
  for (Letter x : w.letters()) out.push_back(name(x));
  return out;
}

Word GeneratorAlphabet::parse_word(std::string_view text) const {
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' || std::isspace(static_cast<unsigned char>(c))) continue;
    auto x = letter(c);
    if (!x) throw ParseError(std::string("unknown letter '") + c + "'", i);
    raw.push_back(*x);
  }
  return free_reduce(raw);
}

std::vector<Word> cyclic_closure(const Word& r) {
  std::vector<Word> out;
  std::set<std::vector<Letter>> seen;
  const Word inv = inverse(r);
  for (const Word* base : {&r, &inv}) {
    const auto letters = base->letters();
    const std::size_t n = letters.size();
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Letter> rot(n);
      for (std::size_t i = 0; i < n; ++i) rot[i] = letters[(s + i) % n];
      if (seen.insert(rot).second) out.push_back(Word::from_reduced(rot));
    }
  }
  return out;
}

Presentation::Presentation(GeneratorAlphabet alphabet, const std::vector<Word>& relators)
    : alphabet_(std::move(alphabet)) {
  if (relators.empty()) {
    throw std::invalid_argument(
        "presentation has no relators: it is a free group and the walk on trivial words "
        "would never leave the empty word");
  }
  std::set<std::vector<Letter>> seen;
  for (std::size_t i = 0; i < relators.size(); ++i) {
    Word r = cyclically_reduce(free_reduce(relators[i].letters()));
    if (r.empty()) {
      throw std::invalid_argument("relator " + std::to_string(i + 1) +
                                  " freely reduces to the empty word");
    }
    for (Letter x : r.letters()) {
      if (x / 2 >= alphabet_.count()) throw std::invalid_argument("relator uses unknown generator");
    }
    if (r.size() % 2) parity_even_ = false;
    for (Word& c : cyclic_closure(r)) {
      if (seen.insert(c.to_vector()).second) closed_.push_back(Relator{std::move(c), i});
    }
    user_.push_back(Relator{std::move(r), i});
  }
}

std::size_t Presentation::max_relator_length() const noexcept {
  std::size_t m = 0;
  for (const auto& r : user_) m = std::max(m, r.word.size());
  return m;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!consume(token)) throw ParseError("expected '" + std::string(token) + "'", pos_);
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Cursor cur(text);
  cur.expect("gens:");
  std::vector<char> names;
  for (;;) {
    cur.skip_space();
    const char c = cur.peek();
    if (c >= 'a' && c <= 'z') {
      if (std::find(names.begin(), names.end(), c) != names.end()) {
        throw ParseError(std::string("duplicate generator '") + c + "'", cur.pos());
      }
      names.push_back(c);
      cur.advance();
    } else if (c == ',') {
      cur.advance();
    } else {
      break;
    }
  }
  if (names.empty()) throw ParseError("expected at least one generator", cur.pos());
  GeneratorAlphabet alphabet(names);
  cur.expect(";");
  cur.expect("rels:");

  std::vector<Word> relators;
  std::vector<std::size_t> starts;
  while (!cur.at_end()) {
    const std::size_t start = cur.pos();
    std::vector<Letter> raw;
    for (;;) {
      cur.skip_space();
      const char c = cur.peek();
      if (c == '\0' || c == ',') break;
      if (c == '.') {
        cur.advance();
        continue;
      }
      if (!std::isalpha(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("unexpected character '") + c + "'", cur.pos());
      }
      auto x = alphabet.letter(c);
      if (!x) throw ParseError(std::string("unknown letter '") + c + "'", cur.pos());
      raw.push_back(*x);
      cur.advance();
    }
    if (raw.empty()) throw ParseError("empty relator", start);
    if (free_reduce(raw).empty()) throw ParseError("relator freely reduces to the empty word", start);
    relators.push_back(free_reduce(raw));
    starts.push_back(start);
    if (!cur.consume(",")) break;
    if (cur.at_end()) throw ParseError("empty relator after ','", cur.pos());
  }
  if (!cur.at_end()) throw ParseError("trailing input", cur.pos());
  if (relators.empty()) {
    throw ParseError(
        "no relators: a presentation without relators is a free group, on which the walk "
        "never leaves the empty word",
        cur.pos());
  }
  return Presentation(std::move(alphabet), relators);
}

std::string render_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (char c : p.alphabet().names()) {
    out.push_back(' ');
    out.push_back(c);
  }
  out += " ; rels: ";
  bool first = true;
  for (const auto& r : p.user_relators()) {
    if (!first) out += ", ";
    first = false;
    out += p.alphabet().render(r.word);
  }
  return out;
}

namespace {

std::string commutator(std::string_view x, std::string_view y) {
  auto inv = [](std::string_view s) {
    std::string out(s.rbegin(), s.rend());
    for (char& c : out) c = std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c);
    return out;
  };
  return std::string(x) + std::string(y) + inv(x) + inv(y);
}

int require_param(std::optional<int> n, const char* preset, int minimum) {
  if (!n) throw std::invalid_argument(std::string(preset) + " needs a parameter");
  if (*n < minimum) {
    throw std::invalid_argument(std::string(preset) + " parameter must be >= " +
                                std::to_string(minimum));
  }
  return *n;
}

}  // namespace

Presentation builtin_presentation(Preset preset, std::optional<int> n) {
  std::string text;
  switch (preset) {
    case Preset::trivial_family: {
      const int k = require_param(n, "trivial_family", 1);
      text = "gens: a b ; rels: abaBAB, " + std::string(k, 'a') + std::string(k + 1, 'B');
      break;
    }
    case Preset::bs: {
      const int k = require_param(n, "bs(1,n)", 1);
      text = "gens: a t ; rels: taT" + std::string(k, 'A');
      break;
    }
    case Preset::zk: {
      const int k = require_param(n, "zk", 2);
      if (k > 26) throw std::invalid_argument("zk supports at most 26 generators");
      text = "gens:";
      for (int i = 0; i < k; ++i) text += std::string(" ") + static_cast<char>('a' + i);
      text += " ; rels: ";
      bool first = true;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (!first) text += ", ";
          first = false;
          text += commutator(std::string(1, static_cast<char>('a' + i)),
                             std::string(1, static_cast<char>('a' + j)));
        }
      }
      break;
    }
    case Preset::thompson_f:
      text = "gens: a b ; rels: " + commutator("aB", "Aba") + ", " + commutator("aB", "AAbaa");
      break;
    case Preset::surface2:
      text = "gens: a b c d ; rels: " + commutator("a", "b") + commutator("c", "d");
      break;
    case Preset::braid3:
      text = "gens: a b ; rels: abaBAB";
      break;
  }
  return parse_presentation(text);
}

Presentation preset_from_id(std::string_view id) {
  auto param = [&](std::string_view prefix) -> std::optional<int> {
    if (id.substr(0, prefix.size()) != prefix) return std::nullopt;
    const std::string rest(id.substr(prefix.size()));
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad preset parameter in '" + std::string(id) + "'");
    }
    if (used != rest.size()) throw std::invalid_argument("bad preset parameter in '" + std::string(id) + "'");
    return value;
  };
  if (auto n = param("trivial-family:")) return builtin_presentation(Preset::trivial_family, n);
  if (auto n = param("bs:1:")) return builtin_presentation(Preset::bs, n);
  if (auto n = param("zk:")) return builtin_presentation(Preset::zk, n);
  if (id == "thompson-f" || id == "f") return builtin_presentation(Preset::thompson_f);
  if (id == "surface2") return builtin_presentation(Preset::surface2);
  if (id == "braid3") return builtin_presentation(Preset::braid3);
  throw std::invalid_argument("unknown preset '" + std::string(id) + "'");
}

}  // namespace cogrowth
