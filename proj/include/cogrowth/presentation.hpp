#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogrowth/word.hpp"

namespace cogrowth {

/// Raised for malformed presentation text; carries the byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// p generators, each a lowercase name; letters 2g / 2g+1 are g and g^-1.
class GeneratorAlphabet {
 public:
  GeneratorAlphabet() = default;
  /// Names must be distinct lowercase ASCII letters; they are kept sorted.
  explicit GeneratorAlphabet(std::vector<char> names);

  unsigned count() const noexcept { return static_cast<unsigned>(names_.size()); }
  unsigned size() const noexcept { return 2 * count(); }  // |S| = 2p
  char name(Letter x) const noexcept;                      // 'a' or 'A'
  std::optional<Letter> letter(char c) const noexcept;
  const std::vector<char>& names() const noexcept { return names_; }

  std::string render(const Word& w) const;
  Word parse_word(std::string_view text) const;  // free-reduces

  friend bool operator==(const GeneratorAlphabet&, const GeneratorAlphabet&) = default;

 private:
  std::vector<char> names_;
};

struct Relator {
  Word word;
  std::size_t origin = 0;  // index into Presentation::user_relators()

  friend bool operator==(const Relator&, const Relator&) = default;
};

/// Finite presentation with relators closed under inversion and cyclic
/// permutation. Immutable once built.
class Presentation {
 public:
  /// Relators are freely and cyclically reduced here. Throws
  /// std::invalid_argument on an empty relator set or a relator that
  /// reduces to the empty word.
  Presentation(GeneratorAlphabet alphabet, const std::vector<Word>& relators);

  const GeneratorAlphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Relator>& user_relators() const noexcept { return user_; }
  const std::vector<Relator>& closed_relators() const noexcept { return closed_; }
  bool parity_even() const noexcept { return parity_even_; }
  std::size_t max_relator_length() const noexcept;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  GeneratorAlphabet alphabet_;
  std::vector<Relator> user_;
  std::vector<Relator> closed_;
  bool parity_even_ = true;
};

/// All rotations of r and of r^-1 (r cyclically reduced), deduplicated,
/// in first-seen order.
std::vector<Word> cyclic_closure(const Word& r);

/// `gens: a b ; rels: abAB, aB.Aba`
Presentation parse_presentation(std::string_view text);

/// Canonical text: sorted generators, user relator order preserved.
std::string render_presentation(const Presentation& p);

enum class Preset { trivial_family, bs, zk, thompson_f, surface2, braid3 };

/// The presentations used in the experiments:
///   trivial_family(n) = <a,b | abab^-1a^-1b^-1, a^n b^-(n+1)>
///   bs(n)             = <a,t | t a t^-1 a^-n>          (BS(1,n))
///   zk(k)             = <a,b,... | all [x_i,x_j]>      (Z^k, k >= 2)
///   thompson_f        = <a,b | [ab^-1,a^-1ba], [ab^-1,a^-2ba^2]>
///   surface2          = <a,b,c,d | [a,b][c,d]>
///   braid3            = <a,b | aba = bab>
Presentation builtin_presentation(Preset preset, std::optional<int> n = std::nullopt);

/// Parses identifiers such as "trivial-family:15", "bs:1:7", "zk:2",
/// "thompson-f", "surface2", "braid3".
Presentation preset_from_id(std::string_view id);

}  // namespace cogrowth
