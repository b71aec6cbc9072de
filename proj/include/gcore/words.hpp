#ifndef GCORE_WORDS_HPP
#define GCORE_WORDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcore {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};
// Raised when a certified theorem-level invariant fails; always a bug.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Ordered alphabet of free-group generators.  Rank is at least 2;
/// degenerate rank-1 splittings are rejected at construction.
class Basis {
 public:
  Basis(std::vector<std::string> symbols);

  int rank() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<int> index_of(const std::string& name) const;

  bool operator==(const Basis& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
};

// A letter is +(i+1) for generator i, -(i+1) for its inverse.
using Letter = std::int32_t;

inline Letter letter_of(int gen, bool positive) { return positive ? gen + 1 : -(gen + 1); }
inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline bool positive(Letter l) { return l > 0; }
inline Letter inverse(Letter l) { return -l; }

/// Freely reduced word.  Construction normalizes, so every Word held
/// anywhere in the library is a geodesic representative.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word generator(int gen) { return Word({letter_of(gen, true)}); }

  bool trivial() const { return letters_.empty(); }
  int length() const { return static_cast<int>(letters_.size()); }
  const std::vector<Letter>& letters() const { return letters_; }

  Word inverse() const;
  Word operator*(const Word& other) const;

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }
  bool operator<(const Word& o) const;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of a raw letter sequence.
std::vector<Letter> reduce_letters(const std::vector<Letter>& raw);

/// Renders as whitespace-separated signed symbols, e.g. "a b^-1".
std::string to_string(const Word& w, const Basis& basis);

/// Parses the serialization produced by to_string.  Unknown symbols are
/// input errors.  The empty string is the identity.
Word parse_word(const std::string& text, const Basis& basis);

/// Endomorphism of a free group given by generator images.
class BasisMap {
 public:
  BasisMap() = default;
  BasisMap(Basis basis, std::vector<Word> images);

  static BasisMap identity(const Basis& basis);

  const Basis& basis() const { return basis_; }
  const Word& image(int gen) const { return images_.at(gen); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  BasisMap compose_after(const BasisMap& inner) const;  // this ∘ inner

  bool operator==(const BasisMap& o) const { return images_ == o.images_; }

 private:
  Basis basis_{std::vector<std::string>{"a", "b"}};
  std::vector<Word> images_;
};

/// Whether the endomorphism sending each generator to its image is an
/// automorphism.  Decided by Stallings folding of the wedge of the
/// images: the map is surjective exactly when the folded graph is the
/// rose on the full alphabet, and a surjective endomorphism of a free
/// group of finite rank is injective.
bool is_pi1_isomorphism(const BasisMap& h);

/// Inverse of an automorphism, found by Nielsen-reducing the image
/// tuple while recording the elementary moves.  Throws input_error if
/// the map is not an automorphism.
BasisMap invert_automorphism(const BasisMap& phi);

}  // namespace gcore

#endif
