#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bridgeforge {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string axiom, const std::string& detail)
      : std::runtime_error(axiom + ": " + detail), axiom_(std::move(axiom)) {}
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

class NonDomestic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a computed object violates a structural invariant the library
// relies on (e.g. a safety cap on an enumeration that should be finite).
class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArrowSpec {
  std::string name;
  int src = -1;
  int tgt = -1;
  int sigma = 0;
  int eps = 0;
};

// A letter is an arrow or its formal inverse, encoded as 2*arrow + inverted.
using Letter = int;
inline int arrow_of(Letter l) { return l >> 1; }
inline bool is_inverse(Letter l) { return (l & 1) != 0; }
inline Letter make_letter(int arrow, bool inverse) { return 2 * arrow + (inverse ? 1 : 0); }
inline Letter inverse_letter(Letter l) { return l ^ 1; }

struct SignMaps {
  std::vector<int> sigma;
  std::vector<int> epsilon;
};

// Quiver, monomial relations and sign maps of a string algebra.
// Relations are stored in traversal order: the first arrow walked comes first,
// so the written relation "cb" is stored as {b, c}.
class Presentation {
 public:
  std::string name;
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
  std::vector<std::vector<int>> relations;
  // Band representatives requested by the input, as written literals.
  std::vector<std::string> band_literals;
  bool signs_given = false;

  int vertex_index(const std::string& v) const;
  int arrow_index(const std::string& a) const;
  int letter_count() const { return 2 * static_cast<int>(arrows.size()); }

  int src(Letter l) const { return is_inverse(l) ? arrows[arrow_of(l)].tgt : arrows[arrow_of(l)].src; }
  int tgt(Letter l) const { return is_inverse(l) ? arrows[arrow_of(l)].src : arrows[arrow_of(l)].tgt; }
  int sigma(Letter l) const { return is_inverse(l) ? arrows[arrow_of(l)].eps : arrows[arrow_of(l)].sigma; }
  int eps(Letter l) const { return is_inverse(l) ? arrows[arrow_of(l)].sigma : arrows[arrow_of(l)].eps; }

  // True when every arrow name is a single lowercase letter, enabling the
  // compact "jiFc" notation.
  bool compact_names() const { return compact_; }
  std::size_t max_relation_length() const { return max_rel_; }

  // Forbidden factors: relations and their inverses, as letter words in
  // traversal order.
  const std::vector<std::vector<Letter>>& forbidden() const { return forbidden_; }

  // Recomputes derived tables; called by the parser and after sign derivation.
  void finalize();

  bool operator==(const Presentation& o) const;

 private:
  bool compact_ = false;
  std::size_t max_rel_ = 0;
  std::vector<std::vector<Letter>> forbidden_;
};

Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
std::string serialize_presentation(const Presentation& p);

// Checks every string-algebra axiom; throws ValidationError naming the axiom.
void validate_presentation(const Presentation& p);

struct SignDerivation {
  std::optional<SignMaps> maps;
  // When no assignment exists: the constraint chain that closes an odd cycle.
  std::vector<std::string> conflict;
};

// Finds a sign assignment by backtracking over arrows in lexicographic name
// order, trying +1 before -1.
SignDerivation derive_sign_maps(const Presentation& p);

}  // namespace bridgeforge
