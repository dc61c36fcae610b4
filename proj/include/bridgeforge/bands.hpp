#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bridgeforge/strings.hpp"

namespace bridgeforge {

// Upper bound on the length of strings produced by the finite enumerations
// (band-free, skeletal, hereditary). Overridden by BRIDGEFORGE_MAXLEN.
std::size_t safety_cap();

struct Band {
  Str rep;
  std::vector<Str> rotations;  // rotations[k] starts the walk at rep.w[k]
  int inverse = -1;            // index of the inverse orbit
  std::size_t size() const { return rep.size(); }
  // Letter at integer position k of the periodic walk ...rep rep rep...,
  // with position 0 at rep.w[0].
  Letter at(long k) const {
    long n = static_cast<long>(rep.size());
    return rep.w[static_cast<std::size_t>(((k % n) + n) % n)];
  }
};

struct DomesticityReport {
  bool domestic = true;
  // Certificate when not domestic: a window state lying on two distinct
  // cycles of the factor automaton, and the letters of two such cycles.
  std::vector<Letter> shared_state;
  std::vector<Letter> cycle1, cycle2;
};

// A presentation together with its bands (representatives fixed once).
class Algebra {
 public:
  explicit Algebra(Presentation p);

  const Presentation& pres() const { return p_; }
  const std::vector<Band>& bands() const { return bands_; }
  const Band& band(int b) const { return bands_[static_cast<std::size_t>(b)]; }
  int band_count() const { return static_cast<int>(bands_.size()); }

  // Orbit index of a cyclic word, or -1 when it is no rotation of a band.
  int orbit_of(const std::vector<Letter>& w) const;
  std::string band_name(int b) const { return render(p_, bands_[static_cast<std::size_t>(b)].rep); }

 private:
  Presentation p_;
  std::vector<Band> bands_;
};

// Runs the window automaton; never throws on non-domestic input.
DomesticityReport domesticity(const Presentation& p);
// All band orbits with canonical (least written rotation) representatives;
// throws NonDomestic with a certificate.
std::vector<Band> enumerate_bands(const Presentation& p);

bool is_band_free(const Algebra& a, const Str& y);

// Occurrence of a rotation of a band at walk position pos.
struct Occurrence {
  int band;
  std::size_t pos;
};
// All occurrences starting at walk position >= from.
std::vector<Occurrence> occurrences_of(const Algebra& a, const Str& y, std::size_t from = 0);

// N(x0; b, y) where x0 is the left substring of length `from`.
int power_count(const Algebra& a, const Str& y, int band, std::size_t from = 0);
// B(x0; y) in canonical band order.
std::vector<int> bands_present(const Algebra& a, const Str& y, std::size_t from = 0);

struct OccurrenceProfile {
  std::vector<int> counts;  // indexed by band
  std::vector<int> present;
};
OccurrenceProfile occurrence_profile(const Algebra& a, const Str& y, std::size_t from = 0);

// Removal of the band occurrence at walk position pos; nullopt unless the
// remaining word is a string.
std::optional<Str> remove_at(const Algebra& a, const Str& y, std::size_t pos, std::size_t len);

// One-step b-reduction: the split with maximal |y1| whose remainder is a
// string. Occurrences must start at walk position >= from.
struct Reduction {
  Str result;
  std::size_t pos;
};
std::optional<Reduction> red_b(const Algebra& a, const Str& y, int band, std::size_t from = 0);

Str skeleton(const Algebra& a, const Str& y, std::size_t from = 0);
bool is_skeletal(const Algebra& a, const Str& y, std::size_t from = 0);

struct ExitSyllable {
  Letter letter;
  int rotation;  // v * rotations[rotation] is a string
};
std::vector<ExitSyllable> exit_syllables(const Algebra& a, int band);

// Finite enumerations; each throws InvariantBreach when the safety cap is hit.
std::vector<Str> enumerate_band_free(const Algebra& a);
std::vector<Str> enumerate_skeletal(const Algebra& a);

}  // namespace bridgeforge
