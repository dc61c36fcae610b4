#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bridgeforge/bands.hpp"

namespace bridgeforge {

struct HEquivWitness {
  bool verdict = false;
  // "target-mismatch", "both-rho-empty", "equal-last-syllable" or
  // "crossed-syllable": the clause that decided the verdict.
  std::string rule;
  // When the verdict is false: an x such that exactly one of x·y1, x·y2 is a string.
  std::optional<Str> counterexample;
};

// Extensions longer than the longest relation cannot tell two strings apart.
std::size_t oracle_bound(const Presentation& p);

// Strings x with s(x) = v and |x| <= bound, the two zero-length ones included.
std::vector<Str> extensions_at(const Presentation& p, int v, std::size_t bound);

// Checkable criterion in terms of rho_r and last syllables.
HEquivWitness h_equivalent(const Presentation& p, const Str& y1, const Str& y2);
// Brute force over all extensions of length <= bound.
HEquivWitness h_equivalent_oracle(const Presentation& p, const Str& y1, const Str& y2, std::size_t bound);

struct ReductionStep {
  int band;
  Str rotation;     // the removed cyclic permutation
  std::size_t pos;  // walk position of its first letter
};

struct ReductionTrace {
  Str input, output;
  std::vector<ReductionStep> steps;
};

// Whether removing the band occurrence at walk position pos (length len) is a
// 1-step H-reduction; returns the reduced string.
std::optional<Str> h_reduction_at(const Algebra& a, const Str& y, std::size_t pos, std::size_t len);

// HRed_b: among occurrences of b inside the walk window [from, until), the
// one with the longest y1 whose removal is a 1-step H-reduction.
std::optional<ReductionStep> hred_step(const Algebra& a, const Str& y, int band, std::size_t from = 0,
                                       std::size_t until = std::string::npos);
// As hred_step, restricted to removals whose result satisfies `accept`.
std::optional<ReductionStep> hred_step_if(const Algebra& a, const Str& y, int band, std::size_t from, std::size_t until,
                                          const std::function<bool(const Str&)>& accept);
std::optional<Str> hred_b(const Algebra& a, const Str& y, int band, std::size_t from = 0);
Str hh_b(const Algebra& a, const Str& y, int band, std::size_t from = 0);

bool is_h_reduced(const Algebra& a, const Str& y, std::size_t from = 0);
bool is_h_string(const Presentation& p, const Str& y);
bool is_hereditary_h_string(const Presentation& p, const Str& y);

struct HReduction {
  Str result;
  ReductionTrace trace;
};
// Iterates hh_b over the bands present, in canonical order, to the fixpoint.
HReduction hh(const Algebra& a, const Str& y, std::size_t from = 0);

std::vector<Str> enumerate_hereditary_h_strings(const Algebra& a);

}  // namespace bridgeforge
