#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bridgeforge/bands.hpp"

namespace bridgeforge {

// A vertex of a (possibly extended) bridge quiver: a band orbit, the base
// string x0 of an extended quiver, or a zero-length target 1_(v,j).
struct Vertex {
  enum class Kind { Band, Base, Trivial };
  Kind kind = Kind::Band;
  int band = -1;
  Str str;  // x0 for Base, 1_(v,j) for Trivial

  static Vertex of_band(int b) { return Vertex{Kind::Band, b, {}}; }
  static Vertex of_base(const Str& x0) { return Vertex{Kind::Base, -1, x0}; }
  static Vertex of_trivial(const Str& t) { return Vertex{Kind::Trivial, -1, t}; }
  bool is_band() const { return kind == Kind::Band; }
  bool operator==(const Vertex& o) const;
  bool operator!=(const Vertex& o) const { return !(*this == o); }
  bool operator<(const Vertex& o) const;
};

enum class ArrowKind { WeakBridge, Half, ReverseHalf, Zero };

struct Arrow {
  Vertex source, target;
  Str word;
  ArrowKind kind = ArrowKind::WeakBridge;
  bool operator==(const Arrow& o) const { return source == o.source && target == o.target && word == o.word; }
  bool operator!=(const Arrow& o) const { return !(*this == o); }
  bool operator<(const Arrow& o) const;
};

std::string vertex_name(const Algebra& a, const Vertex& v);
std::string arrow_name(const Algebra& a, const Arrow& u);

// Whether `word` is an arrow of the given kind between the given vertices:
// band-free, and the word glued to its endpoint strings is a string.
bool is_arrow(const Algebra& a, const Vertex& s, const Vertex& t, const Str& word);
ArrowKind kind_between(const Vertex& s, const Vertex& t);

// Word of the context string a vertex stands for (band representative, x0,
// or the trivial string).
Str context_of(const Algebra& a, const Vertex& v);

// All band-free strings u such that u·context is a string, including the
// zero-length one 1_(t(context), eps(context)).
std::vector<Str> band_free_continuations(const Algebra& a, const Str& context);

std::vector<Arrow> weak_bridges(const Algebra& a, int b1, int b2, bool include_trivial = false);
std::vector<Arrow> all_weak_bridges(const Algebra& a);

enum class ComposeFailure {
  None,
  TargetMismatch,
  NotAString,
  ReductionNonexistent,
  ReductionNotBandFree,
  ReductionNotArrow,
  ContainsAnotherBand,
  NotAnArrow,
};
std::string failure_tag(ComposeFailure f);

struct Composition {
  std::optional<Arrow> result;
  ComposeFailure failure = ComposeFailure::None;
  bool reduced = false;  // result came from Red_{t(u1)}
  explicit operator bool() const { return result.has_value(); }
};
// The partial composition u2 ∘ u1 (u1 first).
Composition compose(const Algebra& a, const Arrow& u2, const Arrow& u1);

// Position data of an arrow inside its frame: the source context (a band
// copy or x0), the word, then the target context (a band copy or nothing).
// Positions are walk indices into that frame.
struct ArrowData {
  bool normal = true;
  std::optional<Letter> beta, alpha;
  long beta_pos = 0, alpha_pos = 0;
  Str interior;  // u^o when normal, u^c when abnormal
  std::optional<Str> b_up_alpha, b_low_alpha, b_up_beta, b_low_beta;
  // Abnormal weak bridges only.
  std::optional<Str> u_e, u_up_beta, u_low_beta, u_up_alpha, u_low_alpha;
};
ArrowData analyze(const Algebra& a, const Arrow& u);

// Factorizations u = u2 ∘ u1 with both factors taken from `pool`.
std::vector<std::pair<Arrow, Arrow>> factorizations(const Algebra& a, const Arrow& u, const std::vector<Arrow>& pool);
bool is_bridge(const Algebra& a, const Arrow& u, const std::vector<Arrow>& pool);

struct BridgeQuiver {
  std::vector<Vertex> vertices;
  std::vector<Arrow> arrows;
  bool acyclic() const;
};
BridgeQuiver build_weak_bridge_quiver(const Algebra& a);
BridgeQuiver build_bridge_quiver(const Algebra& a);

// Weak reverse half bridges b -> 1_(t(u), eps(u)).
std::vector<Arrow> weak_reverse_half_bridges(const Algebra& a, int b);
bool forks(const Presentation& p, const std::vector<Letter>& x1, const std::vector<Letter>& x2);
bool is_torsion_reverse_half(const Algebra& a, const Arrow& u, const std::vector<Arrow>& weak);
std::vector<Arrow> maximal_torsion_reverse_half_bridges(const Algebra& a, int b);

struct LambdaBar {
  std::vector<Arrow> bridges;        // weak bridges with exit v
  std::vector<Arrow> reverse_half;   // maximal torsion weak reverse half bridges with exit v
  std::optional<Arrow> abnormal;     // the abnormal element, when v is abnormal
  std::size_t abnormal_count = 0;
};
LambdaBar lambda_bar(const Algebra& a, Letter v, int b);
bool is_abnormal_exit(const Algebra& a, Letter v, int b);
// v ⊥ v' on band b.
bool incidence(const Algebra& a, Letter v, Letter v2, int b);

// Predicted (complemented) interior of u2 ∘ u1 from the data of the factors.
// Needs α(u1) and β(u2); throws InvariantBreach otherwise.
struct CasePrediction {
  std::string label;   // "I", "II(1)", ..., "IV(2)"
  bool normal = true;  // predicted kind of the composite
  std::optional<Str> interior;
  ArrowData direct;    // computed from the composite itself
  bool agrees = false;
};
// Requires α(u1), β(u2), and a composite that is not a zero bridge nor a
// half bridge without entry; throws InvariantBreach otherwise.
CasePrediction interiors_of_composition(const Algebra& a, const Arrow& u2, const Arrow& u1);

}  // namespace bridgeforge
