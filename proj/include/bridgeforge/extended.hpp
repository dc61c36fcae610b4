#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bridgeforge/arch.hpp"

namespace bridgeforge {

struct NotInHammockSide : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DifferentBase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Membership of z in H_l(x0), i.e. z = y·x0 for some string y.
bool in_hammock(const Presentation& p, const Str& z, const Str& x0);
// The extension y of z = y·x0 (zero-length when z = x0).
Str extension_of(const Presentation& p, const Str& z, const Str& x0);
// 0 for x0 itself, otherwise θ of the extension. Throws DifferentBase.
int hammock_side(const Presentation& p, const Str& z, const Str& x0);
// z ∈ H_l^i(x0).
bool in_side(const Presentation& p, const Str& z, const Str& x0, int i);

// Weak half bridges x0 -> b for every band b, zero-length ones included.
std::vector<Arrow> weak_half_bridges(const Algebra& a, const Str& x0);

// The side of H_l(x0) an arrow out of x0 generates: θ(t(u)·u) for half
// bridges, θ(u) for zero bridges.
int arrow_side(const Algebra& a, const Arrow& u);
// Weak half bridges of side i that are not w ∘ u with u a weak half bridge
// of side i and w a weak bridge.
std::vector<Arrow> half_bridges(const Algebra& a, const Str& x0, int i);
// u is a right substring of the target band's representative.
bool is_abnormal_half(const Algebra& a, const Arrow& u);

// Weak zero bridges x0 -> 1_(t(u·x0), ε(u·x0)).
std::vector<Arrow> weak_zero_bridges(const Algebra& a, const Str& x0);
bool is_torsion_zero(const Algebra& a, const Arrow& u, const std::vector<Arrow>& halves);
std::vector<Arrow> maximal_torsion_zero_bridges(const Algebra& a, const Str& x0);

// hh(x0; P) for a path starting at x0: reductions stay in H_l^i(x0).
Str hh_of_path_relative(const Algebra& a, const Str& x0, int i, const BridgePath& path);

bool is_h_reduced_relative(const Algebra& a, const Str& z, const Str& x0, int i);
bool is_hereditary_relative(const Algebra& a, const Str& z, const Str& x0, int i);
Str hh_b_relative(const Algebra& a, const Str& z, int band, const Str& x0, int i);
// Iterated relative reduction to its fixpoint.
Str hh_relative(const Algebra& a, const Str& z, const Str& x0, int i);

struct ExtendedArch {
  Arrow arrow;
  std::vector<BridgePath> witnesses;
  bool arch = false;
};

// Q̄_i(x0) and the quivers derived from it.
class ExtendedStructure {
 public:
  ExtendedStructure(const ArchStructure& s, const Str& x0, int i);

  const Algebra& algebra() const { return s_->algebra(); }
  const Str& base() const { return x0_; }
  int side() const { return i_; }
  Vertex base_vertex() const { return Vertex::of_base(x0_); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  // λ̄_i(x0): weak half and maximal torsion zero bridges of side i.
  const std::vector<Arrow>& lambda_bar() const { return lambda_bar_; }
  // ◁-minimal elements of λ̄_i(x0).
  std::vector<Arrow> lambda() const;
  std::optional<Arrow> abnormal_semi() const;

  const std::vector<Arrow>& weak_arrows() const { return weak_; }
  std::vector<Arrow> ordinary_arrows() const;
  const std::vector<ExtendedArch>& weak_arch() const { return weak_arch_; }
  std::vector<Arrow> weak_arch_arrows() const;
  std::vector<Arrow> arch_arrows() const;
  std::vector<Arrow> semi_arrows() const;

  const ExtendedArch* find(const Arrow& u) const;
  bool is_arch(const Arrow& u) const;
  BridgePath factor_arch(const Arrow& u) const;
  // hh(P1 + P2) for the arch factorizations of u1 (from x0) and u2.
  Arrow compose_h(const Arrow& u2, const Arrow& u1) const;

  Str hh(const BridgePath& path) const;
  std::vector<BridgePath> paths_from(const Vertex& v) const;

  BridgeQuiver quiver(const std::vector<Arrow>& arrows) const;

 private:
  const ArchStructure* s_;
  Str x0_;
  int i_;
  std::vector<Vertex> vertices_;
  std::vector<Arrow> lambda_bar_, weak_, pool_;
  std::vector<ExtendedArch> weak_arch_;
};

struct HammockElement {
  Str word;
  int side = 0;  // 0 for x0
  OccurrenceProfile profile;
};

// <_l on H_l(x0): -1, 0 or 1. Throws DifferentBase.
int hammock_compare(const Presentation& p, const Str& x0, const Str& y, const Str& z);
// Elements with extension length <= maxlen, sorted by <_l.
std::vector<HammockElement> hammock_segment(const Algebra& a, const Str& x0, std::size_t maxlen);

}  // namespace bridgeforge
