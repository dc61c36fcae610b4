#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "bridgeforge/bridges.hpp"
#include "bridgeforge/hred.hpp"

namespace bridgeforge {

// A path (u1, ..., un) of arrows, u1 first. Sources may be bands or a base
// string x0; targets may be bands or zero-length strings.
using BridgePath = std::vector<Arrow>;

std::string path_name(const Algebra& a, const BridgePath& path);

// Walk word of the frame t(un)·un·…·t(u1)·u1·s(u1) built from band
// representatives (x0 at a base source, nothing at a zero-length target);
// throws InvariantBreach if it is not a string.
Str path_frame(const Algebra& a, const BridgePath& path);

// hh(P): skeleton of the frame, then hh at each intermediate band (the one
// nearest the target first), with the outer copies stripped. Reductions
// whose result fails `accept` are skipped.
Str hh_of_path(const Algebra& a, const BridgePath& path, const std::function<bool(const Str&)>& accept = nullptr);

// Word-level ∘_H: frame t(u2)·u2·b·u1·s(u1), skeleton, hh at the junction
// band b, then at every other inner band until nothing reduces.
Arrow compose_h_words(const Algebra& a, const Arrow& u2, const Arrow& u1);

struct WeakArchBridge {
  Arrow arrow;
  std::vector<BridgePath> witnesses;  // every weak bridge path with hh = word
  bool arch = false;                  // all witnesses have length 1
};

struct NotAWeakArchBridge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The weak bridge quiver together with everything derived from hh on its
// paths. Built once per algebra; all queries are lookups.
class ArchStructure {
 public:
  explicit ArchStructure(const Algebra& a);

  const Algebra& algebra() const { return *a_; }
  const std::vector<Arrow>& weak_bridges() const { return weak_; }
  const std::vector<WeakArchBridge>& weak_arch() const { return weak_arch_; }
  std::vector<Arrow> weak_arch_arrows() const;
  std::vector<Arrow> arch_bridges() const;

  const WeakArchBridge* find(const Arrow& u) const;
  bool is_weak_arch_bridge(const Arrow& u) const { return find(u) != nullptr; }
  bool is_arch_bridge(const Arrow& u) const;

  // All paths of arch bridges whose hh is u; exactly one when the
  // factorization is unique. Throws NotAWeakArchBridge.
  std::vector<BridgePath> arch_paths_to(const Arrow& u) const;
  BridgePath factor_arch(const Arrow& u) const;

  // u2 ∘_H u1 := hh(P1 + P2) for the arch factorizations P1, P2.
  Arrow compose_h(const Arrow& u2, const Arrow& u1) const;

  // Paths of the weak bridge quiver from band s to band t.
  std::vector<BridgePath> paths(int s, int t) const;

 private:
  const Algebra* a_;
  std::vector<Arrow> weak_;
  std::vector<WeakArchBridge> weak_arch_;
  std::map<std::tuple<int, int, std::vector<Letter>>, std::size_t> index_;
};

BridgeQuiver build_weak_arch_quiver(const ArchStructure& s);
BridgeQuiver build_arch_quiver(const ArchStructure& s);
BridgeQuiver build_semi_quiver(const ArchStructure& s);

// Words y with b2·y·b1 a skeletal string that are H-reduced there: the
// weak arch bridges b1 -> b2 recognised without paths.
std::vector<Str> h_reduced_skeletal_frames(const Algebra& a, int b1, int b2);

// Every nontrivial factorization u = u2 ∘ u1 with u1 a weak bridge
// changes the exit: β(u) ≠ β(u1).
bool is_semi_bridge(const Algebra& a, const Arrow& u, const std::vector<Arrow>& weak);

// u ◁ u2: u2 = w ∘ u for some weak bridge or weak reverse half bridge w.
bool precedes(const Algebra& a, const Arrow& u, const Arrow& u2, const std::vector<Arrow>& pool);

// ◁-minimal elements of λ̄(v).
struct Lambda {
  std::vector<Arrow> bridges, reverse_half;
};
Lambda lambda_minimal(const Algebra& a, Letter v, int b, const std::vector<Arrow>& pool);

// Weak bridges together with the weak reverse half bridges of every band.
std::vector<Arrow> composition_pool(const Algebra& a);

}  // namespace bridgeforge
