#include "bridgeforge/extended.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bridgeforge {

bool in_hammock(const Presentation& p, const Str& z, const Str& x0) {
  if (x0.empty()) {
    if (z.empty()) return z == x0;
    return src(p, z) == x0.vertex && p.sigma(z.w.front()) == -x0.sign;
  }
  return z.size() >= x0.size() && std::equal(x0.w.begin(), x0.w.end(), z.w.begin());
}

Str extension_of(const Presentation& p, const Str& z, const Str& x0) {
  if (!in_hammock(p, z, x0)) throw DifferentBase(render(p, z) + " does not end in " + render(p, x0));
  if (x0.empty()) return z;
  return factor(p, z, x0.size(), z.size() - x0.size());
}

int hammock_side(const Presentation& p, const Str& z, const Str& x0) {
  if (!in_hammock(p, z, x0)) throw DifferentBase(render(p, z) + " does not end in " + render(p, x0));
  return z.size() == x0.size() ? 0 : theta_letter(z.w[x0.size()]);
}

bool in_side(const Presentation& p, const Str& z, const Str& x0, int i) {
  if (!in_hammock(p, z, x0)) return false;
  int s = hammock_side(p, z, x0);
  return s == 0 || s == i;
}

std::vector<Arrow> weak_half_bridges(const Algebra& a, const Str& x0) {
  const Vertex base = Vertex::of_base(x0);
  std::vector<Arrow> out;
  for (const auto& u : band_free_continuations(a, x0))
    for (int b = 0; b < a.band_count(); ++b)
      if (is_arrow(a, base, Vertex::of_band(b), u)) out.push_back(Arrow{base, Vertex::of_band(b), u, ArrowKind::Half});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Arrow> half_bridges(const Algebra& a, const Str& x0, int i) {
  std::vector<Arrow> halves;
  for (const auto& u : weak_half_bridges(a, x0))
    if (arrow_side(a, u) == i) halves.push_back(u);
  auto pool = all_weak_bridges(a);
  pool.insert(pool.end(), halves.begin(), halves.end());
  std::vector<Arrow> out;
  for (const auto& u : halves)
    if (factorizations(a, u, pool).empty()) out.push_back(u);
  return out;
}

bool is_abnormal_half(const Algebra& a, const Arrow& u) {
  const auto& rep = a.band(u.target.band).rep.w;
  return u.word.size() <= rep.size() && std::equal(u.word.w.rbegin(), u.word.w.rend(), rep.rbegin());
}

std::vector<Arrow> weak_zero_bridges(const Algebra& a, const Str& x0) {
  const Presentation& p = a.pres();
  std::vector<Arrow> out;
  for (const auto& u : band_free_continuations(a, x0)) {
    Str whole = *concat(p, u, x0);
    out.push_back(Arrow{Vertex::of_base(x0), Vertex::of_trivial(Str::trivial(tgt(p, whole), eps(p, whole))), u,
                        ArrowKind::Zero});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_torsion_zero(const Algebra& a, const Arrow& u, const std::vector<Arrow>& halves) {
  if (u.word.empty()) return false;
  const Presentation& p = a.pres();
  const Str& x0 = u.source.str;
  std::vector<Letter> ux = x0.w;
  ux.insert(ux.end(), u.word.w.begin(), u.word.w.end());
  for (const auto& h : halves) {
    std::vector<Letter> x = x0.w;
    x.insert(x.end(), h.word.w.begin(), h.word.w.end());
    const auto& t = a.band(h.target.band).rep.w;
    x.insert(x.end(), t.begin(), t.end());
    if (!forks(p, ux, x)) return false;
  }
  return true;
}

std::vector<Arrow> maximal_torsion_zero_bridges(const Algebra& a, const Str& x0) {
  auto all = weak_zero_bridges(a, x0);
  auto halves = weak_half_bridges(a, x0);
  std::set<std::vector<Letter>> words;
  for (const auto& u : all) words.insert(u.word.w);
  std::vector<Arrow> out;
  for (const auto& u : all) {
    bool extendable = false;
    for (Letter l = 0; l < a.pres().letter_count() && !extendable; ++l) {
      auto w = u.word.w;
      w.push_back(l);
      extendable = words.count(w) > 0;
    }
    if (!extendable && is_torsion_zero(a, u, halves)) out.push_back(u);
  }
  return out;
}

int arrow_side(const Algebra& a, const Arrow& u) {
  if (u.kind == ArrowKind::Half) return theta_letter(concat(a.pres(), a.band(u.target.band).rep, u.word)->w.front());
  if (u.word.empty()) throw InvariantBreach("zero-length zero bridge has no side");
  return theta_letter(u.word.w.front());
}

namespace {

// A relative reduction must keep a nonempty extension of side i: x0 itself
// lies on both sides, so landing on it is not a move within H_l^i(x0).
bool lands_in_side(const Presentation& p, const Str& z, const Str& x0, int i) {
  return in_hammock(p, z, x0) && hammock_side(p, z, x0) == i;
}

void require_side(const Presentation& p, const Str& z, const Str& x0, int i) {
  if (!in_side(p, z, x0, i))
    throw NotInHammockSide(render(p, z) + " is not in side " + std::to_string(i) + " of " + render(p, x0));
}

}  // namespace

Str hh_of_path_relative(const Algebra& a, const Str& x0, int i, const BridgePath& path) {
  if (path.empty() || path.front().source != Vertex::of_base(x0)) throw InvariantBreach("relative path must start at the base");
  const Presentation& p = a.pres();
  return hh_of_path(a, path, [&](const Str& z) { return lands_in_side(p, z, x0, i); });
}

bool is_h_reduced_relative(const Algebra& a, const Str& z, const Str& x0, int i) {
  const Presentation& p = a.pres();
  require_side(p, z, x0, i);
  for (const auto& o : occurrences_of(a, z, x0.size())) {
    auto rest = h_reduction_at(a, z, o.pos, a.band(o.band).size());
    if (rest && lands_in_side(p, *rest, x0, i)) return false;
  }
  return true;
}

bool is_hereditary_relative(const Algebra& a, const Str& z, const Str& x0, int i) {
  const Presentation& p = a.pres();
  require_side(p, z, x0, i);
  std::vector<Str> prefixes;
  for (std::size_t k = x0.size() + 1; k <= z.size(); ++k) prefixes.push_back(left_sub(p, z, k));
  for (std::size_t j = 0; j < prefixes.size(); ++j)
    for (std::size_t k = j + 1; k < prefixes.size(); ++k)
      if (h_equivalent(p, prefixes[j], prefixes[k]).verdict) return false;
  for (std::size_t j = 0; j + 1 < prefixes.size(); ++j)
    if (h_equivalent(p, prefixes[j], x0).verdict && theta_letter(z.w[prefixes[j].size()]) != -i) return false;
  return true;
}

Str hh_b_relative(const Algebra& a, const Str& z, int band, const Str& x0, int i) {
  const Presentation& p = a.pres();
  require_side(p, z, x0, i);
  auto step = hred_step_if(a, z, band, x0.size(), std::string::npos, [&](const Str& r) { return lands_in_side(p, r, x0, i); });
  return step ? *remove_at(a, z, step->pos, a.band(band).size()) : z;
}

Str hh_relative(const Algebra& a, const Str& z, const Str& x0, int i) {
  Str cur = z;
  for (bool changed = true; changed;) {
    changed = false;
    for (int b : bands_present(a, cur, x0.size())) {
      Str next = hh_b_relative(a, cur, b, x0, i);
      if (next == cur) continue;
      cur = next;
      changed = true;
      break;
    }
  }
  return cur;
}

ExtendedStructure::ExtendedStructure(const ArchStructure& s, const Str& x0, int i) : s_(&s), x0_(x0), i_(i) {
  const Algebra& a = s.algebra();
  const Vertex base = base_vertex();
  auto halves = weak_half_bridges(a, x0);
  for (const auto& u : halves)
    if (arrow_side(a, u) == i) lambda_bar_.push_back(u);
  for (const auto& u : maximal_torsion_zero_bridges(a, x0))
    if (arrow_side(a, u) == i) lambda_bar_.push_back(u);

  std::map<int, std::vector<Arrow>> out_of;
  for (const auto& u : s.weak_bridges()) out_of[u.source.band].push_back(u);
  for (int b = 0; b < a.band_count(); ++b)
    for (const auto& u : maximal_torsion_reverse_half_bridges(a, b)) out_of[b].push_back(u);

  std::set<Vertex> reached;
  std::vector<int> queue;
  weak_ = lambda_bar_;
  for (const auto& u : lambda_bar_)
    if (reached.insert(u.target).second && u.target.is_band()) queue.push_back(u.target.band);
  while (!queue.empty()) {
    int b = queue.back();
    queue.pop_back();
    for (const auto& u : out_of[b]) {
      weak_.push_back(u);
      if (reached.insert(u.target).second && u.target.is_band()) queue.push_back(u.target.band);
    }
  }
  vertices_.push_back(base);
  vertices_.insert(vertices_.end(), reached.begin(), reached.end());
  std::sort(weak_.begin(), weak_.end());

  pool_ = composition_pool(a);
  pool_.insert(pool_.end(), halves.begin(), halves.end());

  std::map<Arrow, std::size_t> index;
  for (const auto& v : vertices_)
    for (auto& path : paths_from(v)) {
      Arrow u{path.front().source, path.back().target, hh(path), kind_between(path.front().source, path.back().target)};
      auto it = index.find(u);
      if (it == index.end()) {
        it = index.emplace(u, weak_arch_.size()).first;
        weak_arch_.push_back({u, {}, false});
      }
      weak_arch_[it->second].witnesses.push_back(std::move(path));
    }
  for (auto& u : weak_arch_)
    u.arch = std::all_of(u.witnesses.begin(), u.witnesses.end(), [](const BridgePath& p) { return p.size() == 1; });
  std::sort(weak_arch_.begin(), weak_arch_.end(), [](const auto& x, const auto& y) { return x.arrow < y.arrow; });
}

Str ExtendedStructure::hh(const BridgePath& path) const {
  if (path.front().source.kind == Vertex::Kind::Base) return hh_of_path_relative(algebra(), x0_, i_, path);
  return hh_of_path(algebra(), path);
}

std::vector<BridgePath> ExtendedStructure::paths_from(const Vertex& v) const {
  std::vector<BridgePath> out;
  BridgePath cur;
  std::function<void(const Vertex&)> walk = [&](const Vertex& at) {
    for (const auto& u : weak_) {
      if (u.source != at) continue;
      cur.push_back(u);
      out.push_back(cur);
      if (cur.size() > vertices_.size()) throw InvariantBreach("extended weak bridge quiver has a cycle");
      walk(u.target);
      cur.pop_back();
    }
  };
  walk(v);
  return out;
}

std::vector<Arrow> ExtendedStructure::lambda() const {
  std::vector<Arrow> out;
  for (const auto& u : lambda_bar_)
    if (std::none_of(lambda_bar_.begin(), lambda_bar_.end(),
                     [&](const Arrow& w) { return w != u && precedes(algebra(), w, u, pool_); }))
      out.push_back(u);
  return out;
}

std::optional<Arrow> ExtendedStructure::abnormal_semi() const {
  for (const auto& u : lambda())
    if (u.kind == ArrowKind::Half && is_abnormal_half(algebra(), u)) return u;
  return std::nullopt;
}

std::vector<Arrow> ExtendedStructure::ordinary_arrows() const {
  std::vector<Arrow> out;
  for (const auto& u : weak_)
    if (factorizations(algebra(), u, weak_).empty()) out.push_back(u);
  return out;
}

std::vector<Arrow> ExtendedStructure::weak_arch_arrows() const {
  std::vector<Arrow> out;
  for (const auto& u : weak_arch_) out.push_back(u.arrow);
  return out;
}

std::vector<Arrow> ExtendedStructure::arch_arrows() const {
  std::vector<Arrow> out;
  for (const auto& u : weak_arch_)
    if (u.arch) out.push_back(u.arrow);
  return out;
}

std::vector<Arrow> ExtendedStructure::semi_arrows() const {
  const Algebra& a = algebra();
  std::vector<Arrow> out = lambda();
  auto pool = composition_pool(a);
  for (const auto& u : weak_) {
    if (u.kind == ArrowKind::WeakBridge && is_semi_bridge(a, u, s_->weak_bridges())) out.push_back(u);
    if (u.kind != ArrowKind::ReverseHalf) continue;
    auto exit = analyze(a, u).beta;
    if (!exit) continue;
    auto minimal = lambda_minimal(a, *exit, u.source.band, pool).reverse_half;
    if (std::find(minimal.begin(), minimal.end(), u) != minimal.end()) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const ExtendedArch* ExtendedStructure::find(const Arrow& u) const {
  auto it = std::lower_bound(weak_arch_.begin(), weak_arch_.end(), u,
                             [](const ExtendedArch& x, const Arrow& y) { return x.arrow < y; });
  return it != weak_arch_.end() && it->arrow == u ? &*it : nullptr;
}

bool ExtendedStructure::is_arch(const Arrow& u) const {
  const auto* w = find(u);
  return w && w->arch;
}

BridgePath ExtendedStructure::factor_arch(const Arrow& u) const {
  const auto* w = find(u);
  if (!w) throw NotAWeakArchBridge(arrow_name(algebra(), u) + " is not an extended weak arch arrow");
  std::vector<BridgePath> found;
  for (const auto& p : w->witnesses)
    if (std::all_of(p.begin(), p.end(), [&](const Arrow& x) { return is_arch(x); })) found.push_back(p);
  if (found.size() != 1)
    throw InvariantBreach(arrow_name(algebra(), u) + " has " + std::to_string(found.size()) + " arch factorizations");
  return found.front();
}

Arrow ExtendedStructure::compose_h(const Arrow& u2, const Arrow& u1) const {
  if (u1.target != u2.source) throw InvariantBreach("compose_h on non-composable arrows");
  BridgePath path = factor_arch(u1);
  for (const auto& x : factor_arch(u2)) path.push_back(x);
  return Arrow{u1.source, u2.target, hh(path), kind_between(u1.source, u2.target)};
}

BridgeQuiver ExtendedStructure::quiver(const std::vector<Arrow>& arrows) const {
  BridgeQuiver q;
  q.vertices = vertices_;
  q.arrows = arrows;
  std::sort(q.arrows.begin(), q.arrows.end());
  return q;
}

int hammock_compare(const Presentation& p, const Str& x0, const Str& y, const Str& z) {
  if (!in_hammock(p, y, x0) || !in_hammock(p, z, x0)) throw DifferentBase("compared strings do not share the base");
  const std::size_t n0 = x0.size();
  std::size_t k = n0;
  while (k < y.size() && k < z.size() && y.w[k] == z.w[k]) ++k;
  if (k == y.size() && k == z.size()) return 0;
  if (k == y.size()) return theta_letter(z.w[k]) > 0 ? -1 : 1;
  if (k == z.size()) return theta_letter(y.w[k]) > 0 ? 1 : -1;
  int ty = theta_letter(y.w[k]), tz = theta_letter(z.w[k]);
  if (ty == tz) throw InvariantBreach("fork with two continuations of the same sign");
  return ty > tz ? 1 : -1;
}

std::vector<HammockElement> hammock_segment(const Algebra& a, const Str& x0, std::size_t maxlen) {
  const Presentation& p = a.pres();
  std::vector<HammockElement> out;
  for (const auto& z : enumerate_left_extensions(p, x0, maxlen))
    out.push_back({z, hammock_side(p, z, x0), occurrence_profile(a, z, x0.size())});
  std::sort(out.begin(), out.end(),
            [&](const HammockElement& l, const HammockElement& r) { return hammock_compare(p, x0, l.word, r.word) < 0; });
  return out;
}

}  // namespace bridgeforge
