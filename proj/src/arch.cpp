#include "bridgeforge/arch.hpp"

#include <algorithm>
#include <functional>

namespace bridgeforge {

namespace {

const Str& rep_of(const Algebra& a, const Vertex& v) { return a.band(v.band).rep; }

// The string a path starts from (band copy or x0) and the one it ends in
// (band copy, or nothing for a zero-length target).
Str source_context(const Algebra& a, const Vertex& v) { return context_of(a, v); }
std::vector<Letter> target_word(const Algebra& a, const Vertex& v) { return v.is_band() ? a.band(v.band).rep.w : std::vector<Letter>{}; }

Str glue(const Algebra& a, const Str& x, const Str& y) {
  auto z = concat(a.pres(), x, y);
  if (!z) throw InvariantBreach("frame is not a string: " + render(a.pres(), x) + " | " + render(a.pres(), y));
  return *z;
}

bool starts_with(const Str& y, const Str& prefix) {
  return y.size() >= prefix.size() && std::equal(prefix.w.begin(), prefix.w.end(), y.w.begin());
}

bool ends_with(const Str& y, const std::vector<Letter>& suffix) {
  return y.size() >= suffix.size() && std::equal(suffix.rbegin(), suffix.rend(), y.w.rbegin());
}

// Removes the outer copies of a reduced frame.
Str strip(const Algebra& a, const Str& y, const Str& s, const std::vector<Letter>& t) {
  if (y.size() < s.size() + t.size() || !starts_with(y, s) || !ends_with(y, t))
    throw InvariantBreach("outer band copies lost while reducing " + render(a.pres(), y));
  return factor(a.pres(), y, s.size(), y.size() - s.size() - t.size());
}

// One hh_b step confined to the inner window of a frame.
bool reduce_inner(const Algebra& a, Str& y, int band, std::size_t lo, std::size_t hi_margin,
                  const std::function<bool(const Str&)>& accept = nullptr) {
  auto step = hred_step_if(a, y, band, lo, y.size() - hi_margin, accept);
  if (!step) return false;
  y = *remove_at(a, y, step->pos, a.band(band).size());
  return true;
}

Arrow arrow_of(int s, int t, const Str& w) { return Arrow{Vertex::of_band(s), Vertex::of_band(t), w, ArrowKind::WeakBridge}; }

bool is_identity(const Arrow& u) { return u.source == u.target && u.word.empty(); }

}  // namespace

std::string path_name(const Algebra& a, const BridgePath& path) {
  std::string out = "(";
  for (std::size_t j = 0; j < path.size(); ++j) out += (j ? ", " : "") + render(a.pres(), path[j].word);
  return out + ")";
}

Str path_frame(const Algebra& a, const BridgePath& path) {
  if (path.empty()) throw InvariantBreach("empty bridge path");
  Str y = source_context(a, path.front().source);
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (j > 0 && path[j].source != path[j - 1].target) throw InvariantBreach("bridge path is not composable");
    y = glue(a, path[j].word, y);
    if (path[j].target.is_band()) y = glue(a, rep_of(a, path[j].target), y);
  }
  return y;
}

Str hh_of_path(const Algebra& a, const BridgePath& path, const std::function<bool(const Str&)>& accept) {
  const Vertex& source = path.front().source;
  const Str s = source_context(a, source);
  const std::vector<Letter> t = target_word(a, path.back().target);
  const std::size_t lo = source.is_band() ? 0 : s.size();
  Str y = skeleton(a, path_frame(a, path), lo);
  for (std::size_t j = path.size() - 1; j-- > 0;) reduce_inner(a, y, path[j].target.band, s.size(), t.size(), accept);
  if (accept && !accept(y)) throw InvariantBreach("reduced frame left the hammock side: " + render(a.pres(), y));
  return strip(a, y, s, t);
}

Arrow compose_h_words(const Algebra& a, const Arrow& u2, const Arrow& u1) {
  if (u1.target != u2.source) throw InvariantBreach("compose_h on non-composable arrows");
  if (is_identity(u1)) return u2;
  if (is_identity(u2)) return u1;
  const Str& s = rep_of(a, u1.source);
  const std::vector<Letter>& t = rep_of(a, u2.target).w;
  Str y = skeleton(a, path_frame(a, {u1, u2}));
  reduce_inner(a, y, u1.target.band, s.size(), t.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (int b : bands_present(a, y, s.size())) {
      if (b == u1.source.band || b == u2.target.band) continue;
      if ((changed = reduce_inner(a, y, b, s.size(), t.size()))) break;
    }
  }
  return arrow_of(u1.source.band, u2.target.band, strip(a, y, s, t));
}

ArchStructure::ArchStructure(const Algebra& a) : a_(&a), weak_(all_weak_bridges(a)) {
  for (int s = 0; s < a.band_count(); ++s)
    for (int t = 0; t < a.band_count(); ++t)
      for (auto& path : paths(s, t)) {
        Str w = hh_of_path(a, path);
        auto key = std::make_tuple(s, t, w.w);
        auto it = index_.find(key);
        if (it == index_.end()) {
          it = index_.emplace(key, weak_arch_.size()).first;
          weak_arch_.push_back({arrow_of(s, t, w), {}, false});
        }
        weak_arch_[it->second].witnesses.push_back(std::move(path));
      }
  for (auto& u : weak_arch_)
    u.arch = std::all_of(u.witnesses.begin(), u.witnesses.end(), [](const BridgePath& p) { return p.size() == 1; });
  std::sort(weak_arch_.begin(), weak_arch_.end(), [](const auto& x, const auto& y) { return x.arrow < y.arrow; });
  index_.clear();
  for (std::size_t k = 0; k < weak_arch_.size(); ++k) {
    const Arrow& u = weak_arch_[k].arrow;
    index_[std::make_tuple(u.source.band, u.target.band, u.word.w)] = k;
  }
}

std::vector<BridgePath> ArchStructure::paths(int s, int t) const {
  std::vector<BridgePath> out;
  BridgePath cur;
  std::function<void(int)> walk = [&](int at) {
    for (const auto& u : weak_) {
      if (u.source.band != at) continue;
      cur.push_back(u);
      if (u.target.band == t) out.push_back(cur);
      if (cur.size() > static_cast<std::size_t>(a_->band_count())) throw InvariantBreach("weak bridge quiver has a cycle");
      walk(u.target.band);
      cur.pop_back();
    }
  };
  walk(s);
  return out;
}

std::vector<Arrow> ArchStructure::weak_arch_arrows() const {
  std::vector<Arrow> out;
  for (const auto& u : weak_arch_) out.push_back(u.arrow);
  return out;
}

std::vector<Arrow> ArchStructure::arch_bridges() const {
  std::vector<Arrow> out;
  for (const auto& u : weak_arch_)
    if (u.arch) out.push_back(u.arrow);
  return out;
}

const WeakArchBridge* ArchStructure::find(const Arrow& u) const {
  if (!u.source.is_band() || !u.target.is_band()) return nullptr;
  auto it = index_.find(std::make_tuple(u.source.band, u.target.band, u.word.w));
  return it == index_.end() ? nullptr : &weak_arch_[it->second];
}

bool ArchStructure::is_arch_bridge(const Arrow& u) const {
  const auto* w = find(u);
  return w && w->arch;
}

std::vector<BridgePath> ArchStructure::arch_paths_to(const Arrow& u) const {
  const auto* w = find(u);
  if (!w) throw NotAWeakArchBridge(arrow_name(*a_, u) + " is not a weak arch bridge");
  std::vector<BridgePath> out;
  for (const auto& p : w->witnesses)
    if (std::all_of(p.begin(), p.end(), [&](const Arrow& x) { return is_arch_bridge(x); })) out.push_back(p);
  return out;
}

BridgePath ArchStructure::factor_arch(const Arrow& u) const {
  auto ps = arch_paths_to(u);
  if (ps.size() != 1)
    throw InvariantBreach(arrow_name(*a_, u) + " has " + std::to_string(ps.size()) + " arch factorizations");
  return ps.front();
}

Arrow ArchStructure::compose_h(const Arrow& u2, const Arrow& u1) const {
  if (u1.target != u2.source) throw InvariantBreach("compose_h on non-composable arrows");
  if (is_identity(u1)) return u2;
  if (is_identity(u2)) return u1;
  BridgePath path = factor_arch(u1);
  for (const auto& x : factor_arch(u2)) path.push_back(x);
  return arrow_of(u1.source.band, u2.target.band, hh_of_path(*a_, path));
}

namespace {

BridgeQuiver quiver_of(const Algebra& a, std::vector<Arrow> arrows) {
  BridgeQuiver q;
  for (int b = 0; b < a.band_count(); ++b) q.vertices.push_back(Vertex::of_band(b));
  std::sort(arrows.begin(), arrows.end());
  q.arrows = std::move(arrows);
  return q;
}

}  // namespace

BridgeQuiver build_weak_arch_quiver(const ArchStructure& s) { return quiver_of(s.algebra(), s.weak_arch_arrows()); }

BridgeQuiver build_arch_quiver(const ArchStructure& s) { return quiver_of(s.algebra(), s.arch_bridges()); }

BridgeQuiver build_semi_quiver(const ArchStructure& s) {
  std::vector<Arrow> semi;
  for (const auto& u : s.weak_bridges())
    if (is_semi_bridge(s.algebra(), u, s.weak_bridges())) semi.push_back(u);
  return quiver_of(s.algebra(), semi);
}

std::vector<Str> h_reduced_skeletal_frames(const Algebra& a, int b1, int b2) {
  const Presentation& p = a.pres();
  const Str& s = a.band(b1).rep;
  const Str& t = a.band(b2).rep;
  const std::size_t cap = safety_cap();
  std::vector<Str> out;
  // Grow y·s letter by letter; left substrings of skeletal strings stay skeletal.
  std::vector<Str> frontier{s};
  while (!frontier.empty()) {
    std::vector<Str> next;
    for (const auto& ys : frontier) {
      std::size_t len = ys.size() - s.size();
      if (len > 0) {
        Str y = factor(p, ys, s.size(), len);
        auto frame = concat(p, t, ys);
        if (frame && is_skeletal(a, *frame) && is_h_reduced(a, y)) out.push_back(y);
      }
      if (len >= cap) throw InvariantBreach("skeletal frame enumeration exceeded safety cap " + std::to_string(cap));
      for (Letter l = 0; l < p.letter_count(); ++l) {
        auto z = concat(p, Str::of({l}), ys);
        if (z && is_skeletal(a, *z)) next.push_back(*z);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), str_less);
  return out;
}

bool is_semi_bridge(const Algebra& a, const Arrow& u, const std::vector<Arrow>& weak) {
  auto beta = analyze(a, u).beta;
  for (const auto& [u2, u1] : factorizations(a, u, weak))
    if (u1.kind == ArrowKind::WeakBridge && analyze(a, u1).beta == beta) return false;
  return true;
}

bool precedes(const Algebra& a, const Arrow& u, const Arrow& u2, const std::vector<Arrow>& pool) {
  for (const auto& f : factorizations(a, u2, pool))
    if (f.second == u) return true;
  return false;
}

Lambda lambda_minimal(const Algebra& a, Letter v, int b, const std::vector<Arrow>& pool) {
  LambdaBar lb = lambda_bar(a, v, b);
  std::vector<Arrow> all = lb.bridges;
  all.insert(all.end(), lb.reverse_half.begin(), lb.reverse_half.end());
  Lambda out;
  for (const auto& u : all) {
    bool minimal = std::none_of(all.begin(), all.end(), [&](const Arrow& w) { return w != u && precedes(a, w, u, pool); });
    if (!minimal) continue;
    (u.kind == ArrowKind::WeakBridge ? out.bridges : out.reverse_half).push_back(u);
  }
  return out;
}

std::vector<Arrow> composition_pool(const Algebra& a) {
  std::vector<Arrow> pool = all_weak_bridges(a);
  for (int b = 0; b < a.band_count(); ++b) {
    auto r = weak_reverse_half_bridges(a, b);
    pool.insert(pool.end(), r.begin(), r.end());
  }
  return pool;
}

}  // namespace bridgeforge
