#include "bridgeforge/hred.hpp"

#include <algorithm>

namespace bridgeforge {

std::size_t oracle_bound(const Presentation& p) { return std::max<std::size_t>(p.max_relation_length(), 1); }

std::vector<Str> extensions_at(const Presentation& p, int v, std::size_t bound) {
  std::vector<Str> out{Str::trivial(v, 1), Str::trivial(v, -1)};
  auto rest = enumerate_strings_from(p, v, bound);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace {

bool forbidden_word(const Presentation& p, const std::vector<Letter>& w) {
  const auto& f = p.forbidden();
  return std::find(f.begin(), f.end(), w) != f.end();
}

std::optional<Str> distinguishing(const Presentation& p, const Str& y1, const Str& y2, std::size_t bound) {
  for (const auto& x : extensions_at(p, tgt(p, y1), bound))
    if (concat(p, x, y1).has_value() != concat(p, x, y2).has_value()) return x;
  return std::nullopt;
}

// The only obstructions to extending y are the inverses of the two last
// syllables: every nontrivial x starting elsewhere extends y.
bool only_crossed_obstructions(const Presentation& p, const Str& y, Letter g1, Letter g2, std::size_t bound) {
  for (const auto& x : enumerate_strings_from(p, tgt(p, y), bound)) {
    Letter first = x.w.front();
    if (first == inverse_letter(g1) || first == inverse_letter(g2)) continue;
    if (!concat(p, x, y)) return false;
  }
  return true;
}

// Some relation continues a walk-suffix of y with a letter that may follow y.
bool blocked_continuation(const Presentation& p, const Str& y) {
  for (const auto& f : p.forbidden())
    for (std::size_t k = 1; k < f.size() && k <= y.size(); ++k)
      if (p.sigma(f[k]) == -eps(p, y) && std::equal(f.begin(), f.begin() + static_cast<long>(k), y.w.end() - static_cast<long>(k)))
        return true;
  return false;
}

HEquivWitness decide(const Presentation& p, const Str& y1, const Str& y2) {
  if (tgt(p, y1) != tgt(p, y2)) return {false, "target-mismatch", {}};
  if (y1.empty() != y2.empty()) {
    // A zero-length string admits every extension of its sign, so it only
    // matches a string with the same end sign and no blocked continuation.
    const Str& y = y1.empty() ? y2 : y1;
    return {eps(p, y1) == eps(p, y2) && !blocked_continuation(p, y), "both-rho-empty", {}};
  }
  Str r1 = rho_r(p, y1), r2 = rho_r(p, y2);
  if (r1.empty() || r2.empty()) return {r1.empty() && r2.empty() && r1 == r2, "both-rho-empty", {}};
  Letter g1 = y1.w.back(), g2 = y2.w.back();
  if (g1 == g2) return {r1 == r2, "equal-last-syllable", {}};
  auto crossed = [&](Letter gj, const Str& rk) {
    std::vector<Letter> w = rk.w;
    w.push_back(inverse_letter(gj));
    return forbidden_word(p, w);
  };
  std::size_t bound = oracle_bound(p);
  bool ok = crossed(g1, r2) && crossed(g2, r1) && eps(p, y1) == eps(p, y2) &&
            only_crossed_obstructions(p, y1, g1, g2, bound) && only_crossed_obstructions(p, y2, g1, g2, bound);
  return {ok, "crossed-syllable", {}};
}

}  // namespace

HEquivWitness h_equivalent(const Presentation& p, const Str& y1, const Str& y2) {
  HEquivWitness w = decide(p, y1, y2);
  if (!w.verdict && w.rule != "target-mismatch") w.counterexample = distinguishing(p, y1, y2, oracle_bound(p));
  return w;
}

HEquivWitness h_equivalent_oracle(const Presentation& p, const Str& y1, const Str& y2, std::size_t bound) {
  if (tgt(p, y1) != tgt(p, y2)) return {false, "target-mismatch", {}};
  auto x = distinguishing(p, y1, y2, bound);
  return {!x.has_value(), "oracle", x};
}

std::optional<Str> h_reduction_at(const Algebra& a, const Str& y, std::size_t pos, std::size_t len) {
  const Presentation& p = a.pres();
  auto rest = remove_at(a, y, pos, len);
  if (!rest) return std::nullopt;
  if (!decide(p, left_sub(p, y, pos + len), left_sub(p, y, pos)).verdict) return std::nullopt;
  return rest;
}

std::optional<ReductionStep> hred_step_if(const Algebra& a, const Str& y, int band, std::size_t from, std::size_t until,
                                          const std::function<bool(const Str&)>& accept) {
  auto occ = occurrences_of(a, y, from);
  std::size_t n = a.band(band).size();
  for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
    if (it->band != band || it->pos + n > std::min(until, y.size())) continue;
    auto rest = h_reduction_at(a, y, it->pos, n);
    if (rest && (!accept || accept(*rest))) return ReductionStep{band, factor(a.pres(), y, it->pos, n), it->pos};
  }
  return std::nullopt;
}

std::optional<ReductionStep> hred_step(const Algebra& a, const Str& y, int band, std::size_t from, std::size_t until) {
  return hred_step_if(a, y, band, from, until, nullptr);
}

std::optional<Str> hred_b(const Algebra& a, const Str& y, int band, std::size_t from) {
  auto step = hred_step(a, y, band, from);
  if (!step) return std::nullopt;
  return remove_at(a, y, step->pos, a.band(band).size());
}

Str hh_b(const Algebra& a, const Str& y, int band, std::size_t from) {
  auto r = hred_b(a, y, band, from);
  return r ? *r : y;
}

bool is_h_reduced(const Algebra& a, const Str& y, std::size_t from) {
  for (const auto& o : occurrences_of(a, y, from))
    if (h_reduction_at(a, y, o.pos, a.band(o.band).size())) return false;
  return true;
}

bool is_h_string(const Presentation& p, const Str& y) {
  for (std::size_t k = 0; k < y.size(); ++k)
    if (decide(p, y, left_sub(p, y, k)).verdict) return false;
  return true;
}

bool is_hereditary_h_string(const Presentation& p, const Str& y) {
  for (std::size_t k = 1; k <= y.size(); ++k)
    if (!is_h_string(p, left_sub(p, y, k))) return false;
  return true;
}

HReduction hh(const Algebra& a, const Str& y, std::size_t from) {
  HReduction r{y, {y, y, {}}};
  for (bool changed = true; changed;) {
    changed = false;
    for (int b : bands_present(a, r.result, from)) {
      auto step = hred_step(a, r.result, b, from);
      if (!step) continue;
      r.result = *remove_at(a, r.result, step->pos, a.band(b).size());
      r.trace.steps.push_back(*step);
      changed = true;
      break;
    }
  }
  r.trace.output = r.result;
  return r;
}

std::vector<Str> enumerate_hereditary_h_strings(const Algebra& a) {
  const Presentation& p = a.pres();
  const std::size_t cap = safety_cap();
  std::vector<Str> out;
  std::vector<Str> frontier;
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
    for (int i : {1, -1}) frontier.push_back(Str::trivial(v, i));
  while (!frontier.empty()) {
    std::vector<Str> next;
    for (const auto& y : frontier) {
      out.push_back(y);
      if (y.size() >= cap) throw InvariantBreach("hereditary H-string enumeration exceeded safety cap " + std::to_string(cap));
      for (Letter l = 0; l < p.letter_count(); ++l) {
        auto z = concat(p, Str::of({l}), y);
        if (z && is_h_string(p, *z)) next.push_back(*z);
      }
    }
    frontier = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

}  // namespace bridgeforge
