#include "bridgeforge/bands.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

namespace bridgeforge {

std::size_t safety_cap() {
  if (const char* env = std::getenv("BRIDGEFORGE_MAXLEN")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 40;
}

namespace {

struct Automaton {
  std::vector<std::vector<Letter>> states;
  std::vector<std::vector<std::pair<int, Letter>>> adj;
};

Automaton build_automaton(const Presentation& p) {
  std::size_t w = std::max<std::size_t>(1, p.max_relation_length() > 1 ? p.max_relation_length() - 1 : 1);
  Automaton au;
  std::map<std::vector<Letter>, int> id;
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
    for (const auto& s : enumerate_strings_from(p, v, w))
      if (s.size() == w) {
        id[s.w] = static_cast<int>(au.states.size());
        au.states.push_back(s.w);
      }
  au.adj.resize(au.states.size());
  for (std::size_t s = 0; s < au.states.size(); ++s)
    for (Letter l = 0; l < p.letter_count(); ++l)
      if (extends(p, au.states[s], l)) {
        std::vector<Letter> next(au.states[s].begin() + 1, au.states[s].end());
        next.push_back(l);
        au.adj[s].push_back({id.at(next), l});
      }
  return au;
}

std::vector<std::vector<int>> strong_components(const Automaton& au) {
  const int n = static_cast<int>(au.states.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on(n, false);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (auto [t, l] : au.adj[v]) {
      if (index[t] < 0) {
        visit(t);
        low[v] = std::min(low[v], low[t]);
      } else if (on[t]) {
        low[v] = std::min(low[v], index[t]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int x;
      do {
        x = stack.back();
        stack.pop_back();
        on[x] = false;
        comp.push_back(x);
      } while (x != v);
      comps.push_back(comp);
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;
}

// Letters of the closed walk leaving `start` and following `first`, taking
// the least in-component edge afterwards.
std::vector<Letter> trace_cycle(const Automaton& au, const std::vector<int>& comp_of, int start,
                                std::pair<int, Letter> first) {
  std::vector<Letter> out{first.second};
  int cur = first.first;
  std::size_t guard = 0;
  while (cur != start && guard++ < au.states.size()) {
    for (auto [t, l] : au.adj[cur])
      if (comp_of[t] == comp_of[start]) {
        out.push_back(l);
        cur = t;
        break;
      }
  }
  return out;
}

Str least_rotation(const Str& b) {
  Str best = b;
  for (std::size_t k = 1; k < b.size(); ++k) {
    std::vector<Letter> r(b.w.begin() + static_cast<long>(k), b.w.end());
    r.insert(r.end(), b.w.begin(), b.w.begin() + static_cast<long>(k));
    Str cand = Str::of(r);
    if (str_less(cand, best)) best = cand;
  }
  return best;
}

std::vector<Str> rotations_of(const Str& b) {
  std::vector<Str> out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    std::vector<Letter> r(b.w.begin() + static_cast<long>(k), b.w.end());
    r.insert(r.end(), b.w.begin(), b.w.begin() + static_cast<long>(k));
    out.push_back(Str::of(r));
  }
  return out;
}

}  // namespace

DomesticityReport domesticity(const Presentation& p) {
  Automaton au = build_automaton(p);
  auto comps = strong_components(au);
  std::vector<int> comp_of(au.states.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  DomesticityReport rep;
  for (const auto& comp : comps) {
    std::size_t edges = 0;
    int branching = -1;
    for (int v : comp) {
      std::size_t inner = 0;
      for (auto [t, l] : au.adj[v])
        if (comp_of[t] == comp_of[v]) ++inner;
      edges += inner;
      if (inner > 1 && branching < 0) branching = v;
    }
    if (edges > comp.size()) {
      rep.domestic = false;
      rep.shared_state = au.states[branching];
      std::vector<std::pair<int, Letter>> inner;
      for (auto e : au.adj[branching])
        if (comp_of[e.first] == comp_of[branching]) inner.push_back(e);
      rep.cycle1 = trace_cycle(au, comp_of, branching, inner[0]);
      rep.cycle2 = trace_cycle(au, comp_of, branching, inner[1]);
      return rep;
    }
  }
  return rep;
}

std::vector<Band> enumerate_bands(const Presentation& p) {
  auto rep = domesticity(p);
  if (!rep.domestic) {
    std::string msg = "state " + render(p, Str::of(rep.shared_state)) + " lies on cycles " +
                      render(p, Str::of(rep.cycle1)) + " and " + render(p, Str::of(rep.cycle2));
    throw NonDomestic(msg);
  }
  Automaton au = build_automaton(p);
  auto comps = strong_components(au);
  std::vector<int> comp_of(au.states.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<Band> bands;
  for (const auto& comp : comps) {
    int start = comp.front();
    std::optional<std::pair<int, Letter>> edge;
    for (auto e : au.adj[start])
      if (comp_of[e.first] == comp_of[start]) edge = e;
    if (!edge) continue;
    // Align the traced letters so that the cycle word is walked from the
    // letter following the start window.
    Str word = Str::of(trace_cycle(au, comp_of, start, *edge));
    if (delta(p, word) != 0) throw InvariantBreach("relation-free directed cycle in band automaton");
    Band b;
    b.rep = least_rotation(word);
    bands.push_back(b);
  }
  std::sort(bands.begin(), bands.end(), [](const Band& x, const Band& y) { return str_less(x.rep, y.rep); });
  for (auto& b : bands) b.rotations = rotations_of(b.rep);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    Str inv = inverse(bands[i].rep);
    for (std::size_t j = 0; j < bands.size(); ++j)
      for (const auto& r : bands[j].rotations)
        if (r == inv) bands[i].inverse = static_cast<int>(j);
    if (bands[i].inverse < 0) throw InvariantBreach("band orbit without inverse orbit");
  }
  return bands;
}

Algebra::Algebra(Presentation p) : p_(std::move(p)) {
  bands_ = enumerate_bands(p_);
  std::vector<bool> fixed(bands_.size(), false);
  for (const auto& lit : p_.band_literals) {
    Str b = parse_word(p_, lit);
    int o = orbit_of(b.w);
    if (o < 0) throw ValidationError("band-representative", lit + " is not a band");
    if (fixed[o]) throw ValidationError("band-representative", lit + " repeats an orbit");
    bands_[o].rep = b;
    fixed[o] = true;
  }
  for (std::size_t i = 0; i < bands_.size(); ++i)
    if (fixed[i] && !fixed[bands_[i].inverse]) {
      bands_[bands_[i].inverse].rep = inverse(bands_[i].rep);
      fixed[bands_[i].inverse] = true;
    }
  for (auto& b : bands_) b.rotations = rotations_of(b.rep);
  std::sort(bands_.begin(), bands_.end(), [](const Band& x, const Band& y) { return str_less(x.rep, y.rep); });
  for (auto& b : bands_) b.inverse = orbit_of(inverse(b.rep).w);
}

int Algebra::orbit_of(const std::vector<Letter>& w) const {
  for (std::size_t b = 0; b < bands_.size(); ++b)
    for (const auto& r : bands_[b].rotations)
      if (r.w == w) return static_cast<int>(b);
  return -1;
}

bool is_band_free(const Algebra& a, const Str& y) { return occurrences_of(a, y).empty(); }

std::vector<Occurrence> occurrences_of(const Algebra& a, const Str& y, std::size_t from) {
  std::vector<Occurrence> out;
  for (int b = 0; b < a.band_count(); ++b) {
    const Band& band = a.band(b);
    std::size_t n = band.size();
    for (std::size_t pos = from; pos + n <= y.size(); ++pos)
      for (const auto& r : band.rotations)
        if (std::equal(r.w.begin(), r.w.end(), y.w.begin() + static_cast<long>(pos))) {
          out.push_back({b, pos});
          break;
        }
  }
  return out;
}

int power_count(const Algebra& a, const Str& y, int band, std::size_t from) {
  const Band& b = a.band(band);
  std::size_t n = b.size();
  int best = 0;
  for (std::size_t pos = from; pos + n <= y.size(); ++pos)
    for (const auto& r : b.rotations) {
      int k = 0;
      while (pos + (k + 1) * n <= y.size() &&
             std::equal(r.w.begin(), r.w.end(), y.w.begin() + static_cast<long>(pos + k * n)))
        ++k;
      best = std::max(best, k);
    }
  return best;
}

std::vector<int> bands_present(const Algebra& a, const Str& y, std::size_t from) {
  std::vector<int> out;
  for (int b = 0; b < a.band_count(); ++b)
    if (power_count(a, y, b, from) > 0) out.push_back(b);
  return out;
}

OccurrenceProfile occurrence_profile(const Algebra& a, const Str& y, std::size_t from) {
  OccurrenceProfile prof;
  for (int b = 0; b < a.band_count(); ++b) {
    prof.counts.push_back(power_count(a, y, b, from));
    if (prof.counts.back() > 0) prof.present.push_back(b);
  }
  return prof;
}

std::optional<Str> remove_at(const Algebra& a, const Str& y, std::size_t pos, std::size_t len) {
  const Presentation& p = a.pres();
  std::vector<Letter> w(y.w.begin(), y.w.begin() + static_cast<long>(pos));
  w.insert(w.end(), y.w.begin() + static_cast<long>(pos + len), y.w.end());
  if (w.empty()) return left_sub(p, y, 0);
  if (pos == 0 && sigma(p, Str::of(w)) != sigma(p, y)) return std::nullopt;
  if (pos + len == y.size() && pos > 0 && eps(p, Str::of(w)) != eps(p, y)) return std::nullopt;
  if (!is_string_word(p, w)) return std::nullopt;
  return Str::of(std::move(w));
}

std::optional<Reduction> red_b(const Algebra& a, const Str& y, int band, std::size_t from) {
  auto occ = occurrences_of(a, y, from);
  std::size_t n = a.band(band).size();
  for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
    if (it->band != band) continue;
    if (auto r = remove_at(a, y, it->pos, n)) return Reduction{*r, it->pos};
  }
  return std::nullopt;
}

Str skeleton(const Algebra& a, const Str& y, std::size_t from) {
  Str cur = y;
  for (int b = 0; b < a.band_count(); ++b)
    while (power_count(a, cur, b, from) > 1) {
      auto r = red_b(a, cur, b, from);
      if (!r) throw InvariantBreach("band power without a reduction in " + render(a.pres(), cur));
      cur = r->result;
    }
  return cur;
}

bool is_skeletal(const Algebra& a, const Str& y, std::size_t from) {
  for (int b = 0; b < a.band_count(); ++b)
    if (power_count(a, y, b, from) > 1) return false;
  return true;
}

std::vector<ExitSyllable> exit_syllables(const Algebra& a, int band) {
  const Presentation& p = a.pres();
  const Band& b = a.band(band);
  std::vector<ExitSyllable> out;
  for (Letter l = 0; l < p.letter_count(); ++l) {
    if (std::find(b.rep.w.begin(), b.rep.w.end(), l) != b.rep.w.end()) continue;
    for (std::size_t k = 0; k < b.rotations.size(); ++k)
      if (extends(p, b.rotations[k].w, l)) {
        out.push_back({l, static_cast<int>(k)});
        break;
      }
  }
  return out;
}

namespace {

template <class Keep>
std::vector<Str> enumerate_pruned(const Algebra& a, Keep keep) {
  const Presentation& p = a.pres();
  std::size_t cap = safety_cap();
  std::vector<Str> out;
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
    for (int i : {1, -1}) out.push_back(Str::trivial(v, i));
  std::function<void(std::vector<Letter>&)> rec = [&](std::vector<Letter>& w) {
    if (w.size() > cap) throw InvariantBreach("enumeration exceeded safety cap " + std::to_string(cap));
    out.push_back(Str::of(w));
    for (Letter l = 0; l < p.letter_count(); ++l)
      if (extends(p, w, l)) {
        w.push_back(l);
        if (keep(Str::of(w))) rec(w);
        w.pop_back();
      }
  };
  for (Letter l = 0; l < p.letter_count(); ++l) {
    std::vector<Letter> w{l};
    if (keep(Str::of(w))) rec(w);
  }
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

}  // namespace

std::vector<Str> enumerate_band_free(const Algebra& a) {
  // A new occurrence can only end at the appended letter, so checking the
  // suffixes suffices.
  return enumerate_pruned(a, [&](const Str& y) {
    for (int b = 0; b < a.band_count(); ++b) {
      std::size_t n = a.band(b).size();
      if (n <= y.size() && a.orbit_of(std::vector<Letter>(y.w.end() - static_cast<long>(n), y.w.end())) >= 0)
        return false;
    }
    return true;
  });
}

std::vector<Str> enumerate_skeletal(const Algebra& a) {
  return enumerate_pruned(a, [&](const Str& y) { return is_skeletal(a, y); });
}

}  // namespace bridgeforge
