#include "bridgeforge/bridges.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bridgeforge {

bool Vertex::operator==(const Vertex& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Band) return band == o.band;
  return str == o.str;
}

bool Vertex::operator<(const Vertex& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (kind == Kind::Band) return band < o.band;
  return str_less(str, o.str);
}

bool Arrow::operator<(const Arrow& o) const {
  if (source != o.source) return source < o.source;
  if (target != o.target) return target < o.target;
  return str_less(word, o.word);
}

std::string vertex_name(const Algebra& a, const Vertex& v) {
  if (v.is_band()) return a.band_name(v.band);
  return render(a.pres(), v.str);
}

std::string arrow_name(const Algebra& a, const Arrow& u) {
  return vertex_name(a, u.source) + " -(" + render(a.pres(), u.word) + ")-> " + vertex_name(a, u.target);
}

ArrowKind kind_between(const Vertex& s, const Vertex& t) {
  if (s.is_band()) return t.is_band() ? ArrowKind::WeakBridge : ArrowKind::ReverseHalf;
  return t.is_band() ? ArrowKind::Half : ArrowKind::Zero;
}

Str context_of(const Algebra& a, const Vertex& v) { return v.is_band() ? a.band(v.band).rep : v.str; }

bool is_arrow(const Algebra& a, const Vertex& s, const Vertex& t, const Str& word) {
  const Presentation& p = a.pres();
  if (!is_string(p, word) || !is_band_free(a, word)) return false;
  auto left = concat(p, word, context_of(a, s));
  if (!left) return false;
  if (t.is_band()) return concat(p, a.band(t.band).rep, *left).has_value();
  if (t.kind == Vertex::Kind::Trivial) return Str::trivial(tgt(p, *left), eps(p, *left)) == t.str;
  return false;
}

std::vector<Str> band_free_continuations(const Algebra& a, const Str& context) {
  const Presentation& p = a.pres();
  const std::size_t cap = safety_cap();
  std::vector<Str> out{right_sub(p, context, 0)};
  std::vector<Letter> cur = context.w;
  const std::size_t base = cur.size();
  auto new_band_at_end = [&]() {
    for (int b = 0; b < a.band_count(); ++b) {
      std::size_t n = a.band(b).size();
      if (cur.size() - base >= n &&
          a.orbit_of(std::vector<Letter>(cur.end() - static_cast<long>(n), cur.end())) >= 0)
        return true;
    }
    return false;
  };
  std::function<void()> rec = [&]() {
    if (cur.size() - base > cap) throw InvariantBreach("band-free continuation exceeded safety cap " + std::to_string(cap));
    for (Letter l = 0; l < p.letter_count(); ++l) {
      bool ok = cur.empty() ? (p.src(l) == context.vertex && p.sigma(l) == -context.sign) : extends(p, cur, l);
      if (!ok) continue;
      cur.push_back(l);
      if (!new_band_at_end()) {
        out.push_back(Str::of(std::vector<Letter>(cur.begin() + static_cast<long>(base), cur.end())));
        rec();
      }
      cur.pop_back();
    }
  };
  rec();
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

std::vector<Arrow> weak_bridges(const Algebra& a, int b1, int b2, bool include_trivial) {
  std::vector<Arrow> out;
  Vertex s = Vertex::of_band(b1), t = Vertex::of_band(b2);
  for (const auto& u : band_free_continuations(a, a.band(b1).rep)) {
    if (u.empty() && b1 == b2 && !include_trivial) continue;
    if (is_arrow(a, s, t, u)) out.push_back(Arrow{s, t, u, ArrowKind::WeakBridge});
  }
  return out;
}

std::vector<Arrow> all_weak_bridges(const Algebra& a) {
  std::vector<Arrow> out;
  for (int b1 = 0; b1 < a.band_count(); ++b1)
    for (int b2 = 0; b2 < a.band_count(); ++b2) {
      auto part = weak_bridges(a, b1, b2);
      out.insert(out.end(), part.begin(), part.end());
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string failure_tag(ComposeFailure f) {
  switch (f) {
    case ComposeFailure::None: return "none";
    case ComposeFailure::TargetMismatch: return "target-mismatch";
    case ComposeFailure::NotAString: return "not-a-string";
    case ComposeFailure::ReductionNonexistent: return "reduction-nonexistent";
    case ComposeFailure::ReductionNotBandFree: return "reduction-not-band-free";
    case ComposeFailure::ReductionNotArrow: return "reduction-not-arrow";
    case ComposeFailure::ContainsAnotherBand: return "contains-another-band";
    case ComposeFailure::NotAnArrow: return "not-an-arrow";
  }
  return "unknown";
}

Composition compose(const Algebra& a, const Arrow& u2, const Arrow& u1) {
  Composition c;
  if (u1.target != u2.source || !u1.target.is_band()) {
    c.failure = ComposeFailure::TargetMismatch;
    return c;
  }
  const Presentation& p = a.pres();
  auto w = concat(p, u2.word, u1.word);
  if (!w) {
    c.failure = ComposeFailure::NotAString;
    return c;
  }
  const Vertex& s = u1.source;
  const Vertex& t = u2.target;
  if (is_arrow(a, s, t, *w)) {
    c.result = Arrow{s, t, *w, kind_between(s, t)};
    return c;
  }
  int n = w->empty() ? 0 : power_count(a, *w, u1.target.band);
  if (n == 1) {
    auto r = red_b(a, *w, u1.target.band);
    if (!r) {
      c.failure = ComposeFailure::ReductionNonexistent;
    } else if (!is_band_free(a, r->result)) {
      c.failure = ComposeFailure::ReductionNotBandFree;
    } else if (!is_arrow(a, s, t, r->result)) {
      c.failure = ComposeFailure::ReductionNotArrow;
    } else {
      c.result = Arrow{s, t, r->result, kind_between(s, t)};
      c.reduced = true;
    }
    return c;
  }
  c.failure = w->empty() || is_band_free(a, *w) ? ComposeFailure::NotAnArrow : ComposeFailure::ContainsAnotherBand;
  return c;
}

namespace {

// Walk-order frame: [source context][word][target band periodic], with the
// source band extended periodically to negative positions.
struct Frame {
  const Band* sb = nullptr;
  const Band* tb = nullptr;
  std::vector<Letter> left, word;
  long nl = 0, m = 0;

  std::optional<Letter> at(long pos) const {
    if (pos < 0) return sb ? std::optional<Letter>(sb->at(pos)) : std::nullopt;
    if (pos < nl) return left[static_cast<std::size_t>(pos)];
    if (pos < nl + m) return word[static_cast<std::size_t>(pos - nl)];
    return tb ? std::optional<Letter>(tb->at(pos - nl - m)) : std::nullopt;
  }
  Letter s(long pos) const { return sb->at(pos); }
  Letter t(long pos) const { return tb->at(pos - nl - m); }
};

Frame make_frame(const Algebra& a, const Arrow& u) {
  Frame f;
  if (u.source.is_band()) f.sb = &a.band(u.source.band);
  if (u.target.is_band()) f.tb = &a.band(u.target.band);
  f.left = context_of(a, u.source).w;
  f.word = u.word.w;
  f.nl = static_cast<long>(f.left.size());
  f.m = static_cast<long>(f.word.size());
  return f;
}

template <class Get>
std::vector<Letter> span(Get get, long from, long to) {
  std::vector<Letter> out;
  for (long q = from; q <= to; ++q) out.push_back(get(q));
  return out;
}

bool is_forbidden(const Presentation& p, const std::vector<Letter>& w) {
  return std::find(p.forbidden().begin(), p.forbidden().end(), w) != p.forbidden().end();
}

std::vector<Letter> cat(std::initializer_list<const std::vector<Letter>*> parts) {
  std::vector<Letter> out;
  for (auto* x : parts) out.insert(out.end(), x->begin(), x->end());
  return out;
}

}  // namespace

ArrowData analyze(const Algebra& a, const Arrow& u) {
  const Presentation& p = a.pres();
  Frame f = make_frame(a, u);
  ArrowData d;
  const long n1 = f.sb ? static_cast<long>(f.sb->size()) : 0;
  const long n2 = f.tb ? static_cast<long>(f.tb->size()) : 0;
  const long reach = 2 * (n1 + n2) + 2;

  if (f.sb) {
    for (long q = f.nl;; ++q) {
      auto x = f.at(q);
      if (!x) break;
      if (*x != f.s(q)) {
        d.beta = x;
        d.beta_pos = q;
        break;
      }
      if (q > f.nl + f.m + reach) throw InvariantBreach("arrow between a band and itself: " + arrow_name(a, u));
    }
  }
  if (f.tb) {
    const long floor = f.sb ? -reach : f.nl;
    for (long q = f.nl + f.m - 1; q >= floor; --q) {
      auto x = f.at(q);
      if (!x) break;
      if (*x != f.t(q)) {
        d.alpha = x;
        d.alpha_pos = q;
        break;
      }
    }
    if (f.sb && !d.alpha) throw InvariantBreach("arrow between a band and itself: " + arrow_name(a, u));
  }

  auto A = [&](long q) { return *f.at(q); };
  auto S = [&](long q) { return f.s(q); };
  auto T = [&](long q) { return f.t(q); };
  auto piece = [&](auto get, long from, long to) { return Str::of(span(get, from, to)); };

  switch (u.kind) {
    case ArrowKind::WeakBridge: {
      d.normal = d.beta_pos <= d.alpha_pos;
      d.b_up_alpha = piece(T, d.alpha_pos + 1, d.alpha_pos + n2);
      d.b_up_beta = piece(S, d.beta_pos - n1, d.beta_pos - 1);
      if (d.normal) {
        d.interior = piece(A, d.beta_pos, d.alpha_pos);
        break;
      }
      d.b_low_alpha = piece(S, d.alpha_pos + 1, d.alpha_pos + n1);
      d.b_low_beta = piece(T, d.beta_pos - n2, d.beta_pos - 1);
      if (d.beta_pos - 1 >= d.alpha_pos + 1)
        d.interior = piece(A, d.alpha_pos + 1, d.beta_pos - 1);
      else
        d.interior = Str::trivial(p.tgt(*d.alpha), p.eps(*d.alpha));
      const std::vector<Letter> uc = d.interior.w;
      const long c = static_cast<long>(uc.size());
      const std::vector<Letter> b_up_alpha = d.b_up_alpha->w;
      for (long k = c + 1; k <= c + 2 * n1 + n2; ++k) {
        auto cand = span(S, d.alpha_pos + 1, d.alpha_pos + k);
        if (!is_string_word(p, cat({&b_up_alpha, &cand}))) {
          d.u_e = Str::of(cand);
          d.u_up_beta = Str::of(span(S, d.beta_pos, d.alpha_pos + k));
          break;
        }
      }
      if (!d.u_e) break;
      const std::vector<Letter> ub = d.u_up_beta->w;
      const long bound = 2 * (n1 + n2) + static_cast<long>(p.max_relation_length());
      for (long k = 1; k <= bound && !d.u_low_beta; ++k) {
        auto cand = span(T, d.alpha_pos + 1 - k, d.alpha_pos);
        if (is_forbidden(p, cat({&cand, &uc, &ub}))) d.u_low_beta = Str::of(cand);
      }
      const std::vector<Letter> b_low_alpha = d.b_low_alpha->w;
      for (long k = 1; k <= bound && !d.u_up_alpha; ++k) {
        auto cand = span(T, d.alpha_pos + 1 - k, d.alpha_pos);
        if (!is_string_word(p, cat({&cand, &b_low_alpha}))) d.u_up_alpha = Str::of(cand);
      }
      if (d.u_up_alpha) {
        const std::vector<Letter> ua = d.u_up_alpha->w;
        for (long k = 1; k <= bound && !d.u_low_alpha; ++k) {
          auto cand = span(S, d.beta_pos, d.beta_pos + k - 1);
          if (is_forbidden(p, cat({&ua, &uc, &cand}))) d.u_low_alpha = Str::of(cand);
        }
      }
      break;
    }
    case ArrowKind::Half:
      if (d.alpha) {
        d.normal = true;
        d.interior = piece(A, f.nl, d.alpha_pos);
        d.b_up_alpha = piece(T, d.alpha_pos + 1, d.alpha_pos + n2);
      } else {
        d.normal = false;
        d.interior = u.word;
        d.b_up_alpha = piece(T, f.nl, f.nl + n2 - 1);
      }
      break;
    case ArrowKind::ReverseHalf:
      if (d.beta) {
        d.normal = true;
        d.interior = piece(A, d.beta_pos, f.nl + f.m - 1);
        d.b_up_beta = piece(S, d.beta_pos - n1, d.beta_pos - 1);
      } else {
        d.normal = false;
        d.interior = u.word;
        d.b_up_beta = piece(S, f.nl + f.m - n1, f.nl + f.m - 1);
      }
      break;
    case ArrowKind::Zero:
      d.interior = u.word;
      break;
  }
  return d;
}

std::vector<std::pair<Arrow, Arrow>> factorizations(const Algebra& a, const Arrow& u, const std::vector<Arrow>& pool) {
  std::vector<std::pair<Arrow, Arrow>> out;
  for (const auto& u1 : pool) {
    if (u1.source != u.source || u1.source == u1.target || !u1.target.is_band()) continue;
    for (const auto& u2 : pool) {
      if (u2.source != u1.target || u2.target != u.target || u2.source == u2.target) continue;
      auto c = compose(a, u2, u1);
      if (c && *c.result == u) out.emplace_back(u2, u1);
    }
  }
  return out;
}

bool is_bridge(const Algebra& a, const Arrow& u, const std::vector<Arrow>& pool) {
  return factorizations(a, u, pool).empty();
}

bool BridgeQuiver::acyclic() const {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& e : arrows) adj[e.source].push_back(e.target);
  std::map<Vertex, int> colour;
  std::function<bool(const Vertex&)> cyclic = [&](const Vertex& v) {
    colour[v] = 1;
    for (const auto& w : adj[v]) {
      int c = colour[w];
      if (c == 1 || (c == 0 && cyclic(w))) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (const auto& v : vertices)
    if (colour[v] == 0 && cyclic(v)) return false;
  return true;
}

BridgeQuiver build_weak_bridge_quiver(const Algebra& a) {
  BridgeQuiver q;
  for (int b = 0; b < a.band_count(); ++b) q.vertices.push_back(Vertex::of_band(b));
  q.arrows = all_weak_bridges(a);
  return q;
}

BridgeQuiver build_bridge_quiver(const Algebra& a) {
  BridgeQuiver weak = build_weak_bridge_quiver(a);
  BridgeQuiver q;
  q.vertices = weak.vertices;
  for (const auto& u : weak.arrows)
    if (is_bridge(a, u, weak.arrows)) q.arrows.push_back(u);
  return q;
}

std::vector<Arrow> weak_reverse_half_bridges(const Algebra& a, int b) {
  const Presentation& p = a.pres();
  std::vector<Arrow> out;
  const Str& rep = a.band(b).rep;
  for (const auto& u : band_free_continuations(a, rep)) {
    Str whole = *concat(p, u, rep);
    out.push_back(Arrow{Vertex::of_band(b), Vertex::of_trivial(Str::trivial(tgt(p, whole), eps(p, whole))), u,
                        ArrowKind::ReverseHalf});
  }
  return out;
}

bool forks(const Presentation&, const std::vector<Letter>& x1, const std::vector<Letter>& x2) {
  if (x1 == x2) return false;
  std::size_t k = 0;
  while (k < x1.size() && k < x2.size() && x1[k] == x2[k]) ++k;
  return k < x1.size() && k < x2.size();
}

bool is_torsion_reverse_half(const Algebra& a, const Arrow& u, const std::vector<Arrow>& weak) {
  const Presentation& p = a.pres();
  const auto& rep = a.band(u.source.band).rep.w;
  std::vector<Letter> ub = rep;
  ub.insert(ub.end(), u.word.w.begin(), u.word.w.end());
  std::vector<Letter> bb = rep;
  bb.insert(bb.end(), rep.begin(), rep.end());
  if (!forks(p, ub, bb)) return false;
  for (const auto& w : weak) {
    if (w.source != u.source) continue;
    std::vector<Letter> x = rep;
    x.insert(x.end(), w.word.w.begin(), w.word.w.end());
    const auto& t = a.band(w.target.band).rep.w;
    x.insert(x.end(), t.begin(), t.end());
    if (!forks(p, ub, x)) return false;
  }
  return true;
}

std::vector<Arrow> maximal_torsion_reverse_half_bridges(const Algebra& a, int b) {
  auto all = weak_reverse_half_bridges(a, b);
  std::set<std::vector<Letter>> words;
  for (const auto& u : all) words.insert(u.word.w);
  std::vector<Arrow> weak;
  for (int t = 0; t < a.band_count(); ++t) {
    auto part = weak_bridges(a, b, t);
    weak.insert(weak.end(), part.begin(), part.end());
  }
  std::vector<Arrow> out;
  for (const auto& u : all) {
    bool extendable = false;
    for (Letter l = 0; l < a.pres().letter_count() && !extendable; ++l) {
      auto w = u.word.w;
      w.push_back(l);
      extendable = words.count(w) > 0;
    }
    if (!extendable && is_torsion_reverse_half(a, u, weak)) out.push_back(u);
  }
  return out;
}

LambdaBar lambda_bar(const Algebra& a, Letter v, int b) {
  LambdaBar lb;
  for (int t = 0; t < a.band_count(); ++t)
    for (const auto& u : weak_bridges(a, b, t)) {
      ArrowData d = analyze(a, u);
      if (d.beta != v) continue;
      lb.bridges.push_back(u);
      if (!d.normal) {
        ++lb.abnormal_count;
        if (!lb.abnormal) lb.abnormal = u;
      }
    }
  for (const auto& u : maximal_torsion_reverse_half_bridges(a, b))
    if (analyze(a, u).beta == v) lb.reverse_half.push_back(u);
  return lb;
}

bool is_abnormal_exit(const Algebra& a, Letter v, int b) { return lambda_bar(a, v, b).abnormal.has_value(); }

bool incidence(const Algebra& a, Letter v, Letter v2, int b) {
  auto lb = lambda_bar(a, v2, b);
  if (!lb.abnormal) return false;
  const Presentation& p = a.pres();
  auto ue = analyze(a, *lb.abnormal).u_e;
  if (!ue) return false;
  Str sv = Str::of({v});
  for (std::size_t k = 0; k < ue->size(); ++k)
    if (concat(p, sv, left_sub(p, *ue, k))) return true;
  return false;
}

namespace {

std::optional<Str> cat_string(const Presentation& p, std::initializer_list<Str> written) {
  std::vector<Str> parts(written);
  std::optional<Str> acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend() && acc; ++it) acc = concat(p, *it, *acc);
  return acc;
}

}  // namespace

CasePrediction interiors_of_composition(const Algebra& a, const Arrow& u2, const Arrow& u1) {
  const Presentation& p = a.pres();
  CasePrediction cp;
  auto c = compose(a, u2, u1);
  if (!c) throw InvariantBreach("case analysis needs an existing composition");
  cp.direct = analyze(a, *c.result);
  const ArrowKind ck = c.result->kind;
  if (ck == ArrowKind::Zero || (ck == ArrowKind::Half && !cp.direct.alpha))
    throw InvariantBreach("case analysis needs a composite with defined interior");
  ArrowData d1 = analyze(a, u1), d2 = analyze(a, u2);
  if (!d1.alpha || !d2.beta) throw InvariantBreach("case analysis needs an entry for u1 and an exit for u2");

  if (d1.normal && d2.normal) {
    cp.label = "I";
    cp.normal = true;
    const Str& bua = *d1.b_up_alpha;
    for (std::size_t k = 0; k <= bua.size() && !cp.interior; ++k)
      if (auto r = cat_string(p, {d2.interior, left_sub(p, bua, k), d1.interior})) cp.interior = r;
  } else if (d1.normal) {
    cp.normal = true;
    const Str& bua = *d1.b_up_alpha;
    std::optional<std::size_t> wl;
    for (std::size_t k = 0; k < bua.size() && !wl; ++k)
      if (cat_string(p, {Str::of({*d2.beta}), left_sub(p, bua, k), Str::of({*d1.alpha})})) wl = k;
    if (wl) {
      const std::size_t uc = d2.interior.size();
      if (uc > *wl) {
        cp.label = "II(1)";
        cp.interior = d1.interior;
      } else if (uc == *wl) {
        cp.label = "II(2)";
        const auto& o = d1.interior.w;
        const auto& bu = d2.b_up_alpha->w;
        std::size_t k = 0;
        while (k < o.size() && k < bu.size() && o[o.size() - 1 - k] == bu[bu.size() - 1 - k]) ++k;
        if (k < o.size()) cp.interior = left_sub(p, d1.interior, o.size() - k);
      } else {
        cp.label = "II(3)";
        Str w = left_sub(p, bua, *wl);
        Str wprime = left_sub(p, w, *wl - uc);
        cp.interior = cat_string(p, {wprime, d1.interior});
      }
    }
  } else if (d2.normal) {
    cp.normal = true;
    const Str& ue = *d1.u_e;
    Letter bu = *cp.direct.beta;
    std::optional<std::size_t> x1;
    for (std::size_t k = ue.size(); k-- > 0;)
      if (concat(p, Str::of({bu}), left_sub(p, ue, k))) {
        x1 = k;
        break;
      }
    if (x1) {
      const std::size_t uc = d1.interior.size();
      if (*x1 < uc) {
        cp.label = "III(1)";
        cp.interior = d2.interior;
      } else if (*x1 == uc) {
        cp.label = "III(2)";
        const Str& blb = *d1.b_low_beta;
        for (std::size_t k = 1; k <= blb.size() && !cp.interior; ++k)
          if (auto r = cat_string(p, {d2.interior, left_sub(p, blb, k)})) cp.interior = r;
      } else {
        cp.label = "III(3)";
        Str x = left_sub(p, ue, *x1);
        for (std::size_t k = d2.interior.size(); k > 0 && !cp.interior; --k) {
          Str w = right_sub(p, d2.interior, k);
          if (concat(p, w, x)) cp.interior = w;
        }
      }
    }
  } else {
    if (!cp.direct.normal) {
      cp.label = "IV(1)";
      cp.normal = false;
      const auto& c1 = d1.interior.w;
      const auto& c2 = d2.interior.w;
      for (std::size_t k = std::min(c1.size(), c2.size());; --k) {
        if (std::equal(c1.begin(), c1.begin() + static_cast<long>(k), c2.end() - static_cast<long>(k))) {
          cp.interior = left_sub(p, d1.interior, k);
          break;
        }
        if (k == 0) break;
      }
    } else {
      cp.label = "IV(2)";
      cp.normal = true;
      const Str& blb = *d1.b_low_beta;
      for (std::size_t k = 1; k <= blb.size() && !cp.interior; ++k) {
        Str w = left_sub(p, blb, k);
        if (cat_string(p, {d2.interior, w, d1.interior})) cp.interior = w;
      }
    }
  }
  cp.agrees = cp.interior && cp.normal == cp.direct.normal && *cp.interior == cp.direct.interior;
  return cp;
}

}  // namespace bridgeforge
