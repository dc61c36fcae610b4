// Acceptance report: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, or, with --expect-fail, when
// the failing set equals the given list exactly.

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bridgeforge/extended.hpp"

using namespace bridgeforge;

namespace {

const char* kFixtures[] = {"lambda", "lambda-prime", "lambda-dprime", "x1", "lambda-iii", "lambda-iv", "lambda-v", "lambda-vi"};

const Algebra& algebra(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Algebra>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<Algebra>(load_presentation(std::string(FIXTURE_DIR) + "/" + name + ".alg"));
  return *slot;
}

const ArchStructure& structure(const std::string& name) {
  static std::map<std::string, std::unique_ptr<ArchStructure>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<ArchStructure>(algebra(name));
  return *slot;
}

std::string show(const Algebra& a, const Str& y) { return render(a.pres(), y); }
std::string show(const Algebra& a, Letter l) { return render(a.pres(), Str::of({l})); }

std::string join(const std::set<std::string>& xs) {
  std::string out = "{";
  for (const auto& x : xs) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

std::set<std::string> words(const Algebra& a, const std::vector<Arrow>& us) {
  std::set<std::string> out;
  for (const auto& u : us) out.insert(show(a, u.word));
  return out;
}

int band_named(const Algebra& a, const std::string& name) {
  for (int b = 0; b < a.band_count(); ++b)
    if (a.band_name(b) == name) return b;
  throw std::runtime_error("no band " + name);
}

Arrow weak(const Algebra& a, const std::string& word) {
  Str w = parse_word(a.pres(), word);
  for (const auto& u : all_weak_bridges(a))
    if (u.word == w) return u;
  throw std::runtime_error("no weak bridge " + word);
}

Arrow half(const Algebra& a, const std::string& x0, const std::string& word, const std::string& band) {
  const Presentation& p = a.pres();
  return Arrow{Vertex::of_base(parse_word(p, x0)), Vertex::of_band(band_named(a, band)), parse_word(p, word), ArrowKind::Half};
}

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Collects the clauses of one criterion that do not hold.
class Report {
 public:
  void expect(bool ok, const std::string& clause) {
    if (!ok) failures_.push_back(clause);
  }
  void equal(const std::set<std::string>& got, const std::set<std::string>& want, const std::string& what) {
    if (got != want) failures_.push_back(what + " is " + join(got) + ", expected " + join(want));
  }
  void equal(const std::string& got, const std::string& want, const std::string& what) {
    if (got != want) failures_.push_back(what + " is " + got + ", expected " + want);
  }
  // Counts violations of an exhaustive property; keeps the first example.
  void tally(bool ok, const std::string& property, const std::string& example) {
    if (ok) return;
    auto& [count, first] = tallies_[property];
    if (count++ == 0) first = example;
  }
  std::vector<std::string> failures() const {
    auto out = failures_;
    for (const auto& [property, t] : tallies_)
      out.push_back(property + ": " + std::to_string(t.first) + " violations, e.g. " + t.second);
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::map<std::string, std::pair<long, std::string>> tallies_;
};

void bands_and_weak_bridges(Report& r) {
  const Algebra& a = algebra("lambda");
  std::set<std::string> orbits;
  for (int b = 0; b < a.band_count(); ++b) orbits.insert(a.band_name(std::min(b, a.band(b).inverse)));
  std::set<std::string> expected;
  for (const char* w : {"aB", "eD", "hG", "jK"}) {
    int b = a.orbit_of(parse_word(a.pres(), w).w);
    r.expect(b >= 0, std::string(w) + " is a band");
    if (b >= 0) expected.insert(a.band_name(std::min(b, a.band(b).inverse)));
  }
  r.equal(orbits, expected, "band orbits");

  auto between = [&](const char* s, const char* t) {
    return words(a, weak_bridges(a, band_named(a, s), band_named(a, t)));
  };
  r.expect(between("aB", "eD").count("ec"), "u12 = ec");
  r.expect(between("aB", "hG").count("Fc"), "u13 = Fc");
  r.expect(between("aB", "jK").count("jiFc"), "u14 = jiFc");
  r.expect(between("eD", "jK").count("jiFD"), "u24 = jiFD");
  r.expect(between("hG", "jK").count("ji"), "u34 = ji");
  auto c1 = compose(a, weak(a, "jiFD"), weak(a, "ec"));
  auto c2 = compose(a, weak(a, "ji"), weak(a, "Fc"));
  r.expect(c1 && *c1.result == weak(a, "jiFc"), "u24 o u12 = u14");
  r.expect(c2 && *c2.result == weak(a, "jiFc"), "u34 o u13 = u14");
}

void nonassociative_bridges(Report& r) {
  const auto& s = structure("lambda-prime");
  const Algebra& a = s.algebra();
  Arrow bA = weak(a, "bA"), eD = weak(a, "eD"), Jih = weak(a, "Jih");
  auto eDbA = compose(a, eD, bA), JiheD = compose(a, Jih, eD);
  r.expect(eDbA && show(a, eDbA.result->word) == "eDbA", "eD o bA = eDbA");
  r.expect(JiheD && show(a, JiheD.result->word) == "JiheD", "Jih o eD = JiheD");
  if (JiheD) {
    auto JA = compose(a, *JiheD.result, bA);
    r.expect(JA && show(a, JA.result->word) == "JA", "JiheD o bA = JA");
  }
  if (eDbA) {
    auto bad = compose(a, Jih, *eDbA.result);
    r.expect(!bad && bad.failure == ComposeFailure::ContainsAnotherBand, "Jih o eDbA undefined, contains another band");
  }

  Arrow left = s.compose_h(Jih, s.compose_h(eD, bA));
  Arrow right = s.compose_h(s.compose_h(Jih, eD), bA);
  r.expect(left == right, "compose_H associative on (bA, eD, Jih)");
  r.equal(show(a, left.word), "JA", "compose_H(Jih, compose_H(eD, bA))");
  r.equal(show(a, right.word), "JA", "compose_H(compose_H(Jih, eD), bA)");

  std::set<std::string> component{"cbA", "biheD", "egF", "lK"};
  std::set<std::string> arch;
  for (const auto& u : s.arch_bridges())
    if (component.count(a.band_name(u.source.band)) && component.count(a.band_name(u.target.band)))
      arch.insert(show(a, u.word));
  r.equal(arch, {"bA", "JA", "eD", "JiheD", "Jih"}, "arch quiver");
  const auto& pool = s.weak_bridges();
  for (const char* w : {"JA", "JiheD"}) r.expect(!is_bridge(a, weak(a, w), pool), std::string(w) + " is not a bridge");
  r.expect(is_semi_bridge(a, weak(a, "JA"), pool), "JA is a semi-bridge");
}

void opposite_sign_example(Report& r) {
  const auto& s = structure("lambda-dprime");
  const Algebra& a = s.algebra();
  Arrow u1 = weak(a, "edcbAL"), u2 = weak(a, "dF"), u3 = weak(a, "IbhG");
  auto inner = compose(a, u2, u1);
  r.expect(inner && compose(a, u3, *inner.result), "u3 o (u2 o u1) defined");
  auto outer = compose(a, u3, u2);
  r.expect(!outer || !compose(a, *outer.result, u1), "(u3 o u2) o u1 undefined");

  Str x0 = parse_word(a.pres(), "1_(v1,-1)");
  ExtendedStructure e(s, x0, 1);
  r.equal(words(a, e.arch_arrows()), {"edcbA", "IbA", "dF", "IbhG"}, "extended arch quiver");
  Arrow IbA = half(a, "1_(v1,-1)", "IbA", "kJ");
  r.expect(e.is_arch(IbA), "IbA is an arch arrow");
  r.expect(!contains(half_bridges(a, x0, 1), IbA), "IbA is not a half bridge");
  Arrow IbAL = weak(a, "IbAL");
  r.expect(s.is_arch_bridge(IbAL), "IbAL is arch");
  r.expect(!is_semi_bridge(a, IbAL, s.weak_bridges()), "IbAL is not semi");
}

void parallel_abnormal_bridges(Report& r) {
  const auto& s = structure("x1");
  const Algebra& a = s.algebra();
  r.expect(a.band_count() == 2 && a.band(0).inverse == 1, "a single band orbit");
  r.expect(a.orbit_of(parse_word(a.pres(), "acAB").w) >= 0, "acAB is a band");

  Arrow acA = weak(a, "acA"), aCA = weak(a, "aCA");
  auto d1 = analyze(a, acA), d2 = analyze(a, aCA);
  r.expect(acA.source == aCA.source && acA.target == aCA.target, "acA, aCA parallel");
  r.expect(!d1.normal && !d2.normal, "acA, aCA abnormal");
  r.equal(show(a, *d1.alpha), "b", "alpha(acA)");
  r.equal(show(a, *d2.alpha), "C", "alpha(aCA)");
  r.equal(show(a, *d1.beta), "c", "beta(acA)");
  r.equal(show(a, *d2.beta), "B", "beta(aCA)");
  r.equal(show(a, d1.interior), "A", "u^c");
  r.equal(show(a, *d1.b_up_alpha), "BacA", "b^alpha");
  r.equal(show(a, *d1.b_low_alpha), "baCA", "b_alpha");
  r.equal(show(a, *d1.b_low_beta), "ABac", "b_beta");
  r.equal(show(a, *d1.b_up_beta), "AbaC", "b^beta");

  Str x0 = parse_word(a.pres(), "1_(v2,1)");
  Arrow ba = half(a, "1_(v2,1)", "ba", "baCA");
  auto c = compose(a, aCA, ba);
  r.expect(c && show(a, c.result->word) == "a", "a = aCA o ba");
  ExtendedStructure e(s, x0, -1);
  r.equal(words(a, e.weak_arrows()), {"a", "ba", "acA", "aCA"}, "extended weak quiver");
}

void h_reduced_example(Report& r) {
  const Algebra& a = algebra("lambda-vi");
  const Presentation& p = a.pres();
  Str y = parse_string(p, "JeHgFcaDB");
  r.expect(is_h_reduced(a, y), "JeHgFcaDB is H-reduced");
  auto red = red_b(a, y, band_named(a, "aD"));
  r.expect(red && show(a, red->result) == "JeHgFcB", "Red_aD(JeHgFcaDB) = JeHgFcB");
  r.expect(!is_h_reduced(a, parse_string(p, "JeHgFcB")), "JeHgFcB is not H-reduced");
}

void abnormal_half_bridges(Report& r) {
  const Algebra& a = algebra("lambda-iii");
  const Presentation& p = a.pres();
  Str x0 = parse_word(p, "D");
  int b = band_named(a, "cbaDEF");
  std::vector<Arrow> abnormal;
  for (const auto& u : weak_half_bridges(a, x0))
    if (u.target.band == b && is_abnormal_half(a, u)) abnormal.push_back(u);
  r.equal(words(a, abnormal), {"cba", render(p, Str::trivial(tgt(p, x0), eps(p, x0)))}, "abnormal half bridges");
  if (abnormal.size() == 2) r.expect(arrow_side(a, abnormal[0]) == -arrow_side(a, abnormal[1]), "opposite theta");
}

void case_calculus(Report& r) {
  struct Example {
    const char* fixture;
    Arrow u2, u1;
    const char* label;
  };
  auto bridge_pair = [](const char* fixture, const char* w2, const char* w1, const char* label) {
    const Algebra& a = algebra(fixture);
    return Example{fixture, weak(a, w2), weak(a, w1), label};
  };
  const Algebra& iv = algebra("lambda-iv");
  const Algebra& v = algebra("lambda-v");
  Arrow edB = weak(v, "edB");
  Arrow MG{edB.target, Vertex::of_trivial(parse_word(v.pres(), "1_(v8,1)")), parse_word(v.pres(), "MG"), ArrowKind::ReverseHalf};
  const std::vector<Example> examples = {
      {"lambda-iv", weak(iv, "dC"), half(iv, "1_(v1,-1)", "bA", "bdC"), "II(1)"},
      bridge_pair("lambda-dprime", "dF", "edcbAL", "II(2)"),
      {"lambda-v", edB, half(v, "1_(v1,-1)", "A", "cfedB"), "II(3)"},
      {"lambda-v", MG, edB, "III(2)"},
      bridge_pair("lambda-v", "Nf", "edB", "III(3)"),
      bridge_pair("lambda-v", "djIhG", "edB", "IV(1)"),
      bridge_pair("lambda-prime", "eD", "bA", "IV(2)"),
  };
  for (const auto& ex : examples) {
    const Algebra& a = algebra(ex.fixture);
    auto cp = interiors_of_composition(a, ex.u2, ex.u1);
    std::string name = std::string(ex.label) + " " + show(a, ex.u2.word) + " o " + show(a, ex.u1.word);
    r.equal(cp.label, ex.label, name + " label");
    r.expect(cp.agrees, name + " interior agrees");
  }
}

// Which extensions of bounded length make x·y a string.
std::vector<bool> signature(const Presentation& p, const Str& y, std::size_t bound) {
  std::vector<bool> sig;
  for (const auto& x : extensions_at(p, tgt(p, y), bound)) sig.push_back(concat(p, x, y).has_value());
  return sig;
}

void property_suites(Report& r) {
  for (const char* name : kFixtures) {
    const std::string at = std::string(" [") + name + "]";
    const auto& s = structure(name);
    const Algebra& a = s.algebra();
    const Presentation& p = a.pres();

    // (a) H-equivalence criterion against the extension oracle.
    auto strings = enumerate_strings(p, 6);
    std::vector<std::vector<bool>> sigs;
    for (const auto& y : strings) sigs.push_back(signature(p, y, oracle_bound(p)));
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = 0; j < strings.size(); ++j)
        if (tgt(p, strings[i]) == tgt(p, strings[j]))
          r.tally(h_equivalent(p, strings[i], strings[j]).verdict == (sigs[i] == sigs[j]), "(a) criterion vs oracle",
                  show(a, strings[i]) + " ~ " + show(a, strings[j]) + at);

    // (b) confluence of hh_b.
    for (const auto& z : enumerate_strings(p, 10)) {
      auto bs = bands_present(a, z);
      if (bs.size() < 2) continue;
      for (int b1 : bs)
        for (int b2 : bs)
          if (b1 < b2)
            r.tally(hh_b(a, hh_b(a, z, b2), b1) == hh_b(a, hh_b(a, z, b1), b2), "(b) hh confluence", show(a, z) + at);
    }

    // (c) right cancellation.
    auto pool = all_weak_bridges(a);
    std::map<std::pair<Arrow, Arrow>, Arrow> seen;
    for (const auto& u1 : pool)
      for (const auto& u2 : pool) {
        if (u1.target != u2.source) continue;
        auto c = compose(a, u2, u1);
        if (!c) continue;
        auto [it, fresh] = seen.emplace(std::make_pair(u1, *c.result), u2);
        r.tally(fresh || it->second == u2, "(c) right cancellation", arrow_name(a, *c.result) + at);
      }

    // (d) arch factorization.
    for (const auto& u : s.weak_arch()) {
      auto ps = s.arch_paths_to(u.arrow);
      r.tally(ps.size() == 1, "(d) arch factorization unique", arrow_name(a, u.arrow) + at);
      r.tally(ps.size() == 1 && hh_of_path(a, ps.front()) == u.arrow.word, "(d) arch factorization reproduces",
              arrow_name(a, u.arrow) + at);
    }

    // (e) associativity of compose_H.
    const auto arch = s.weak_arch_arrows();
    for (const auto& u1 : arch)
      for (const auto& u2 : arch) {
        if (u1.target != u2.source) continue;
        Arrow c12 = s.compose_h(u2, u1);
        for (const auto& u3 : arch)
          if (u2.target == u3.source)
            r.tally(s.compose_h(u3, c12) == s.compose_h(s.compose_h(u3, u2), u1), "(e) compose_H associativity",
                    show(a, u3.word) + ", " + show(a, u2.word) + ", " + show(a, u1.word) + at);
      }

    // (f) quiver inclusions and acyclicity.
    auto bridges = build_bridge_quiver(a), semi = build_semi_quiver(s), harch = build_arch_quiver(s);
    auto weak_q = build_weak_bridge_quiver(a);
    for (const auto& u : bridges.arrows) r.tally(contains(semi.arrows, u), "(f) bridge in semi", arrow_name(a, u) + at);
    for (const auto& u : semi.arrows) r.tally(contains(harch.arrows, u), "(f) semi in arch", arrow_name(a, u) + at);
    for (const auto& u : harch.arrows) r.tally(contains(weak_q.arrows, u), "(f) arch in weak", arrow_name(a, u) + at);
    r.tally(weak_q.acyclic(), "(f) weak bridge quiver acyclic", name);

    // (g) weak arch words are the H-reduced skeletal frames.
    for (int b1 = 0; b1 < a.band_count(); ++b1)
      for (int b2 = 0; b2 < a.band_count(); ++b2) {
        std::vector<Str> via_paths;
        for (const auto& u : s.weak_arch())
          if (u.arrow.source.band == b1 && u.arrow.target.band == b2) via_paths.push_back(u.arrow.word);
        std::sort(via_paths.begin(), via_paths.end(), str_less);
        r.tally(h_reduced_skeletal_frames(a, b1, b2) == via_paths, "(g) weak arch = H-reduced skeletal",
                a.band_name(b1) + " -> " + a.band_name(b2) + at);
      }

    // (h) the finite enumerations terminate and are what they claim.
    auto free = enumerate_band_free(a);
    auto skel = enumerate_skeletal(a);
    auto hered = enumerate_hereditary_h_strings(a);
    for (const auto& y : free) r.tally(is_band_free(a, y), "(h) band-free enumeration", show(a, y) + at);
    for (const auto& y : skel) r.tally(is_skeletal(a, y), "(h) skeletal enumeration", show(a, y) + at);
    std::size_t longest = 0;
    std::set<std::vector<Letter>> listed, brute;
    for (const auto& y : hered) {
      longest = std::max(longest, y.size());
      if (!y.empty()) listed.insert(y.w);
    }
    for (const auto& y : enumerate_strings(p, longest + 1))
      if (!y.empty() && is_hereditary_h_string(p, y)) brute.insert(y.w);
    r.tally(listed == brute, "(h) hereditary enumeration complete", name);
  }
}

void hammock_sanity(Report& r) {
  std::vector<std::pair<std::string, Str>> cases;
  const Algebra& x1 = algebra("x1");
  cases.emplace_back("x1", parse_word(x1.pres(), "1_(v2,1)"));
  const Algebra& lam = algebra("lambda");
  for (const char* base : {"a", "c", "1_(v2,1)", "1_(v2,-1)"}) cases.emplace_back("lambda", parse_string(lam.pres(), base));

  for (const auto& [name, x0] : cases) {
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    const std::string at = " [" + name + ", " + show(a, x0) + "]";
    auto seg = hammock_segment(a, x0, 5);
    const std::size_t n = seg.size();
    r.tally(n > 1, "segment has more than the base", at);
    std::vector<std::vector<int>> cmp(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cmp[i][j] = hammock_compare(p, x0, seg[i].word, seg[j].word);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string y = show(a, seg[i].word) + at;
      int rel = hammock_compare(p, x0, seg[i].word, x0);
      r.tally(seg[i].side == 0 ? rel == 0 : rel == seg[i].side, "H- < x0 < H+", y);
      for (std::size_t j = 0; j < n; ++j) {
        r.tally((cmp[i][j] == 0) == (i == j), "order is total and strict", y);
        r.tally(cmp[i][j] == -cmp[j][i], "order is antisymmetric", y);
        r.tally(cmp[i][j] == (i < j ? -1 : i > j ? 1 : 0), "segment is sorted", y);
        for (std::size_t k = 0; k < n; ++k)
          if (cmp[i][j] < 0 && cmp[j][k] < 0) r.tally(cmp[i][k] < 0, "order is transitive", y);
      }
      if (i == 0 || i + 1 == n) continue;
      // Immediate neighbours found from the comparison table alone.
      std::size_t preds = 0, succs = 0;
      for (std::size_t j = 0; j < n; ++j) {
        bool between_pred = false, between_succ = false;
        for (std::size_t k = 0; k < n; ++k) {
          between_pred |= cmp[j][k] < 0 && cmp[k][i] < 0;
          between_succ |= cmp[i][k] < 0 && cmp[k][j] < 0;
        }
        preds += cmp[j][i] < 0 && !between_pred;
        succs += cmp[i][j] < 0 && !between_succ;
      }
      r.tally(preds == 1 && succs == 1, "unique predecessor and successor", y);
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Report&);
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance report"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail; exit 0 iff exactly these fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const Criterion criteria[] = {
      {1, "bands, weak bridges and compositions of the first example", bands_and_weak_bridges},
      {2, "compositions and arch quiver of the non-associative example", nonassociative_bridges},
      {3, "opposite-sign example and its extended arch quiver", opposite_sign_example},
      {4, "parallel abnormal bridges and their extended weak quiver", parallel_abnormal_bridges},
      {5, "H-reduced string and its plain reduction", h_reduced_example},
      {6, "abnormal half bridges at a one-letter base", abnormal_half_bridges},
      {7, "case calculus on the labelled examples", case_calculus},
      {8, "property suites (a)-(h) on every fixture", property_suites},
      {9, "hammock order sanity", hammock_sanity},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    Report r;
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    auto fs = r.failures();
    std::cout << (fs.empty() ? "PASS" : "FAIL") << " " << c.id << " " << c.title;
    for (std::size_t k = 0; k < fs.size(); ++k) std::cout << (k == 0 ? ": " : "; ") << fs[k];
    std::cout << "\n";
    if (!fs.empty()) failed.insert(c.id);
  }
  std::cout << "passed " << (std::size(criteria) - failed.size()) << " of " << std::size(criteria) << "\n";
  if (app.count("--expect-fail")) return failed == std::set<int>(expect_fail.begin(), expect_fail.end()) ? 0 : 1;
  return failed.empty() ? 0 : 1;
}
