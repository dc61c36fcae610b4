#include <algorithm>
#include <map>
#include <set>

#include "bridgeforge/hred.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bridgeforge;
using testsupport::algebra;

namespace {

const char* kFixtures[] = {"lambda", "lambda-prime", "lambda-dprime", "x1", "lambda-iii", "lambda-iv", "lambda-v", "lambda-vi"};

std::string show(const Algebra& a, const Str& y) { return render(a.pres(), y); }

int band_named(const Algebra& a, const std::string& name) {
  for (int b = 0; b < a.band_count(); ++b)
    if (a.band_name(b) == name) return b;
  FAIL("no band " << name);
  return -1;
}

// Which extensions of bounded length make x·y a string.
std::vector<bool> signature(const Presentation& p, const Str& y, std::size_t bound) {
  std::vector<bool> sig;
  for (const auto& x : extensions_at(p, tgt(p, y), bound)) sig.push_back(concat(p, x, y).has_value());
  return sig;
}

bool power_of_rotation(const Algebra& a, const std::vector<Letter>& x) {
  for (int b = 0; b < a.band_count(); ++b)
    for (const auto& r : a.band(b).rotations) {
      std::size_t n = r.size();
      if (x.empty() || x.size() % n != 0) continue;
      bool ok = true;
      for (std::size_t k = 0; k < x.size() && ok; ++k) ok = x[k] == r.w[k % n];
      if (ok) return true;
    }
  return false;
}

bool factor_of_band_power(const Algebra& a, const std::vector<Letter>& x) {
  for (int b = 0; b < a.band_count(); ++b) {
    const auto& rep = a.band(b).rep.w;
    std::vector<Letter> big;
    while (big.size() < x.size() + 2 * rep.size()) big.insert(big.end(), rep.begin(), rep.end());
    if (std::search(big.begin(), big.end(), x.begin(), x.end()) != big.end()) return true;
  }
  return false;
}

// hh with bands applied in reverse canonical order.
Str hh_reversed(const Algebra& a, Str y) {
  for (bool changed = true; changed;) {
    changed = false;
    auto bs = bands_present(a, y);
    for (auto it = bs.rbegin(); it != bs.rend(); ++it)
      if (auto r = hred_b(a, y, *it)) {
        y = *r;
        changed = true;
        break;
      }
  }
  return y;
}

}  // namespace

TEST_CASE("H-equivalence examples") {
  const Algebra& a = algebra("lambda-vi");
  const Presentation& p = a.pres();
  Str y = parse_string(p, "HgFcB"), y1 = parse_string(p, "cB");
  auto w = h_equivalent(p, y, y1);
  CHECK(w.verdict);
  CHECK(w.rule == "crossed-syllable");
  CHECK_FALSE(w.counterexample);
  CHECK(h_equivalent(p, y, y).verdict);
  CHECK(h_equivalent_oracle(p, y, y, oracle_bound(p)).verdict);

  auto no = h_equivalent(p, parse_string(p, "HgFcaDB"), parse_string(p, "caDB"));
  CHECK_FALSE(no.verdict);
  REQUIRE(no.counterexample);

  const Algebra& lp = algebra("lambda-prime");
  const Presentation& q = lp.pres();
  auto d = h_equivalent(q, parse_string(q, "eDbA"), parse_string(q, "bA"));
  CHECK_FALSE(d.verdict);
  CHECK(d.rule == "target-mismatch");
  auto e = h_equivalent(q, parse_string(q, "biheDbA"), parse_string(q, "bA"));
  CHECK_FALSE(e.verdict);
  REQUIRE(e.counterexample);
  CHECK(concat(q, *e.counterexample, parse_string(q, "biheDbA")).has_value() != concat(q, *e.counterexample, parse_string(q, "bA")).has_value());
}

TEST_CASE("criterion and oracle agree on all same-target pairs up to length 6") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Presentation& p = algebra(name).pres();
    std::size_t bound = oracle_bound(p);
    auto strings = enumerate_strings(p, 6);
    std::vector<std::vector<bool>> sigs;
    for (const auto& y : strings) sigs.push_back(signature(p, y, bound));
    long disagreements = 0;
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = 0; j < strings.size(); ++j) {
        if (tgt(p, strings[i]) != tgt(p, strings[j])) continue;
        bool oracle = sigs[i] == sigs[j];
        auto w = h_equivalent(p, strings[i], strings[j]);
        if (w.verdict != oracle) {
          ++disagreements;
          if (disagreements <= 5) FAIL_CHECK(render(p, strings[i]) << " vs " << render(p, strings[j]) << " rule " << w.rule);
        }
        if (!w.verdict) {
          REQUIRE(w.counterexample);
          CHECK(concat(p, *w.counterexample, strings[i]).has_value() != concat(p, *w.counterexample, strings[j]).has_value());
        }
      }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("the oracle bound is saturated") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Presentation& p = algebra(name).pres();
    std::size_t bound = oracle_bound(p);
    auto strings = enumerate_strings(p, 4);
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = i + 1; j < strings.size(); ++j)
        if (tgt(p, strings[i]) == tgt(p, strings[j]))
          CHECK(h_equivalent_oracle(p, strings[i], strings[j], bound).verdict ==
                h_equivalent_oracle(p, strings[i], strings[j], bound + 3).verdict);
  }
}

TEST_CASE("H-equivalence is preserved by common extensions") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Presentation& p = algebra(name).pres();
    auto strings = enumerate_strings(p, 5);
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = i + 1; j < strings.size(); ++j) {
        if (!h_equivalent(p, strings[i], strings[j]).verdict) continue;
        for (const auto& x : enumerate_strings_from(p, tgt(p, strings[i]), 3)) {
          auto x1 = concat(p, x, strings[i]), x2 = concat(p, x, strings[j]);
          if (x1 && x2) CHECK(h_equivalent(p, *x1, *x2).verdict);
        }
      }
  }
}

TEST_CASE("H-equivalent extensions by a nontrivial string are band powers") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    for (const auto& z : enumerate_strings(p, 9))
      for (std::size_t k = 0; k < z.size(); ++k)
        if (h_equivalent(p, z, left_sub(p, z, k)).verdict) {
          std::vector<Letter> x(z.w.begin() + static_cast<long>(k), z.w.end());
          CHECK_MESSAGE(power_of_rotation(a, x), render(p, z) << " at " << k);
        }
  }
}

TEST_CASE("overlapping removable band segments lie in one band power") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    for (const auto& z : enumerate_strings(p, 10)) {
      std::vector<std::pair<std::size_t, std::size_t>> segs;
      for (std::size_t i = 0; i <= z.size(); ++i)
        for (std::size_t j = i + 1; j <= z.size(); ++j)
          if (h_equivalent(p, left_sub(p, z, j), left_sub(p, z, i)).verdict) segs.emplace_back(i, j);
      for (auto [i1, j1] : segs)
        for (auto [i2, j2] : segs)
          if (std::max(i1, i2) < std::min(j1, j2)) {
            std::vector<Letter> u(z.w.begin() + static_cast<long>(std::min(i1, i2)), z.w.begin() + static_cast<long>(std::max(j1, j2)));
            CHECK(factor_of_band_power(a, u));
          }
    }
  }
}

TEST_CASE("H-reduction of a string with two bands present") {
  const Algebra& a = algebra("lambda-vi");
  const Presentation& p = a.pres();
  Str y = parse_string(p, "JeHgFcaDB");
  int aD = band_named(a, "aD"), gFH = band_named(a, "gFH");
  CHECK(bands_present(a, y) == std::vector<int>{std::min(aD, gFH), std::max(aD, gFH)});
  CHECK(is_h_reduced(a, y));
  CHECK(is_hereditary_h_string(p, y));
  CHECK_FALSE(hred_b(a, y, aD));
  CHECK_FALSE(hred_b(a, y, gFH));
  auto red = red_b(a, y, aD);
  REQUIRE(red);
  CHECK(show(a, red->result) == "JeHgFcB");
  CHECK_FALSE(is_h_reduced(a, red->result));
  auto hr = hred_b(a, red->result, gFH);
  REQUIRE(hr);
  CHECK(show(a, *hr) == "JecB");
  CHECK(show(a, hh(a, red->result).result) == "JecB");
  CHECK(hh_reversed(a, red->result) == hh(a, red->result).result);
}

TEST_CASE("H-reduced strings are the hereditary H-strings") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    for (const auto& y : enumerate_strings(p, 10)) {
      bool reduced = is_h_reduced(a, y);
      CHECK_MESSAGE(reduced == is_hereditary_h_string(p, y), render(p, y));
      if (reduced) CHECK(is_skeletal(a, y));
      if (is_band_free(a, y)) CHECK(reduced);
    }
  }
}

TEST_CASE("repeated band powers admit an H-reduction equal to the plain reduction") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    for (const auto& y : enumerate_strings(p, 12))
      for (int b : bands_present(a, y)) {
        if (power_count(a, y, b) < 2) continue;
        auto h = hred_b(a, y, b);
        auto r = red_b(a, y, b);
        REQUIRE_MESSAGE(h, render(p, y));
        CHECK(*h == r->result);
      }
  }
}

TEST_CASE("hh is confluent, idempotent and reproducible from its trace") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    for (const auto& z : enumerate_strings(p, 10)) {
      auto bs = bands_present(a, z);
      if (bs.size() >= 2)
        for (int b1 : bs)
          for (int b2 : bs)
            if (b1 < b2) CHECK_MESSAGE(hh_b(a, hh_b(a, z, b2), b1) == hh_b(a, hh_b(a, z, b1), b2), render(p, z));
      auto r = hh(a, z);
      CHECK(is_h_reduced(a, r.result));
      CHECK(hh(a, r.result).result == r.result);
      CHECK(hh_reversed(a, z) == r.result);
      Str replay = r.trace.input;
      for (const auto& s : r.trace.steps) {
        CHECK(std::equal(s.rotation.w.begin(), s.rotation.w.end(), replay.w.begin() + static_cast<long>(s.pos)));
        CHECK(h_equivalent(p, left_sub(p, replay, s.pos + s.rotation.size()), left_sub(p, replay, s.pos)).verdict);
        replay = *remove_at(a, replay, s.pos, s.rotation.size());
      }
      CHECK(replay == r.trace.output);
    }
  }
}

TEST_CASE("hereditary H-string enumeration") {
  for (const char* name : kFixtures) {
    CAPTURE(std::string(name));
    const Algebra& a = algebra(name);
    const Presentation& p = a.pres();
    auto list = enumerate_hereditary_h_strings(a);
    std::size_t longest = 0;
    for (const auto& y : list) longest = std::max(longest, y.size());
    std::set<std::vector<Letter>> words;
    for (const auto& y : list)
      if (!y.empty()) words.insert(y.w);
    std::set<std::vector<Letter>> brute;
    for (const auto& y : enumerate_strings(p, longest + 1))
      if (!y.empty() && is_hereditary_h_string(p, y)) brute.insert(y.w);
    CHECK(words == brute);
    for (const auto& y : enumerate_band_free(a))
      if (!y.empty()) CHECK(words.count(y.w) == 1);
  }
}
