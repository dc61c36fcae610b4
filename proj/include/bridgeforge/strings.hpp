#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "bridgeforge/presentation.hpp"

namespace bridgeforge {

class UnknownArrow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroLength : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word over letters stored in traversal order: w[0] is the first letter
// walked, i.e. the rightmost letter of the written form. A zero-length word
// carries the vertex and sign of the trivial string 1_(v,i).
//
// Substring vocabulary used throughout:
//   left substring  = prefix of w (written right part, start of the walk)
//   right substring = suffix of w (written left part, end of the walk)
struct Str {
  std::vector<Letter> w;
  int vertex = -1;
  int sign = 0;

  static Str trivial(int v, int i) {
    Str s;
    s.vertex = v;
    s.sign = i;
    return s;
  }
  static Str of(std::vector<Letter> letters) {
    Str s;
    s.w = std::move(letters);
    return s;
  }
  std::size_t size() const { return w.size(); }
  bool empty() const { return w.empty(); }

  bool operator==(const Str& o) const {
    if (w.empty() || o.w.empty()) return w.empty() && o.w.empty() && vertex == o.vertex && sign == o.sign;
    return w == o.w;
  }
  bool operator!=(const Str& o) const { return !(*this == o); }
};

// Deterministic order: shorter first, then letterwise on the written form with
// a < A < b < B < ... (arrow index, direct before inverse); trivial strings
// by (vertex, sign).
bool str_less(const Str& a, const Str& b);
struct StrLess {
  bool operator()(const Str& a, const Str& b) const { return str_less(a, b); }
};

int src(const Presentation& p, const Str& y);
int tgt(const Presentation& p, const Str& y);
int sigma(const Presentation& p, const Str& y);
int eps(const Presentation& p, const Str& y);

// Whether letter `next` may be walked right after `prev`.
bool composable(const Presentation& p, Letter prev, Letter next);
// Whether appending `next` to the traversal-order word w keeps it a string,
// assuming w already is one.
bool extends(const Presentation& p, const std::vector<Letter>& w, Letter next);
bool is_string_word(const Presentation& p, const std::vector<Letter>& w);
bool is_string(const Presentation& p, const Str& y);

// Written concatenation x·y (y walked first); nullopt when not a string.
std::optional<Str> concat(const Presentation& p, const Str& x, const Str& y);
Str inverse(const Str& y);

int theta(const Presentation& p, const Str& y);
int delta(const Presentation& p, const Str& y);
int theta_letter(Letter l);

Str left_sub(const Presentation& p, const Str& y, std::size_t k);
Str right_sub(const Presentation& p, const Str& y, std::size_t k);
// Contiguous factor w[from, from+len) of a positive-length string.
Str factor(const Presentation& p, const Str& y, std::size_t from, std::size_t len);

Str z_l(const Presentation& p, const Str& y);
Str z_r(const Presentation& p, const Str& y);
Str rho_r(const Presentation& p, const Str& y);
Str rho_l(const Presentation& p, const Str& y);

struct ForkResult {
  Str common;  // maximal common left substring
  std::optional<Letter> next1, next2;
  bool forks = false;
};
ForkResult fork(const Presentation& p, const Str& x1, const Str& x2);

// All strings x·y with |x| <= maxlen in (length, written-lexicographic) order.
std::vector<Str> enumerate_left_extensions(const Presentation& p, const Str& y, std::size_t maxlen);
// All strings of length 1..maxlen starting at vertex v (any sign).
std::vector<Str> enumerate_strings_from(const Presentation& p, int v, std::size_t maxlen);
// All strings of length 0..maxlen (trivial ones included).
std::vector<Str> enumerate_strings(const Presentation& p, std::size_t maxlen);

std::string render_letter(const Presentation& p, Letter l, bool compact);
std::string render(const Presentation& p, const Str& y);
// Accepts "jiFc", "j,i,f^-1,c" and "1_(v2,+1)".
Str parse_string(const Presentation& p, const std::string& text);
// Parses without checking the string conditions.
Str parse_word(const Presentation& p, const std::string& text);

}  // namespace bridgeforge
