#include "bridgeforge/strings.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace bridgeforge {

bool str_less(const Str& a, const Str& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.empty()) return std::pair(a.vertex, a.sign) < std::pair(b.vertex, b.sign);
  return std::lexicographical_compare(a.w.rbegin(), a.w.rend(), b.w.rbegin(), b.w.rend());
}

int src(const Presentation& p, const Str& y) { return y.empty() ? y.vertex : p.src(y.w.front()); }
int tgt(const Presentation& p, const Str& y) { return y.empty() ? y.vertex : p.tgt(y.w.back()); }
int sigma(const Presentation& p, const Str& y) { return y.empty() ? -y.sign : p.sigma(y.w.front()); }
int eps(const Presentation& p, const Str& y) { return y.empty() ? y.sign : p.eps(y.w.back()); }

bool composable(const Presentation& p, Letter prev, Letter next) {
  return p.tgt(prev) == p.src(next) && p.sigma(next) == -p.eps(prev) && next != inverse_letter(prev);
}

bool extends(const Presentation& p, const std::vector<Letter>& w, Letter next) {
  if (!w.empty() && !composable(p, w.back(), next)) return false;
  for (const auto& f : p.forbidden()) {
    if (f.size() > w.size() + 1 || f.back() != next) continue;
    if (std::equal(f.begin(), f.end() - 1, w.end() - static_cast<long>(f.size() - 1))) return false;
  }
  return true;
}

bool is_string_word(const Presentation& p, const std::vector<Letter>& w) {
  std::vector<Letter> prefix;
  prefix.reserve(w.size());
  for (Letter l : w) {
    if (l < 0 || l >= p.letter_count() || !extends(p, prefix, l)) return false;
    prefix.push_back(l);
  }
  return true;
}

bool is_string(const Presentation& p, const Str& y) {
  if (y.empty())
    return y.vertex >= 0 && y.vertex < static_cast<int>(p.vertices.size()) && (y.sign == 1 || y.sign == -1);
  return is_string_word(p, y.w);
}

std::optional<Str> concat(const Presentation& p, const Str& x, const Str& y) {
  if (tgt(p, y) != src(p, x) || sigma(p, x) != -eps(p, y)) return std::nullopt;
  if (x.empty()) return y;
  if (y.empty()) return x;
  std::vector<Letter> w = y.w;
  for (Letter l : x.w) {
    if (!extends(p, w, l)) return std::nullopt;
    w.push_back(l);
  }
  return Str::of(std::move(w));
}

Str inverse(const Str& y) {
  if (y.empty()) return Str::trivial(y.vertex, -y.sign);
  std::vector<Letter> w;
  for (auto it = y.w.rbegin(); it != y.w.rend(); ++it) w.push_back(inverse_letter(*it));
  return Str::of(std::move(w));
}

int theta_letter(Letter l) { return is_inverse(l) ? 1 : -1; }

int theta(const Presentation&, const Str& y) {
  if (y.empty()) throw ZeroLength("theta is undefined on zero-length strings");
  return theta_letter(y.w.front());
}

int delta(const Presentation&, const Str& y) {
  if (y.empty()) throw ZeroLength("delta is undefined on zero-length strings");
  int t = theta_letter(y.w.front());
  for (Letter l : y.w)
    if (theta_letter(l) != t) return 0;
  return t;
}

Str left_sub(const Presentation& p, const Str& y, std::size_t k) {
  if (k == 0) return Str::trivial(src(p, y), -sigma(p, y));
  return Str::of(std::vector<Letter>(y.w.begin(), y.w.begin() + static_cast<long>(k)));
}

Str right_sub(const Presentation& p, const Str& y, std::size_t k) {
  if (k == 0) return Str::trivial(tgt(p, y), eps(p, y));
  return Str::of(std::vector<Letter>(y.w.end() - static_cast<long>(k), y.w.end()));
}

Str factor(const Presentation& p, const Str& y, std::size_t from, std::size_t len) {
  if (len == 0) {
    if (from == 0) return left_sub(p, y, 0);
    return Str::trivial(p.tgt(y.w[from - 1]), p.eps(y.w[from - 1]));
  }
  return Str::of(std::vector<Letter>(y.w.begin() + static_cast<long>(from),
                                     y.w.begin() + static_cast<long>(from + len)));
}

Str z_l(const Presentation& p, const Str& y) {
  if (y.empty()) return Str::trivial(src(p, y), -sigma(p, y));
  std::size_t k = 1;
  while (k < y.size() && theta_letter(y.w[k]) == theta_letter(y.w[0])) ++k;
  return left_sub(p, y, k);
}

Str z_r(const Presentation& p, const Str& y) {
  if (y.empty()) return Str::trivial(tgt(p, y), -eps(p, y));
  std::size_t k = 1;
  while (k < y.size() && theta_letter(y.w[y.size() - 1 - k]) == theta_letter(y.w.back())) ++k;
  return right_sub(p, y, k);
}

Str rho_r(const Presentation& p, const Str& y) {
  std::size_t best = 0;
  for (std::size_t k = 1; k <= y.size(); ++k)
    for (const auto& f : p.forbidden())
      if (k < f.size() && std::equal(f.begin(), f.begin() + static_cast<long>(k), y.w.end() - static_cast<long>(k)))
        best = k;
  if (best == 0) return Str::trivial(tgt(p, y), eps(p, y));
  return right_sub(p, y, best);
}

Str rho_l(const Presentation& p, const Str& y) { return inverse(rho_r(p, inverse(y))); }

ForkResult fork(const Presentation& p, const Str& x1, const Str& x2) {
  ForkResult r;
  std::size_t k = 0;
  while (k < x1.size() && k < x2.size() && x1.w[k] == x2.w[k]) ++k;
  r.common = x1.empty() ? x1 : (k == 0 ? left_sub(p, x1, 0) : left_sub(p, x1, k));
  if (k < x1.size()) r.next1 = x1.w[k];
  if (k < x2.size()) r.next2 = x2.w[k];
  r.forks = r.next1.has_value() && r.next2.has_value();
  return r;
}

namespace {

void grow(const Presentation& p, std::vector<Letter>& w, std::size_t limit, std::vector<Str>& out) {
  out.push_back(Str::of(w));
  if (w.size() >= limit) return;
  for (Letter l = 0; l < p.letter_count(); ++l)
    if (extends(p, w, l)) {
      w.push_back(l);
      grow(p, w, limit, out);
      w.pop_back();
    }
}

}  // namespace

std::vector<Str> enumerate_left_extensions(const Presentation& p, const Str& y, std::size_t maxlen) {
  std::vector<Str> out{y};
  std::function<void(std::vector<Letter>&, std::size_t)> rec = [&](std::vector<Letter>& w, std::size_t added) {
    if (added == maxlen) return;
    for (Letter l = 0; l < p.letter_count(); ++l) {
      bool ok = w.empty() ? (p.src(l) == y.vertex && p.sigma(l) == -y.sign) : extends(p, w, l);
      if (!ok) continue;
      w.push_back(l);
      out.push_back(Str::of(w));
      rec(w, added + 1);
      w.pop_back();
    }
  };
  std::vector<Letter> w = y.w;
  rec(w, 0);
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

std::vector<Str> enumerate_strings_from(const Presentation& p, int v, std::size_t maxlen) {
  std::vector<Str> out;
  for (Letter l = 0; l < p.letter_count(); ++l)
    if (p.src(l) == v && maxlen > 0) {
      std::vector<Letter> w{l};
      grow(p, w, maxlen, out);
    }
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

std::vector<Str> enumerate_strings(const Presentation& p, std::size_t maxlen) {
  std::vector<Str> out;
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
    for (int i : {1, -1}) out.push_back(Str::trivial(v, i));
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
    auto part = enumerate_strings_from(p, v, maxlen);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::stable_sort(out.begin(), out.end(), str_less);
  return out;
}

std::string render_letter(const Presentation& p, Letter l, bool compact) {
  const std::string& n = p.arrows[arrow_of(l)].name;
  if (compact) return is_inverse(l) ? std::string(1, static_cast<char>(std::toupper(n[0]))) : n;
  return is_inverse(l) ? n + "^-1" : n;
}

std::string render(const Presentation& p, const Str& y) {
  if (y.empty())
    return "1_(" + (y.vertex >= 0 ? p.vertices[y.vertex] : std::string("?")) + "," + (y.sign > 0 ? "+1" : "-1") + ")";
  std::string out;
  bool compact = p.compact_names();
  for (auto it = y.w.rbegin(); it != y.w.rend(); ++it) {
    if (!compact && !out.empty()) out += ",";
    out += render_letter(p, *it, compact);
  }
  return out;
}

Str parse_word(const Presentation& p, const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.rfind("1_(", 0) == 0) {
    if (text.back() != ')') throw ParseError("bad trivial string " + raw);
    std::string inner = text.substr(3, text.size() - 4);
    auto comma = inner.rfind(',');
    if (comma == std::string::npos) throw ParseError("bad trivial string " + raw);
    int v = p.vertex_index(inner.substr(0, comma));
    std::string s = inner.substr(comma + 1);
    if (v < 0) throw ParseError("unknown vertex in " + raw);
    int sign = (s == "+1" || s == "1") ? 1 : (s == "-1" ? -1 : 0);
    if (!sign) throw ParseError("bad sign in " + raw);
    return Str::trivial(v, sign);
  }
  std::vector<Letter> written;
  if (text.find(',') != std::string::npos || text.find('^') != std::string::npos || !p.compact_names()) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto next = text.find(',', pos);
      std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      bool inv = false;
      if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
        inv = true;
        tok.resize(tok.size() - 3);
      }
      int a = p.arrow_index(tok);
      if (a < 0) throw UnknownArrow("unknown arrow '" + tok + "'");
      written.push_back(make_letter(a, inv));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  } else {
    for (char c : text) {
      bool inv = std::isupper(static_cast<unsigned char>(c));
      int a = p.arrow_index(std::string(1, static_cast<char>(std::tolower(c))));
      if (a < 0) throw UnknownArrow(std::string("unknown arrow '") + c + "'");
      written.push_back(make_letter(a, inv));
    }
  }
  if (written.empty()) throw ParseError("empty string literal");
  std::reverse(written.begin(), written.end());
  return Str::of(std::move(written));
}

Str parse_string(const Presentation& p, const std::string& text) {
  Str y = parse_word(p, text);
  if (!is_string(p, y)) throw ParseError("'" + text + "' is not a string");
  return y;
}

}  // namespace bridgeforge
