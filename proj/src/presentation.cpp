#include "bridgeforge/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bridgeforge {

using nlohmann::json;

int Presentation::vertex_index(const std::string& v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

int Presentation::arrow_index(const std::string& a) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == a) return static_cast<int>(i);
  return -1;
}

void Presentation::finalize() {
  compact_ = !arrows.empty();
  for (const auto& a : arrows)
    if (a.name.size() != 1 || !std::islower(static_cast<unsigned char>(a.name[0]))) compact_ = false;
  max_rel_ = 0;
  forbidden_.clear();
  for (const auto& r : relations) {
    max_rel_ = std::max(max_rel_, r.size());
    std::vector<Letter> direct, inv;
    for (int a : r) direct.push_back(make_letter(a, false));
    for (auto it = r.rbegin(); it != r.rend(); ++it) inv.push_back(make_letter(*it, true));
    forbidden_.push_back(direct);
    forbidden_.push_back(inv);
  }
}

bool Presentation::operator==(const Presentation& o) const {
  if (vertices != o.vertices || relations != o.relations || band_literals != o.band_literals) return false;
  if (arrows.size() != o.arrows.size()) return false;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto &a = arrows[i], &b = o.arrows[i];
    if (a.name != b.name || a.src != b.src || a.tgt != b.tgt || a.sigma != b.sigma || a.eps != b.eps)
      return false;
  }
  return true;
}

namespace {

int parse_sign(const json& j, const std::string& what) {
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v == 1 || v == -1) return v;
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "+1" || s == "1" || s == "+") return 1;
    if (s == "-1" || s == "-") return -1;
  }
  throw ParseError("sign for " + what + " must be +1 or -1");
}

// Equality (same=true) or opposition constraint between two sign variables.
// Variable 2*a is sigma(a), 2*a+1 is epsilon(a).
struct SignConstraint {
  int x, y;
  bool same;
  std::string why;
};

std::vector<SignConstraint> sign_constraints(const Presentation& p) {
  std::vector<SignConstraint> out;
  const int n = static_cast<int>(p.arrows.size());
  std::set<std::vector<int>> rel(p.relations.begin(), p.relations.end());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (p.arrows[a].src == p.arrows[b].src)
        out.push_back({2 * a, 2 * b, false, "common source of " + p.arrows[a].name + "," + p.arrows[b].name});
      if (p.arrows[a].tgt == p.arrows[b].tgt)
        out.push_back({2 * a + 1, 2 * b + 1, false, "common target of " + p.arrows[a].name + "," + p.arrows[b].name});
    }
  for (int g = 0; g < n; ++g)
    for (int b = 0; b < n; ++b)
      if (p.arrows[g].tgt == p.arrows[b].src && !rel.count({g, b}))
        out.push_back({2 * b, 2 * g + 1, false, "path " + p.arrows[b].name + p.arrows[g].name + " outside relations"});
  return out;
}

std::string var_name(const Presentation& p, int v) {
  return std::string(v % 2 ? "epsilon(" : "sigma(") + p.arrows[v / 2].name + ")";
}

}  // namespace

namespace {
void validate_structure(const Presentation& p);
}  // namespace

Presentation parse_presentation(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed algebra file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object");
  Presentation p;
  try {
    p.name = j.value("name", std::string());
    for (const auto& v : j.at("vertices")) p.vertices.push_back(v.get<std::string>());
    for (const auto& a : j.at("arrows")) {
      ArrowSpec s;
      s.name = a.at("name").get<std::string>();
      s.src = p.vertex_index(a.at("from").get<std::string>());
      s.tgt = p.vertex_index(a.at("to").get<std::string>());
      if (s.src < 0 || s.tgt < 0) throw ValidationError("unknown-vertex", "arrow " + s.name);
      if (s.name.empty()) throw ParseError("empty arrow name");
      if (p.arrow_index(s.name) >= 0) throw ValidationError("duplicate-arrow", s.name);
      p.arrows.push_back(s);
    }
    // Canonical letter order is by arrow name.
    std::sort(p.arrows.begin(), p.arrows.end(),
              [](const ArrowSpec& a, const ArrowSpec& b) { return a.name < b.name; });
    if (j.contains("relations"))
      for (const auto& r : j.at("relations")) {
        std::vector<int> written;
        for (const auto& a : r) {
          int idx = p.arrow_index(a.get<std::string>());
          if (idx < 0) throw ValidationError("unknown-arrow", "relation uses " + a.get<std::string>());
          written.push_back(idx);
        }
        std::reverse(written.begin(), written.end());
        p.relations.push_back(written);
      }
    bool has_sigma = j.contains("sigma"), has_eps = j.contains("epsilon");
    if (has_sigma != has_eps) throw ParseError("sigma and epsilon must be given together");
    if (has_sigma) {
      p.signs_given = true;
      for (auto& a : p.arrows) {
        if (!j["sigma"].contains(a.name) || !j["epsilon"].contains(a.name))
          throw ParseError("missing sign for arrow " + a.name);
        a.sigma = parse_sign(j["sigma"][a.name], "sigma(" + a.name + ")");
        a.eps = parse_sign(j["epsilon"][a.name], "epsilon(" + a.name + ")");
      }
    }
    if (j.contains("bands"))
      for (const auto& b : j.at("bands")) p.band_literals.push_back(b.get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad algebra file structure: ") + e.what());
  }
  p.finalize();
  validate_structure(p);
  if (!p.signs_given) {
    auto d = derive_sign_maps(p);
    if (!d.maps) {
      std::string chain;
      for (const auto& c : d.conflict) chain += (chain.empty() ? "" : "; ") + c;
      throw ValidationError("inconsistent-signs", chain);
    }
    for (std::size_t a = 0; a < p.arrows.size(); ++a) {
      p.arrows[a].sigma = d.maps->sigma[a];
      p.arrows[a].eps = d.maps->epsilon[a];
    }
  }
  validate_presentation(p);
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string serialize_presentation(const Presentation& p) {
  json j;
  if (!p.name.empty()) j["name"] = p.name;
  j["vertices"] = p.vertices;
  j["arrows"] = json::array();
  for (const auto& a : p.arrows)
    j["arrows"].push_back({{"name", a.name}, {"from", p.vertices[a.src]}, {"to", p.vertices[a.tgt]}});
  j["relations"] = json::array();
  for (const auto& r : p.relations) {
    json rr = json::array();
    for (auto it = r.rbegin(); it != r.rend(); ++it) rr.push_back(p.arrows[*it].name);
    j["relations"].push_back(rr);
  }
  json sg = json::object(), ep = json::object();
  for (const auto& a : p.arrows) {
    sg[a.name] = a.sigma;
    ep[a.name] = a.eps;
  }
  j["sigma"] = sg;
  j["epsilon"] = ep;
  if (!p.band_literals.empty()) j["bands"] = p.band_literals;
  return j.dump(2) + "\n";
}

namespace {

// Everything except the sign axioms.
void validate_structure(const Presentation& p) {
  const int n = static_cast<int>(p.arrows.size());
  std::set<std::string> seen_vertices;
  for (const auto& v : p.vertices)
    if (!seen_vertices.insert(v).second) throw ValidationError("duplicate-vertex", v);
  std::vector<int> out_deg(p.vertices.size()), in_deg(p.vertices.size());
  for (const auto& a : p.arrows) {
    ++out_deg[a.src];
    ++in_deg[a.tgt];
  }
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    if (out_deg[v] > 2) throw ValidationError("out-degree", p.vertices[v] + " has more than 2 outgoing arrows");
    if (in_deg[v] > 2) throw ValidationError("in-degree", p.vertices[v] + " has more than 2 incoming arrows");
  }

  std::set<std::vector<int>> rel;
  for (const auto& r : p.relations) {
    if (r.size() < 2) throw ValidationError("relation-length", "relations need length at least 2");
    for (std::size_t k = 0; k + 1 < r.size(); ++k)
      if (p.arrows[r[k]].tgt != p.arrows[r[k + 1]].src)
        throw ValidationError("relation-not-path", "relation is not a path in the quiver");
    if (!rel.insert(r).second) throw ValidationError("relation-comparable", "duplicate relation");
  }
  for (const auto& r1 : p.relations)
    for (const auto& r2 : p.relations)
      if (&r1 != &r2 && r1.size() < r2.size() &&
          std::search(r2.begin(), r2.end(), r1.begin(), r1.end()) != r2.end())
        throw ValidationError("relation-comparable", "a relation is a subpath of another");

  for (int g = 0; g < n; ++g) {
    int after = 0, before = 0;
    for (int b = 0; b < n; ++b) {
      if (p.arrows[g].tgt == p.arrows[b].src && !rel.count({g, b})) ++after;
      if (p.arrows[b].tgt == p.arrows[g].src && !rel.count({b, g})) ++before;
    }
    if (after > 1 || before > 1)
      throw ValidationError("unique-continuation", "arrow " + p.arrows[g].name + " has two relation-free continuations");
  }

  // Finite dimension: the graph of relation-free direct windows must be acyclic.
  std::size_t w = std::max<std::size_t>(1, p.max_relation_length() > 0 ? p.max_relation_length() - 1 : 1);
  auto relation_free = [&](const std::vector<int>& path) {
    for (const auto& r : p.relations)
      if (r.size() <= path.size() && std::search(path.begin(), path.end(), r.begin(), r.end()) != path.end())
        return false;
    return true;
  };
  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> states;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& path) {
    if (path.size() == w) {
      id[path] = static_cast<int>(states.size());
      states.push_back(path);
      return;
    }
    for (int b = 0; b < n; ++b)
      if (path.empty() || p.arrows[path.back()].tgt == p.arrows[b].src) {
        path.push_back(b);
        if (relation_free(path)) grow(path);
        path.pop_back();
      }
  };
  std::vector<int> scratch;
  grow(scratch);
  std::vector<std::vector<int>> adj(states.size());
  for (std::size_t s = 0; s < states.size(); ++s)
    for (int b = 0; b < n; ++b) {
      if (p.arrows[states[s].back()].tgt != p.arrows[b].src) continue;
      std::vector<int> ext = states[s];
      ext.push_back(b);
      if (!relation_free(ext)) continue;
      ext.erase(ext.begin());
      adj[s].push_back(id.at(ext));
    }
  std::vector<int> colour(states.size(), 0);
  std::function<bool(int)> cyclic = [&](int s) {
    colour[s] = 1;
    for (int t : adj[s])
      if (colour[t] == 1 || (colour[t] == 0 && cyclic(t))) return true;
    colour[s] = 2;
    return false;
  };
  for (std::size_t s = 0; s < states.size(); ++s)
    if (colour[s] == 0 && cyclic(static_cast<int>(s)))
      throw ValidationError("finite-dimension", "a directed cycle avoids every relation");
}

}  // namespace

void validate_presentation(const Presentation& p) {
  validate_structure(p);
  for (const auto& a : p.arrows)
    if ((a.sigma != 1 && a.sigma != -1) || (a.eps != 1 && a.eps != -1))
      throw ValidationError("sign-range", "arrow " + a.name + " lacks a sign");
  for (const auto& c : sign_constraints(p)) {
    int vx = c.x % 2 ? p.arrows[c.x / 2].eps : p.arrows[c.x / 2].sigma;
    int vy = c.y % 2 ? p.arrows[c.y / 2].eps : p.arrows[c.y / 2].sigma;
    if ((vx == vy) != c.same) {
      std::string axiom = c.why.rfind("common source", 0) == 0   ? "sign-source"
                          : c.why.rfind("common target", 0) == 0 ? "sign-target"
                                                                   : "sign-composition";
      throw ValidationError(axiom, c.why);
    }
  }

}

SignDerivation derive_sign_maps(const Presentation& p) {
  const int n = static_cast<int>(p.arrows.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p.arrows[a].name < p.arrows[b].name; });

  auto cons = sign_constraints(p);
  std::vector<std::vector<std::pair<int, int>>> adj(2 * n);  // (neighbour, constraint index)
  for (std::size_t k = 0; k < cons.size(); ++k) {
    adj[cons[k].x].push_back({cons[k].y, static_cast<int>(k)});
    adj[cons[k].y].push_back({cons[k].x, static_cast<int>(k)});
  }
  std::vector<int> value(2 * n, 0), via(2 * n, -1);
  SignDerivation out;
  // Each variable left unconstrained by earlier choices takes +1; everything
  // connected to it is forced, so no further backtracking is ever needed.
  for (int a : order)
    for (int var : {2 * a, 2 * a + 1}) {
      if (value[var]) continue;
      value[var] = 1;
      std::vector<int> stack{var};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [y, k] : adj[x]) {
          int want = cons[k].same ? value[x] : -value[x];
          if (!value[y]) {
            value[y] = want;
            via[y] = k;
            stack.push_back(y);
          } else if (value[y] != want) {
            out.conflict.push_back(cons[k].why + " forces " + var_name(p, y));
            for (int z : {x, y})
              for (int cur = z; via[cur] >= 0;) {
                const auto& c = cons[via[cur]];
                out.conflict.push_back(c.why);
                cur = c.x == cur ? c.y : c.x;
              }
            return out;
          }
        }
      }
    }
  SignMaps m;
  for (int a = 0; a < n; ++a) {
    m.sigma.push_back(value[2 * a]);
    m.epsilon.push_back(value[2 * a + 1]);
  }
  out.maps = m;
  return out;
}

}  // namespace bridgeforge
