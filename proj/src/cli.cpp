#include "bridgeforge/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bridgeforge/extended.hpp"
#include "json.hpp"

namespace bridgeforge {
namespace {

using nlohmann::json;

// Bad command-line arguments that parse but name nothing in the algebra.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string digest_of(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::uint64_t h = 14695981039346656037ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string kind_name(ArrowKind k) {
  switch (k) {
    case ArrowKind::WeakBridge: return "bridge";
    case ArrowKind::Half: return "half";
    case ArrowKind::ReverseHalf: return "reverse-half";
    case ArrowKind::Zero: return "zero";
  }
  return "?";
}

// One band per inverse pair: the first declared representative, else the
// lower index.
std::vector<int> displayed_orbits(const Algebra& a) {
  std::vector<int> out;
  std::vector<bool> taken(static_cast<std::size_t>(a.band_count()), false);
  auto take = [&](int b) {
    if (taken[b]) return;
    out.push_back(b);
    taken[b] = true;
    taken[a.band(b).inverse] = true;
  };
  for (const auto& lit : a.pres().band_literals) take(a.orbit_of(parse_word(a.pres(), lit).w));
  for (int b = 0; b < a.band_count(); ++b) take(b);
  return out;
}

struct Options {
  std::string file;
  std::string format = "text";
  std::string output;
};

class Session {
 public:
  explicit Session(const Options& o) : opts_(o), algebra_(load_presentation(o.file)) {}

  const Algebra& algebra() const { return algebra_; }
  const Presentation& pres() const { return algebra_.pres(); }
  const ArchStructure& arch() {
    if (!arch_) arch_ = std::make_unique<ArchStructure>(algebra_);
    return *arch_;
  }

  Str string_arg(const std::string& text) const { return parse_string(pres(), text); }

  // Weak bridges carrying the given word, then weak arch bridges.
  std::vector<Arrow> bridges_with_word(const std::string& text) {
    Str w = parse_word(pres(), text);
    std::vector<Arrow> out;
    for (const auto& u : arch().weak_bridges())
      if (u.word == w) out.push_back(u);
    for (const auto& u : arch().weak_arch_arrows())
      if (u.word == w && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    if (out.empty()) throw ArgumentError("'" + text + "' is neither a weak bridge nor a weak arch bridge");
    return out;
  }

 private:
  Options opts_;
  Algebra algebra_;
  std::unique_ptr<ArchStructure> arch_;
};

json quiver_json(const Algebra& a, const BridgeQuiver& q) {
  json vs = json::array(), as = json::array();
  for (const auto& v : q.vertices) vs.push_back(vertex_name(a, v));
  for (const auto& u : q.arrows)
    as.push_back({{"from", vertex_name(a, u.source)},
                  {"to", vertex_name(a, u.target)},
                  {"word", render(a.pres(), u.word)},
                  {"kind", kind_name(u.kind)}});
  return {{"vertices", vs}, {"arrows", as}};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void write_dot(std::ostream& out, const Algebra& a, const BridgeQuiver& q, const std::string& name) {
  out << "digraph \"" << dot_escape(name) << "\" {\n";
  std::map<Vertex, std::size_t> id;
  for (std::size_t k = 0; k < q.vertices.size(); ++k) {
    id[q.vertices[k]] = k;
    out << "  n" << k << " [label=\"" << dot_escape(vertex_name(a, q.vertices[k])) << "\"];\n";
  }
  for (const auto& u : q.arrows)
    out << "  n" << id.at(u.source) << " -> n" << id.at(u.target) << " [label=\""
        << dot_escape(render(a.pres(), u.word)) << "\"];\n";
  out << "}\n";
}

BridgeQuiver canonical(BridgeQuiver q) {
  for (const auto& u : q.arrows)
    for (const Vertex* v : {&u.source, &u.target})
      if (std::find(q.vertices.begin(), q.vertices.end(), *v) == q.vertices.end()) q.vertices.push_back(*v);
  std::sort(q.vertices.begin(), q.vertices.end());
  q.vertices.erase(std::unique(q.vertices.begin(), q.vertices.end()), q.vertices.end());
  std::sort(q.arrows.begin(), q.arrows.end());
  return q;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Bridge quivers, H-reduction and hammocks of domestic string algebras.\n"
                 "Strings: \"jiFc\" (uppercase = inverse), \"j,i,f^-1,c\", or \"1_(v2,+1)\".\n"
                 "BRIDGEFORGE_MAXLEN overrides the enumeration safety cap (default 40)."};
    app.name("bridgeforge");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every verb");

    std::string verb;
    std::vector<std::string> words;
    std::string base, quiver = "weak";
    int sign = 1;
    std::size_t maxlen = 4;
    bool h_mode = false, arch_mode = false;
    std::string layer = "arch";

    auto add_common = [&](CLI::App* c, bool formats) {
      c->add_option("file", opts_.file, "Algebra file (.alg, JSON)")->required();
      if (formats)
        c->add_option("--format", opts_.format, "Output format")
            ->check(CLI::IsMember({"text", "json", "dot"}))
            ->capture_default_str();
      else
        c->add_option("--format", opts_.format, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
      c->add_option("-o,--output", opts_.output, "Write results to this file instead of stdout");
      c->callback([&verb, c] { verb = c->get_name(); });
    };
    auto add_extended = [&](CLI::App* c) {
      c->add_option("--base", base, "Base string x0")->required();
      c->add_option("--sign", sign, "Hammock side (+1 or -1)")->check(CLI::IsMember({1, -1}))->capture_default_str();
    };

    add_common(app.add_subcommand("validate", "Check the axioms and domesticity"), false);
    add_common(app.add_subcommand("bands", "List band orbits up to inversion"), false);
    add_common(app.add_subcommand("weak-bridges", "Weak bridge quiver"), true);
    add_common(app.add_subcommand("bridge-quiver", "Bridge quiver (ordinary arrows)"), true);
    add_common(app.add_subcommand("arch-quiver", "Arch bridge quiver"), true);
    add_common(app.add_subcommand("semi-quiver", "Semi-bridge quiver"), true);
    {
      auto* c = app.add_subcommand("extended-quiver", "Extended quiver relative to a base string");
      add_common(c, true);
      add_extended(c);
      c->add_option("--layer", layer, "Arrow set")
          ->check(CLI::IsMember({"weak", "ordinary", "weak-arch", "arch", "semi"}))
          ->capture_default_str();
    }
    {
      auto* c = app.add_subcommand("reduce", "H-reduce a string and print the trace");
      add_common(c, false);
      c->add_option("string", words, "String to reduce")->required()->expected(1);
    }
    {
      auto* c = app.add_subcommand("compose", "Compose two weak bridges, u2 after u1");
      c->set_help_flag("--help", "Print this help message and exit");
      add_common(c, false);
      c->add_option("words", words, "u2 u1")->required()->expected(2);
      c->add_flag("--h", h_mode, "Use the H-composition");
    }
    {
      auto* c = app.add_subcommand("factor", "Factorizations of a weak bridge");
      add_common(c, false);
      c->add_option("word", words, "Weak bridge word")->required()->expected(1);
      c->add_flag("--arch", arch_mode, "Print the arch factorization instead");
    }
    {
      auto* c = app.add_subcommand("hammock", "Ordered segment of the hammock of a base string");
      add_common(c, false);
      c->add_option("--base", base, "Base string x0")->required();
      c->add_option("--maxlen", maxlen, "Maximum extension length")->capture_default_str();
    }
    {
      auto* c = app.add_subcommand("export", "Write a quiver as DOT or JSON");
      add_common(c, true);
      c->add_option("--quiver", quiver, "Which quiver")
          ->check(CLI::IsMember({"weak", "bridge", "weak-arch", "arch", "semi", "extended"}))
          ->capture_default_str();
      c->add_option("--base", base, "Base string x0 (extended quiver)");
      c->add_option("--sign", sign, "Hammock side (extended quiver)")->check(CLI::IsMember({1, -1}));
      c->add_option("--layer", layer, "Arrow set of the extended quiver")
          ->check(CLI::IsMember({"weak", "ordinary", "weak-arch", "arch", "semi"}));
    }

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      return fail(kExitParse, "usage", e.what());
    }

    try {
      Session s(opts_);
      std::ostringstream buf;
      json outputs;
      if (verb == "validate") {
        validate(s, buf, outputs);
      } else if (verb == "bands") {
        bands(s, buf, outputs);
      } else if (verb == "reduce") {
        reduce(s, words[0], buf, outputs);
      } else if (verb == "compose") {
        compose_verb(s, words[0], words[1], h_mode, buf, outputs);
      } else if (verb == "factor") {
        factor_verb(s, words[0], arch_mode, buf, outputs);
      } else if (verb == "hammock") {
        hammock(s, base, maxlen, buf, outputs);
      } else {
        std::string which = verb == "weak-bridges"    ? "weak"
                            : verb == "bridge-quiver" ? "bridge"
                            : verb == "arch-quiver"   ? "arch"
                            : verb == "semi-quiver"   ? "semi"
                            : verb == "extended-quiver" ? "extended"
                                                        : quiver;
        if (which == "extended" && base.empty()) throw ArgumentError("--base is required for the extended quiver");
        show_quiver(s, which, base, sign, layer, buf, outputs);
      }
      emit(verb, buf.str(), outputs);
      return kExitOk;
    } catch (const ValidationError& e) {
      return fail(kExitValidation, "validation", e.what(), e.axiom());
    } catch (const ArgumentError& e) {
      return fail(kExitValidation, "argument", e.what());
    } catch (const NotAWeakArchBridge& e) {
      return fail(kExitValidation, "argument", e.what());
    } catch (const NotInHammockSide& e) {
      return fail(kExitValidation, "argument", e.what());
    } catch (const DifferentBase& e) {
      return fail(kExitValidation, "argument", e.what());
    } catch (const NonDomestic& e) {
      return fail(kExitNonDomestic, "non-domestic", e.what());
    } catch (const ParseError& e) {
      return fail(kExitParse, "parse", e.what());
    } catch (const UnknownArrow& e) {
      return fail(kExitParse, "parse", e.what());
    } catch (const InvariantBreach& e) {
      return fail(kExitInvariant, "invariant", e.what());
    } catch (const std::exception& e) {
      return fail(kExitInvariant, "internal", e.what());
    }
  }

 private:
  int fail(int code, const std::string& kind, const std::string& message, const std::string& axiom = "") {
    json d = {{"exit", code}, {"kind", kind}, {"message", message}};
    if (!axiom.empty()) d["axiom"] = axiom;
    err_ << d.dump() << "\n";
    return code;
  }

  void emit(const std::string& verb, const std::string& text, const json& outputs) {
    std::string body = text;
    if (opts_.format == "json") {
      json report = {{"command", verb},
                     {"input", opts_.file},
                     {"input_digest", digest_of(opts_.file)},
                     {"outputs", outputs},
                     {"diagnostics", json::array()}};
      body = report.dump(2) + "\n";
    }
    if (opts_.output.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(opts_.output, std::ios::binary);
    if (!f) throw ArgumentError("cannot write " + opts_.output);
    f << body;
  }

  void validate(Session& s, std::ostream& o, json& j) {
    const Presentation& p = s.pres();
    const std::size_t orbits = displayed_orbits(s.algebra()).size();
    o << "ok " << p.name << ": " << p.vertices.size() << " vertices, " << p.arrows.size() << " arrows, "
      << p.relations.size() << " relations, " << orbits << " band orbits\n";
    j = {{"name", p.name},
         {"vertices", p.vertices.size()},
         {"arrows", p.arrows.size()},
         {"relations", p.relations.size()},
         {"band_orbits", orbits}};
  }

  void bands(Session& s, std::ostream& o, json& j) {
    const Algebra& a = s.algebra();
    j = json::array();
    for (int b : displayed_orbits(a)) {
      std::string inv = a.band_name(a.band(b).inverse);
      o << a.band_name(b) << " (inverse " << inv << ", length " << a.band(b).size() << ")\n";
      j.push_back({{"representative", a.band_name(b)}, {"inverse", inv}, {"length", a.band(b).size()}});
    }
  }

  void reduce(Session& s, const std::string& text, std::ostream& o, json& j) {
    const Algebra& a = s.algebra();
    Str y = s.string_arg(text);
    HReduction r = hh(a, y);
    o << render(a.pres(), r.result) << "\n";
    json steps = json::array();
    for (const auto& st : r.trace.steps) {
      std::string band = a.band_name(st.band), rot = render(a.pres(), st.rotation);
      o << "band=" << band << " rotation=" << rot << " pos=" << st.pos << "\n";
      steps.push_back({{"band", band}, {"rotation", rot}, {"pos", st.pos}});
    }
    j = {{"input", render(a.pres(), y)}, {"result", render(a.pres(), r.result)}, {"trace", steps}};
  }

  void compose_verb(Session& s, const std::string& w2, const std::string& w1, bool h_mode, std::ostream& o,
                    json& j) {
    const Algebra& a = s.algebra();
    auto c2 = s.bridges_with_word(w2), c1 = s.bridges_with_word(w1);
    std::optional<std::pair<Arrow, Arrow>> pick;
    for (const auto& u1 : c1)
      for (const auto& u2 : c2)
        if (!pick && u1.target == u2.source) pick = {u2, u1};
    if (!pick) throw ArgumentError("no weak bridges " + w2 + ", " + w1 + " with matching target and source");
    const auto& [u2, u1] = *pick;
    auto c = compose(a, u2, u1);
    j = {{"u2", arrow_name(a, u2)}, {"u1", arrow_name(a, u1)}};
    if (c) {
      o << "compose: " << arrow_name(a, *c.result) << "\n";
      j["compose"] = {{"defined", true}, {"result", render(a.pres(), c.result->word)}};
    } else {
      o << "compose: undefined (" << failure_tag(c.failure) << ")\n";
      j["compose"] = {{"defined", false}, {"case", failure_tag(c.failure)}};
    }
    if (h_mode) {
      Arrow r = s.arch().compose_h(u2, u1);
      o << "compose_h: " << arrow_name(a, r) << "\n";
      j["compose_h"] = {{"defined", true}, {"result", render(a.pres(), r.word)}};
    }
  }

  void factor_verb(Session& s, const std::string& w, bool arch_mode, std::ostream& o, json& j) {
    const Algebra& a = s.algebra();
    const Arrow u = s.bridges_with_word(w).front();
    j = {{"arrow", arrow_name(a, u)}};
    if (arch_mode) {
      BridgePath path = s.arch().factor_arch(u);
      json ps = json::array();
      for (const auto& v : path) ps.push_back(render(a.pres(), v.word));
      o << path_name(a, path) << "\n";
      j["arch_path"] = ps;
      return;
    }
    json fs = json::array();
    const auto found = factorizations(a, u, s.arch().weak_bridges());
    if (found.empty()) o << "no factorization\n";
    for (const auto& [u2, u1] : found) {
      std::string n2 = render(a.pres(), u2.word), n1 = render(a.pres(), u1.word);
      o << n2 << " o " << n1 << " via " << vertex_name(a, u1.target) << "\n";
      fs.push_back({{"u2", n2}, {"u1", n1}, {"via", vertex_name(a, u1.target)}});
    }
    j["factorizations"] = fs;
  }

  void hammock(Session& s, const std::string& base, std::size_t maxlen, std::ostream& o, json& j) {
    const Algebra& a = s.algebra();
    Str x0 = s.string_arg(base);
    j = json::array();
    for (const auto& e : hammock_segment(a, x0, maxlen)) {
      std::string side = e.side == 0 ? "0" : e.side > 0 ? "+1" : "-1";
      o << side << " " << render(a.pres(), e.word) << "\n";
      j.push_back({{"side", e.side}, {"word", render(a.pres(), e.word)}});
    }
  }

  void show_quiver(Session& s, const std::string& which, const std::string& base, int sign,
                   const std::string& layer, std::ostream& o, json& j) {
    const Algebra& a = s.algebra();
    BridgeQuiver q;
    std::string title = which;
    if (which == "weak") {
      q = build_weak_bridge_quiver(a);
    } else if (which == "bridge") {
      q = build_bridge_quiver(a);
    } else if (which == "weak-arch") {
      q = build_weak_arch_quiver(s.arch());
    } else if (which == "arch") {
      q = build_arch_quiver(s.arch());
    } else if (which == "semi") {
      q = build_semi_quiver(s.arch());
    } else {
      ExtendedStructure e(s.arch(), s.string_arg(base), sign);
      std::vector<Arrow> arrows = layer == "weak"        ? e.weak_arrows()
                                  : layer == "ordinary"  ? e.ordinary_arrows()
                                  : layer == "weak-arch" ? e.weak_arch_arrows()
                                  : layer == "semi"      ? e.semi_arrows()
                                                         : e.arch_arrows();
      q = e.quiver(arrows);
      title = "extended-" + layer;
    }
    q = canonical(std::move(q));
    j = quiver_json(a, q);
    if (opts_.format == "dot") {
      write_dot(o, a, q, title);
      return;
    }
    for (const auto& v : q.vertices) o << "vertex " << vertex_name(a, v) << "\n";
    for (const auto& u : q.arrows) o << "arrow " << arrow_name(a, u) << "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
  Options opts_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace bridgeforge
