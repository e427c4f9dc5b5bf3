#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kgv/action.hpp"
#include "kgv/errors.hpp"
#include "kgv/family.hpp"
#include "kgv/kgraph.hpp"
#include "kgv/monoid.hpp"

namespace kgv {

// In-memory form of a .kg file. Graph-defining sections are resolved into a
// KGraph at parse time; the action is kept as raw generator maps because
// turning them into an Action performs semantic validation (freeness,
// relations) that is not a parsing concern.
struct SpecData {
  int rank = 0;
  std::optional<KGraph> graph;
  std::optional<int> family_delta;  // FAMILY: delta <k>
  std::optional<Monoid> monoid;
  std::optional<std::vector<Monoid::Elt>> functor;  // per edge, identity-filled
  std::vector<Action::GenMap> gens;
  bool has_action = false;
  std::optional<std::pair<Monoid::Elt, Monoid::Elt>> window;
};

namespace detail {

struct SpecLine {
  int no;
  std::string text;
};

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

inline std::vector<std::string> spec_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline long long spec_int(const std::string& t, int line) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) parse_fail(line, "expected an integer, got '" + t + "'");
  return v;
}

// Comma-separated integers, e.g. "1,0" or "-3".
inline Monoid::Elt spec_elt(const std::string& t, int line) {
  Monoid::Elt out;
  size_t pos = 0;
  while (pos <= t.size()) {
    size_t comma = t.find(',', pos);
    std::string part = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) parse_fail(line, "malformed element '" + t + "'");
    out.push_back(spec_int(part, line));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string elt_text(const Monoid::Elt& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s;
}

inline bool is_header(const std::string& line, std::string& name, std::string& rest) {
  size_t colon = line.find(':');
  if (colon == 0 || colon == std::string::npos) return false;
  for (size_t i = 0; i < colon; ++i) {
    char c = line[i];
    if (!(c >= 'A' && c <= 'Z') && !(c >= '0' && c <= '9')) return false;
  }
  name = line.substr(0, colon);
  rest = line.substr(colon + 1);
  return true;
}

inline Monoid parse_monoid(const std::vector<SpecLine>& lines) {
  if (lines.empty()) parse_fail(0, "MONOID section is empty");
  auto head = spec_tokens(lines[0].text);
  int at = lines[0].no;
  auto arity = [&](size_t want, const char* what) {
    if (head.size() != want) parse_fail(at, std::string("expected '") + what + "'");
  };
  if (head[0] == "NAT" || head[0] == "INT") {
    arity(2, head[0] == "NAT" ? "NAT <dim>" : "INT <dim>");
    long long d = spec_int(head[1], at);
    if (d < 1 || d > 16) parse_fail(at, "monoid dimension out of range");
    if (lines.size() > 1) parse_fail(lines[1].no, "unexpected line in MONOID section");
    return head[0] == "NAT" ? Monoid::nat(static_cast<int>(d))
                            : Monoid::integers(static_cast<int>(d));
  }
  if (head[0] == "CYCLIC") {
    arity(2, "CYCLIC <order>");
    long long n = spec_int(head[1], at);
    if (n < 1 || n > 64) parse_fail(at, "cyclic order out of range");
    if (lines.size() > 1) parse_fail(lines[1].no, "unexpected line in MONOID section");
    return Monoid::finite(FiniteGroup::cyclic(static_cast<int>(n)));
  }
  if (head[0] == "SYM3") {
    arity(1, "SYM3");
    if (lines.size() > 1) parse_fail(lines[1].no, "unexpected line in MONOID section");
    return Monoid::finite(FiniteGroup::symmetric3());
  }
  if (head[0] == "TABLE") {
    arity(2, "TABLE <order>");
    long long n = spec_int(head[1], at);
    if (n < 1 || n > 64) parse_fail(at, "group order out of range");
    if (static_cast<long long>(lines.size()) != n + 1)
      parse_fail(at, "TABLE " + std::to_string(n) + " needs " + std::to_string(n) + " rows");
    std::vector<std::vector<int>> table(n);
    for (long long r = 0; r < n; ++r) {
      auto row = spec_tokens(lines[r + 1].text);
      if (static_cast<long long>(row.size()) != n)
        parse_fail(lines[r + 1].no, "table row needs " + std::to_string(n) + " entries");
      for (const auto& t : row) {
        long long v = spec_int(t, lines[r + 1].no);
        if (v < 0 || v >= n) parse_fail(lines[r + 1].no, "table entry out of range");
        table[r].push_back(static_cast<int>(v));
      }
    }
    try {
      return Monoid::finite(FiniteGroup(std::move(table)));
    } catch (const GroupError& e) {
      parse_fail(at, std::string("not a group table: ") + e.what());
    }
  }
  parse_fail(at, "unknown monoid '" + head[0] + "'");
}

inline std::string monoid_text(const Monoid& s) {
  switch (s.kind()) {
    case Monoid::Kind::nat:
      return "NAT " + std::to_string(s.dim());
    case Monoid::Kind::integers:
      return "INT " + std::to_string(s.dim());
    case Monoid::Kind::finite:
      break;
  }
  const FiniteGroup& g = s.group();
  if (g.table() == FiniteGroup::cyclic(g.order()).table())
    return "CYCLIC " + std::to_string(g.order());
  if (g.order() == 6 && g.table() == FiniteGroup::symmetric3().table()) return "SYM3";
  std::string out = "TABLE " + std::to_string(g.order());
  for (int a = 0; a < g.order(); ++a) {
    out += "\n ";
    for (int b = 0; b < g.order(); ++b) out += " " + std::to_string(g.mul(a, b));
  }
  return out;
}

}  // namespace detail

inline SpecData parse_spec(const std::string& text) {
  using detail::parse_fail;
  using detail::SpecLine;

  // Comment-stripped, trimmed content lines grouped by section.
  std::map<std::string, std::vector<SpecLine>> sections;
  std::map<std::string, int> section_line;
  {
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      size_t e = raw.find_last_not_of(" \t\r");
      std::string line = raw.substr(b, e - b + 1);

      std::string name, rest;
      if (detail::is_header(line, name, rest)) {
        if (!section_line.try_emplace(name, no).second)
          parse_fail(no, "duplicate section " + name);
        sections[name];
        current = name;
        size_t rb = rest.find_first_not_of(" \t");
        if (rb != std::string::npos) {
          size_t re = rest.find_last_not_of(" \t");
          sections[name].push_back({no, rest.substr(rb, re - rb + 1)});
        }
        continue;
      }
      if (current.empty()) parse_fail(no, "content before any section header");
      sections[current].push_back({no, line});
    }
  }

  static const std::set<std::string> known = {"RANK",   "VERTICES", "EDGES",  "SQUARES",
                                              "INCOMPLETE", "FUNCTOR", "MONOID", "ACTION",
                                              "WINDOW", "FAMILY"};
  for (const auto& [name, _] : sections)
    if (!known.count(name)) parse_fail(section_line[name], "unknown section " + name);

  auto has = [&](const char* n) { return sections.count(n) != 0; };
  auto need = [&](const char* n) -> const std::vector<SpecLine>& {
    if (!has(n)) throw ParseError(std::string("missing section ") + n);
    return sections[n];
  };

  SpecData sd;

  {
    const auto& r = need("RANK");
    if (r.size() != 1 || detail::spec_tokens(r[0].text).size() != 1)
      throw ParseError("RANK must hold exactly one integer");
    long long k = detail::spec_int(r[0].text, r[0].no);
    if (k < 1 || k > 16) parse_fail(r[0].no, "rank out of range");
    sd.rank = static_cast<int>(k);
  }

  if (has("MONOID")) sd.monoid = detail::parse_monoid(sections["MONOID"]);

  if (has("WINDOW")) {
    const auto& w = need("WINDOW");
    if (w.size() != 1) throw ParseError("WINDOW must be a single line");
    auto toks = detail::spec_tokens(w[0].text);
    if (toks.size() != 2) parse_fail(w[0].no, "expected 'WINDOW: <lo> <hi>'");
    sd.window = {detail::spec_elt(toks[0], w[0].no), detail::spec_elt(toks[1], w[0].no)};
  }

  if (has("FAMILY")) {
    const auto& f = need("FAMILY");
    auto toks = f.size() == 1 ? detail::spec_tokens(f[0].text) : std::vector<std::string>{};
    if (toks.size() != 2 || toks[0] != "delta")
      throw ParseError("FAMILY must be a single 'delta <rank>' line");
    long long k = detail::spec_int(toks[1], f[0].no);
    if (k != sd.rank) parse_fail(f[0].no, "family rank disagrees with RANK");
    for (const char* s : {"VERTICES", "EDGES", "SQUARES", "INCOMPLETE"})
      if (has(s))
        parse_fail(section_line[s], std::string(s) + " not allowed with a FAMILY section");
    if (!sd.window) throw ParseError("FAMILY requires a WINDOW section");
    const auto& [lo, hi] = *sd.window;
    if (static_cast<int>(lo.size()) != sd.rank || static_cast<int>(hi.size()) != sd.rank)
      throw ParseError("FAMILY window must have one coordinate per colour");
    sd.family_delta = static_cast<int>(k);
    try {
      sd.graph = delta_graph(sd.rank, lo, hi);
    } catch (const StructuralError& e) {
      throw ParseError(std::string("bad family window: ") + e.what());
    }
  } else {
    KGraphBuilder b(sd.rank);
    for (const auto& [no, line] : need("VERTICES")) {
      auto toks = detail::spec_tokens(line);
      if (toks.size() != 1) parse_fail(no, "one vertex name per line");
      try {
        b.add_vertex(toks[0]);
      } catch (const StructuralError& e) {
        parse_fail(no, e.what());
      }
    }
    for (const auto& [no, line] : need("EDGES")) {
      auto toks = detail::spec_tokens(line);
      if (toks.size() != 5 || toks[0] != "color")
        parse_fail(no, "expected 'color <i> <id> <range> <source>'");
      long long c = detail::spec_int(toks[1], no);
      if (c < 1 || c > sd.rank) parse_fail(no, "colour out of range");
      try {
        b.add_edge(static_cast<int>(c - 1), toks[2], toks[3], toks[4]);
      } catch (const StructuralError& e) {
        parse_fail(no, e.what());
      }
    }
    if (has("SQUARES"))
      for (const auto& [no, line] : sections["SQUARES"]) {
        auto toks = detail::spec_tokens(line);
        if (toks.size() != 5 || toks[2] != "~")
          parse_fail(no, "expected '<f> <g> ~ <g'> <f''>'");
        try {
          b.add_square(toks[0], toks[1], toks[3], toks[4]);
        } catch (const StructuralError& e) {
          parse_fail(no, e.what());
        }
      }
    if (has("INCOMPLETE"))
      for (const auto& [no, line] : sections["INCOMPLETE"]) {
        auto toks = detail::spec_tokens(line);
        if (toks.size() != 2) parse_fail(no, "expected '<vertex> <colour>'");
        long long c = detail::spec_int(toks[1], no);
        if (c < 1 || c > sd.rank) parse_fail(no, "colour out of range");
        try {
          b.mark_incomplete(toks[0], static_cast<int>(c - 1));
        } catch (const StructuralError& e) {
          parse_fail(no, e.what());
        }
      }
    try {
      sd.graph = b.build();
    } catch (const StructuralError& e) {
      throw ParseError(e.what());
    }
  }

  if (has("FUNCTOR")) {
    if (!sd.monoid) throw ParseError("FUNCTOR requires a MONOID section");
    std::vector<Monoid::Elt> eta(sd.graph->num_edges(), sd.monoid->identity());
    for (const auto& [no, line] : sections["FUNCTOR"]) {
      auto toks = detail::spec_tokens(line);
      if (toks.size() != 3 || toks[1] != "->") parse_fail(no, "expected '<edge> -> <element>'");
      auto e = sd.graph->edge_index(toks[0]);
      if (!e) parse_fail(no, "unknown edge '" + toks[0] + "'");
      Monoid::Elt val = detail::spec_elt(toks[2], no);
      if (!sd.monoid->is_element(val))
        parse_fail(no, "'" + toks[2] + "' is not an element of the monoid");
      eta[*e] = std::move(val);
    }
    sd.functor = std::move(eta);
  }

  if (has("ACTION")) {
    if (!sd.monoid) throw ParseError("ACTION requires a MONOID section");
    sd.has_action = true;
    Action::GenMap* cur = nullptr;
    for (const auto& [no, line] : sections["ACTION"]) {
      auto toks = detail::spec_tokens(line);
      if (toks[0] == "gen") {
        if (toks.size() != 2) parse_fail(no, "expected 'gen <element>'");
        Monoid::Elt e = detail::spec_elt(toks[1], no);
        if (!sd.monoid->is_element(e))
          parse_fail(no, "'" + toks[1] + "' is not an element of the monoid");
        Action::GenMap gm;
        gm.elt = std::move(e);
        gm.vmap.resize(sd.graph->num_vertices());
        for (int v = 0; v < sd.graph->num_vertices(); ++v) gm.vmap[v] = v;
        gm.emap.resize(sd.graph->num_edges());
        for (int e2 = 0; e2 < sd.graph->num_edges(); ++e2) gm.emap[e2] = e2;
        sd.gens.push_back(std::move(gm));
        cur = &sd.gens.back();
        continue;
      }
      if (!cur) parse_fail(no, "mapping line before any 'gen' line");
      if (toks.size() != 4 || toks[2] != "->" || (toks[0] != "v" && toks[0] != "e"))
        parse_fail(no, "expected 'v <a> -> <b>' or 'e <a> -> <b>'");
      if (toks[0] == "v") {
        auto a = sd.graph->vertex_index(toks[1]), b2 = sd.graph->vertex_index(toks[3]);
        if (!a) parse_fail(no, "unknown vertex '" + toks[1] + "'");
        if (!b2) parse_fail(no, "unknown vertex '" + toks[3] + "'");
        cur->vmap[*a] = *b2;
      } else {
        auto a = sd.graph->edge_index(toks[1]), b2 = sd.graph->edge_index(toks[3]);
        if (!a) parse_fail(no, "unknown edge '" + toks[1] + "'");
        if (!b2) parse_fail(no, "unknown edge '" + toks[3] + "'");
        cur->emap[*a] = *b2;
      }
    }
    if (sd.gens.empty()) throw ParseError("ACTION section has no generators");
  }

  return sd;
}

// Semantic construction of the action a spec describes: the written one, or
// coordinate translation for a lattice family. Throws ActionError (not
// ParseError) when the maps fail the action laws.
inline Action build_action(const SpecData& sd) {
  if (sd.family_delta) return delta_translation(*sd.graph);
  if (!sd.has_action) throw PreconditionError("spec has no ACTION section");
  return Action(*sd.graph, *sd.monoid, sd.gens);
}

// Canonical text form; parse(serialize(sd)) reproduces sd exactly, and
// serialize is a fixpoint on parsed data.
inline std::string serialize_spec(const SpecData& sd) {
  std::string out;
  out += "RANK: " + std::to_string(sd.rank) + "\n";
  const KGraph& g = *sd.graph;
  if (sd.family_delta) {
    out += "FAMILY: delta " + std::to_string(*sd.family_delta) + "\n";
  } else {
    out += "VERTICES:\n";
    for (int v = 0; v < g.num_vertices(); ++v) out += "  " + g.vertex_name(v) + "\n";
    out += "EDGES:\n";
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      out += "  color " + std::to_string(ed.color + 1) + " " + ed.id + " " +
             g.vertex_name(ed.range) + " " + g.vertex_name(ed.source) + "\n";
    }
    if (!g.squares().empty()) {
      out += "SQUARES:\n";
      for (const Square& s : g.squares())
        out += "  " + g.edge(s.f).id + " " + g.edge(s.g).id + " ~ " + g.edge(s.gp).id + " " +
               g.edge(s.fp).id + "\n";
    }
    std::string inc;
    for (int v = 0; v < g.num_vertices(); ++v)
      for (int c = 0; c < g.rank(); ++c)
        if (g.incomplete(v, c))
          inc += "  " + g.vertex_name(v) + " " + std::to_string(c + 1) + "\n";
    if (!inc.empty()) out += "INCOMPLETE:\n" + inc;
  }
  if (sd.functor) {
    out += "FUNCTOR:\n";
    for (int e = 0; e < g.num_edges(); ++e)
      if ((*sd.functor)[e] != sd.monoid->identity())
        out += "  " + g.edge(e).id + " -> " + detail::elt_text((*sd.functor)[e]) + "\n";
  }
  if (sd.monoid) out += "MONOID: " + detail::monoid_text(*sd.monoid) + "\n";
  if (sd.has_action) {
    out += "ACTION:\n";
    for (const Action::GenMap& gm : sd.gens) {
      out += "  gen " + detail::elt_text(gm.elt) + "\n";
      for (int v = 0; v < g.num_vertices(); ++v)
        if (gm.vmap[v] != v)
          out += "  v " + g.vertex_name(v) + " -> " + g.vertex_name(gm.vmap[v]) + "\n";
      for (int e = 0; e < g.num_edges(); ++e)
        if (gm.emap[e] != e)
          out += "  e " + g.edge(e).id + " -> " + g.edge(gm.emap[e]).id + "\n";
    }
  }
  if (sd.window)
    out += "WINDOW: " + detail::elt_text(sd.window->first) + " " +
           detail::elt_text(sd.window->second) + "\n";
  return out;
}

}  // namespace kgv
