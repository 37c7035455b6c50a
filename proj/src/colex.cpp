#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gcolex/colex.hpp"

namespace gcolex {

char color_letter(Color c) { return "RGB"[static_cast<int>(c)]; }

Color color_from_letter(char c) {
  switch (c) {
    case 'R': return Color::Red;
    case 'G': return Color::Green;
    case 'B': return Color::Blue;
  }
  throw std::invalid_argument(std::string("unknown color letter ") + c);
}

std::string boundary_name(BoundarySpec b) {
  switch (b) {
    case BoundarySpec::Torus: return "torus";
    case BoundarySpec::Triangular: return "triangular";
    case BoundarySpec::RectBlueGreen: return "rect_blue_green";
    case BoundarySpec::RectBlueRed: return "rect_blue_red";
  }
  return "torus";
}

BoundarySpec boundary_from_name(const std::string& s) {
  if (s == "torus") return BoundarySpec::Torus;
  if (s == "triangular") return BoundarySpec::Triangular;
  if (s == "rect_blue_green") return BoundarySpec::RectBlueGreen;
  if (s == "rect_blue_red") return BoundarySpec::RectBlueRed;
  throw std::invalid_argument("unknown boundary_spec " + s);
}

std::vector<std::vector<std::uint32_t>> vertex_plaquettes(const Colex2& c) {
  std::vector<std::vector<std::uint32_t>> out(c.vertices.size());
  for (std::uint32_t p = 0; p < c.plaquettes.size(); ++p)
    for (Site v : c.plaquettes[p].vertices)
      if (v < out.size() && (out[v].empty() || out[v].back() != p)) out[v].push_back(p);
  return out;
}

namespace {

std::string at_vertex(Site v) { return "vertex " + std::to_string(v); }
std::string at_edge(std::size_t e) { return "edge " + std::to_string(e); }
std::string at_plaquette(std::size_t p) { return "plaquette " + std::to_string(p); }

bool consecutive(const Plaquette& p, Site a, Site b) {
  const auto& vs = p.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == a && vs[(i + 1) % vs.size()] == b) return true;
  return false;
}

}  // namespace

ValidationReport validate(const Colex2& c) {
  ValidationReport r;
  auto fail = [&](std::string kind, std::string loc, std::string detail) {
    r.failures.push_back({std::move(kind), std::move(loc), std::move(detail)});
  };
  const Site V = static_cast<Site>(c.vertices.size());
  for (Site v = 0; v < V; ++v) {
    const auto& rec = c.vertices[v];
    if (rec.chirality != 1 && rec.chirality != -1) fail("chirality_domain", at_vertex(v), "chirality must be +1 or -1");
    if (rec.parity != 1 && rec.parity != -1) fail("parity_domain", at_vertex(v), "parity must be +1 or -1");
  }
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    if (c.edges[e].u >= V || c.edges[e].v >= V || c.edges[e].u == c.edges[e].v)
      fail("edge_endpoints", at_edge(e), "endpoints out of range or equal");
  for (std::size_t p = 0; p < c.plaquettes.size(); ++p)
    for (Site v : c.plaquettes[p].vertices)
      if (v >= V) fail("plaquette_vertex", at_plaquette(p), "vertex out of range");
  if (!r.ok()) return r;

  std::vector<std::vector<std::size_t>> incident(V);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    incident[c.edges[e].u].push_back(e);
    incident[c.edges[e].v].push_back(e);
  }
  for (Site v = 0; v < V; ++v) {
    std::size_t deg = incident[v].size();
    if (c.planar() ? (deg < 2 || deg > 3) : deg != 3)
      fail("degree", at_vertex(v), "degree " + std::to_string(deg));
    std::set<Color> seen;
    for (auto e : incident[v])
      if (!seen.insert(c.edges[e].color).second) fail("edge_colors_at_vertex", at_vertex(v), "repeated edge color");
  }

  auto vp = vertex_plaquettes(c);
  for (Site v = 0; v < V; ++v) {
    std::set<Color> seen;
    for (auto p : vp[v])
      if (!seen.insert(c.plaquettes[p].color).second)
        fail("plaquette_colors_at_vertex", at_vertex(v), "two plaquettes of one color");
    if (!c.planar() && seen.size() != 3) fail("plaquette_colors_at_vertex", at_vertex(v), "missing a plaquette color");
    if (vp[v].empty()) fail("orphan_vertex", at_vertex(v), "vertex in no plaquette");
  }

  std::multimap<std::pair<Site, Site>, std::size_t> edge_between;
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    edge_between.insert({{c.edges[e].u, c.edges[e].v}, e});
    edge_between.insert({{c.edges[e].v, c.edges[e].u}, e});
  }

  for (std::size_t p = 0; p < c.plaquettes.size(); ++p) {
    const auto& pl = c.plaquettes[p];
    const auto& vs = pl.vertices;
    if (vs.size() < 2 || vs.size() % 2 != 0) fail("plaquette_length", at_plaquette(p), "odd or too short boundary");
    if (std::set<Site>(vs.begin(), vs.end()).size() != vs.size())
      fail("plaquette_simple", at_plaquette(p), "boundary repeats a vertex");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Site a = vs[i], b = vs[(i + 1) % vs.size()];
      auto [lo, hi] = edge_between.equal_range({a, b});
      bool any = false;
      for (auto it = lo; it != hi; ++it) any |= c.edges[it->second].color != pl.color;
      if (!any)
        fail("plaquette_edge", at_plaquette(p),
             "no edge between " + std::to_string(a) + " and " + std::to_string(b) + " of a foreign color");
    }
  }

  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const Edge& ed = c.edges[e];
    if (c.vertices[ed.u].chirality == c.vertices[ed.v].chirality)
      fail("chirality_alternation", at_edge(e), "endpoints share chirality");
    std::size_t borders = 0;
    bool multi = edge_between.count({ed.u, ed.v}) > 1;
    for (const auto& pl : c.plaquettes) {
      if (!consecutive(pl, ed.u, ed.v) && !consecutive(pl, ed.v, ed.u)) continue;
      ++borders;
      if (pl.color == ed.color && !multi)
        fail("edge_color", at_edge(e), std::string("edge of color ") + color_letter(ed.color) +
                                           " borders a plaquette of the same color");
    }
    if (borders == 0 || (!c.planar() && borders < 2))
      fail("edge_borders", at_edge(e), "edge borders " + std::to_string(borders) + " plaquettes");
  }

  // Clockwise colors around a vertex seen from plaquette P are
  // (P, edge to the next vertex, edge to the previous vertex).
  for (const auto& pl : c.plaquettes) {
    const auto& vs = pl.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Site v = vs[i], nx = vs[(i + 1) % vs.size()], pv = vs[(i + vs.size() - 1) % vs.size()];
      auto unique_color = [&](Site a, Site b) -> std::optional<Color> {
        std::set<Color> cs;
        auto [lo, hi] = edge_between.equal_range({a, b});
        for (auto it = lo; it != hi; ++it)
          if (c.edges[it->second].color != pl.color) cs.insert(c.edges[it->second].color);
        if (cs.size() != 1) return std::nullopt;
        return *cs.begin();
      };
      auto cn = unique_color(v, nx), cp = unique_color(v, pv);
      if (!cn || !cp || *cn == *cp) continue;
      int d = (static_cast<int>(*cn) - static_cast<int>(pl.color) + 3) % 3;
      int expect = d == 1 ? 1 : -1;
      if (c.vertices[v].chirality != expect)
        fail("chirality", at_vertex(v), "stored chirality disagrees with the clockwise plaquette colors");
    }
  }

  std::vector<int> link_count(c.edges.size());
  for (std::size_t i = 0; i < c.red_links.size(); ++i) {
    const RedLink& l = c.red_links[i];
    std::string loc = "red_link " + std::to_string(i);
    if (l.edge >= c.edges.size()) {
      fail("red_link", loc, "edge out of range");
      continue;
    }
    ++link_count[l.edge];
    const Edge& ed = c.edges[l.edge];
    if (ed.color != Color::Red) fail("red_link", loc, "edge is not red");
    if (!((l.up == ed.u && l.down == ed.v) || (l.up == ed.v && l.down == ed.u))) {
      fail("red_link", loc, "up/down are not the edge endpoints");
      continue;
    }
    if (c.vertices[l.up].chirality != 1) fail("red_link_orientation", loc, "up vertex must have chirality +1");
    for (const auto& pl : c.plaquettes) {
      if (pl.color == Color::Blue && consecutive(pl, l.down, l.up) && !consecutive(pl, l.up, l.down))
        fail("red_link_orientation", loc, "blue plaquette is not on the left of down->up");
      if (pl.color == Color::Green && consecutive(pl, l.up, l.down) && !consecutive(pl, l.down, l.up))
        fail("red_link_orientation", loc, "green plaquette is not on the right of down->up");
    }
  }
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    bool red = c.edges[e].color == Color::Red;
    if (red && link_count[e] != 1) fail("red_link", at_edge(e), "red edge must appear in exactly one red link");
    if (!red && link_count[e] != 0) fail("red_link", at_edge(e), "non-red edge listed as red link");
  }

  std::set<Site> corners;
  for (Site v = 0; v < V; ++v)
    if (c.planar() && vp[v].size() == 1 && c.plaquettes[vp[v][0]].color == Color::Red) corners.insert(v);
  std::set<Site> listed(c.corner_c_sites.begin(), c.corner_c_sites.end());
  if (listed.size() != c.corner_c_sites.size()) fail("corner_c_sites", "corner_C_sites", "duplicate entry");
  for (Site v : corners)
    if (!listed.count(v)) fail("corner_c_sites", at_vertex(v), "corner qudit of a lone red plaquette is not listed");
  for (Site v : listed)
    if (!corners.count(v)) fail("corner_c_sites", at_vertex(v), "listed corner is not a lone red-plaquette qudit");

  long long euler = static_cast<long long>(V) - static_cast<long long>(c.edges.size()) +
                    static_cast<long long>(c.plaquettes.size());
  if (euler != (c.planar() ? 1 : 0)) fail("euler", "lattice", "V-E+F = " + std::to_string(euler));
  return r;
}

Colex2 apply_parity_flip(const Colex2& c, Site site) {
  if (site >= c.vertices.size()) throw std::out_of_range("parity flip site out of range");
  Colex2 out = c;
  out.vertices[site].parity = -out.vertices[site].parity;
  return out;
}

std::string export_dot(const Colex2& c) {
  static const char* names[] = {"red", "green", "blue"};
  std::ostringstream os;
  os << "graph colex {\n  node [shape=circle];\n";
  for (Site v = 0; v < c.vertices.size(); ++v)
    os << "  v" << v << " [label=\"" << v << (c.vertices[v].chirality > 0 ? "+" : "-")
       << (c.vertices[v].parity < 0 ? "'" : "") << "\"];\n";
  for (const auto& e : c.edges)
    os << "  v" << e.u << " -- v" << e.v << " [color=" << names[static_cast<int>(e.color)] << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace gcolex
