#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>
#include <tuple>

#include "gcolex/colex.hpp"

namespace gcolex {

namespace {

using Vec = std::array<long long, 2>;

Vec operator+(Vec a, Vec b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec operator-(Vec a, Vec b) { return {a[0] - b[0], a[1] - b[1]}; }
long long cross(Vec a, Vec b) { return a[0] * b[1] - a[1] * b[0]; }
long long floordiv(long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

struct DualSite {
  Color color;
  bool real;
};

struct Corner {
  int site;
  Vec pos;
};

// A triangulation whose vertices are plaquettes and whose triangles are the
// qudits of the colex. Real triangles carry geometric positions; triangles
// touching a virtual boundary site are oriented by consistency.
struct Triangulation {
  std::vector<DualSite> sites;
  std::vector<std::array<Corner, 3>> tris;
  bool periodic = false;
  BoundarySpec boundary = BoundarySpec::Torus;
  std::map<int, int> start_tri;  // preferred first vertex of a plaquette cycle
};

using DartKey = std::tuple<int, int, long long, long long>;

DartKey dart(const Triangulation& t, const Corner& a, const Corner& b) {
  Vec d = t.periodic ? b.pos - a.pos : Vec{0, 0};
  return {a.site, b.site, d[0], d[1]};
}

DartKey reversed(const DartKey& k) {
  return {std::get<1>(k), std::get<0>(k), -std::get<2>(k), -std::get<3>(k)};
}

void orient(Triangulation& t) {
  std::set<DartKey> used;
  std::vector<bool> done(t.tris.size());
  auto darts = [&](const std::array<Corner, 3>& tri) {
    return std::array<DartKey, 3>{dart(t, tri[0], tri[1]), dart(t, tri[1], tri[2]), dart(t, tri[2], tri[0])};
  };
  auto commit = [&](std::size_t i) {
    for (const auto& d : darts(t.tris[i]))
      if (!used.insert(d).second) throw std::logic_error("triangulation is not consistently orientable");
    done[i] = true;
  };
  for (std::size_t i = 0; i < t.tris.size(); ++i) {
    auto& tri = t.tris[i];
    bool all_real = std::all_of(tri.begin(), tri.end(), [&](const Corner& c) { return t.sites[c.site].real; });
    if (!all_real) continue;
    if (cross(tri[1].pos - tri[0].pos, tri[2].pos - tri[0].pos) > 0) std::swap(tri[1], tri[2]);
    commit(i);
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < t.tris.size(); ++i) {
      if (done[i]) continue;
      auto& tri = t.tris[i];
      auto fwd = darts(tri);
      bool fwd_taken = std::any_of(fwd.begin(), fwd.end(), [&](const DartKey& d) { return used.count(d) > 0; });
      bool rev_taken =
          std::any_of(fwd.begin(), fwd.end(), [&](const DartKey& d) { return used.count(reversed(d)) > 0; });
      if (!fwd_taken && !rev_taken) continue;
      if (fwd_taken) std::swap(tri[1], tri[2]);
      commit(i);
      progress = true;
    }
  }
  if (std::find(done.begin(), done.end(), false) != done.end())
    throw std::logic_error("triangulation has a disconnected virtual part");
}

int chirality_of(Color a, Color b) {
  int d = (static_cast<int>(b) - static_cast<int>(a) + 3) % 3;
  return d == 1 ? 1 : -1;
}

Color third_color(Color a, Color b) { return static_cast<Color>(3 - static_cast<int>(a) - static_cast<int>(b)); }

// Builds the colex dual to a triangulation. Triangles made only of virtual
// sites are dropped; each real site becomes a plaquette.
Colex2 dualize(Triangulation t) {
  orient(t);
  std::vector<int> vertex_of(t.tris.size(), -1);
  Colex2 c;
  c.boundary = t.boundary;
  for (std::size_t i = 0; i < t.tris.size(); ++i) {
    const auto& tri = t.tris[i];
    if (std::none_of(tri.begin(), tri.end(), [&](const Corner& x) { return t.sites[x.site].real; })) continue;
    vertex_of[i] = static_cast<int>(c.vertices.size());
    c.vertices.push_back({chirality_of(t.sites[tri[0].site].color, t.sites[tri[1].site].color), 1});
  }
  std::map<DartKey, std::size_t> tri_of_dart;
  for (std::size_t i = 0; i < t.tris.size(); ++i)
    for (int k = 0; k < 3; ++k) tri_of_dart[dart(t, t.tris[i][k], t.tris[i][(k + 1) % 3])] = i;

  std::vector<std::vector<std::size_t>> tris_at(t.sites.size());
  for (std::size_t i = 0; i < t.tris.size(); ++i)
    for (const auto& x : t.tris[i]) tris_at[x.site].push_back(i);

  std::map<DartKey, std::uint32_t> edge_of;
  for (std::size_t s = 0; s < t.sites.size(); ++s) {
    if (!t.sites[s].real) continue;
    if (tris_at[s].empty()) throw std::logic_error("plaquette without qudits");
    std::size_t start = tris_at[s].front();
    if (auto it = t.start_tri.find(static_cast<int>(s)); it != t.start_tri.end()) start = it->second;
    Plaquette p;
    p.color = t.sites[s].color;
    std::size_t cur = start;
    do {
      const auto& tri = t.tris[cur];
      int k = 0;
      while (tri[k].site != static_cast<int>(s)) ++k;
      const Corner& self = tri[k];
      const Corner& b = tri[(k + 2) % 3];
      DartKey out = dart(t, self, b);
      std::size_t next = tri_of_dart.at(out);
      p.vertices.push_back(static_cast<Site>(vertex_of[cur]));
      DartKey key = std::min(out, reversed(out));
      if (!edge_of.count(key)) {
        edge_of[key] = static_cast<std::uint32_t>(c.edges.size());
        c.edges.push_back({static_cast<Site>(vertex_of[cur]), static_cast<Site>(vertex_of[next]),
                           third_color(p.color, t.sites[b.site].color)});
      }
      cur = next;
      if (p.vertices.size() > t.tris.size()) throw std::logic_error("plaquette cycle does not close");
    } while (cur != start);
    c.plaquettes.push_back(std::move(p));
  }
  for (std::uint32_t e = 0; e < c.edges.size(); ++e) {
    const Edge& ed = c.edges[e];
    if (ed.color != Color::Red) continue;
    bool u_up = c.vertices[ed.u].chirality == 1;
    c.red_links.push_back({e, u_up ? ed.u : ed.v, u_up ? ed.v : ed.u});
  }
  auto vp = vertex_plaquettes(c);
  for (Site v = 0; v < c.vertices.size(); ++v)
    if (c.planar() && vp[v].size() == 1 && c.plaquettes[vp[v][0]].color == Color::Red) c.corner_c_sites.push_back(v);

  std::set<std::pair<Site, Site>> pairs;
  for (const auto& e : c.edges)
    if (!pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) c.degenerate = true;
  for (const auto& p : c.plaquettes) {
    std::set<Site> s(p.vertices.begin(), p.vertices.end());
    if (s.size() != p.vertices.size()) c.degenerate = true;
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> shared;
  for (const auto& [key, e] : edge_of) {
    int a = std::get<0>(key), b = std::get<1>(key);
    if (t.sites[a].real && t.sites[b].real && ++shared[{std::min(a, b), std::max(a, b)}] > 1) c.degenerate = true;
  }
  return c;
}

// Triangular-lattice helpers: site (a,b) has color (a-b) mod 3 as R,G,B.
Color tri_color(Vec p) { return static_cast<Color>(((p[0] - p[1]) % 3 + 3) % 3); }
const std::array<Vec, 6> kTriNeighbours{Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}, Vec{0, -1}, Vec{1, -1}, Vec{-1, 1}};
long long norm2(Vec d) { return d[0] * d[0] + d[0] * d[1] + d[1] * d[1]; }

std::vector<Vec> boundary_path(Vec from, Vec to, Color avoid) {
  std::vector<Vec> path{from};
  const Vec dir = to - from;
  while (path.back() != to) {
    std::vector<Vec> cands;
    for (Vec d : kTriNeighbours) {
      Vec x = path.back() + d;
      if (tri_color(x) != avoid && std::find(path.begin(), path.end(), x) == path.end()) cands.push_back(x);
    }
    if (cands.empty() || path.size() > 10000) throw std::logic_error("boundary path search failed");
    auto key = [&](Vec x) { return std::make_tuple(norm2(to - x), std::llabs(cross(dir, x - from)), x); };
    path.push_back(*std::min_element(cands.begin(), cands.end(),
                                     [&](Vec a, Vec b) { return key(a) < key(b); }));
  }
  return path;
}

bool inside(const std::vector<Vec>& poly, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    double xi = poly[i][0], yi = poly[i][1], xj = poly[j][0], yj = poly[j][1];
    if ((yi > y) != (yj > y) && x < xi + (y - yi) * (xj - xi) / (yj - yi)) in = !in;
  }
  return in;
}

// Planar patch: polygon with lattice-site corners; side i runs from corner i
// to corner i+1 and omits plaquettes of color side_colors[i], which becomes
// the color of that side's virtual site.
Colex2 planar_patch(const std::vector<Vec>& corners, const std::vector<Color>& side_colors, BoundarySpec spec) {
  const std::size_t m = corners.size();
  std::vector<std::vector<Vec>> sides;
  std::vector<Vec> cycle;
  for (std::size_t i = 0; i < m; ++i) {
    sides.push_back(boundary_path(corners[i], corners[(i + 1) % m], side_colors[i]));
    cycle.insert(cycle.end(), sides.back().begin(), sides.back().end() - 1);
  }
  if (std::set<Vec>(cycle.begin(), cycle.end()).size() != cycle.size())
    throw std::logic_error("boundary is not simple");
  std::set<Vec> region(cycle.begin(), cycle.end());
  long long lo0 = cycle[0][0], hi0 = lo0, lo1 = cycle[0][1], hi1 = lo1;
  for (Vec p : cycle) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  for (long long a = lo0; a <= hi0; ++a)
    for (long long b = lo1; b <= hi1; ++b)
      if (inside(cycle, a, b)) region.insert({a, b});

  Triangulation t;
  t.boundary = spec;
  std::map<Vec, int> id;
  for (Vec p : region) {
    id[p] = static_cast<int>(t.sites.size());
    t.sites.push_back({tri_color(p), true});
  }
  std::vector<int> virt;
  for (std::size_t i = 0; i < m; ++i) {
    virt.push_back(static_cast<int>(t.sites.size()));
    t.sites.push_back({side_colors[i], false});
  }
  struct Keyed {
    double y, x;
    std::array<Corner, 3> tri;
  };
  std::vector<Keyed> tris;
  auto add = [&](std::array<Corner, 3> tri) {
    double x = 0, y = 0;
    int n = 0;
    for (const auto& c : tri)
      if (t.sites[c.site].real) {
        x += c.pos[0] + 0.5 * c.pos[1];
        y += c.pos[1];
        ++n;
      }
    tris.push_back({y / n, x / n, tri});
  };
  for (long long a = lo0 - 1; a <= hi0; ++a)
    for (long long b = lo1 - 1; b <= hi1; ++b) {
      for (auto shape : {std::array<Vec, 3>{Vec{a, b}, Vec{a + 1, b}, Vec{a, b + 1}},
                         std::array<Vec, 3>{Vec{a + 1, b}, Vec{a, b + 1}, Vec{a + 1, b + 1}}}) {
        if (!std::all_of(shape.begin(), shape.end(), [&](Vec p) { return region.count(p) > 0; })) continue;
        double cx = (shape[0][0] + shape[1][0] + shape[2][0]) / 3.0;
        double cy = (shape[0][1] + shape[1][1] + shape[2][1]) / 3.0;
        if (!inside(cycle, cx, cy)) continue;
        add({Corner{id[shape[0]], shape[0]}, Corner{id[shape[1]], shape[1]}, Corner{id[shape[2]], shape[2]}});
      }
    }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j + 1 < sides[i].size(); ++j)
      add({Corner{id[sides[i][j]], sides[i][j]}, Corner{id[sides[i][j + 1]], sides[i][j + 1]},
           Corner{virt[i], {0, 0}}});
    Vec corner = corners[(i + 1) % m];
    add({Corner{id[corner], corner}, Corner{virt[i], {0, 0}}, Corner{virt[(i + 1) % m], {0, 0}}});
  }
  std::stable_sort(tris.begin(), tris.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  for (const auto& k : tris) t.tris.push_back(k.tri);
  return dualize(std::move(t));
}

}  // namespace

Colex2 build_hex_torus(int n) {
  if (n < 1) throw std::invalid_argument("hex torus needs n >= 1");
  const long long N = n;
  auto canon = [N](Vec p) {
    long long s = floordiv(p[0] - p[1], 3 * N), t = floordiv(p[0] + 2 * p[1], 3 * N);
    return Vec{p[0] - 2 * N * s - N * t, p[1] + N * s - N * t};
  };
  std::set<Vec> reps;
  for (long long a = -3 * N; a <= 3 * N; ++a)
    for (long long b = -3 * N; b <= 3 * N; ++b) reps.insert(canon({a, b}));
  std::vector<Vec> ordered(reps.begin(), reps.end());
  std::sort(ordered.begin(), ordered.end(), [](Vec x, Vec y) { return std::tie(x[1], x[0]) < std::tie(y[1], y[0]); });
  Triangulation t;
  t.periodic = true;
  std::map<Vec, int> id;
  for (Vec p : ordered) {
    id[p] = static_cast<int>(t.sites.size());
    t.sites.push_back({tri_color(p), true});
  }
  auto corner = [&](Vec p) { return Corner{id.at(canon(p)), p}; };
  for (Vec p : ordered) {
    t.tris.push_back({corner(p), corner(p + Vec{1, 0}), corner(p + Vec{0, 1})});
    t.tris.push_back({corner(p + Vec{1, 0}), corner(p + Vec{0, 1}), corner(p + Vec{1, 1})});
  }
  return dualize(std::move(t));
}

namespace {

struct SquareOctGrid {
  long long n;
  Vec canon(Vec p) const {
    long long s = floordiv(p[0] + p[1], 2 * n), t = floordiv(p[0] - p[1], 2 * n);
    return {p[0] - n * s - n * t, p[1] - n * s + n * t};
  }
};

}  // namespace

SquareOctLayout build_squareoct_layout(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("4.8.8 torus needs an even n >= 2");
  SquareOctGrid grid{n};
  std::set<Vec> reps;
  for (long long a = -2 * n; a <= 2 * n; ++a)
    for (long long b = -2 * n; b <= 2 * n; ++b) reps.insert(grid.canon({a, b}));
  std::vector<Vec> ordered(reps.begin(), reps.end());
  std::sort(ordered.begin(), ordered.end(), [](Vec x, Vec y) { return std::tie(x[1], x[0]) > std::tie(y[1], y[0]); });

  Triangulation t;
  t.periodic = true;
  std::map<Vec, int> id;
  auto is_square = [](Vec p) { return ((p[0] + p[1]) % 2 + 2) % 2 == 0; };
  for (Vec p : ordered) {
    id[p] = static_cast<int>(t.sites.size());
    Color col = is_square(p) ? Color::Green : (((p[0] % 2) + 2) % 2 == 1 ? Color::Blue : Color::Red);
    t.sites.push_back({col, true});
  }
  auto corner = [&](Vec p) { return Corner{id.at(grid.canon(p)), p}; };
  std::vector<Vec> squares;
  for (Vec s : ordered) {
    if (!is_square(s)) continue;
    squares.push_back(s);
    std::size_t base = t.tris.size();
    // top-left, top-right, bottom-right, bottom-left qudits of this square
    t.tris.push_back({corner(s), corner(s + Vec{0, 1}), corner(s + Vec{-1, 0})});
    t.tris.push_back({corner(s), corner(s + Vec{1, 0}), corner(s + Vec{0, 1})});
    t.tris.push_back({corner(s), corner(s + Vec{0, -1}), corner(s + Vec{1, 0})});
    t.tris.push_back({corner(s), corner(s + Vec{-1, 0}), corner(s + Vec{0, -1})});
    bool h_type = ((s[0] % 2) + 2) % 2 == 0;
    t.start_tri[id[s]] = static_cast<int>(base + (h_type ? 0 : 1));
  }
  SquareOctLayout out;
  out.lattice = dualize(t);
  std::map<Vec, std::uint32_t> square_index;
  std::uint32_t pl = 0;
  for (std::size_t s = 0; s < t.sites.size(); ++s, ++pl) {
    Vec p = ordered[s];
    if (is_square(p)) {
      GreenSquare g;
      g.plaquette = pl;
      g.tag = ((p[0] % 2) + 2) % 2 == 0 ? SquareTag::H : SquareTag::V;
      const auto& vs = out.lattice.plaquettes[pl].vertices;
      std::copy(vs.begin(), vs.end(), g.sites.begin());
      square_index[p] = static_cast<std::uint32_t>(out.squares.size());
      out.squares.push_back(g);
    }
  }
  pl = 0;
  for (std::size_t s = 0; s < t.sites.size(); ++s, ++pl) {
    Vec p = ordered[s];
    if (is_square(p)) continue;
    Octagon o;
    o.plaquette = pl;
    o.color = t.sites[s].color;
    o.squares = {square_index.at(grid.canon(p + Vec{0, 1})), square_index.at(grid.canon(p + Vec{1, 0})),
                 square_index.at(grid.canon(p + Vec{0, -1})), square_index.at(grid.canon(p + Vec{-1, 0}))};
    out.octagons.push_back(o);
  }
  return out;
}

Colex2 build_squareoct_torus(int n) { return build_squareoct_layout(n).lattice; }

Colex2 build_triangular(int d) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("triangular patch needs odd d >= 3");
  long long k = (d - 3) / 2;
  Vec v{k, k + 1};
  std::vector<Vec> corners{{0, 0}, v, {-v[1], v[0] + v[1]}};
  std::vector<Color> sides{tri_color(corners[2]), tri_color(corners[0]), tri_color(corners[1])};
  return planar_patch(corners, sides, BoundarySpec::Triangular);
}

Colex2 build_rect(int w, int h, RectScheme scheme) {
  if (w < 2 || h < 2) throw std::invalid_argument("rectangle needs w, h >= 2");
  Vec o = scheme == RectScheme::BlueGreen ? Vec{0, 0} : Vec{1, 0};
  Vec u{w - 1, w - 1}, x{-(h - 1), 2 * (h - 1)};
  Color other = scheme == RectScheme::BlueGreen ? Color::Green : Color::Red;
  return planar_patch({o, o + u, o + u + x, o + x}, {Color::Blue, other, Color::Blue, other},
                      scheme == RectScheme::BlueGreen ? BoundarySpec::RectBlueGreen : BoundarySpec::RectBlueRed);
}

Colex2 build_from_spec(const std::string& spec) {
  static const std::regex one(R"((hex-torus|squareoct-torus|triangular):(\d+))");
  static const std::regex two(R"((rect-bg|rect-br):(\d+)x(\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, one)) {
    int n = std::stoi(m[2]);
    if (m[1] == "hex-torus") return build_hex_torus(n);
    if (m[1] == "squareoct-torus") return build_squareoct_torus(n);
    return build_triangular(n);
  }
  if (std::regex_match(spec, m, two))
    return build_rect(std::stoi(m[2]), std::stoi(m[3]), m[1] == "rect-bg" ? RectScheme::BlueGreen : RectScheme::BlueRed);
  throw std::invalid_argument("unknown lattice spec: " + spec);
}

}  // namespace gcolex
