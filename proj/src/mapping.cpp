#include "gcolex/mapping.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gcolex/qdouble.hpp"
#include "gcolex/stabilizer.hpp"

namespace gcolex {

namespace {

OperatorAsSum single(const PermOp& op) { return OperatorAsSum::sum({op}); }

PermOp pair_op(const FiniteGroup& g, Site a, bool a_left, Site b, bool b_left, Elem h) {
  auto side = [](Site s, bool left, Elem x) { return left ? PermOp::left(s, x) : PermOp::right(s, x); };
  return side(a, a_left, h).then(side(b, b_left, h), g);
}

SparseMatrix mat(const GreenCodespace& cs, const OperatorAsSum& op) {
  return SparseMatrix::from_operator(op, cs.space, cs.group);
}

DiagPredicate pair_pred(Site a, Site b, std::vector<bool> accept) {
  DiagPredicate p;
  p.factors = {{a, false}, {b, false}};
  p.accept = std::move(accept);
  return p;
}

std::vector<bool> coset_mask(const QuotientMap& q, Elem coset) {
  std::vector<bool> m(q.coset.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = q.coset[x] == coset;
  return m;
}

std::vector<Elem> coset_members(const QuotientMap& q, Elem coset) {
  std::vector<Elem> out;
  for (std::size_t x = 0; x < q.coset.size(); ++x)
    if (q.coset[x] == coset) out.push_back(static_cast<Elem>(x));
  return out;
}

MappingCheck check(std::string name, bool pass, std::string detail = {}) {
  return {std::move(name), pass, pass ? std::string{} : std::move(detail)};
}

std::string elem_name(Elem g) { return std::to_string(static_cast<int>(g)); }

}  // namespace

std::array<int, 4> GreenCodespace::positions() const {
  return tag == SquareTag::H ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{1, 2, 3, 0};
}

GreenCodespace build_green_codespace(const FiniteGroup& g, SquareTag tag) {
  if (g.order() > 12) throw std::invalid_argument("green codespace is limited to |G| <= 12");
  GreenCodespace cs{g, abelianization(g), tag, LocalSpace({0, 1, 2, 3}, g.order()), {}, {}, {}, {}, {}};
  cs.sz = OperatorAsSum::projector(DiagPredicate::identity_product({{0, false}, {1, false}, {2, false}, {3, false}}, g.order()));
  std::vector<PermOp> a, c1, c2;
  for (std::size_t h = 0; h < g.order(); ++h) {
    Elem x = static_cast<Elem>(h);
    a.push_back(PermOp::from_actions(g, {{0, x, 0}, {1, 0, x}, {2, x, 0}, {3, 0, x}}));
  }
  for (Elem n : cs.abelian.kernel.members) {
    c1.push_back(pair_op(g, 0, true, 3, false, n));
    c2.push_back(pair_op(g, 1, false, 2, true, n));
  }
  cs.sc1 = OperatorAsSum::average(c1);
  cs.sc2 = OperatorAsSum::average(c2);
  cs.sx = compose(cs.sc1, compose(cs.sc2, OperatorAsSum::average(a), g), g);
  cs.projector = mat(cs, cs.sz) * mat(cs, cs.sc1) * mat(cs, cs.sc2) * mat(cs, cs.sx);
  return cs;
}

EncodedOps build_encoded_ops(const GreenCodespace& cs) {
  const FiniteGroup& g = cs.group;
  const QuotientMap& q = cs.abelian;
  EncodedOps e;
  for (std::size_t h = 0; h < g.order(); ++h) {
    Elem x = static_cast<Elem>(h);
    e.x_plus_1.push_back(single(pair_op(g, 0, false, 1, true, x)));
    e.x_minus_1.push_back(single(pair_op(g, 2, false, 3, true, x)));
    std::vector<bool> is_x(g.order()), is_inv(g.order());
    is_x[x] = true;
    is_inv[g.inv(x)] = true;
    e.t_1.push_back(OperatorAsSum::projector(pair_pred(1, 2, is_x)));
    DiagPredicate alt;
    alt.factors = {{3, false}, {0, false}};
    alt.accept = is_inv;
    e.t_1_alt.push_back(OperatorAsSum::projector(alt));
  }
  for (std::size_t k = 0; k < q.quotient.order(); ++k) {
    Elem c = static_cast<Elem>(k);
    std::vector<PermOp> plus, minus;
    for (Elem m : coset_members(q, c)) {
      plus.push_back(pair_op(g, 0, true, 3, false, m));
      minus.push_back(pair_op(g, 1, false, 2, true, m));
    }
    e.x_plus_2.push_back(OperatorAsSum::average(plus));
    e.x_minus_2.push_back(OperatorAsSum::average(minus));
    e.t_2.push_back(OperatorAsSum::projector(pair_pred(0, 1, coset_mask(q, c))));
    e.t_2_alt.push_back(OperatorAsSum::projector(pair_pred(2, 3, coset_mask(q, q.quotient.inv(c)))));
  }
  return e;
}

SparseMatrix GreenBasis::matrix() const {
  return SparseMatrix::from_columns(dim, columns);
}

GreenBasis build_green_basis(const GreenCodespace& cs, const EncodedOps& ops) {
  const std::size_t Q = cs.abelian.quotient.order();
  SparseMatrix proj = mat(cs, ops.t_1[FiniteGroup::id]) * mat(cs, ops.t_2[0]) * cs.projector;
  std::size_t c = 0;
  while (c < proj.cols() && proj.at(c, c).is_zero()) ++c;
  if (c == proj.cols()) throw std::logic_error("empty green codespace");
  GreenBasis b;
  b.norm2 = proj.at(c, c);
  b.dim = proj.rows();
  SparseVector w0 = proj.col(c);
  b.columns.resize(cs.label_count());
  for (std::size_t a = 0; a < cs.group.order(); ++a) {
    SparseVector wa = mat(cs, ops.x_plus_1[a]).apply(w0);
    for (std::size_t k = 0; k < Q; ++k) b.columns[a * Q + k] = mat(cs, ops.x_plus_2[k]).apply(wa);
  }
  return b;
}

Encoded encode(const GreenCodespace& cs, const GreenBasis& b, const OperatorAsSum& op) {
  SparseMatrix w = b.matrix();
  SparseMatrix mw = mat(cs, op) * w;
  Encoded e;
  e.matrix = (Rational(1) / b.norm2) * (w.transpose() * mw);
  e.preserves = mw == w * e.matrix;
  return e;
}

bool MappingReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const MappingCheck& c) { return c.pass; });
}

std::string MappingReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json x{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) x["detail"] = c.detail;
    j["checks"].push_back(x);
  }
  return j.dump(1) + "\n";
}

namespace {

OperatorAsSum relabel(const OperatorAsSum& op, const std::array<int, 4>& to, const FiniteGroup& g) {
  std::vector<Term> terms;
  auto move_perm = [&](const PermOp& p) {
    std::vector<LocalAction> acts;
    for (auto a : p.actions()) acts.push_back({static_cast<Site>(to[a.site]), a.left, a.right});
    return PermOp::from_actions(g, acts);
  };
  for (const auto& t : op.terms()) {
    Term n{t.coef, move_perm(t.op), {}};
    for (const auto& gd : t.guards) {
      Guard ng{gd.pred, move_perm(gd.pre)};
      for (auto& f : ng.pred.factors) f.site = static_cast<Site>(to[f.site]);
      n.guards.push_back(ng);
    }
    terms.push_back(std::move(n));
  }
  return OperatorAsSum(std::move(terms));
}

}  // namespace

MappingReport verify_encoded_dims(const FiniteGroup& g) {
  MappingReport r;
  GreenCodespace cs = build_green_codespace(g);
  const std::size_t Q = cs.abelian.quotient.order();
  const SparseMatrix& P = cs.projector;
  Rational dim = P.trace();
  r.checks.push_back(check("codespace_dimension", dim == Rational(static_cast<std::int64_t>(g.order() * Q)),
                           "trace " + dim.str() + ", expected " + std::to_string(g.order() * Q)));
  r.checks.push_back(check("projector_idempotent", P * P == P));
  std::vector<SparseMatrix> stabs{mat(cs, cs.sz), mat(cs, cs.sc1), mat(cs, cs.sc2), mat(cs, cs.sx)};
  bool commute = true;
  for (std::size_t i = 0; i < stabs.size(); ++i)
    for (std::size_t j = i + 1; j < stabs.size(); ++j) commute &= stabs[i] * stabs[j] == stabs[j] * stabs[i];
  r.checks.push_back(check("green_stabilizers_commute", commute));
  EncodedOps ops = build_encoded_ops(cs);
  bool labels = true;
  std::string bad;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t k = 0; k < Q; ++k) {
      Rational t = (mat(cs, ops.t_1[a]) * mat(cs, ops.t_2[k]) * P).trace();
      if (t != Rational(1)) {
        labels = false;
        bad = "label (" + std::to_string(a) + "," + std::to_string(k) + ") has multiplicity " + t.str();
      }
    }
  r.checks.push_back(check("joint_labels_G_x_abelianization", labels, bad));
  std::array<int, 4> half{2, 3, 0, 1};
  bool rot = mat(cs, relabel(cs.sz, half, g)) * mat(cs, relabel(cs.sc1, half, g)) *
                 mat(cs, relabel(cs.sc2, half, g)) * mat(cs, relabel(cs.sx, half, g)) ==
             P;
  r.checks.push_back(check("half_turn_invariance", rot));
  bool half_labels = true;
  for (std::size_t a = 0; a < g.order(); ++a)
    half_labels &= mat(cs, relabel(ops.t_1[a], half, g)) * P == mat(cs, ops.t_1[g.inv(static_cast<Elem>(a))]) * P;
  r.checks.push_back(check("half_turn_inverts_system1_label", half_labels));
  GreenCodespace v = build_green_codespace(g, SquareTag::V);
  std::array<int, 4> quarter{1, 2, 3, 0};
  auto geometric = [&](const GreenCodespace& c, const OperatorAsSum& op) { return relabel(op, c.positions(), g); };
  bool turned = mat(cs, geometric(v, v.sx)) == mat(cs, relabel(geometric(cs, cs.sx), quarter, g)) &&
                mat(cs, geometric(v, v.sc1)) == mat(cs, relabel(geometric(cs, cs.sc1), quarter, g)) &&
                mat(cs, geometric(v, v.sz)) == mat(cs, relabel(geometric(cs, cs.sz), quarter, g));
  r.checks.push_back(check("v_type_is_quarter_turn_of_h_type", turned));
  GreenBasis b = build_green_basis(cs, ops);
  SparseMatrix w = b.matrix();
  SparseMatrix gram = w.transpose() * w;
  r.checks.push_back(check("basis_orthogonal", gram == b.norm2 * SparseMatrix::identity(cs.label_count())));
  return r;
}

MappingReport verify_encoded_algebra(const FiniteGroup& g) {
  MappingReport r;
  GreenCodespace cs = build_green_codespace(g);
  EncodedOps ops = build_encoded_ops(cs);
  const QuotientMap& q = cs.abelian;
  const std::size_t n = g.order(), Q = q.quotient.order();
  const SparseMatrix& P = cs.projector;
  auto M = [&](const std::vector<OperatorAsSum>& v) {
    std::vector<SparseMatrix> out;
    for (const auto& o : v) out.push_back(mat(cs, o));
    return out;
  };
  auto xp1 = M(ops.x_plus_1), xm1 = M(ops.x_minus_1), t1 = M(ops.t_1), t1a = M(ops.t_1_alt);
  auto xp2 = M(ops.x_plus_2), xm2 = M(ops.x_minus_2), t2 = M(ops.t_2), t2a = M(ops.t_2_alt);

  bool ok = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Elem ab = g.mul(static_cast<Elem>(a), static_cast<Elem>(b));
      ok &= xp1[a] * xp1[b] * P == xp1[ab] * P;
      ok &= xm1[a] * xm1[b] * P == xm1[ab] * P;
      ok &= xp1[a] * xm1[b] * P == xm1[b] * xp1[a] * P;
    }
  r.checks.push_back(check("system1_X_representations", ok));

  ok = true;
  SparseMatrix sum1(P.rows(), P.cols()), sum2(P.rows(), P.cols());
  for (std::size_t a = 0; a < n; ++a) {
    sum1 = sum1 + t1[a];
    for (std::size_t b = 0; b < n; ++b) ok &= t1[a] * t1[b] == (a == b ? t1[a] : SparseMatrix(P.rows(), P.cols()));
  }
  for (std::size_t k = 0; k < Q; ++k) sum2 = sum2 + t2[k];
  ok &= sum1 * P == P && sum2 * P == P;
  r.checks.push_back(check("T_projections_complete_and_orthogonal", ok));

  ok = true;
  for (std::size_t a = 0; a < n; ++a) ok &= t1[a] * P == t1a[a] * P;
  for (std::size_t k = 0; k < Q; ++k) ok &= t2[k] * P == t2a[k] * P;
  r.checks.push_back(check("T_presentations_agree_on_codespace", ok));

  ok = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a) {
      Elem ex = static_cast<Elem>(x), ea = static_cast<Elem>(a);
      ok &= xp1[x] * t1[a] * P == t1[g.mul(ex, ea)] * xp1[x] * P;
      ok &= xm1[x] * t1[a] * P == t1[g.mul(ea, g.inv(ex))] * xm1[x] * P;
    }
  for (std::size_t x = 0; x < Q; ++x)
    for (std::size_t k = 0; k < Q; ++k) {
      Elem ex = static_cast<Elem>(x), ek = static_cast<Elem>(k);
      ok &= xp2[x] * t2[k] * P == t2[q.quotient.mul(ex, ek)] * xp2[x] * P;
      ok &= xm2[x] * t2[k] * P == t2[q.quotient.mul(ek, q.quotient.inv(ex))] * xm2[x] * P;
    }
  r.checks.push_back(check("X_shift_T_labels", ok));

  ok = xm2[0] * P == P && xp2[0] * P == P;
  for (std::size_t x = 0; x < Q; ++x)
    for (std::size_t y = 0; y < Q; ++y) {
      Elem xy = q.quotient.mul(static_cast<Elem>(x), static_cast<Elem>(y));
      ok &= xp2[x] * xp2[y] * P == xp2[xy] * P && xm2[x] * xm2[y] * P == xm2[xy] * P;
    }
  r.checks.push_back(check("system2_depends_on_coset_only", ok));

  ok = true;
  std::vector<const SparseMatrix*> sys1, sys2;
  for (std::size_t a = 0; a < n; ++a) sys1.insert(sys1.end(), {&xp1[a], &xm1[a], &t1[a]});
  for (std::size_t k = 0; k < Q; ++k) sys2.insert(sys2.end(), {&xp2[k], &xm2[k], &t2[k]});
  for (auto* a : sys1)
    for (auto* b : sys2) ok &= (*a) * (*b) * P == (*b) * (*a) * P;
  r.checks.push_back(check("systems_commute_on_codespace", ok));

  ok = true;
  for (auto* a : sys1) ok &= (*a) * P == P * (*a);
  for (auto* b : sys2) ok &= (*b) * P == P * (*b);
  r.checks.push_back(check("encoded_ops_commute_with_projector", ok));
  return r;
}

namespace {

// Label-space matrices of the expected single-qudit actions, index a*|Q|+k.
SparseMatrix label_shift(const GreenCodespace& cs, bool system1, bool left, Elem x) {
  const FiniteGroup& g = cs.group;
  const FiniteGroup& q = cs.abelian.quotient;
  const std::size_t Q = q.order(), L = cs.label_count();
  std::vector<SparseVector> cols(L);
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t k = 0; k < Q; ++k) {
      std::size_t na = a, nk = k;
      if (system1)
        na = left ? g.mul(x, static_cast<Elem>(a)) : g.mul(static_cast<Elem>(a), g.inv(x));
      else
        nk = left ? q.mul(x, static_cast<Elem>(k)) : q.mul(static_cast<Elem>(k), q.inv(x));
      cols[a * Q + k].push_back({static_cast<std::uint32_t>(na * Q + nk), Rational(1)});
    }
  return SparseMatrix::from_columns(L, std::move(cols));
}

// The part of a lattice operator living on one green square, in that square's label order.
PermOp restrict_to(const PermOp& op, const GreenSquare& sq, const FiniteGroup& g) {
  std::vector<LocalAction> acts;
  for (const auto& a : op.actions())
    for (Site i = 0; i < 4; ++i)
      if (sq.sites[i] == a.site) acts.push_back({i, a.left, a.right});
  return PermOp::from_actions(g, acts);
}

bool inside(const PermOp& op, const GreenSquare& sq) {
  return std::all_of(op.actions().begin(), op.actions().end(), [&](const LocalAction& a) {
    return std::find(sq.sites.begin(), sq.sites.end(), a.site) != sq.sites.end();
  });
}

OperatorAsSum restrict_to(const OperatorAsSum& op, const GreenSquare& sq, const FiniteGroup& g) {
  std::vector<Term> terms;
  for (const auto& t : op.terms()) {
    if (!t.guards.empty() || !inside(t.op, sq)) throw std::logic_error("operator leaves the green square");
    terms.push_back({t.coef, restrict_to(t.op, sq, g), {}});
  }
  return OperatorAsSum(std::move(terms));
}

bool link_inside(const RedLink& l, const GreenSquare& sq) {
  auto has = [&](Site s) { return std::find(sq.sites.begin(), sq.sites.end(), s) != sq.sites.end(); };
  return has(l.up) && has(l.down);
}

std::string octagon_name(const Octagon& o, std::size_t i) {
  return std::string(o.color == Color::Red ? "red" : "blue") + "_octagon_" + std::to_string(i) + "_plaquette_" +
         std::to_string(o.plaquette);
}

const char* kSlot[] = {"U", "R", "D", "L"};

}  // namespace

MappingReport verify_stabilizer_mapping(const FiniteGroup& g, int n) {
  MappingReport r;
  SquareOctLayout lay = build_squareoct_layout(n);
  const Colex2& lat = lay.lattice;
  StabilizerSet stabs = build_stabilizers(lat, g);
  GreenCodespace cs = build_green_codespace(g);
  EncodedOps ops = build_encoded_ops(cs);
  GreenBasis basis = build_green_basis(cs, ops);
  const QuotientMap& ab = cs.abelian;
  const std::size_t Q = ab.quotient.order(), L = cs.label_count();
  const SparseMatrix I = SparseMatrix::identity(L);

  for (std::size_t oi = 0; oi < lay.octagons.size(); ++oi) {
    const Octagon& o = lay.octagons[oi];
    const bool red = o.color == Color::Red;
    const std::string name = octagon_name(o, oi);

    // X type: factorizes over the four squares for every group element.
    bool xok = true;
    std::string xdetail;
    for (std::size_t h = 0; h < g.order() && xok; ++h) {
      Elem x = static_cast<Elem>(h);
      PermOp a = build_A(lat, g, o.plaquette, x);
      for (int slot = 0; slot < 4 && xok; ++slot) {
        const GreenSquare& sq = lay.squares[o.squares[slot]];
        OperatorAsSum local = single(restrict_to(a, sq, g));
        if (!red)
          for (auto l : stabs.bounding_links[o.plaquette]) {
            if (!link_inside(lat.red_links[l], sq)) continue;
            local = compose(local, restrict_to(stabs.sc[l], sq, g), g);
          }
        Encoded e = encode(cs, basis, local);
        // Red octagons are vertices of the G lattice (U,R: right action; D,L: left action).
        // Blue octagons are vertices of the mirrored G/[G,G] lattice, so R and L trade places.
        bool left = red ? slot >= 2 : (slot == 1 || slot == 2);
        SparseMatrix want = red ? label_shift(cs, true, left, x) : label_shift(cs, false, left, ab.coset[x]);
        if (!e.preserves || !(e.matrix == want)) {
          xok = false;
          xdetail = "slot " + std::string(kSlot[slot]) + ", g=" + elem_name(x) +
                    (e.preserves ? ": encoded action differs" : ": leaves the codespace");
        }
      }
    }
    r.checks.push_back(check(name + (red ? "_SX_to_KX_G" : "_dressedSX_to_KX_abelianization"), xok, xdetail));

    // Z type: the octagon product splits into one ordered pair per square, constant on each basis vector.
    const DiagPredicate& z = stabs.sz[o.plaquette];
    auto square_of = [&](Site s) {
      for (int slot = 0; slot < 4; ++slot)
        for (int i = 0; i < 4; ++i)
          if (lay.squares[o.squares[slot]].sites[i] == s) return std::make_pair(slot, i);
      throw std::logic_error("octagon site outside its squares");
    };
    std::vector<DiagPredicate::Factor> fs = z.factors;
    std::size_t start = 0;
    while (square_of(fs[start].site).first == square_of(fs[(start + fs.size() - 1) % fs.size()].site).first) ++start;
    std::rotate(fs.begin(), fs.begin() + static_cast<long>(start), fs.end());
    std::vector<int> run_slot;
    std::vector<std::vector<Elem>> run_value;  // per run, value on each basis label
    bool zok = fs.size() == 8;
    std::string zdetail = zok ? "" : "octagon does not have 8 sites";
    for (std::size_t i = 0; zok && i < fs.size(); i += 2) {
      auto [slot, p0] = square_of(fs[i].site);
      auto [slot2, p1] = square_of(fs[i + 1].site);
      if (slot != slot2) {
        zok = false;
        zdetail = "octagon product does not pair up by square";
        break;
      }
      run_slot.push_back(slot);
      std::vector<Elem> vals(L);
      for (std::size_t j = 0; j < L; ++j) {
        std::optional<Elem> val;
        for (const auto& [code, w] : basis.columns[j]) {
          std::vector<Elem> d(4);
          cs.space.decode(code, d);
          Elem u = fs[i].inverted ? g.inv(d[p0]) : d[p0], v = fs[i + 1].inverted ? g.inv(d[p1]) : d[p1];
          Elem prod = g.mul(u, v);
          Elem key = red ? ab.coset[prod] : prod;
          if (val && *val != key) zok = false;
          val = key;
        }
        vals[j] = val.value_or(0);
      }
      if (!zok) zdetail = "pair product not constant on a basis vector of slot " + std::string(kSlot[slot]);
      run_value.push_back(std::move(vals));
    }
    if (zok) {
      const FiniteGroup& grp = red ? ab.quotient : g;
      std::array<Site, 4> face = red ? std::array<Site, 4>{0, 3, 2, 1} : std::array<Site, 4>{0, 1, 2, 3};
      DiagPredicate want = qd_face(face, grp.order());
      std::vector<std::size_t> idx(4, 0);
      for (std::uint64_t combo = 0; combo < static_cast<std::uint64_t>(L * L * L * L) && zok; ++combo) {
        std::uint64_t c = combo;
        for (int s = 0; s < 4; ++s) {
          idx[s] = c % L;
          c /= L;
        }
        Elem prod = FiniteGroup::id;
        for (std::size_t k = 0; k < run_slot.size(); ++k) {
          Elem v = run_value[k][idx[run_slot[k]]];
          prod = red ? ab.quotient.mul(prod, v) : g.mul(prod, v);
        }
        bool actual = red ? prod == 0 : z.accept[prod];
        Configuration labels(4);
        for (int s = 0; s < 4; ++s)
          labels[s] = static_cast<Elem>(red ? idx[s] % Q : idx[s] / Q);
        bool expected = want.eval(grp, labels);
        if (actual != expected) {
          zok = false;
          zdetail = "label witness (U,R,D,L) = (" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," +
                    std::to_string(idx[2]) + "," + std::to_string(idx[3]) + ")";
        }
      }
    }
    r.checks.push_back(check(name + (red ? "_SZ_to_KZ_abelianization" : "_SZ_to_KZ_G"), zok, zdetail));
  }

  bool trivial = true;
  std::string tdetail;
  for (std::size_t si = 0; si < lay.squares.size(); ++si) {
    const GreenSquare& sq = lay.squares[si];
    std::vector<OperatorAsSum> locals;
    OperatorAsSum dressed = OperatorAsSum::identity();
    for (const auto& f : stabs.dressed_factors(sq.plaquette)) dressed = compose(restrict_to(f, sq, g), dressed, g);
    locals.push_back(dressed);
    for (std::uint32_t l = 0; l < lat.red_links.size(); ++l)
      if (link_inside(lat.red_links[l], sq)) locals.push_back(restrict_to(stabs.sc[l], sq, g));
    DiagPredicate zp = stabs.sz[sq.plaquette];
    for (auto& f : zp.factors) f.site = static_cast<Site>(std::find(sq.sites.begin(), sq.sites.end(), f.site) - sq.sites.begin());
    locals.push_back(OperatorAsSum::projector(zp));
    for (const auto& op : locals) {
      Encoded e = encode(cs, basis, op);
      if (!e.preserves || !(e.matrix == I)) {
        trivial = false;
        tdetail = "square " + std::to_string(si);
      }
    }
  }
  r.checks.push_back(check("green_and_red_link_stabilizers_act_trivially", trivial, tdetail));
  return r;
}

MappingReport verify_full_lattice_z2() {
  MappingReport r;
  FiniteGroup g = cyclic(2);
  SquareOctLayout lay = build_squareoct_layout(2);
  const Colex2& lat = lay.lattice;
  StabilizerSet stabs = build_stabilizers(lat, g);
  GreenCodespace cs = build_green_codespace(g);
  EncodedOps ops = build_encoded_ops(cs);
  GreenBasis basis = build_green_basis(cs, ops);
  const std::size_t S = lay.squares.size(), L = cs.label_count(), Q = cs.abelian.quotient.order();

  std::vector<Site> all(lat.num_vertices());
  for (Site i = 0; i < all.size(); ++i) all[i] = i;
  LocalSpace phys(all, 2);
  std::vector<Site> label_sites(2 * S);
  for (Site i = 0; i < label_sites.size(); ++i) label_sites[i] = i;
  LocalSpace labels(label_sites, 2);  // site 2s: system 1 of square s, site 2s+1: system 2

  std::vector<SparseVector> wcols(labels.size());
  Rational norm2 = 1;
  for (std::size_t s = 0; s < S; ++s) norm2 *= basis.norm2;
  std::vector<Elem> ld(label_sites.size()), local(4);
  for (std::uint64_t lc = 0; lc < labels.size(); ++lc) {
    labels.decode(lc, ld);
    std::vector<std::pair<Configuration, Rational>> partial{{Configuration(lat.num_vertices(), 0), Rational(1)}};
    for (std::size_t s = 0; s < S; ++s) {
      const auto& col = basis.columns[ld[2 * s] * Q + ld[2 * s + 1]];
      std::vector<std::pair<Configuration, Rational>> next;
      for (const auto& [cfg, w] : partial)
        for (const auto& [code, v] : col) {
          cs.space.decode(code, local);
          Configuration c = cfg;
          for (int i = 0; i < 4; ++i) c[lay.squares[s].sites[i]] = local[i];
          next.push_back({c, w * v});
        }
      partial = std::move(next);
    }
    SparseVector v;
    for (const auto& [cfg, w] : partial) v.push_back({static_cast<std::uint32_t>(phys.from_global(cfg)), w});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    wcols[lc] = std::move(v);
  }
  SparseMatrix W = SparseMatrix::from_columns(phys.size(), wcols);
  SparseMatrix Wt = W.transpose();

  auto sq_labels = [&](const Octagon& o, bool system1) {
    std::array<Site, 4> out{};
    for (int slot = 0; slot < 4; ++slot) out[slot] = static_cast<Site>(2 * o.squares[slot] + (system1 ? 0 : 1));
    return out;
  };
  auto run = [&](const std::string& name, const OperatorAsSum& op, const OperatorAsSum& want) {
    SparseMatrix OW = SparseMatrix::from_operator(op, phys, g) * W;
    SparseMatrix E = (Rational(1) / norm2) * (Wt * OW);
    bool preserves = OW == W * E;
    SparseMatrix target = SparseMatrix::from_operator(want, labels, g);
    r.checks.push_back(check(name, preserves && E == target, preserves ? "encoded action differs" : "leaves the codespace"));
  };
  for (std::size_t oi = 0; oi < lay.octagons.size(); ++oi) {
    const Octagon& o = lay.octagons[oi];
    std::string name = octagon_name(o, oi);
    std::vector<PermOp> stars;
    if (o.color == Color::Red) {
      auto e = sq_labels(o, true), k = sq_labels(o, false);
      for (Elem x : {Elem{0}, Elem{1}}) stars.push_back(qd_star(g, e, x));
      run(name + "_SX_to_KX_copy1", stabs.dressed(o.plaquette), OperatorAsSum::average(stars));
      run(name + "_SZ_to_KZ_copy2", OperatorAsSum::projector(stabs.sz[o.plaquette]),
          OperatorAsSum::projector(qd_face({k[0], k[3], k[2], k[1]}, 2)));
    } else {
      auto e = sq_labels(o, true), k = sq_labels(o, false);
      for (Elem x : {Elem{0}, Elem{1}}) stars.push_back(qd_star(g, {k[0], k[3], k[2], k[1]}, x));
      run(name + "_SX_to_KX_copy2", stabs.dressed(o.plaquette), OperatorAsSum::average(stars));
      run(name + "_SZ_to_KZ_copy1", OperatorAsSum::projector(stabs.sz[o.plaquette]),
          OperatorAsSum::projector(qd_face(e, 2)));
    }
  }
  for (const auto& sq : lay.squares) {
    run("green_" + std::to_string(sq.plaquette) + "_SX_trivial", stabs.dressed(sq.plaquette), OperatorAsSum::identity());
    run("green_" + std::to_string(sq.plaquette) + "_SZ_trivial", OperatorAsSum::projector(stabs.sz[sq.plaquette]),
        OperatorAsSum::identity());
  }
  (void)L;
  return r;
}

}  // namespace gcolex
