#include <algorithm>
#include <sstream>

#include "workspace.hpp"

namespace ain::api {

namespace {

class Builder {
 public:
  explicit Builder(const std::string& command) {
    j_["command"] = command;
    j_["checks"] = json::array();
    j_["defects"] = json::array();
    j_["warnings"] = json::array();
  }
  json& operator[](const std::string& k) { return j_[k]; }
  bool check(const std::string& name, bool pass, const std::string& detail = "") {
    json c{{"name", name}, {"status", pass ? "pass" : "fail"}};
    if (!detail.empty()) c["detail"] = detail;
    j_["checks"].push_back(c);
    if (!pass) ok_ = false;
    return pass;
  }
  void defect(json d) {
    j_["defects"].push_back(std::move(d));
    ok_ = false;
  }
  void warn(const std::string& w) { j_["warnings"].push_back(w); }
  // fold a module report into the defect list under an entity name
  bool report(const std::string& entity, const std::string& name, const Report& r, size_t limit = 20) {
    size_t k = 0;
    for (auto& d : r.defects) {
      if (k++ >= limit) break;
      json e{{"entity", entity}, {"check", name}, {"objects", d.objs}, {"value", vec_json(d.value)}};
      if (d.n) e["arity"] = d.n;
      if (!d.idx.empty()) e["inputs"] = d.idx;
      defect(e);
    }
    for (auto& n : r.notes) {
      if (r.ok) continue;
      if (k++ >= limit) break;
      defect({{"entity", entity}, {"check", name}, {"note", n}});
    }
    return check(entity + ": " + name, r.ok,
                 r.ok ? "" : std::to_string(r.defects.size() + (r.ok ? 0 : r.notes.size())) + " defect(s)");
  }
  CmdResult finish() {
    j_["status"] = ok_ ? "pass" : "fail";
    return {j_, ok_ ? 0 : 1};
  }
  bool ok() const { return ok_; }

 private:
  json j_;
  bool ok_ = true;
};

json homology_json(const ChainComplex& c) {
  json h = json::object();
  for (auto& [n, k] : homology(c)) h[std::to_string(n)] = k;
  return h;
}

size_t hget(const std::map<int, size_t>& h, int n) {
  auto it = h.find(n);
  return it == h.end() ? 0 : it->second;
}

bool same_homology(const ChainComplex& a, const ChainComplex& b) {
  auto ha = homology(a), hb = homology(b);
  std::set<int> levels;
  for (auto& [n, k] : ha) levels.insert(n);
  for (auto& [n, k] : hb) levels.insert(n);
  for (int n : levels)
    if (hget(ha, n) != hget(hb, n)) return false;
  return true;
}

json simplex_json(const NerveSimplex& s) {
  json c = json::object();
  for (auto& [str, v] : s.components) c[string_key(str)] = vec_json(v);
  return {{"n", s.n}, {"objects", s.objects}, {"components", c}};
}

// mine = P (+) S against tw blocks ordered S, P
bool swapped_equal(const ChainComplex& mine, const ChainComplex& tw, size_t first, size_t second) {
  size_t n = first + second;
  if (mine.space().dim() != n || tw.space().dim() != n) return false;
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i < first ? second + i : i - first;
  for (size_t i = 0; i < n; ++i) {
    if (mine.space().degree(i) != tw.space().degree(perm[i])) return false;
    for (size_t r = 0; r < n; ++r)
      if (mine.d()(r, i) != tw.d()(perm[r], perm[i])) return false;
  }
  return true;
}

// cosimplicial identities for the coface/codegeneracy functors into A[Delta^n]
bool cosimplicial_ok(int n) {
  if (n < 1) return true;
  for (int j = 0; j <= n; ++j)
    if (!check_functor(coface_functor(j, n), 4).ok) return false;
  for (int j = 0; j < n; ++j)
    if (!check_functor(codegeneracy_functor(j, n), 4).ok) return false;
  if (n < 2) return true;
  // d_j d_i = d_i d_{j-1} for i < j
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i)
      if (!functors_equal(compose_functors(coface_functor(j, n), coface_functor(i, n - 1)),
                          compose_functors(coface_functor(i, n), coface_functor(j - 1, n - 1))))
        return false;
  return true;
}

}  // namespace

CmdResult cmd_validate(Workspace& ws, const CmdOptions& o, Trace& t) {
  (void)o;
  Builder b("validate");
  for (auto& w : ws.warnings) b.warn(w);
  json hom = json::object();
  for (auto& [id, e] : ws.complexes) {
    t.insert("homology");
    if (!e.complex) {
      b.defect({{"entity", "complex " + id}, {"check", "d^2 = 0"}, {"note", e.error}});
      b.check("complex " + id + ": d^2 = 0", false, e.error);
      continue;
    }
    b.check("complex " + id + ": d^2 = 0", true);
    hom[id] = homology_json(*e.complex);
  }
  b["homology"] = hom;
  for (auto& [id, e] : ws.categories) {
    const AInfCategory& c = *e.cat;
    std::string ent = "category " + id;
    t.insert("check_relations");
    b.report(ent, "A-infinity relations", check_relations(c, 2 * c.arity_cap()));
    bool units = true;
    for (size_t x = 0; x < c.num_objects(); ++x)
      if (!c.unit(static_cast<int>(x))) units = false;
    if (units) {
      t.insert("check_strict_units");
      b.report(ent, "strict units", check_strict_units(c));
    } else {
      b.warn(ent + ": not every object has a unit; unit checks skipped");
    }
    if (c.arity_cap() <= 4 && c.num_objects() <= 6) {
      t.insert("bar_convert");
      t.insert("check_bar_relations");
      AInfCategory bar = bar_convert(c);
      b.report(ent, "bar relations", check_bar_relations(bar, 2 * c.arity_cap()));
    }
    if (e.dg) {
      t.insert("h0_dim_via_nerve");
      bool h0 = true;
      for (int x = 0; x < static_cast<int>(c.num_objects()); ++x)
        for (int y = 0; y < static_cast<int>(c.num_objects()); ++y)
          if (h0_dim_via_nerve(c, x, y) != hget(homology(e.dg->homs[x][y]), 0)) h0 = false;
      b.check(ent + ": H0 of the nerve equals H0 of the homs", h0);
    }
  }
  for (auto& [id, e] : ws.categories)
    if (e.simplex_n >= 1 && e.simplex_n <= 5) {
      t.insert("check_functor");
      t.insert("compose_functors");
      b.check("category " + id + ": coface/codegeneracy functors and identities", cosimplicial_ok(e.simplex_n));
    }
  for (auto& [id, e] : ws.simplices) {
    auto cat = ws.category(e.category).cat;
    t.insert("validate_simplex");
    b.report("simplex " + id, "structure equations", validate_simplex(*cat, e.simplex));
  }
  for (auto& [id, e] : ws.big_simplices) {
    t.insert("validate_big_simplex");
    b.report("big simplex " + id, "simplicial functor", validate_big_simplex(ws.maps(e.category), e.simplex));
  }
  for (auto& [id, e] : ws.twisted) {
    t.insert("validate_twisted");
    try {
      Report r = validate_twisted(e.complex);
      b.report("twisted " + id, "Maurer-Cartan", r);
      if (r.ok) {
        t.insert("tw_hom");
        ChainComplex h = tw_hom(e.complex, e.complex);
        b.check("twisted " + id + ": tw_hom d^2 = 0", (h.d() * h.d()).is_zero());
      }
    } catch (const math_error& err) {
      b.defect({{"entity", "twisted " + id}, {"check", "degrees"}, {"note", err.what()}});
      b.check("twisted " + id + ": degrees", false, err.what());
    }
  }
  return b.finish();
}

CmdResult cmd_fill_horn(Workspace& ws, const std::string& id, int p, const CmdOptions& o, Trace& t) {
  (void)o;
  auto it = ws.simplices.find(id);
  if (it == ws.simplices.end()) throw InputError("unknown simplex '" + id + "'");
  const NerveSimplex& s = it->second.simplex;
  if (p <= 0 || p >= s.n)
    throw InputError("horn index p = " + std::to_string(p) + " is not inner for n = " + std::to_string(s.n));
  auto cat = ws.category(it->second.category).cat;
  Builder b("fill-horn");
  b["simplex"] = id;
  b["p"] = p;
  t.insert("horn_of");
  t.insert("fill_inner_horn");
  t.insert("validate_simplex");
  t.insert("face");
  HornData h = horn_of(s, p);
  NerveSimplex f = fill_inner_horn(*cat, h);
  b.report("filler", "structure equations", validate_simplex(*cat, f));
  bool agree = true;
  for (auto& [str, v] : h.components)
    if (f.at(str) != v) agree = false;
  b.check("filler restricts to the horn", agree);
  bool faces = true;
  for (int j = 0; j <= s.n; ++j)
    if (j != p && !(face(cat, f, j) == face(cat, s, j))) faces = false;
  b.check("faces d_j agree for j != p", faces);
  b["filler"] = simplex_json(f);
  return b.finish();
}

CmdResult cmd_compare(Workspace& ws, const std::string& id, const CmdOptions& o, Trace& t) {
  (void)o;
  auto it = ws.big_simplices.find(id);
  if (it == ws.big_simplices.end()) throw InputError("unknown big simplex '" + id + "'");
  const BigNerveSimplex& s = it->second.simplex;
  MapCache& maps = ws.maps(it->second.category);
  Builder b("compare");
  b["big_simplex"] = id;
  t.insert("validate_big_simplex");
  t.insert("mapping_space");
  t.insert("compose_simplices");
  if (!b.report("big simplex " + id, "simplicial functor", validate_big_simplex(maps, s))) return b.finish();
  t.insert("big_to_small");
  NerveSimplex small = big_to_small(maps, s);
  t.insert("validate_simplex");
  b.report("small simplex", "structure equations", validate_simplex(maps.cat(), small));
  t.insert("comparison_equation_check");
  b.report("small simplex", "comparison equation", comparison_equation_check(maps.cat(), small));
  if (s.n <= 3) {
    t.insert("comparison_naturality_check");
    t.insert("big_face");
    t.insert("big_degeneracy");
    b.report("comparison", "faces and degeneracies", comparison_naturality_check(maps, s));
  } else {
    b.warn("naturality check skipped above dimension 3");
  }
  b["small"] = simplex_json(small);
  return b.finish();
}

CmdResult cmd_cube(int m, const CmdOptions& o, Trace& t) {
  (void)o;
  if (m < 2 || m > 7) throw InputError("cube: m must be in 2..7");
  t.insert("cube_decomposition");
  t.insert("gluing_lines");
  CubeDecomposition c = cube_decomposition(m);
  Builder b("cube");
  size_t top = c.cells.size(), verts = c.realized.count(0), facets = c.boundary.size();
  b["m"] = m;
  b["summary"] = "top=" + std::to_string(top) + " vertices=" + std::to_string(verts) + " facets=" +
                 std::to_string(facets);
  unsigned long long fact = 1;
  for (int k = 2; k < m; ++k) fact *= k;
  b.check("top cells = (m-1)!", top == fact);
  b.check("vertices = 2^(m-1)", verts == (1ull << (m - 1)));
  b.check("boundary facets = 2(m-1)", facets == static_cast<size_t>(2 * (m - 1)));
  b.check("gluing consistent", c.consistent);
  if (m <= 5) {
    t.insert("cube_matches_poset");
    t.insert("poset_interval");
    b.report("cube", "realized complex equals the poset nerve", cube_matches_poset(c));
  } else {
    b.warn("poset comparison skipped above m = 5");
  }
  b["identifications"] = gluing_lines(c);
  return b.finish();
}

CmdResult cmd_dk_roundtrip(Workspace& ws, const std::string& id, const CmdOptions& o, Trace& t) {
  auto it = ws.complexes.find(id);
  if (it == ws.complexes.end()) throw InputError("unknown complex '" + id + "'");
  if (!it->second.complex) throw InputError("complex '" + id + "' fails d^2 = 0");
  const ChainComplex& a = *it->second.complex;
  if (a.step() != -1) throw InputError("dk-roundtrip needs a chain complex");
  if (a.space().dim() && a.lo() < 0) throw InputError("dk-roundtrip needs non-negative levels");
  int top = std::max(a.hi(), 0);
  if (top > o.cap) throw InputError("cap exceeded: complex reaches level " + std::to_string(top));
  int cap = std::max(top, 2);
  Builder b("dk-roundtrip");
  b["complex"] = id;
  t.insert("dk");
  t.insert("normalized_complex");
  t.insert("check_simplicial_identities");
  DKComplex d = dk(a, cap);
  b.report("DK(" + id + ")", "simplicial identities", check_simplicial_identities(d.X));
  Normalized nn = normalized_complex(d.X);
  // N(DK A) against A through the top summand
  size_t diff = 0;
  for (int n = 0; n <= cap; ++n) {
    if (nn.complex.dim(n) != a.dim(n)) {
      diff += std::max(nn.complex.dim(n), a.dim(n));
      continue;
    }
    if (n >= 1 && a.dim(n) && a.dim(n - 1)) {
      Mat tn(a.dim(n), nn.basis[n].cols()), tl(a.dim(n - 1), nn.basis[n - 1].cols());
      for (size_t j = 0; j < tn.cols(); ++j) tn.set_col(j, d.top(n, nn.basis[n].col(j)));
      for (size_t j = 0; j < tl.cols(); ++j) tl.set_col(j, d.top(n - 1, nn.basis[n - 1].col(j)));
      Mat lhs = tl * nn.complex.diff(n), rhs = a.diff(n) * tn;
      for (size_t r = 0; r < lhs.rows(); ++r)
        for (size_t c = 0; c < lhs.cols(); ++c)
          if (lhs(r, c) != rhs(r, c)) ++diff;
    }
  }
  b["summary"] = "N∘DK diff = " + std::to_string(diff);
  b.check("N(DK A) = A", diff == 0);
  std::map<int, size_t> hn = homology(nn.complex), ha = homology(a);
  bool hom = true;
  for (int n = 0; n <= cap; ++n)
    if (hget(hn, n) != hget(ha, n)) hom = false;
  b.check("homology preserved", hom);
  t.insert("pi_boundary_check");
  for (int n = 1; n <= std::min(cap, 3); ++n) b.report("DK(" + id + ")", "pi boundary n=" + std::to_string(n), pi_boundary_check(d, n));
  t.insert("decompose");
  t.insert("reassemble");
  Rng rng(o.seed);
  bool round = true;
  for (int n = 0; n <= cap; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      Vec x(d.X.dims[n]);
      for (auto& v : x) v = Scalar(rng.uniform(-3, 3));
      if (reassemble(d.X, nn, n, decompose(d.X, nn, n, x)) != x) round = false;
    }
  b.check("decompose/reassemble round trip", round);
  t.insert("aw");
  t.insert("ez");
  bool awez = true;
  for (int n = 0; n <= std::min(cap, 4); ++n)
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      size_t dp = nn.basis[p].cols(), dq = nn.basis[q].cols();
      if (!dp || !dq) continue;
      Vec x(dp), y(dq);
      for (auto& v : x) v = Scalar(rng.uniform(-3, 3));
      for (auto& v : y) v = Scalar(rng.uniform(-3, 3));
      auto back = aw(d.X, nn, d.X, nn, n, ez(d.X, nn, d.X, nn, p, q, x, y), o.mode);
      for (int s = 0; s <= n; ++s) {
        Vec want(back[s].size());
        if (s == p)
          for (size_t i = 0; i < dp; ++i)
            for (size_t j = 0; j < dq; ++j) want[i * dq + j] = x[i] * y[j];
        if (back[s] != want) awez = false;
      }
    }
  b["sign_mode"] = o.mode == SignMode::classical ? "classical" : "paper";
  b.check(std::string("aw o ez = id (") + (o.mode == SignMode::classical ? "classical" : "paper") + " sign)", awez);
  return b.finish();
}

CmdResult cmd_stable(Workspace& ws, const std::string& id, int trials, const CmdOptions& o, Trace& t) {
  CategoryEntry& e = ws.category(id);
  if (!e.dg) throw InputError("category '" + id + "' is not a chain dg-category");
  if (trials < 1 || trials > 1000) throw InputError("trials must be in 1..1000");
  const ChainDgCategory& d = *e.dg;
  Builder b("stable");
  b["category"] = id;
  if (d.zero_object < 0) b.warn("no zero object: stability witnesses skipped");
  Rng rng(o.seed);
  int n = static_cast<int>(d.size()), passes = 0;
  for (int k = 0; k < trials; ++k) {
    int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1), z = rng.uniform(0, n - 1);
    Vec f = random_closed(rng, d, x, y, 0);
    std::string tag = "trial " + std::to_string(k) + " (" + d.cat->objects()[x] + "->" + d.cat->objects()[y] +
                      ", Z=" + d.cat->objects()[z] + ")";
    bool ok = true;
    t.insert("fiber_cofiber_check");
    t.insert("path_complex");
    t.insert("homotopy_pullback");
    Report fc = fiber_cofiber_check(d, x, y, f, z);
    ok &= fc.ok;
    if (!fc.ok) b.report(tag, "fiber/cofiber quasi-isomorphisms", fc);
    t.insert("les_check");
    Report les = les_check(d, x, y, f, z);
    ok &= les.ok;
    if (!les.ok) b.report(tag, "long exact sequence", les);
    if (d.zero_object >= 0) {
      t.insert("stability_witnesses");
      Report sw = stability_witnesses(d, x, y, f);
      ok &= sw.ok;
      if (!sw.ok) b.report(tag, "witness identities", sw);
    }
    // twisted-complex side: cone and shift validity, cone hom matrices
    t.insert("cone_tw");
    t.insert("shift_tw");
    t.insert("validate_twisted");
    t.insert("tw_hom");
    t.insert("cone_hom_matrices");
    TwistedComplex c = cone_tw(embed_object(d.cat, x), embed_object(d.cat, y), {{{0, 0}, f}});
    bool tw = validate_twisted(c).ok && validate_twisted(shift_tw(c, 1)).ok;
    ConeHom ch = cone_hom_matrices(d, x, y, f, z);
    TwistedComplex ez = embed_object(d.cat, z);
    tw = tw && swapped_equal(ch.from_cone, tw_hom(c, ez), d.homs[y][z].space().dim(), d.homs[x][z].space().dim()) &&
         swapped_equal(ch.to_cone, tw_hom(ez, c), d.homs[z][y].space().dim(), d.homs[z][x].space().dim());
    if (!tw) b.defect({{"entity", tag}, {"check", "twisted cone"}, {"note", "cone/shift/cone-hom mismatch"}});
    ok &= tw;
    // homotopy pullback of tau Hom(Z,X)^op -> tau Hom(Z,Y)^op <- tau Hom(Z,W)^op against the cone oracle
    t.insert("pullback_oracle");
    int w = rng.uniform(0, n - 1);
    Vec g = random_closed(rng, d, w, y, 0);
    Truncation tx = truncated_op(d.homs[z][x]), ty = truncated_op(d.homs[z][y]), tw2 = truncated_op(d.homs[z][w]);
    auto leg = [&](const Truncation& src, int from, const Vec& map) {
      ChainComplex so = op_complex(d.homs[z][from]), to = op_complex(d.homs[z][y]);
      size_t ns = src.complex.space().dim();
      Mat m(ty.complex.space().dim(), ns);
      for (size_t i = 0; i < ns; ++i) {
        Vec u = from_truncated(src, so, basis_vec(ns, i));
        m.set_col(i, to_truncated(ty, to, d.compose(z, from, y, map, u)));
      }
      return m;
    };
    Cospan cs{tx.complex, ty.complex, tw2.complex, leg(tx, x, f), leg(tw2, w, g)};
    HomotopyPullback pb = homotopy_pullback(cs);
    bool pbok = same_homology(pb.complex, pullback_oracle(cs)) && same_homology(pb.p1.complex, tx.complex);
    if (!pbok) b.defect({{"entity", tag}, {"check", "homotopy pullback"}, {"note", "homology differs from the cone oracle"}});
    ok &= pbok;
    passes += ok;
  }
  t.insert("h0_dim_via_nerve");
  bool h0 = true;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (h0_dim_via_nerve(*d.cat, x, y) != hget(homology(d.homs[x][y]), 0)) h0 = false;
  b.check("H0 of the nerve equals H0 of the homs", h0);
  b.check("stability trials", passes == trials, std::to_string(passes) + "/" + std::to_string(trials));
  b["summary"] = std::to_string(passes) + "/" + std::to_string(trials) + " quasi-iso passes";
  b["trials"] = trials;
  b["passes"] = passes;
  return b.finish();
}

CmdResult cmd_self_test(const CmdOptions& o) {
  static const char* doc = R"({
    "seed": 7, "cap": 3,
    "complexes": {
      "A": {"kind": "chain", "random": {"lo": 0, "hi": 3, "maxdim": 2}},
      "K": {"kind": "cochain", "dims": {"0": 1, "1": 1}, "diffs": {"0": [["1"]]}}
    },
    "categories": {
      "S": {"kind": "simplex", "n": 4},
      "D": {"kind": "random_chain_dg", "objects": 3, "lo": -1, "hi": 2, "maxdim": 2, "zero": true},
      "E": {"kind": "chain_dg", "objects": [{"label": "K", "complex": "K"}]}
    },
    "simplices": {
      "s": {"category": "D", "objects": [0, 1, 2, 0], "random": true},
      "t": {"category": "S", "objects": [0, 1, 2, 3, 4], "random": true}
    },
    "big_simplices": {"b": {"category": "D", "objects": [0, 1, 2], "random": true}},
    "twisted": {"T": {"category": "D", "components": [{"pos": 0, "object": 0}, {"pos": 1, "object": 1}]}}
  })";
  static const std::vector<std::string> ops = {
      "homology", "check_relations", "check_strict_units", "bar_convert", "check_bar_relations", "check_functor",
      "compose_functors", "validate_simplex", "horn_of", "fill_inner_horn", "face", "h0_dim_via_nerve", "dk",
      "normalized_complex", "check_simplicial_identities", "pi_boundary_check", "decompose", "reassemble", "aw", "ez",
      "mapping_space", "compose_simplices", "cube_decomposition", "gluing_lines", "cube_matches_poset",
      "poset_interval", "validate_big_simplex", "big_to_small", "comparison_equation_check",
      "comparison_naturality_check", "big_face", "big_degeneracy", "validate_twisted", "tw_hom", "shift_tw", "cone_tw",
      "cone_hom_matrices", "path_complex", "homotopy_pullback", "pullback_oracle", "fiber_cofiber_check",
      "stability_witnesses", "les_check"};
  Builder b("self-test");
  Trace t;
  CmdOptions so = o;
  so.cap = 3;
  Workspace ws = load_workspace(doc, o.seed, 3);
  auto run = [&](const std::string& name, const CmdResult& r) {
    b.check(name, r.status == 0, r.report.value("summary", ""));
  };
  run("validate", cmd_validate(ws, so, t));
  run("fill-horn s 1", cmd_fill_horn(ws, "s", 1, so, t));
  run("fill-horn t 2", cmd_fill_horn(ws, "t", 2, so, t));
  run("compare b", cmd_compare(ws, "b", so, t));
  run("cube 4", cmd_cube(4, so, t));
  run("dk-roundtrip A", cmd_dk_roundtrip(ws, "A", so, t));
  run("stable D 5", cmd_stable(ws, "D", 5, so, t));
  std::vector<std::string> missing;
  for (auto& op : ops)
    if (!t.count(op)) missing.push_back(op);
  b.check("every module operation reached", missing.empty(),
          missing.empty() ? std::to_string(ops.size()) + " operations" : "missing: " + missing.front());
  b["reached"] = std::vector<std::string>(t.begin(), t.end());
  return b.finish();
}

std::string render_text(const json& r) {
  std::ostringstream os;
  std::string st = r.value("status", "");
  os << r.value("command", "") << ": " << (st == "pass" ? "PASS" : st == "fail" ? "FAIL" : "ERROR") << "\n";
  if (r.contains("summary")) os << r["summary"].get<std::string>() << "\n";
  if (r.contains("error")) os << "error: " << r["error"].get<std::string>() << "\n";
  for (auto& c : r.value("checks", json::array())) {
    os << "  [" << c["status"].get<std::string>() << "] " << c["name"].get<std::string>();
    if (c.contains("detail")) os << ": " << c["detail"].get<std::string>();
    os << "\n";
  }
  for (auto& d : r.value("defects", json::array())) os << "  defect: " << d.dump() << "\n";
  for (auto& w : r.value("warnings", json::array())) os << "  warning: " << w.get<std::string>() << "\n";
  static const std::set<std::string> shown = {"command", "status", "summary", "error", "checks", "defects", "warnings"};
  for (auto& [k, v] : r.items()) {
    if (shown.count(k)) continue;
    if (v.is_array() && !v.empty() && v.front().is_string()) {
      os << k << ":\n";
      for (auto& s : v) os << "  " << s.get<std::string>() << "\n";
    } else {
      os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return os.str();
}

}  // namespace ain::api
