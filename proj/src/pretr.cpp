#include "ainerve/pretr.hpp"

#include <algorithm>
#include <functional>

namespace ain {

Vec ChainDgCategory::compose(int x, int y, int z, const Vec& g, const Vec& f) const {
  return to_hom(x, z, to_matrix(y, z, g) * to_matrix(x, y, f));
}

Vec ChainDgCategory::identity(int x) const {
  return to_hom(x, x, Mat::identity(objects[x].space().dim()));
}

ChainDgCategory make_chain_dg(std::vector<ChainComplex> objects, std::vector<std::string> labels) {
  ChainDgCategory D;
  int K = static_cast<int>(objects.size());
  D.objects = std::move(objects);
  D.homs.assign(K, std::vector<ChainComplex>(K));
  D.cat = std::make_shared<AInfCategory>(labels, 2);
  // basis element i of Hom(x,y) is the matrix unit (row tb[i], col sb[i])
  std::vector<std::vector<std::vector<std::pair<size_t, size_t>>>> units(K, std::vector<std::vector<std::pair<size_t, size_t>>>(K));
  std::vector<std::vector<std::vector<std::vector<long>>>> where(K, std::vector<std::vector<std::vector<long>>>(K));
  for (int x = 0; x < K; ++x)
    for (int y = 0; y < K; ++y) {
      D.homs[x][y] = hom_complex(D.objects[x], D.objects[y], HomSign::leibniz);
      const ChainComplex& h = D.homs[x][y];
      D.cat->set_hom(x, y, h.space());
      size_t na = D.objects[x].space().dim(), nb = D.objects[y].space().dim();
      where[x][y].assign(nb, std::vector<long>(na, -1));
      for (size_t i = 0; i < h.space().dim(); ++i) {
        Mat m = D.to_matrix(x, y, basis_vec(h.space().dim(), i));
        for (size_t r = 0; r < nb; ++r)
          for (size_t c = 0; c < na; ++c)
            if (!m(r, c).is_zero()) {
              units[x][y].push_back({r, c});
              where[x][y][r][c] = static_cast<long>(i);
            }
      }
      for (size_t i = 0; i < h.space().dim(); ++i) {
        SparseVec out;
        Vec col = h.d().col(i);
        for (size_t r = 0; r < col.size(); ++r)
          if (!col[r].is_zero()) out.emplace_back(r, col[r]);
        if (!out.empty()) D.cat->set_op(1, {x, y}, {static_cast<int>(i)}, out);
      }
    }
  for (int x = 0; x < K; ++x) D.cat->set_unit(x, D.identity(x));
  for (int x = 0; x < K; ++x)
    for (int y = 0; y < K; ++y)
      for (int z = 0; z < K; ++z) {
        // m2(E_{c,b}, E_{b,a}) = E_{c,a}
        const auto& uf = units[x][y];
        const auto& ug = units[y][z];
        for (size_t j = 0; j < ug.size(); ++j)
          for (size_t i = 0; i < uf.size(); ++i) {
            if (ug[j].second != uf[i].first) continue;
            long o = where[x][z][ug[j].first][uf[i].second];
            D.cat->set_op(2, {x, y, z}, {static_cast<int>(j), static_cast<int>(i)},
                          {{static_cast<size_t>(o), Scalar(1)}});
          }
      }
  return D;
}

ChainDgCategory random_chain_dg(Rng& rng, int nobj, int lo, int hi, int maxdim, bool with_zero) {
  std::vector<ChainComplex> objs;
  std::vector<std::string> labels;
  for (int i = 0; i < nobj; ++i) {
    objs.push_back(random_cochain(rng, lo, hi, maxdim, "x" + std::to_string(i) + "_"));
    labels.push_back("X" + std::to_string(i));
  }
  if (with_zero) {
    objs.push_back(ChainComplex::from_levels(1, {}, {}, "z"));
    labels.push_back("0");
  }
  ChainDgCategory D = make_chain_dg(std::move(objs), std::move(labels));
  if (with_zero) D.zero_object = nobj;
  return D;
}

Vec random_hom(Rng& rng, const ChainDgCategory& d, int x, int y, int k) {
  const GradedSpace& s = d.homs[x][y].space();
  Vec v(s.dim());
  for (size_t i = 0; i < s.dim(); ++i)
    if (s.degree(i) == k) v[i] = Scalar(rng.uniform(-2, 2));
  return v;
}

Vec random_closed(Rng& rng, const ChainDgCategory& d, int x, int y, int k) {
  const ChainComplex& h = d.homs[x][y];
  const auto& lv = h.level(k);
  Vec v(h.space().dim());
  if (lv.empty()) return v;
  Mat z = kernel(h.diff(k));
  for (size_t c = 0; c < z.cols(); ++c) {
    Scalar a(rng.uniform(-2, 2));
    for (size_t i = 0; i < lv.size(); ++i) v[lv[i]] += a * z(i, c);
  }
  return v;
}

}  // namespace ain

namespace ain {

namespace {

Vec hom_unit(const GradedSpace& s, size_t i) { return basis_vec(s.dim(), i); }

struct TwLayout {
  std::vector<std::pair<size_t, size_t>> blocks;
  std::map<std::pair<size_t, size_t>, size_t> offset;
  size_t dim = 0;
};

TwLayout tw_layout(const TwistedComplex& k, const TwistedComplex& k2) {
  TwLayout l;
  for (size_t a = 0; a < k.size(); ++a)
    for (size_t b = 0; b < k2.size(); ++b) {
      l.blocks.push_back({a, b});
      l.offset[{a, b}] = l.dim;
      l.dim += k.cat->hom(k.obj(a), k2.obj(b)).dim();
    }
  return l;
}

void add_block(Vec& out, size_t off, const Vec& v, const Scalar& s = Scalar(1)) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[off + i] += s * v[i];
}

void add_into(TwMorphism& m, std::pair<size_t, size_t> key, const Vec& v, const Scalar& s = Scalar(1)) {
  auto it = m.find(key);
  if (it == m.end()) it = m.emplace(key, Vec(v.size())).first;
  axpy(it->second, s, v);
}

// rank of the map induced on homology by M : C level n -> D level n + shift
size_t hrank(const ChainComplex& c, const ChainComplex& d, const Mat& m, int n, int shift) {
  auto& ls = c.level(n);
  auto& lt = d.level(n + shift);
  if (ls.empty() || lt.empty()) return 0;
  Mat z = kernel(c.diff(n));
  Mat fz(lt.size(), z.cols());
  for (size_t k = 0; k < z.cols(); ++k)
    for (size_t i = 0; i < lt.size(); ++i) {
      Scalar s;
      for (size_t j = 0; j < ls.size(); ++j)
        if (!z(j, k).is_zero()) s += m(lt[i], ls[j]) * z(j, k);
      fz(i, k) = s;
    }
  Mat b = d.diff(n + shift - d.step());
  return rank(hstack(fz, b)) - rank(b);
}

size_t hdim(const std::map<int, size_t>& h, int n) {
  auto it = h.find(n);
  return it == h.end() ? 0 : it->second;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  std::vector<BasisElem> basis;
  for (auto& e : a.space().basis()) basis.push_back({"1:" + e.label, e.degree});
  for (auto& e : b.space().basis()) basis.push_back({"2:" + e.label, e.degree});
  Mat d(basis.size(), basis.size());
  d.put(0, 0, a.d());
  d.put(a.space().dim(), a.space().dim(), b.d());
  return ChainComplex(GradedSpace(std::move(basis)), std::move(d), a.step());
}

// u |-> g u (post) or u g (pre) as a matrix between hom complexes given as
// matrices of graded maps between the underlying complexes
Mat post_map(const ChainComplex& z, const ChainComplex& a, const ChainComplex& b, const Mat& g) {
  ChainComplex src = hom_complex(z, a, HomSign::leibniz), tgt = hom_complex(z, b, HomSign::leibniz);
  Mat m(tgt.space().dim(), src.space().dim());
  for (size_t i = 0; i < src.space().dim(); ++i)
    m.set_col(i, matrix_to_hom(z, b, g * hom_to_matrix(z, a, hom_unit(src.space(), i))));
  return m;
}

Mat pre_map(const ChainComplex& a, const ChainComplex& b, const ChainComplex& z, const Mat& g) {
  // u in Hom(b, z) |-> u g in Hom(a, z)
  ChainComplex src = hom_complex(b, z, HomSign::leibniz), tgt = hom_complex(a, z, HomSign::leibniz);
  Mat m(tgt.space().dim(), src.space().dim());
  for (size_t i = 0; i < src.space().dim(); ++i)
    m.set_col(i, matrix_to_hom(a, z, hom_to_matrix(b, z, hom_unit(src.space(), i)) * g));
  return m;
}

}  // namespace

TwistedComplex embed_object(std::shared_ptr<const AInfCategory> cat, int x) {
  TwistedComplex k;
  k.cat = std::move(cat);
  k.comps.push_back({0, x});
  return k;
}

Report validate_twisted(const TwistedComplex& k) {
  const AInfCategory& c = *k.cat;
  for (auto& [ab, v] : k.q) {
    auto [a, b] = ab;
    if (a >= k.size() || b >= k.size()) throw math_error("twist entry refers to a missing component");
    const GradedSpace& h = c.hom(k.obj(a), k.obj(b));
    if (v.size() != h.dim()) throw math_error("twist entry has wrong size");
    auto deg = degree_of(h, v);
    int want = k.comps[a].pos - k.comps[b].pos + 1;
    if (deg && *deg != want)
      throw math_error("twist q[" + std::to_string(a) + "," + std::to_string(b) + "] has degree " +
                       std::to_string(*deg) + ", expected " + std::to_string(want));
    if (!deg && !is_zero(v)) throw math_error("twist entry is not homogeneous");
  }
  Report r;
  for (size_t a = 0; a < k.size(); ++a)
    for (size_t b = 0; b < k.size(); ++b) {
      Vec val(c.hom(k.obj(a), k.obj(b)).dim());
      auto qab = k.q.find({a, b});
      if (qab != k.q.end()) axpy(val, sign(k.comps[b].pos), c.m(1, {k.obj(a), k.obj(b)}, {qab->second}));
      for (size_t m = 0; m < k.size(); ++m) {
        auto qam = k.q.find({a, m}), qmb = k.q.find({m, b});
        if (qam == k.q.end() || qmb == k.q.end()) continue;
        axpy(val, Scalar(1), c.m(2, {k.obj(a), k.obj(m), k.obj(b)}, {qmb->second, qam->second}));
      }
      if (!is_zero(val)) r.fail(Defect{0, {int(a), int(b)}, {}, val});
    }
  return r;
}

ChainComplex tw_hom(const TwistedComplex& k, const TwistedComplex& k2) {
  const AInfCategory& c = *k.cat;
  TwLayout l = tw_layout(k, k2);
  std::vector<BasisElem> basis;
  std::vector<int> degs;
  for (auto [a, b] : l.blocks) {
    const GradedSpace& h = c.hom(k.obj(a), k2.obj(b));
    for (size_t i = 0; i < h.dim(); ++i) {
      int deg = h.degree(i) + k2.comps[b].pos - k.comps[a].pos;
      basis.push_back({std::to_string(a) + ">" + std::to_string(b) + ":" + h.label(i), deg});
      degs.push_back(deg);
    }
  }
  Mat d(l.dim, l.dim);
  for (auto [a, b] : l.blocks) {
    int xa = k.obj(a), xb = k2.obj(b);
    const GradedSpace& h = c.hom(xa, xb);
    size_t off = l.offset[{a, b}];
    for (size_t i = 0; i < h.dim(); ++i) {
      Vec v = hom_unit(h, i), col(l.dim);
      int deg = degs[off + i];
      add_block(col, off, c.m(1, {xa, xb}, {v}), sign(k2.comps[b].pos));
      for (auto& [bm, q] : k2.q)
        if (bm.first == b)
          add_block(col, l.offset[{a, bm.second}], c.m(2, {xa, xb, k2.obj(bm.second)}, {q, v}));
      for (auto& [ma, q] : k.q)
        if (ma.second == a)
          add_block(col, l.offset[{ma.first, b}], c.m(2, {k.obj(ma.first), xa, xb}, {v, q}), -sign(deg));
      d.set_col(off + i, col);
    }
  }
  return ChainComplex(GradedSpace(std::move(basis)), std::move(d), 1);
}

Vec tw_pack(const TwistedComplex& k, const TwistedComplex& k2, const TwMorphism& f) {
  TwLayout l = tw_layout(k, k2);
  Vec v(l.dim);
  for (auto& [ab, x] : f) {
    auto it = l.offset.find(ab);
    if (it == l.offset.end()) throw math_error("morphism block refers to a missing component");
    if (x.size() != k.cat->hom(k.obj(ab.first), k2.obj(ab.second)).dim())
      throw math_error("morphism block has wrong size");
    add_block(v, it->second, x);
  }
  return v;
}

TwMorphism tw_unpack(const TwistedComplex& k, const TwistedComplex& k2, const Vec& v) {
  TwLayout l = tw_layout(k, k2);
  TwMorphism f;
  for (auto [a, b] : l.blocks) {
    size_t n = k.cat->hom(k.obj(a), k2.obj(b)).dim(), off = l.offset[{a, b}];
    Vec x(v.begin() + off, v.begin() + off + n);
    if (!is_zero(x)) f[{a, b}] = x;
  }
  return f;
}

TwMorphism tw_compose(const TwistedComplex& k, const TwistedComplex& k2, const TwistedComplex& k3,
                      const TwMorphism& g, const TwMorphism& f) {
  TwMorphism out;
  for (auto& [ab, fv] : f)
    for (auto& [bc, gv] : g)
      if (bc.first == ab.second)
        add_into(out, {ab.first, bc.second},
                 k.cat->m(2, {k.obj(ab.first), k2.obj(ab.second), k3.obj(bc.second)}, {gv, fv}));
  return out;
}

TwMorphism tw_identity(const TwistedComplex& k) {
  TwMorphism id;
  for (size_t a = 0; a < k.size(); ++a) {
    auto& u = k.cat->unit(k.obj(a));
    if (!u) throw math_error("object without unit");
    id[{a, a}] = *u;
  }
  return id;
}

bool tw_equal(const TwMorphism& a, const TwMorphism& b) {
  for (auto& [key, v] : tw_sub(a, b))
    if (!is_zero(v)) return false;
  return true;
}

TwMorphism tw_sub(const TwMorphism& a, const TwMorphism& b) {
  TwMorphism out = a;
  for (auto& [key, v] : b) add_into(out, key, v, Scalar(-1));
  return out;
}

TwistedComplex shift_tw(const TwistedComplex& k, int n) {
  TwistedComplex s = k;
  for (auto& c : s.comps) c.pos -= n;
  if (n % 2)
    for (auto& [ab, v] : s.q) v = Scalar(-1) * v;
  return s;
}

TwistedComplex cone_tw(const TwistedComplex& k, const TwistedComplex& k2, const TwMorphism& f) {
  ChainComplex h = tw_hom(k, k2);
  Vec v = tw_pack(k, k2, f);
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && h.space().degree(i) != 0) throw math_error("cone: f is not of degree 0");
  if (!is_zero(h.d() * v)) throw math_error("cone: f is not closed");
  TwistedComplex c = shift_tw(k, 1);
  size_t n = k.size();
  for (auto& comp : k2.comps) c.comps.push_back(comp);
  for (auto& [ab, q] : k2.q) c.q[{ab.first + n, ab.second + n}] = q;
  for (auto& [ab, x] : f) c.q[{ab.first, ab.second + n}] = x;
  return c;
}

ChainComplex tot(const ChainDgCategory& d, const TwistedComplex& k) {
  std::vector<BasisElem> basis;
  std::vector<size_t> off;
  for (size_t a = 0; a < k.size(); ++a) {
    off.push_back(basis.size());
    for (auto& e : d.objects[k.obj(a)].space().basis())
      basis.push_back({"c" + std::to_string(a) + ":" + e.label, e.degree + k.comps[a].pos});
  }
  Mat m(basis.size(), basis.size());
  for (size_t a = 0; a < k.size(); ++a) m.add(off[a], off[a], d.objects[k.obj(a)].d(), sign(k.comps[a].pos));
  for (auto& [ab, q] : k.q) m.add(off[ab.second], off[ab.first], d.to_matrix(k.obj(ab.first), k.obj(ab.second), q));
  return ChainComplex(GradedSpace(std::move(basis)), std::move(m), 1);
}

ChainComplex mapping_cone(const ChainDgCategory& d, int x, int y, const Vec& f) {
  return tot(d, cone_tw(embed_object(d.cat, x), embed_object(d.cat, y), {{{0, 0}, f}}));
}

ConeHom cone_hom_matrices(const ChainDgCategory& d, int x, int y, const Vec& f, int z) {
  auto build = [&](const ChainComplex& p, const ChainComplex& s, int sshift, Scalar ssign,
                   const std::string& pl, const std::string& sl,
                   const std::function<void(size_t, int, Mat&)>& cross) {
    std::vector<BasisElem> basis;
    for (auto& e : p.space().basis()) basis.push_back({pl + e.label, e.degree});
    for (auto& e : s.space().basis()) basis.push_back({sl + e.label, e.degree + sshift});
    size_t np = p.space().dim();
    Mat m(basis.size(), basis.size());
    m.put(0, 0, p.d());
    m.add(np, np, s.d(), ssign);
    for (size_t i = 0; i < basis.size(); ++i) cross(i, basis[i].degree, m);
    return ChainComplex(GradedSpace(std::move(basis)), std::move(m), 1);
  };
  const ChainComplex &yz = d.homs[y][z], &xz = d.homs[x][z], &zy = d.homs[z][y], &zx = d.homs[z][x];
  size_t nyz = yz.space().dim(), nzy = zy.space().dim();
  // v in Hom^k(Y,Z) -> -(-1)^k v o f in Hom^{k-1}(X,Z)
  ChainComplex from = build(yz, xz, 1, Scalar(1), "Y>Z:", "X>Z:", [&](size_t i, int k, Mat& m) {
    if (i >= nyz) return;
    Vec vf = d.compose(x, y, z, hom_unit(yz.space(), i), f);
    for (size_t r = 0; r < vf.size(); ++r) m(nyz + r, i) += -sign(k) * vf[r];
  });
  // w in Hom^{k+1}(Z,X): -D w, and f o w in Hom^k(Z,Y)
  ChainComplex to = build(zy, zx, -1, Scalar(-1), "Z>Y:", "Z>X:", [&](size_t i, int, Mat& m) {
    if (i < nzy) return;
    Vec fw = d.compose(z, x, y, f, hom_unit(zx.space(), i - nzy));
    for (size_t r = 0; r < fw.size(); ++r) m(r, i) += fw[r];
  });
  return {from, to};
}

Truncation truncated_op(const ChainComplex& hom) { return truncate_nonneg(op_complex(hom)); }

Vec to_truncated(const Truncation& t, const ChainComplex& full, const Vec& v) {
  size_t nz = t.z0.cols();
  Vec out(t.complex.space().dim());
  Vec v0(full.space().dim());
  size_t j = nz;
  for (size_t i = 0; i < full.space().dim(); ++i) {
    int deg = full.space().degree(i);
    if (deg > 0) out[j++] = v[i];
    else if (deg == 0) v0[i] = v[i];
    else if (!v[i].is_zero()) throw math_error("vector has a negative-level component");
  }
  if (nz == 0) {
    if (!is_zero(v0)) throw math_error("level-0 component is not a cycle");
    return out;
  }
  auto x = solve(t.z0, v0);
  if (!x) throw math_error("level-0 component is not a cycle");
  for (size_t i = 0; i < nz; ++i) out[i] = (*x)[i];
  return out;
}

Vec from_truncated(const Truncation& t, const ChainComplex& full, const Vec& v) {
  size_t nz = t.z0.cols();
  Vec out(full.space().dim());
  for (size_t k = 0; k < nz; ++k)
    if (!v[k].is_zero()) axpy(out, v[k], t.z0.col(k));
  size_t j = nz;
  for (size_t i = 0; i < full.space().dim(); ++i)
    if (full.space().degree(i) > 0) out[i] = v[j++];
  return out;
}

PathComplex path_complex(const ChainComplex& a, const ChainComplex& b, const Mat& f) {
  if (a.step() != -1 || b.step() != -1) throw math_error("path_complex expects chain complexes");
  if (a.space().dim() && a.lo() < 0) throw math_error("path_complex expects non-negative levels");
  if (b.space().dim() && b.lo() < 0) throw math_error("path_complex expects non-negative levels");
  if (!is_chain_map(a, b, f)) throw math_error("path_complex: f is not a chain map");
  size_t na = a.space().dim(), nb = b.space().dim();
  std::vector<BasisElem> basis;
  for (auto& e : a.space().basis()) basis.push_back({"a:" + e.label, e.degree});
  for (auto& e : b.space().basis()) basis.push_back({"c:" + e.label, e.degree - 1});
  for (auto& e : b.space().basis()) basis.push_back({"b:" + e.label, e.degree});
  Mat d(basis.size(), basis.size());
  d.put(0, 0, a.d());
  d.add(na, 0, f, Scalar(-1));
  d.add(na, na, b.d(), Scalar(-1));
  d.put(na, na + nb, Mat::identity(nb));
  d.put(na + nb, na + nb, b.d());
  PathComplex p;
  p.full = ChainComplex(GradedSpace(std::move(basis)), std::move(d), -1);
  p.trunc = truncate_nonneg(p.full);
  p.complex = p.trunc.complex;
  size_t np = p.complex.space().dim();
  p.i = Mat(np, na);
  for (size_t e = 0; e < na; ++e) {
    Vec v(p.full.space().dim());
    v[e] = Scalar(1);
    for (size_t r = 0; r < nb; ++r) v[na + nb + r] = f(r, e);
    p.i.set_col(e, to_truncated(p.trunc, p.full, v));
  }
  p.p = Mat(nb, np);
  for (size_t e = 0; e < np; ++e) {
    Vec v = from_truncated(p.trunc, p.full, basis_vec(np, e));
    for (size_t r = 0; r < nb; ++r) p.p(r, e) = v[na + nb + r];
  }
  return p;
}

std::pair<ChainComplex, Mat> subcomplex(const ChainComplex& c, const std::map<int, Mat>& basis) {
  std::vector<BasisElem> b;
  std::vector<Vec> cols;
  std::map<int, size_t> off;
  for (auto& [n, m] : basis) {
    off[n] = cols.size();
    for (size_t k = 0; k < m.cols(); ++k) {
      b.push_back({"s" + std::to_string(n) + "_" + std::to_string(k), n});
      cols.push_back(m.col(k));
    }
  }
  Mat inc = Mat::from_cols(cols, c.space().dim());
  Mat d(cols.size(), cols.size());
  std::map<int, std::unique_ptr<Solver>> solvers;
  for (auto& [n, m] : basis) {
    int t = n + c.step();
    auto tb = basis.find(t);
    for (size_t k = 0; k < m.cols(); ++k) {
      Vec img = c.d() * m.col(k);
      if (is_zero(img)) continue;
      if (tb == basis.end()) throw math_error("subcomplex is not closed under d");
      if (!solvers[t]) solvers[t] = std::make_unique<Solver>(tb->second);
      auto x = solvers[t]->solve(img);
      if (!x) throw math_error("subcomplex is not closed under d");
      for (size_t i = 0; i < x->size(); ++i) d(off[t] + i, off[n] + k) = (*x)[i];
    }
  }
  return {ChainComplex(GradedSpace(std::move(b)), std::move(d), c.step()), std::move(inc)};
}

HomotopyPullback homotopy_pullback(const Cospan& c) {
  HomotopyPullback h;
  h.p1 = path_complex(c.x1, c.x0, c.f1);
  h.p2 = path_complex(c.x2, c.x0, c.f2);
  ChainComplex s = direct_sum(h.p1.complex, h.p2.complex);
  Mat diff = hstack(h.p1.p, Scalar(-1) * h.p2.p);  // p1 u - p2 v
  std::map<int, Mat> basis;
  for (auto& [n, dim] : s.space().dims()) {
    auto& lv = s.level(n);
    Mat m(diff.rows(), lv.size());
    for (size_t j = 0; j < lv.size(); ++j)
      for (size_t r = 0; r < diff.rows(); ++r) m(r, j) = diff(r, lv[j]);
    Mat k = kernel(m);
    Mat full(s.space().dim(), k.cols());
    for (size_t j = 0; j < k.cols(); ++j)
      for (size_t i = 0; i < lv.size(); ++i) full(lv[i], j) = k(i, j);
    basis[n] = full;
  }
  auto [sub, inc] = subcomplex(s, basis);
  h.complex = sub;
  h.inclusion = inc;
  return h;
}

ChainComplex pullback_oracle(const Cospan& c) {
  size_t n1 = c.x1.space().dim(), n2 = c.x2.space().dim();
  std::vector<BasisElem> basis;
  for (auto& e : c.x1.space().basis()) basis.push_back({"x1:" + e.label, e.degree});
  for (auto& e : c.x2.space().basis()) basis.push_back({"x2:" + e.label, e.degree});
  for (auto& e : c.x0.space().basis()) basis.push_back({"y:" + e.label, e.degree - 1});
  Mat d(basis.size(), basis.size());
  d.put(0, 0, c.x1.d());
  d.put(n1, n1, c.x2.d());
  d.add(n1 + n2, 0, c.f1);
  d.add(n1 + n2, n1, c.f2, Scalar(-1));
  d.add(n1 + n2, n1 + n2, c.x0.d(), Scalar(-1));
  return truncate_nonneg(ChainComplex(GradedSpace(std::move(basis)), std::move(d), -1)).complex;
}

Report quasi_iso_check(const ChainComplex& c, const ChainComplex& d, const Mat& f, const std::string& name) {
  Report r;
  if (!is_chain_map(c, d, f)) {
    r.fail(name + ": not a chain map");
    return r;
  }
  auto hc = homology(c), hd = homology(d);
  std::map<int, size_t> levels;
  for (auto& [n, k] : hc) levels[n] = 0;
  for (auto& [n, k] : hd) levels[n] = 0;
  for (auto& [n, unused] : levels) {
    size_t a = hdim(hc, n), b = hdim(hd, n);
    if (a != b) {
      r.fail(name + ": H_" + std::to_string(n) + " dims " + std::to_string(a) + " vs " + std::to_string(b));
      continue;
    }
    size_t rk = induced_rank(c, d, f, n);
    if (rk != a)
      r.fail(name + ": induced map on H_" + std::to_string(n) + " has rank " + std::to_string(rk) + " < " +
             std::to_string(a));
  }
  return r;
}

namespace {

// Comparison tau(S^op) -> tau(A^op) x^h_{tau(B^op)} 0 for hom complexes S, A, B
// (cochain), a chain map amap : S -> A, g : A -> B, and a degree -1 map
// hmap : S -> B with g amap + D hmap + hmap D = 0.
Report comparison(const ChainComplex& s, const ChainComplex& a, const ChainComplex& b, const Mat& g,
                  const Mat& amap, const Mat& hmap, const std::string& name) {
  ChainComplex so = op_complex(s), ao = op_complex(a), bo = op_complex(b);
  Truncation ts = truncate_nonneg(so), ta = truncate_nonneg(ao), tb = truncate_nonneg(bo);
  size_t na = ta.complex.space().dim(), nb = tb.complex.space().dim();
  Mat gt(nb, na);
  for (size_t e = 0; e < na; ++e)
    gt.set_col(e, to_truncated(tb, bo, g * from_truncated(ta, ao, basis_vec(na, e))));
  Cospan cs{ta.complex, tb.complex, ChainComplex::from_levels(-1, {}, {}, "o"), gt, Mat(nb, 0)};
  HomotopyPullback pb = homotopy_pullback(cs);
  size_t ns = ts.complex.space().dim();
  size_t n1 = pb.p1.complex.space().dim(), n2 = pb.p2.complex.space().dim();
  Solver sol(pb.inclusion);
  Mat phi(pb.complex.space().dim(), ns);
  for (size_t e = 0; e < ns; ++e) {
    Vec u = from_truncated(ts, so, basis_vec(ns, e));
    Vec av = to_truncated(ta, ao, amap * u);
    Vec cv = to_truncated(tb, bo, hmap * u);
    Vec pf(pb.p1.full.space().dim());
    for (size_t i = 0; i < na; ++i) pf[i] = av[i];
    for (size_t i = 0; i < nb; ++i) pf[na + i] = cv[i];
    Vec p1 = to_truncated(pb.p1.trunc, pb.p1.full, pf);
    Vec sum(n1 + n2);
    for (size_t i = 0; i < n1; ++i) sum[i] = p1[i];
    auto x = sol.solve(sum);
    if (!x) {
      Report r;
      r.fail(name + ": image leaves the fiber product");
      return r;
    }
    phi.set_col(e, *x);
  }
  return quasi_iso_check(ts.complex, pb.complex, phi, name);
}

void merge(Report& into, const Report& r) {
  if (!r.ok) into.ok = false;
  for (auto& d : r.defects) into.defects.push_back(d);
  for (auto& n : r.notes) into.notes.push_back(n);
}

void require_closed0(const ChainDgCategory& d, int x, int y, const Vec& f) {
  const ChainComplex& h = d.homs[x][y];
  for (size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero() && h.space().degree(i) != 0) throw math_error("f is not of degree 0");
  if (!is_zero(h.d() * f)) throw math_error("f is not closed");
}

}  // namespace

Report fiber_cofiber_check(const ChainDgCategory& d, int x, int y, const Vec& f, int z) {
  require_closed0(d, x, y, f);
  const ChainComplex &X = d.objects[x], &Y = d.objects[y], &Z = d.objects[z];
  size_t nx = X.space().dim(), ny = Y.space().dim();
  Mat fm = d.to_matrix(x, y, f);
  Report r;
  {
    // cofiber: C = Cone(f), j = (Id_Y, 0), null-homotopy h = (0, Id_X) of j f
    ChainComplex c = mapping_cone(d, x, y, f);
    Mat j(nx + ny, ny), h(nx + ny, nx);
    j.put(nx, 0, Mat::identity(ny));
    h.put(0, 0, Mat::identity(nx));
    ChainComplex hc = hom_complex(c, Z, HomSign::leibniz);
    Mat amap = pre_map(Y, c, Z, j), hmap = pre_map(X, c, Z, h), g = pre_map(X, Y, Z, fm);
    // u |-> (-1)^{k+1} u h on Hom^k
    for (size_t e = 0; e < hc.space().dim(); ++e) {
      Scalar s = sign(hc.space().degree(e) + 1);
      for (size_t rr = 0; rr < hmap.rows(); ++rr) hmap(rr, e) *= s;
    }
    Report s = comparison(hc, d.homs[y][z], d.homs[x][z], g, amap, hmap, "cofiber");
    merge(r, s);
    if (s.ok) r.notes.push_back("cofiber comparison: quasi-isomorphism");
  }
  {
    // fiber: F = Cone(f)[-1] = X (+) Y[-1], i = (Id_X, 0); null-homotopy of f i is (x, y) |-> -y
    TwistedComplex k = shift_tw(cone_tw(embed_object(d.cat, x), embed_object(d.cat, y), {{{0, 0}, f}}), -1);
    ChainComplex fc = tot(d, k);
    Mat i(nx, nx + ny), hh(ny, nx + ny);
    i.put(0, 0, Mat::identity(nx));
    hh.put(0, nx, Mat::identity(ny));
    ChainComplex hz = hom_complex(Z, fc, HomSign::leibniz);
    Mat amap = post_map(Z, fc, X, i), g = post_map(Z, X, Y, fm);
    Mat hmap = post_map(Z, fc, Y, hh);
    Report s = comparison(hz, d.homs[z][x], d.homs[z][y], g, amap, hmap, "fiber");
    merge(r, s);
    if (s.ok) r.notes.push_back("fiber comparison: quasi-isomorphism");
  }
  return r;
}

Report stability_witnesses(const ChainDgCategory& d, int x, int y, const Vec& f) {
  if (d.zero_object < 0) throw math_error("category has no zero object");
  require_closed0(d, x, y, f);
  Report r;
  auto check = [&](bool ok, const std::string& what) {
    if (ok) r.notes.push_back(what + ": ok");
    else r.fail(what + ": fails");
  };
  auto closed = [&](const TwistedComplex& a, const TwistedComplex& b, const TwMorphism& m) {
    return is_zero(tw_hom(a, b).d() * tw_pack(a, b, m));
  };
  auto dmap = [&](const TwistedComplex& a, const TwistedComplex& b, const TwMorphism& m) {
    return tw_unpack(a, b, tw_hom(a, b).d() * tw_pack(a, b, m));
  };
  TwistedComplex ex = embed_object(d.cat, x), ey = embed_object(d.cat, y);
  TwMorphism fm{{{0, 0}, f}};
  TwistedComplex c = cone_tw(ex, ey, fm);  // X at -1, Y at 0
  TwMorphism j{{{0, 1}, d.identity(y)}};
  check(closed(ey, c, j), "d(j) = 0 for j = (Id_Y, 0)");
  TwMorphism h{{{0, 0}, d.identity(x)}};
  check(tw_equal(dmap(ex, c, h), tw_compose(ex, ey, c, j, fm)), "d(h) = j o f for h = (0, Id_X)");
  // Cone(j)[-1]: Y and X at 0, Y at 1, twist -(Id_Y (+) f)
  TwistedComplex cj = shift_tw(cone_tw(ey, c, j), -1);
  check(validate_twisted(cj).ok, "Cone(j)[-1] satisfies Maurer-Cartan");
  TwMorphism g{{{0, 0}, Scalar(-1) * f}, {{0, 1}, d.identity(x)}};
  TwMorphism hp{{{1, 0}, d.identity(x)}};
  check(closed(ex, cj, g), "g = (0, (-f) (+) i_X) is closed");
  check(closed(cj, ex, hp), "h' = (0, pi_X) is closed");
  check(tw_equal(tw_compose(ex, cj, ex, hp, g), tw_identity(ex)), "h' o g = Id_X");
  TwMorphism alpha{{{2, 0}, d.identity(y)}};
  TwMorphism gh = tw_sub(tw_compose(cj, ex, cj, g, hp), tw_identity(cj));
  check(tw_equal(dmap(cj, cj, alpha), gh), "d(alpha) = g o h' - Id with alpha = (0, i_Y, 0, 0)");
  TwMorphism alpha_neg{{{2, 0}, Scalar(-1) * d.identity(y)}};
  r.notes.push_back(std::string("alpha = (0, -i_Y, 0, 0) satisfies it: ") +
                    (tw_equal(dmap(cj, cj, alpha_neg), gh) ? "yes" : "no"));
  int zo = d.zero_object;
  bool acyclic = true;
  for (int o = 0; o < static_cast<int>(d.size()); ++o)
    for (auto* hom : {&d.homs[o][zo], &d.homs[zo][o]})
      for (auto& [n, k] : homology(*hom))
        if (k) acyclic = false;
  check(acyclic, "Hom(X,0) and Hom(0,X) acyclic");
  return r;
}

Report les_check(const ChainDgCategory& d, int x, int y, const Vec& f, int z) {
  require_closed0(d, x, y, f);
  const ChainComplex &X = d.objects[x], &Y = d.objects[y], &Z = d.objects[z];
  size_t nx = X.space().dim(), ny = Y.space().dim();
  ChainComplex c = mapping_cone(d, x, y, f);
  Mat j(nx + ny, ny), pi(nx, nx + ny);
  j.put(nx, 0, Mat::identity(ny));
  pi.put(0, 0, Mat::identity(nx));
  const ChainComplex &hy = d.homs[y][z], &hx = d.homs[x][z];
  ChainComplex hc = hom_complex(c, Z, HomSign::leibniz);
  Mat rj = pre_map(Y, c, Z, j);                     // Hom(C,Z) -> Hom(Y,Z)
  Mat rf = pre_map(X, Y, Z, d.to_matrix(x, y, f));  // Hom(Y,Z) -> Hom(X,Z)
  Mat del = pre_map(c, X, Z, pi);                   // Hom^k(X,Z) -> Hom^{k+1}(C,Z)
  Report r;
  if (!is_chain_map(hc, hy, rj) || !is_chain_map(hy, hx, rf) || !(hc.d() * del == del * hx.d())) {
    r.fail("les: a map of the sequence is not a chain map");
    return r;
  }
  auto hcd = homology(hc), hyd = homology(hy), hxd = homology(hx);
  int lo = std::min({hc.lo(), hy.lo(), hx.lo()}) - 1, hi = std::max({hc.hi(), hy.hi(), hx.hi()}) + 1;
  Mat rjdel = rj * del, rfrj = rf * rj, delrf = del * rf;
  auto node = [&](const std::string& name, int k, size_t in, size_t out, size_t comp, size_t dim) {
    if (comp != 0 || in + out != dim)
      r.fail("les: not exact at " + name + "^" + std::to_string(k) + " (in " + std::to_string(in) + ", out " +
             std::to_string(out) + ", dim " + std::to_string(dim) + ")");
  };
  for (int k = lo; k <= hi; ++k) {
    node("Hom(Cone,Z)", k, hrank(hx, hc, del, k - 1, 1), hrank(hc, hy, rj, k, 0), hrank(hx, hy, rjdel, k - 1, 1),
         hdim(hcd, k));
    node("Hom(Y,Z)", k, hrank(hc, hy, rj, k, 0), hrank(hy, hx, rf, k, 0), hrank(hc, hx, rfrj, k, 0), hdim(hyd, k));
    node("Hom(X,Z)", k, hrank(hy, hx, rf, k, 0), hrank(hx, hc, del, k, 1), hrank(hy, hc, delrf, k, 1), hdim(hxd, k));
  }
  if (r.ok) r.notes.push_back("les: exact at every node for degrees " + std::to_string(lo) + ".." + std::to_string(hi));
  return r;
}

}  // namespace ain
