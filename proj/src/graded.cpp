#include "ainerve/graded.hpp"

#include <algorithm>
#include <numeric>

namespace ain {

GradedSpace::GradedSpace(std::vector<BasisElem> basis) : basis_(std::move(basis)) {
  for (size_t i = 0; i < basis_.size(); ++i)
    if (!index_.emplace(basis_[i].label, i).second)
      throw math_error("duplicate basis label '" + basis_[i].label + "'");
}

long GradedSpace::index(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : long(it->second);
}

std::map<int, size_t> GradedSpace::dims() const {
  std::map<int, size_t> d;
  for (auto& b : basis_) ++d[b.degree];
  return d;
}

std::vector<size_t> GradedSpace::indices_of_degree(int d) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

bool GradedSpace::operator==(const GradedSpace& o) const {
  if (basis_.size() != o.basis_.size()) return false;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label != o.basis_[i].label || basis_[i].degree != o.basis_[i].degree) return false;
  return true;
}

GradedSpace tensor_spaces(const GradedSpace& v, const GradedSpace& w) {
  std::vector<BasisElem> b;
  b.reserve(v.dim() * w.dim());
  for (auto& x : v.basis())
    for (auto& y : w.basis()) b.push_back({x.label + "(x)" + y.label, x.degree + y.degree});
  return GradedSpace(std::move(b));
}

GradedMap::GradedMap(GradedSpace s, GradedSpace t, int deg, Mat mat)
    : source(std::move(s)), target(std::move(t)), degree(deg), m(std::move(mat)) {
  if (m.rows() != target.dim() || m.cols() != source.dim())
    throw math_error("graded map has wrong shape");
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && target.degree(i) != source.degree(j) + degree)
        throw math_error("graded map entry violates degree " + std::to_string(degree) + ": " +
                         source.label(j) + " -> " + target.label(i));
}

GradedMap GradedMap::zero(GradedSpace s, GradedSpace t, int deg) {
  Mat m(t.dim(), s.dim());
  return GradedMap(std::move(s), std::move(t), deg, std::move(m));
}

GradedMap GradedMap::identity(const GradedSpace& s) { return GradedMap(s, s, 0, Mat::identity(s.dim())); }

GradedMap compose_graded(const GradedMap& g, const GradedMap& f) {
  if (!(f.target == g.source)) throw math_error("compose_graded: space mismatch");
  return GradedMap(f.source, g.target, f.degree + g.degree, g.m * f.m);
}

GradedMap tensor_maps(const GradedMap& f, const GradedMap& g) {
  GradedSpace src = tensor_spaces(f.source, g.source), tgt = tensor_spaces(f.target, g.target);
  Mat m(tgt.dim(), src.dim());
  size_t ws = g.source.dim(), wt = g.target.dim();
  for (size_t x = 0; x < f.source.dim(); ++x) {
    Scalar s = sign(long(f.source.degree(x)) * g.degree);
    for (size_t y = 0; y < ws; ++y)
      for (size_t fx = 0; fx < f.target.dim(); ++fx) {
        if (f.m(fx, x).is_zero()) continue;
        for (size_t gy = 0; gy < wt; ++gy)
          if (!g.m(gy, y).is_zero()) m(fx * wt + gy, x * ws + y) = s * f.m(fx, x) * g.m(gy, y);
      }
  }
  return GradedMap(src, tgt, f.degree + g.degree, std::move(m));
}

std::pair<GradedSpace, GradedMap> suspend(const GradedSpace& v) {
  std::vector<BasisElem> b;
  for (auto& e : v.basis()) b.push_back({"s(" + e.label + ")", e.degree - 1});
  GradedSpace sv(std::move(b));
  return {sv, GradedMap(v, sv, -1, Mat::identity(v.dim()))};
}

GradedMap desuspend_map(const GradedSpace& v) {
  auto [sv, s] = suspend(v);
  return GradedMap(sv, v, 1, Mat::identity(v.dim()));
}

ChainComplex::ChainComplex(GradedSpace space, Mat d, int step)
    : space_(std::move(space)), d_(std::move(d)), step_(step) {
  if (step != 1 && step != -1) throw math_error("complex step must be +1 or -1");
  GradedMap check(space_, space_, step_, d_);  // degree constraint
  if (!(d_ * d_).is_zero()) throw math_error("d^2 != 0");
  for (size_t i = 0; i < space_.dim(); ++i) levels_[space_.degree(i)].push_back(i);
}

ChainComplex ChainComplex::from_levels(int step, const std::map<int, size_t>& dims,
                                       const std::map<int, Mat>& diffs, const std::string& prefix) {
  std::vector<BasisElem> b;
  std::map<int, size_t> offset;
  for (auto& [n, k] : dims) {
    offset[n] = b.size();
    for (size_t i = 0; i < k; ++i) b.push_back({prefix + std::to_string(n) + "_" + std::to_string(i), n});
  }
  Mat d(b.size(), b.size());
  for (auto& [n, m] : diffs) {
    auto s = dims.find(n), t = dims.find(n + step);
    size_t sd = s == dims.end() ? 0 : s->second, td = t == dims.end() ? 0 : t->second;
    if (m.rows() != td || m.cols() != sd) {
      if (m.rows() * m.cols() == 0 && sd * td == 0) continue;
      throw math_error("differential block at level " + std::to_string(n) + " has wrong shape");
    }
    if (sd && td) d.put(offset[n + step], offset[n], m);
  }
  return ChainComplex(GradedSpace(std::move(b)), std::move(d), step);
}

size_t ChainComplex::dim(int n) const {
  auto it = levels_.find(n);
  return it == levels_.end() ? 0 : it->second.size();
}

int ChainComplex::lo() const { return levels_.empty() ? 0 : levels_.begin()->first; }
int ChainComplex::hi() const { return levels_.empty() ? -1 : levels_.rbegin()->first; }

const std::vector<size_t>& ChainComplex::level(int n) const {
  static const std::vector<size_t> empty;
  auto it = levels_.find(n);
  return it == levels_.end() ? empty : it->second;
}

Mat ChainComplex::diff(int n) const {
  auto& s = level(n);
  auto& t = level(n + step_);
  Mat m(t.size(), s.size());
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) m(i, j) = d_(t[i], s[j]);
  return m;
}

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b, HomSign mode) {
  if (a.step() != 1 || b.step() != 1) throw math_error("hom_complex expects cochain complexes");
  struct E { int deg; size_t ai, bi; };
  std::vector<E> els;
  for (size_t ai = 0; ai < a.space().dim(); ++ai)
    for (size_t bi = 0; bi < b.space().dim(); ++bi)
      els.push_back({b.space().degree(bi) - a.space().degree(ai), ai, bi});
  std::stable_sort(els.begin(), els.end(), [](const E& x, const E& y) { return x.deg < y.deg; });
  std::vector<BasisElem> basis;
  size_t nb = b.space().dim();
  std::vector<size_t> pos(a.space().dim() * nb);
  for (size_t i = 0; i < els.size(); ++i) {
    basis.push_back({"[" + a.space().label(els[i].ai) + "," + b.space().label(els[i].bi) + "]", els[i].deg});
    pos[els[i].ai * nb + els[i].bi] = i;
  }
  Mat d(els.size(), els.size());
  for (size_t i = 0; i < els.size(); ++i) {
    auto [k, ai, bi] = els[i];
    // E_{b,a} d_A = sum_{a'} d_A(a, a') E_{b,a'}
    Scalar sa = mode == HomSign::cited ? Scalar(1) : -sign(k);
    Scalar sb = mode == HomSign::cited ? sign(k + 1) : Scalar(1);
    for (size_t a2 = 0; a2 < a.space().dim(); ++a2)
      if (!a.d()(ai, a2).is_zero()) d(pos[a2 * nb + bi], i) += sa * a.d()(ai, a2);
    for (size_t b2 = 0; b2 < nb; ++b2)
      if (!b.d()(b2, bi).is_zero()) d(pos[ai * nb + b2], i) += sb * b.d()(b2, bi);
  }
  return ChainComplex(GradedSpace(std::move(basis)), std::move(d), 1);
}

Mat hom_to_matrix(const ChainComplex& a, const ChainComplex& b, const Vec& f) {
  size_t na = a.space().dim(), nb = b.space().dim();
  if (f.size() != na * nb) throw math_error("hom element has wrong size");
  // hom basis order: sorted by degree, ties in (a, b) order; rebuild the map
  struct E { int deg; size_t ai, bi; };
  std::vector<E> els;
  for (size_t ai = 0; ai < na; ++ai)
    for (size_t bi = 0; bi < nb; ++bi) els.push_back({b.space().degree(bi) - a.space().degree(ai), ai, bi});
  std::stable_sort(els.begin(), els.end(), [](const E& x, const E& y) { return x.deg < y.deg; });
  Mat m(nb, na);
  for (size_t i = 0; i < els.size(); ++i) m(els[i].bi, els[i].ai) = f[i];
  return m;
}

Vec matrix_to_hom(const ChainComplex& a, const ChainComplex& b, const Mat& m) {
  size_t na = a.space().dim(), nb = b.space().dim();
  struct E { int deg; size_t ai, bi; };
  std::vector<E> els;
  for (size_t ai = 0; ai < na; ++ai)
    for (size_t bi = 0; bi < nb; ++bi) els.push_back({b.space().degree(bi) - a.space().degree(ai), ai, bi});
  std::stable_sort(els.begin(), els.end(), [](const E& x, const E& y) { return x.deg < y.deg; });
  Vec f(els.size());
  for (size_t i = 0; i < els.size(); ++i) f[i] = m(els[i].bi, els[i].ai);
  return f;
}

std::map<int, size_t> homology(const ChainComplex& c) {
  std::map<int, size_t> h;
  for (auto& [n, dims] : c.space().dims()) {
    size_t out = rank(c.diff(n));
    size_t in = rank(c.diff(n - c.step()));
    h[n] = dims - out - in;
  }
  return h;
}

ChainComplex op_complex(const ChainComplex& c) {
  std::vector<BasisElem> b;
  for (auto& e : c.space().basis()) b.push_back({e.label, -e.degree});
  return ChainComplex(GradedSpace(std::move(b)), c.d(), -c.step());
}

Truncation truncate_nonneg(const ChainComplex& c) {
  if (c.step() != -1) throw math_error("truncate_nonneg expects a chain complex");
  Mat z0 = kernel(c.diff(0));  // columns in level-0 coordinates
  auto& l0 = c.level(0);
  // basis: kernel vectors at level 0, then all positive levels
  std::vector<BasisElem> basis;
  for (size_t i = 0; i < z0.cols(); ++i) basis.push_back({"z0_" + std::to_string(i), 0});
  std::vector<size_t> keep;
  for (size_t i = 0; i < c.space().dim(); ++i)
    if (c.space().degree(i) > 0) {
      keep.push_back(i);
      basis.push_back(c.space().basis()[i]);
    }
  size_t nz = z0.cols();
  Mat d(basis.size(), basis.size());
  for (size_t j = 0; j < keep.size(); ++j)
    for (size_t i = 0; i < keep.size(); ++i) d(nz + i, nz + j) = c.d()(keep[i], keep[j]);
  // d_1 lands in Ker d_0; express it in kernel coordinates
  Solver zs(z0);
  for (size_t j = 0; j < keep.size(); ++j) {
    if (c.space().degree(keep[j]) != 1) continue;
    Vec img(l0.size());
    for (size_t i = 0; i < l0.size(); ++i) img[i] = c.d()(l0[i], keep[j]);
    auto x = zs.solve(img);
    if (!x) throw math_error("d_1 does not land in Ker d_0");
    for (size_t i = 0; i < nz; ++i) d(i, nz + j) = (*x)[i];
  }
  Mat inc(c.space().dim(), nz);
  for (size_t k = 0; k < nz; ++k)
    for (size_t i = 0; i < l0.size(); ++i) inc(l0[i], k) = z0(i, k);
  return {ChainComplex(GradedSpace(std::move(basis)), std::move(d), -1), std::move(inc)};
}

bool is_chain_map(const ChainComplex& c, const ChainComplex& dd, const Mat& f) {
  return (dd.d() * f - f * c.d()).is_zero();
}

size_t induced_rank(const ChainComplex& c, const ChainComplex& dd, const Mat& f, int n) {
  auto& ls = c.level(n);
  auto& lt = dd.level(n);
  if (ls.empty() || lt.empty()) return 0;
  Mat z = kernel(c.diff(n));  // cycles in level coordinates
  Mat fz(lt.size(), z.cols());
  for (size_t k = 0; k < z.cols(); ++k)
    for (size_t i = 0; i < lt.size(); ++i) {
      Scalar s;
      for (size_t j = 0; j < ls.size(); ++j)
        if (!z(j, k).is_zero()) s += f(lt[i], ls[j]) * z(j, k);
      fz(i, k) = s;
    }
  Mat b = dd.diff(n - dd.step());  // boundaries into level n
  return rank(hstack(fz, b)) - rank(b);
}

}  // namespace ain
