#include "ainerve/doldkan.hpp"

#include <algorithm>
#include <functional>

namespace ain {

unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Surj> surjections(int n, int p) {
  std::vector<Surj> out;
  Surj cur{0};
  std::function<void()> rec = [&] {
    if ((int)cur.size() == n + 1) {
      if (p < 0 || cur.back() == p) out.push_back(cur);
      return;
    }
    for (int step = 0; step <= 1; ++step) {
      cur.push_back(cur.back() + step);
      rec();
      cur.pop_back();
    }
  };
  if (n >= 0) rec();
  return out;
}

std::string surj_key(const Surj& s) {
  std::string k;
  for (size_t i = 0; i < s.size(); ++i) k += (i ? "." : "") + std::to_string(s[i]);
  return k;
}

SimplexMap compose_maps(const SimplexMap& g, const SimplexMap& f) {
  SimplexMap r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

namespace {

SimplexMap coface(int n, int i) {  // [n-1] -> [n] missing i
  SimplexMap m(n);
  for (int k = 0; k < n; ++k) m[k] = k < i ? k : k + 1;
  return m;
}

SimplexMap codegen(int n, int i) {  // [n+1] -> [n] hitting i twice
  SimplexMap m(n + 2);
  for (int k = 0; k <= n + 1; ++k) m[k] = k <= i ? k : k - 1;
  return m;
}

void check_map(const SimplexMap& t, int n) {
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] > n || (i && t[i] < t[i - 1])) throw math_error("not an order-preserving map");
}

}  // namespace

Mat SimplicialVS::theta_star(const SimplexMap& theta, int n) const {
  check_map(theta, n);
  int m = (int)theta.size() - 1;
  if (m > level_cap || n > level_cap) throw math_error("simplicial level beyond cap");
  for (int j = 0; j < m; ++j)
    if (theta[j] == theta[j + 1]) {
      SimplexMap t = theta;
      t.erase(t.begin() + j + 1);
      return degen[m - 1][j] * theta_star(t, n);
    }
  std::vector<bool> hit(n + 1, false);
  for (int v : theta) hit[v] = true;
  for (int v = 0; v <= n; ++v)
    if (!hit[v]) {
      SimplexMap t = theta;
      for (auto& x : t)
        if (x > v) --x;
      return theta_star(t, n - 1) * face[n][v];
    }
  return Mat::identity(dims[n]);
}

Report check_simplicial_identities(const SimplicialVS& x) {
  Report rep;
  int cap = x.level_cap;
  auto bad = [&](const std::string& s) { rep.fail(s); };
  for (int n = 0; n <= cap; ++n) {
    if (n >= 1 && (int)x.face[n].size() != n + 1) bad("wrong number of faces at level " + std::to_string(n));
    if (n < cap && (int)x.degen[n].size() != n + 1) bad("wrong number of degeneracies at level " + std::to_string(n));
  }
  if (!rep.ok) return rep;
  auto tag = [](const char* w, int n, int i, int j) {
    return std::string(w) + " n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
  };
  for (int n = 2; n <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(x.face[n - 1][i] * x.face[n][j] == x.face[n - 1][j - 1] * x.face[n][i])) bad(tag("d_i d_j", n, i, j));
  for (int n = 0; n + 2 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(x.degen[n + 1][i] * x.degen[n][j] == x.degen[n + 1][j + 1] * x.degen[n][i])) bad(tag("s_i s_j", n, i, j));
  for (int n = 0; n < cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        Mat lhs = x.face[n + 1][i] * x.degen[n][j];
        Mat rhs;
        if (i < j)
          rhs = x.degen[n - 1][j - 1] * x.face[n][i];
        else if (i == j || i == j + 1)
          rhs = Mat::identity(x.dims[n]);
        else
          rhs = x.degen[n - 1][j] * x.face[n][i - 1];
        if (!(lhs == rhs)) bad(tag("d_i s_j", n, i, j));
      }
  return rep;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

SimplicialVS product(const SimplicialVS& x, const SimplicialVS& y) {
  SimplicialVS p;
  p.level_cap = std::min(x.level_cap, y.level_cap);
  p.face.resize(p.level_cap + 1);
  p.degen.resize(p.level_cap + 1);
  for (int n = 0; n <= p.level_cap; ++n) {
    p.dims.push_back(x.dims[n] * y.dims[n]);
    if (n >= 1)
      for (int i = 0; i <= n; ++i) p.face[n].push_back(kron(x.face[n][i], y.face[n][i]));
    if (n < p.level_cap)
      for (int i = 0; i <= n; ++i) p.degen[n].push_back(kron(x.degen[n][i], y.degen[n][i]));
  }
  return p;
}

Normalized normalized_complex(const SimplicialVS& x) {
  auto ids = check_simplicial_identities(x);
  if (!ids.ok) throw math_error("simplicial identity fails: " + ids.notes.front());
  Normalized out;
  int cap = x.level_cap;
  std::map<int, size_t> dims;
  std::map<int, Mat> diffs;
  for (int n = 0; n <= cap; ++n) {
    Mat b;
    if (n == 0) {
      b = Mat::identity(x.dims[0]);
    } else {
      Mat stack(0, x.dims[n]);
      for (int i = 0; i < n; ++i) stack = vstack(stack, x.face[n][i]);
      b = kernel(stack);
    }
    // complement: the degenerate subspace
    Mat deg(x.dims[n], 0);
    if (n >= 1)
      for (int j = 0; j < n; ++j) deg = hstack(deg, x.degen[n - 1][j]);
    Mat dbasis = column_basis(deg);
    Mat both = hstack(b, dbasis);
    if (both.rows() != both.cols() || rank(both) != both.cols())
      throw math_error("normalised and degenerate parts do not split level " + std::to_string(n));
    Mat inv = inverse(both);
    out.basis.push_back(b);
    out.project.push_back(inv.block(0, 0, b.cols(), x.dims[n]));
    dims[n] = b.cols();
    if (n >= 1) {
      Scalar sg = n % 2 ? Scalar(-1) : Scalar(1);
      Mat img = sg * (x.face[n][n] * b);
      Mat dn = out.project[n - 1] * img;
      if (!(out.basis[n - 1] * dn == img)) throw math_error("last face leaves the normalised complex");
      diffs[n] = dn;
    }
  }
  out.complex = ChainComplex::from_levels(-1, dims, diffs, "n");
  return out;
}

size_t DKComplex::component(int n, const Surj& eta) const {
  auto& v = surj[n];
  auto it = std::find(v.begin(), v.end(), eta);
  if (it == v.end()) throw math_error("not a surjection at level " + std::to_string(n));
  return it - v.begin();
}

Mat DKComplex::theta_star(const SimplexMap& theta, int n) const {
  check_map(theta, n);
  int m = (int)theta.size() - 1;
  Mat r(X.dims[m], X.dims[n]);
  for (size_t k = 0; k < surj[n].size(); ++k) {
    const Surj& eta = surj[n][k];
    int p = eta.back();
    SimplexMap c = compose_maps(eta, theta);  // [m] -> [p]
    std::vector<int> image;
    for (int v : c)
      if (image.empty() || image.back() != v) image.push_back(v);
    int q = (int)image.size() - 1;
    Surj eps(c.size());
    for (size_t i = 0; i < c.size(); ++i) eps[i] = std::find(image.begin(), image.end(), c[i]) - image.begin();
    size_t dp = A.dim(p);
    if (!dp) continue;
    if (q == p) {
      size_t t = offset[m][component(m, eps)];
      r.put(t, offset[n][k], Mat::identity(dp));
    } else if (q == p - 1 && image.back() == p - 1) {
      size_t t = offset[m][component(m, eps)];
      Mat dd = A.diff(p);
      if (dd.rows() && dd.cols()) r.add(t, offset[n][k], dd, p % 2 ? Scalar(-1) : Scalar(1));
    }
  }
  return r;
}

Vec DKComplex::top(int n, const Vec& v) const { return part(n, surj[n].back(), v); }

Vec DKComplex::place(int n, const Surj& eta, const Vec& a) const {
  Vec v(X.dims[n]);
  size_t o = offset[n][component(n, eta)];
  for (size_t i = 0; i < a.size(); ++i) v[o + i] = a[i];
  return v;
}

Vec DKComplex::part(int n, const Surj& eta, const Vec& v) const {
  size_t k = component(n, eta);
  size_t o = offset[n][k], len = A.dim(eta.back());
  return Vec(v.begin() + o, v.begin() + o + len);
}

DKComplex dk(const ChainComplex& a, int level_cap) {
  if (a.step() != -1) throw math_error("dk expects a chain complex");
  if (a.space().dim() && a.lo() < 0) throw math_error("dk expects a non-negatively graded complex");
  DKComplex d;
  d.A = a;
  auto& x = d.X;
  x.level_cap = level_cap;
  for (int n = 0; n <= level_cap; ++n) {
    d.surj.push_back(surjections(n));
    std::vector<size_t> off;
    size_t total = 0;
    for (auto& eta : d.surj[n]) {
      off.push_back(total);
      total += a.dim(eta.back());
    }
    d.offset.push_back(off);
    x.dims.push_back(total);
  }
  x.face.resize(level_cap + 1);
  x.degen.resize(level_cap + 1);
  for (int n = 0; n <= level_cap; ++n) {
    if (n >= 1)
      for (int i = 0; i <= n; ++i) x.face[n].push_back(d.theta_star(coface(n, i), n));
    if (n < level_cap)
      for (int i = 0; i <= n; ++i) x.degen[n].push_back(d.theta_star(codegen(n, i), n));
  }
  return d;
}

Vec dk_from_tops(const DKComplex& d, int n, const std::function<Vec(const SimplexMap&)>& top_of) {
  // An n-simplex of DK(A) is determined by the top summands of all its
  // injective restrictions; stack those rows and solve.
  if (n < 0 || n > d.X.level_cap) throw math_error("simplicial level beyond cap");
  Mat M(0, d.X.dims[n]);
  Vec F;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    SimplexMap th;
    for (int i = 0; i <= n; ++i)
      if (mask >> i & 1) th.push_back(i);
    int p = (int)th.size() - 1;
    size_t cp = d.A.dim(p);
    if (!cp) continue;
    Mat r = d.theta_star(th, n);
    M = vstack(M, r.block(d.offset[p].back(), 0, cp, r.cols()));
    Vec f = top_of(th);
    if (f.size() != cp) throw math_error("top summand has the wrong size");
    F.insert(F.end(), f.begin(), f.end());
  }
  if (!d.X.dims[n]) return {};
  auto w = ain::solve(M, F);
  if (!w) throw math_error("restriction tops do not form a simplex");
  return *w;
}

Report pi_boundary_check(const DKComplex& d, int n) {
  Report rep;
  if (n <= 0) return rep;
  for (size_t b = 0; b < d.X.dims[n]; ++b) {
    Vec e(d.X.dims[n]);
    e[b] = 1;
    Vec top = d.top(n, e);
    Mat dd = d.A.diff(n);
    Vec lhs = dd.rows() && dd.cols() ? dd * top : Vec(d.A.dim(n - 1));
    Vec rhs(d.A.dim(n - 1));
    for (int j = 0; j <= n; ++j) {
      Vec f = d.top(n - 1, d.X.face[n][j] * e);
      axpy(rhs, j % 2 ? Scalar(-1) : Scalar(1), f);
    }
    if (lhs != rhs) rep.fail(Defect{n, {}, {(int)b}, lhs - rhs});
  }
  return rep;
}

namespace {

Mat phi_matrix(const SimplicialVS& x, const Normalized& nx, int n, std::vector<Surj>& order) {
  order = surjections(n);
  Mat phi(x.dims[n], 0);
  for (auto& eta : order) phi = hstack(phi, x.theta_star(eta, eta.back()) * nx.basis[eta.back()]);
  return phi;
}

}  // namespace

Decomposition decompose(const SimplicialVS& x, const Normalized& nx, int n, const Vec& v) {
  std::vector<Surj> order;
  Mat phi = phi_matrix(x, nx, n, order);
  if (phi.rows() != phi.cols()) throw math_error("degenerate decomposition is not a bijection");
  auto c = ain::solve(phi, v);
  if (!c) throw math_error("element not in the span of degenerate normalised pieces");
  Decomposition d;
  size_t o = 0;
  for (auto& eta : order) {
    size_t len = nx.basis[eta.back()].cols();
    d.parts.push_back({eta, Vec(c->begin() + o, c->begin() + o + len)});
    o += len;
  }
  return d;
}

Vec reassemble(const SimplicialVS& x, const Normalized& nx, int n, const Decomposition& d) {
  Vec v(x.dims[n]);
  for (auto& [eta, c] : d.parts) axpy(v, Scalar(1), x.theta_star(eta, eta.back()) * (nx.basis[eta.back()] * c));
  return v;
}

namespace {

SimplexMap front_map(int s) {
  SimplexMap m(s + 1);
  for (int i = 0; i <= s; ++i) m[i] = i;
  return m;
}

SimplexMap back_map(int s, int t) {
  SimplexMap m(t + 1);
  for (int i = 0; i <= t; ++i) m[i] = s + i;
  return m;
}

Scalar aw_sign(SignMode mode, int n, int s) {
  if (mode == SignMode::classical) return Scalar(1);
  return (n * s + 1) % 2 ? Scalar(-1) : Scalar(1);
}

}  // namespace

std::vector<Vec> aw(const SimplicialVS& x, const Normalized& nx, const SimplicialVS& y, const Normalized& ny, int n,
                    const Vec& z, SignMode mode) {
  std::vector<Vec> out;
  for (int s = 0; s <= n; ++s) {
    int t = n - s;
    Mat fx = nx.project[s] * x.theta_star(front_map(s), n);
    Mat fy = ny.project[t] * y.theta_star(back_map(s, t), n);
    out.push_back(aw_sign(mode, n, s) * (kron(fx, fy) * z));
  }
  return out;
}

std::vector<Shuffle> shuffles(int p, int q) {
  std::vector<Shuffle> out;
  int n = p + q;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != p) continue;
    Shuffle sh;
    for (int i = 0; i < n; ++i) (mask >> i & 1 ? sh.mu : sh.nu).push_back(i);
    std::vector<int> perm = sh.mu;
    perm.insert(perm.end(), sh.nu.begin(), sh.nu.end());
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    sh.sign = inv % 2 ? -1 : 1;
    out.push_back(sh);
  }
  return out;
}

Vec ez(const SimplicialVS& x, const Normalized& nx, const SimplicialVS& y, const Normalized& ny, int p, int q,
       const Vec& a, const Vec& b) {
  Vec xa = nx.basis[p] * a, yb = ny.basis[q] * b;
  Vec out(x.dims[p + q] * y.dims[p + q]);
  for (auto& sh : shuffles(p, q)) {
    Vec u = xa, w = yb;
    int lu = p, lw = q;
    for (int k : sh.nu) u = x.degen[lu++][k] * u;
    for (int k : sh.mu) w = y.degen[lw++][k] * w;
    Vec t(u.size() * w.size());
    for (size_t i = 0; i < u.size(); ++i)
      if (u[i] != 0)
        for (size_t j = 0; j < w.size(); ++j) t[i * w.size() + j] = u[i] * w[j];
    axpy(out, Scalar(sh.sign), t);
  }
  return out;
}

Vec MappingSpace::to_hom(int p, const Vec& a) const { return level_embed[p] * a; }

Vec MappingSpace::from_hom(int p, const Vec& h) const {
  auto r = level_solver[p]->solve(h);
  if (!r) throw math_error("hom element outside the truncated level " + std::to_string(p));
  return *r;
}

MappingSpace mapping_space(const AInfCategory& d, int x, int y, int level_cap) {
  MappingSpace ms;
  ms.x = x;
  ms.y = y;
  ChainComplex hom(d.hom(x, y), d.m1_matrix(x, y), 1);
  Truncation tr = truncate_nonneg(op_complex(hom));
  const auto& A = tr.complex;
  size_t nz = tr.z0.cols(), hd = hom.space().dim();
  ms.embed = Mat(hd, A.space().dim());
  ms.embed.put(0, 0, tr.z0);
  size_t j = nz;
  for (size_t i = 0; i < hd; ++i)
    if (hom.space().degree(i) < 0) ms.embed(i, j++) = 1;
  for (int p = 0; p <= level_cap; ++p) {
    auto& lp = A.level(p);
    Mat e(hd, lp.size());
    for (size_t k = 0; k < lp.size(); ++k) e.set_col(k, ms.embed.col(lp[k]));
    ms.level_embed.push_back(e);
    ms.level_solver.push_back(std::make_shared<Solver>(e));
  }
  ms.dk = dk(A, level_cap);
  return ms;
}

namespace {

// chain map A_s (x) B_t -> C_{s+t}, (beta, alpha) |-> (-1)^{st} alpha o beta
Vec mu(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz, const MappingSpace& mxz, int s,
       int t, const Vec& beta, const Vec& alpha) {
  Vec h = d.m(2, {mxy.x, mxy.y, myz.y}, {myz.to_hom(t, alpha), mxy.to_hom(s, beta)});
  Vec c = mxz.from_hom(s + t, h);
  return (s * t) % 2 ? Scalar(-1) * c : c;
}

void check_triple(const MappingSpace& mxy, const MappingSpace& myz, const MappingSpace& mxz, int n) {
  if (mxy.y != myz.x || mxz.x != mxy.x || mxz.y != myz.y) throw math_error("mapping spaces do not compose");
  int cap = std::min({mxy.dk.X.level_cap, myz.dk.X.level_cap, mxz.dk.X.level_cap});
  if (n < 0 || n > cap) throw math_error("simplicial level beyond cap");
}

// top component of the composite at level p, from p-simplices b and a
Vec compose_top(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz, const MappingSpace& mxz,
                int p, const Vec& b, const Vec& a, SignMode mode) {
  Vec out(mxz.dk.A.dim(p));
  for (int s = 0; s <= p; ++s) {
    int t = p - s;
    Vec beta = mxy.dk.top(s, mxy.dk.theta_star(front_map(s), p) * b);
    Vec alpha = myz.dk.top(t, myz.dk.theta_star(back_map(s, t), p) * a);
    if (is_zero(beta) || is_zero(alpha)) continue;
    axpy(out, aw_sign(mode, p, s), mu(d, mxy, myz, mxz, s, t, beta, alpha));
  }
  return out;
}

}  // namespace

Vec compose_simplices(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz,
                      const MappingSpace& mxz, int n, const Vec& b, const Vec& a, SignMode mode) {
  check_triple(mxy, myz, mxz, n);
  return dk_from_tops(mxz.dk, n, [&](const SimplexMap& th) {
    return compose_top(d, mxy, myz, mxz, (int)th.size() - 1, mxy.dk.theta_star(th, n) * b,
                       myz.dk.theta_star(th, n) * a, mode);
  });
}

Vec compose_simplices_literal(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz,
                              const MappingSpace& mxz, int n, const Vec& b, const Vec& a, SignMode mode) {
  check_triple(mxy, myz, mxz, n);
  SimplicialVS X = mxy.dk.X, Y = myz.dk.X;
  X.level_cap = Y.level_cap = n;
  X.dims.resize(n + 1), Y.dims.resize(n + 1);
  X.face.resize(n + 1), Y.face.resize(n + 1);
  X.degen.resize(n + 1), Y.degen.resize(n + 1);
  X.degen[n].clear(), Y.degen[n].clear();
  SimplicialVS P = product(X, Y);
  Normalized nx = normalized_complex(X), ny = normalized_complex(Y), np = normalized_complex(P);
  Vec z(b.size() * a.size());
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) z[i * a.size() + j] = b[i] * a[j];
  Decomposition dec = decompose(P, np, n, z);
  Vec out(mxz.dk.X.dims[n]);
  for (auto& [eta, c] : dec.parts) {
    int p = eta.back();
    auto pieces = aw(X, nx, Y, ny, p, np.basis[p] * c, mode);
    Vec w(mxz.dk.A.dim(p));
    for (int s = 0; s <= p; ++s) {
      int t = p - s;
      // N(DK(A))_s is the top component; its coordinates are A_s coordinates
      size_t ds = nx.basis[s].cols(), dt = ny.basis[t].cols();
      for (size_t i = 0; i < ds; ++i)
        for (size_t j = 0; j < dt; ++j) {
          const Scalar& coef = pieces[s][i * dt + j];
          if (coef == 0) continue;
          Vec beta = mxy.dk.top(s, nx.basis[s].col(i)), alpha = myz.dk.top(t, ny.basis[t].col(j));
          axpy(w, coef, mu(d, mxy, myz, mxz, s, t, beta, alpha));
        }
    }
    if (!w.empty()) axpy(out, Scalar(1), mxz.dk.theta_star(eta, p) * mxz.dk.place(p, Surj(front_map(p)), w));
  }
  return out;
}

}  // namespace ain
