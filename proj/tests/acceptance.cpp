// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "ainerve/doldkan.hpp"
#include "ainerve/nerve.hpp"
#include "ainerve/pretr.hpp"
#include "ainerve/random.hpp"
#include "ainerve/scat.hpp"

using namespace ain;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) detail = "first failure: " + what;
    pass = false;
  }
};

Vec random_vec(Rng& rng, size_t n, int bound = 3) {
  Vec v(n);
  for (auto& x : v) x = rng.uniform(-bound, bound);
  return v;
}

std::vector<int> random_objects(Rng& rng, int n, int k) {
  std::vector<int> o;
  for (int i = 0; i <= n; ++i) o.push_back(rng.uniform(0, k - 1));
  return o;
}

size_t hget(const std::map<int, size_t>& h, int n) {
  auto it = h.find(n);
  return it == h.end() ? 0 : it->second;
}

// dim ker(out) - rank(in) from explicit level matrices
size_t rank_homology(size_t dim, const Mat& out, const Mat& in) {
  size_t ro = out.rows() && out.cols() ? rank(out) : 0;
  size_t ri = in.rows() && in.cols() ? rank(in) : 0;
  return dim - ro - ri;
}

// ---- 1 -------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  for (int n = 0; n <= 6; ++n) {
    auto c = simplex_category(n);
    o.expect(check_relations(*c, 2 * c->arity_cap()).ok, "relations n=" + std::to_string(n));
    o.expect(check_strict_units(*c).ok, "units n=" + std::to_string(n));
  }
  int identities = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int j = 0; j <= n; ++j) o.expect(check_functor(coface_functor(j, n), 4).ok, "coface functor");
    for (int j = 0; j < n; ++j) o.expect(check_functor(codegeneracy_functor(j, n), 4).ok, "codegeneracy functor");
    auto id = AInfFunctor::identity(simplex_category(n - 1));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j && n >= 2; ++i, ++identities)
        o.expect(functors_equal(compose_functors(coface_functor(j, n), coface_functor(i, n - 1)),
                                compose_functors(coface_functor(i, n), coface_functor(j - 1, n - 1))),
                 "d_j d_i = d_i d_{j-1}");
    for (int j = 0; j < n && n <= 4; ++j)
      for (int i = 0; i <= j; ++i, ++identities)
        o.expect(functors_equal(compose_functors(codegeneracy_functor(j, n), codegeneracy_functor(i, n + 1)),
                                compose_functors(codegeneracy_functor(i, n), codegeneracy_functor(j + 1, n + 1))),
                 "s_j s_i = s_i s_{j+1}");
    for (int j = 0; j < n; ++j) {
      identities += 2;
      o.expect(functors_equal(compose_functors(codegeneracy_functor(j, n), coface_functor(j, n)), id), "s_j d_j");
      o.expect(functors_equal(compose_functors(codegeneracy_functor(j, n), coface_functor(j + 1, n)), id),
               "s_j d_{j+1}");
      for (int i = 0; i <= n; ++i) {
        if (i < j) {
          ++identities;
          o.expect(functors_equal(compose_functors(codegeneracy_functor(j, n), coface_functor(i, n)),
                                  compose_functors(coface_functor(i, n - 1), codegeneracy_functor(j - 1, n - 1))),
                   "s_j d_i, i < j");
        }
        if (i > j + 1) {
          ++identities;
          o.expect(functors_equal(compose_functors(codegeneracy_functor(j, n), coface_functor(i, n)),
                                  compose_functors(coface_functor(i - 1, n - 1), codegeneracy_functor(j, n - 1))),
                   "s_j d_i, i > j+1");
        }
      }
    }
  }
  if (o.pass) o.detail = "n <= 6 relations and units; " + std::to_string(identities) + " cosimplicial identities";
  return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  Rng g(2);
  auto D = random_chain_dg(g, 3, 0, 2, 2, false);
  auto c = D.cat;
  int filled = 0;
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 4;
    int p = 1 + g.uniform(0, n - 2);
    auto s = random_simplex(*c, random_objects(g, n, 3), g);
    auto h = horn_of(s, p);
    auto f = fill_inner_horn(*c, h);
    bool ok = validate_simplex(*c, f).ok;
    for (auto& [k, v] : h.components) ok = ok && f.at(k) == v;
    for (int j = 0; j <= n; ++j)
      if (j != p) ok = ok && face(c, f, j) == face(c, s, j);
    o.expect(ok, "horn " + std::to_string(t));
    filled += ok;
  }
  o.detail = o.pass ? std::to_string(filled) + "/100 horns filled with zero defect" : o.detail;
  return o;
}

// ---- 3 -------------------------------------------------------------------

// face table: components of d_j in closed form
NerveSimplex face_table(const NerveSimplex& s, int j) {
  NerveSimplex out;
  out.n = s.n - 1;
  for (int i = 0; i < s.n; ++i) out.objects.push_back(s.objects[delta_map(j, i)]);
  for (auto& str : increasing_strings(out.n)) {
    std::vector<int> img;
    if (j > str.back()) {
      img = str;
    } else {
      size_t p = 0;
      while (str[p] < j) ++p;
      for (size_t q = 0; q < str.size(); ++q) img.push_back(q < p ? str[q] : str[q] + 1);
    }
    out.components[str] = s.at(img);
  }
  return out;
}

// degeneracy table; nullopt where no case applies, empty Vec for zero
std::optional<Vec> degeneracy_table(const NerveSimplex& s, int j, const std::vector<int>& str, const Vec& unit) {
  int k = static_cast<int>(str.size()) - 1;
  auto shift = [&](size_t from) {
    std::vector<int> v;
    for (size_t q = 0; q < str.size(); ++q) v.push_back(q < from ? str[q] : str[q] - 1);
    return v;
  };
  if (k == 1) {
    int i0 = str[0], i1 = str[1];
    if (j <= i0 - 1) return s.at(shift(0));
    if (i0 < j && j < i1 - 1) return s.at(shift(1));
    if (i0 == j && i1 == j + 1) return unit;
    if (j >= i1) return s.at(str);
    return std::nullopt;
  }
  if (j <= str[0] - 1) return s.at(shift(0));
  for (int p = 1; p < k; ++p)
    if (str[p] < j && j < str[p + 1] - 1) return s.at(shift(p + 1));
  for (int p = 0; p < k; ++p)
    if (str[p] == j && str[p + 1] == j + 1) return Vec();
  if (j >= str[k]) return s.at(str);
  return std::nullopt;
}

Outcome criterion3() {
  Outcome o;
  Rng g(3);
  auto D = random_chain_dg(g, 3, 0, 2, 1, false);
  auto c = D.cat;
  int strings = 0;
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 5;
    auto s = random_simplex(*c, random_objects(g, n, 3), g);
    std::string tag = "simplex " + std::to_string(t) + " n=" + std::to_string(n);
    for (int j = 0; j <= n; ++j) {
      auto dj = face(c, s, j);
      o.expect(dj == face_table(s, j), tag + " face table d_" + std::to_string(j));
      strings += static_cast<int>(dj.components.size());
      for (int i = 0; i < j && n >= 2; ++i)
        o.expect(face(c, dj, i) == face(c, face(c, s, i), j - 1), tag + " d_i d_j");
    }
    for (int j = 0; j <= n; ++j) {
      auto sj = degeneracy(c, s, j);
      o.expect(face(c, sj, j) == s && face(c, sj, j + 1) == s, tag + " d_j s_j = d_{j+1} s_j = id");
      for (int i = 0; i <= j && n <= 4; ++i)
        o.expect(degeneracy(c, sj, i) == degeneracy(c, degeneracy(c, s, i), j + 1), tag + " s_i s_j");
      for (int i = 0; i <= n + 1; ++i) {
        if (i < j) o.expect(face(c, sj, i) == degeneracy(c, face(c, s, i), j - 1), tag + " d_i s_j, i < j");
        if (i > j + 1) o.expect(face(c, sj, i) == degeneracy(c, face(c, s, i - 1), j), tag + " d_i s_j, i > j+1");
      }
      for (auto& str : increasing_strings(n + 1)) {
        auto want = degeneracy_table(s, j, str, *c->unit(s.objects[j]));
        if (!want) continue;
        ++strings;
        if (want->empty())
          o.expect(is_zero(sj.at(str)), tag + " degeneracy table zero case");
        else
          o.expect(sj.at(str) == *want, tag + " degeneracy table");
      }
    }
  }
  if (o.pass) o.detail = "50 simplices, n <= 5; tables matched on " + std::to_string(strings) + " strings";
  return o;
}

// ---- 4 -------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  Rng g(4);
  auto D = random_chain_dg(g, 3, 0, 2, 2, false);
  auto c = D.cat;
  int terms = 0;
  for (int t = 0; t < 30; ++t) {
    int n = 2 + t % 3;
    auto s = t % 2 ? random_simplex(*c, random_objects(g, n, 3), g)
                   : fill_inner_horn(*c, horn_of(random_simplex(*c, random_objects(g, n, 3), g), 1));
    for (auto& str : increasing_strings(n)) {
      int k = static_cast<int>(str.size()) - 1;
      auto x = [&](int i) { return s.objects[str[i]]; };
      Vec rhs(s.at(str).size());
      for (int j = 1; j < k; ++j) {
        auto sub = str;
        sub.erase(sub.begin() + j);
        rhs = rhs + sign(j - 1) * s.at(sub);
      }
      for (int j = 1; j < k; ++j) {
        std::vector<int> lo(str.begin(), str.begin() + j + 1), hi(str.begin() + j, str.end());
        rhs = rhs + sign(1 + k * (j - 1)) * D.compose(x(0), x(j), x(k), s.at(hi), s.at(lo));
      }
      o.expect(D.d(x(0), x(k), s.at(str)) == rhs, "structure equation, string " + string_key(str));
      o.expect(is_zero(simplex_defect(*c, s, str)), "validator defect, string " + string_key(str));
      ++terms;
    }
  }
  if (o.pass) o.detail = "equation and zero defect on " + std::to_string(terms) + " strings";
  return o;
}

// ---- 5 -------------------------------------------------------------------

Vec moore_d(const SimplicialVS& x, int n, const Vec& v) {
  Vec out(x.dims[n - 1]);
  for (int i = 0; i <= n; ++i) axpy(out, i % 2 ? Scalar(-1) : Scalar(1), x.face[n][i] * v);
  return out;
}

Mat moore_matrix(const SimplicialVS& x, int n) {
  Mat m(x.dims[n - 1], x.dims[n]);
  for (int i = 0; i <= n; ++i) m = m + (i % 2 ? Scalar(-1) : Scalar(1)) * x.face[n][i];
  return m;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    ChainComplex A = random_chain(rng, 0, 5, 2);
    int cap = 5;
    DKComplex D = dk(A, cap);
    Normalized N = normalized_complex(D.X);
    std::string tag = "complex " + std::to_string(trial);
    o.expect(check_simplicial_identities(D.X).ok, tag + " simplicial identities");
    o.expect(D.X.dims[2] == A.dim(0) + 2 * A.dim(1) + A.dim(2), tag + " dim DK(A)_2");
    for (int n = 0; n <= cap; ++n) {
      o.expect(N.complex.dim(n) == A.dim(n), tag + " dim N_n");
      Mat t(A.dim(n), N.basis[n].cols());
      for (size_t j = 0; j < t.cols(); ++j) t.set_col(j, D.top(n, N.basis[n].col(j)));
      if (n >= 1 && A.dim(n) && A.dim(n - 1)) {
        Mat tl(A.dim(n - 1), N.basis[n - 1].cols());
        for (size_t j = 0; j < tl.cols(); ++j) tl.set_col(j, D.top(n - 1, N.basis[n - 1].col(j)));
        o.expect(tl * N.complex.diff(n) == A.diff(n) * t, tag + " differential");
      }
      for (int r = 0; r < 2; ++r) {
        Vec x = random_vec(rng, D.X.dims[n]);
        o.expect(reassemble(D.X, N, n, decompose(D.X, N, n, x)) == x, tag + " decompose/reassemble");
      }
    }
    // homotopy groups from the Moore complex against H(A) by ranks
    for (int n = 0; n < cap; ++n) {
      Mat out = n >= 1 ? moore_matrix(D.X, n) : Mat(0, D.X.dims[0]);
      Mat in = moore_matrix(D.X, n + 1);
      size_t pi = rank_homology(D.X.dims[n], out, in);
      Mat aout = n >= 1 && A.dim(n) ? A.diff(n) : Mat(0, A.dim(n));
      Mat ain = A.dim(n + 1) ? A.diff(n + 1) : Mat(A.dim(n), 0);
      o.expect(pi == rank_homology(A.dim(n), aout, ain), tag + " pi_" + std::to_string(n));
    }
  }
  if (o.pass) o.detail = "50 complexes, levels <= 5";
  return o;
}

// ---- 6 -------------------------------------------------------------------

std::vector<Vec> tensor_d(const Normalized& na, const Normalized& nb, int n, const std::vector<Vec>& z) {
  std::vector<Vec> out;
  for (int s = 0; s < n; ++s) out.push_back(Vec(na.basis[s].cols() * nb.basis[n - 1 - s].cols()));
  for (int s = 0; s <= n; ++s) {
    int t = n - s;
    size_t ds = na.basis[s].cols(), dt = nb.basis[t].cols();
    for (size_t i = 0; i < ds; ++i)
      for (size_t j = 0; j < dt; ++j) {
        const Scalar& c = z[s][i * dt + j];
        if (c == 0) continue;
        if (s >= 1) {
          Vec da = na.complex.diff(s).cols() ? na.complex.diff(s).col(i) : Vec();
          for (size_t k = 0; k < da.size(); ++k) out[s - 1][k * dt + j] += c * da[k];
        }
        if (t >= 1) {
          Vec db = nb.complex.diff(t).cols() ? nb.complex.diff(t).col(j) : Vec();
          size_t dt2 = nb.basis[t - 1].cols();
          Scalar sg = s % 2 ? Scalar(-1) : Scalar(1);
          for (size_t k = 0; k < db.size(); ++k) out[s][i * dt2 + k] += sg * c * db[k];
        }
      }
  }
  return out;
}

Outcome criterion6(SignMode mode) {
  Outcome o;
  Rng rng(6);
  int checked = 0, printed_fail = 0, printed_total = 0;
  SignMode other = mode == SignMode::classical ? SignMode::paper : SignMode::classical;
  for (int trial = 0; trial < 6; ++trial) {
    int cap = 4;
    ChainComplex A = random_chain(rng, 0, cap, 1), B = random_chain(rng, 0, cap, 1);
    DKComplex a = dk(A, cap), b = dk(B, cap);
    Normalized na = normalized_complex(a.X), nb = normalized_complex(b.X);
    for (int n = 0; n <= 4; ++n)
      for (int p = 0; p <= n; ++p) {
        int q = n - p;
        size_t dp = na.basis[p].cols(), dq = nb.basis[q].cols();
        if (!dp || !dq) continue;
        Vec x = random_vec(rng, dp), y = random_vec(rng, dq);
        Vec z = ez(a.X, na, b.X, nb, p, q, x, y);
        auto back = aw(a.X, na, b.X, nb, n, z, mode);
        for (int s = 0; s <= n; ++s) {
          Vec want(back[s].size());
          if (s == p)
            for (size_t i = 0; i < dp; ++i)
              for (size_t j = 0; j < dq; ++j) want[i * dq + j] = x[i] * y[j];
          o.expect(back[s] == want, "aw o ez at level " + std::to_string(n));
        }
        ++checked;
        ++printed_total;
        if (aw(a.X, na, b.X, nb, n, z, other)[p] != back[p]) ++printed_fail;
      }
    // chain maps
    if (trial < 3) {
      SimplicialVS prod = product(a.X, b.X);
      Normalized np = normalized_complex(prod);
      for (int n = 1; n <= 3; ++n) {
        for (size_t k = 0; k < np.basis[n].cols(); ++k) {
          Vec z = np.basis[n].col(k);
          o.expect(tensor_d(na, nb, n, aw(a.X, na, b.X, nb, n, z, mode)) ==
                       aw(a.X, na, b.X, nb, n - 1, moore_d(prod, n, z), mode),
                   "aw is a chain map");
        }
        for (int p = 0; p <= n; ++p) {
          int q = n - p;
          size_t dp = na.basis[p].cols(), dq = nb.basis[q].cols();
          if (!dp || !dq) continue;
          Vec x = random_vec(rng, dp), y = random_vec(rng, dq);
          Vec lhs = moore_d(prod, n, ez(a.X, na, b.X, nb, p, q, x, y));
          std::vector<Vec> z(n + 1);
          for (int s = 0; s <= n; ++s) z[s] = Vec(na.basis[s].cols() * nb.basis[n - s].cols());
          for (size_t i = 0; i < dp; ++i)
            for (size_t j = 0; j < dq; ++j) z[p][i * dq + j] = x[i] * y[j];
          auto dz = tensor_d(na, nb, n, z);
          Vec rhs(prod.dims[n - 1]);
          for (int s = 0; s < n; ++s) {
            size_t ds = na.basis[s].cols(), dt = nb.basis[n - 1 - s].cols();
            for (size_t i = 0; i < ds; ++i)
              for (size_t j = 0; j < dt; ++j)
                if (dz[s][i * dt + j] != 0) {
                  Vec ei(ds), ej(dt);
                  ei[i] = 1, ej[j] = 1;
                  axpy(rhs, dz[s][i * dt + j], ez(a.X, na, b.X, nb, s, n - 1 - s, ei, ej));
                }
          }
          o.expect(lhs == rhs, "ez is a chain map");
        }
      }
    }
  }
  std::string m = mode == SignMode::classical ? "classical" : "paper";
  std::string om = mode == SignMode::classical ? "paper" : "classical";
  std::string note = "mode " + m + "; " + std::to_string(checked) + " tensors; " + om + " sign differs on " +
                     std::to_string(printed_fail) + "/" + std::to_string(printed_total);
  o.detail = o.pass ? note : note + "; " + o.detail;
  return o;
}

// ---- 7 -------------------------------------------------------------------

unsigned long long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

Outcome criterion7() {
  Outcome o;
  for (int m = 2; m <= 6; ++m) {
    auto c = cube_decomposition(m);
    std::string tag = "m=" + std::to_string(m);
    o.expect(c.cells.size() == factorial(m - 1), tag + " top cells");
    o.expect(c.realized.count(0) == (1ull << (m - 1)), tag + " vertices");
    o.expect(c.boundary.size() == static_cast<size_t>(2 * (m - 1)), tag + " facets");
    if (m <= 5) o.expect(cube_matches_poset(c).ok, tag + " poset nerve");
  }
  auto lines = gluing_lines(cube_decomposition(4));
  std::set<std::string> printed{"d_1(Id) ~ d_1((12))",     "d_2(Id) ~ d_2((23))",     "d_2((12)) ~ d_2((123))",
                                "d_1((23)) ~ d_1((132))", "d_1((13)) ~ d_1((123))", "d_2((13)) ~ d_2((132))"};
  std::set<std::string> sym;
  for (auto& l : printed) {
    auto p = l.find(" ~ ");
    sym.insert(l);
    sym.insert(l.substr(p + 3) + " ~ " + l.substr(0, p));
  }
  std::set<std::string> got(lines.begin(), lines.end());
  o.expect(got.size() == 6, "six identifications for m=4");
  for (auto& l : got) o.expect(sym.count(l) > 0, "unexpected identification " + l);
  if (o.pass) o.detail = "m <= 6 counts, m = 4 identifications, poset nerve for m <= 5";
  return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  int count = 0, natural = 0;
  for (std::uint64_t seed = 80; count < 25; ++seed) {
    Rng rng(seed);
    auto D = random_chain_dg(rng, 3, 0, 3, 2, false);
    MapCache maps(D.cat, 5);
    for (int n = 1; n <= 4 && count < 25; ++n, ++count) {
      auto objs = random_objects(rng, n, 3);
      auto s = random_big_simplex(maps, objs, rng);
      std::string tag = "big simplex " + std::to_string(count) + " n=" + std::to_string(n);
      o.expect(validate_big_simplex(maps, s).ok, tag + " validator");
      auto small = big_to_small(maps, s);
      o.expect(validate_simplex(*D.cat, small).ok, tag + " small validator");
      for (auto& str : increasing_strings(n, 3)) {
        if (str.size() != 3) continue;
        auto& M = maps.get(objs[str[0]], objs[str[2]]);
        Flag f{{str[0], str[2]}, str};
        o.expect(small.at(str) == Scalar(-1) * M.to_hom(1, M.dk.top(1, s.g.at(f))), tag + " k=2 is -pi_1");
      }
      for (int j = 0; j <= n; ++j) {
        if (n >= 2) o.expect(big_to_small(maps, big_face(s, j)) == face(D.cat, small, j), tag + " face");
        if (n <= 3)
          o.expect(big_to_small(maps, big_degeneracy(maps, s, j)) == degeneracy(D.cat, small, j), tag + " degeneracy");
      }
      if (n <= 3) {
        o.expect(comparison_naturality_check(maps, s).ok, tag + " naturality");
        ++natural;
      }
    }
  }
  if (o.pass) o.detail = "25 big simplices, n <= 4";
  return o;
}

// ---- 9 -------------------------------------------------------------------

Vec random_closed_tw(Rng& rng, const TwistedComplex& k, const TwistedComplex& k2, int deg) {
  ChainComplex h = tw_hom(k, k2);
  Vec v(h.space().dim());
  auto& lv = h.level(deg);
  if (lv.empty()) return v;
  Mat z = kernel(h.diff(deg));
  for (size_t c = 0; c < z.cols(); ++c) {
    Scalar a(rng.uniform(-2, 2));
    for (size_t i = 0; i < lv.size(); ++i) v[lv[i]] += a * z(i, c);
  }
  return v;
}

TwistedComplex random_tw(Rng& rng, const ChainDgCategory& d) {
  int n = static_cast<int>(d.size());
  int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1), z = rng.uniform(0, n - 1);
  TwistedComplex ex = embed_object(d.cat, x), ey = embed_object(d.cat, y), ez = embed_object(d.cat, z);
  TwistedComplex c = cone_tw(ex, ey, {{{0, 0}, random_closed(rng, d, x, y, 0)}});
  if (rng.chance(1, 3)) return c;
  TwMorphism g = tw_unpack(c, ez, random_closed_tw(rng, c, ez, 0));
  return rng.chance(1, 2) ? cone_tw(c, ez, g) : shift_tw(cone_tw(c, ez, g), rng.uniform(-1, 1));
}

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

Outcome criterion9() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(900 + seed);
    ChainDgCategory d = random_chain_dg(rng, 3, -1, 2, 2, false);
    std::string tag = "input " + std::to_string(seed);
    TwistedComplex k = random_tw(rng, d), k2 = random_tw(rng, d);
    o.expect(validate_twisted(k).ok && validate_twisted(k2).ok, tag + " generated complexes");
    for (int n = -2; n <= 2; ++n) o.expect(validate_twisted(shift_tw(k, n)).ok, tag + " shift");
    TwMorphism f = tw_unpack(k, k2, random_closed_tw(rng, k, k2, 0));
    TwistedComplex c = cone_tw(k, k2, f);
    o.expect(validate_twisted(c).ok, tag + " cone");
    for (auto* h : {&k, &k2, &c}) {
      ChainComplex t = tw_hom(*h, *h);
      o.expect((t.d() * t.d()).is_zero(), tag + " tw_hom d^2");
    }
    ChainComplex kk = tw_hom(k, c);
    o.expect((kk.d() * kk.d()).is_zero(), tag + " tw_hom d^2");
    int x = rng.uniform(0, 2), y = rng.uniform(0, 2), z = rng.uniform(0, 2);
    Vec g = random_closed(rng, d, x, y, 0);
    ConeHom ch = cone_hom_matrices(d, x, y, g, z);
    TwistedComplex cc = cone_tw(embed_object(d.cat, x), embed_object(d.cat, y), {{{0, 0}, g}});
    TwistedComplex ez = embed_object(d.cat, z);
    o.expect(swapped_equal(ch.from_cone, tw_hom(cc, ez), d.homs[y][z].space().dim(), d.homs[x][z].space().dim()),
             tag + " cone_hom from cone");
    o.expect(swapped_equal(ch.to_cone, tw_hom(ez, cc), d.homs[z][y].space().dim(), d.homs[z][x].space().dim()),
             tag + " cone_hom to cone");
  }
  if (o.pass) o.detail = "50 inputs";
  return o;
}

// ---- 10 ------------------------------------------------------------------

// levelwise homology of tau>=0 of X1 (+) X2 (+) X0[1], d(a, b, c) = (da, db, f1 a - f2 b - dc)
std::map<int, size_t> fiber_oracle(const Cospan& c) {
  auto dim = [](const ChainComplex& x, int n) { return n < 0 ? size_t(0) : x.dim(n); };
  auto block = [](const ChainComplex& src, const ChainComplex& dst, const Mat& f, int n, int m) {
    // rows of level m in dst, columns of level n in src
    auto& ls = src.level(n);
    auto& ld = dst.level(m);
    Mat out(ld.size(), ls.size());
    for (size_t i = 0; i < ld.size(); ++i)
      for (size_t j = 0; j < ls.size(); ++j) out(i, j) = f(ld[i], ls[j]);
    return out;
  };
  auto diffm = [&](const ChainComplex& x, int n) {  // level n -> n-1
    if (n <= 0 || !x.dim(n) || !x.dim(n - 1)) return Mat(dim(x, n - 1), dim(x, n));
    return x.diff(n);
  };
  // total differential level n -> n-1
  auto total = [&](int n) {
    size_t r1 = dim(c.x1, n - 1), r2 = dim(c.x2, n - 1), r0 = dim(c.x0, n);
    size_t c1 = dim(c.x1, n), c2 = dim(c.x2, n), c0 = dim(c.x0, n + 1);
    Mat m(r1 + r2 + r0, c1 + c2 + c0);
    if (n >= 1) {
      m.put(0, 0, diffm(c.x1, n));
      m.put(r1, c1, diffm(c.x2, n));
    }
    if (r0) {
      if (c1) m.put(r1 + r2, 0, block(c.x1, c.x0, c.f1, n, n));
      if (c2) m.add(r1 + r2, c1, block(c.x2, c.x0, c.f2, n, n), Scalar(-1));
      if (c0) m.add(r1 + r2, c1 + c2, diffm(c.x0, n + 1), Scalar(-1));
    }
    return m;
  };
  std::map<int, size_t> h;
  for (int n = 0; n <= 5; ++n) {
    size_t d = dim(c.x1, n) + dim(c.x2, n) + dim(c.x0, n + 1);
    // at level 0 the outgoing map lands in X0_0: tau>=0 keeps its kernel
    h[n] = rank_homology(d, total(n), total(n + 1));
  }
  return h;
}

Outcome criterion10() {
  Outcome o;
  ChainComplex zero = ChainComplex::from_levels(-1, {}, {}, "o");
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(1000 + seed);
    std::string tag = "case " + std::to_string(seed);
    ChainDgCategory d = random_chain_dg(rng, 3, -3, 0, 2, false);
    ChainComplex x = op_complex(d.objects[0]);
    size_t n = x.space().dim();
    HomotopyPullback om = homotopy_pullback({zero, x, zero, Mat(n, 0), Mat(n, 0)});
    auto hx = homology(x), ho = homology(om.complex);
    for (int k = 0; k <= 4; ++k) o.expect(hget(ho, k) == hget(hx, k + 1), tag + " loop space H_" + std::to_string(k));
    // path complex of a chain map
    Vec f = random_closed(rng, d, 1, 0, 0);
    ChainComplex a = op_complex(d.objects[1]);
    PathComplex p = path_complex(a, x, d.to_matrix(1, 0, f));
    auto hp = homology(p.complex), ha = homology(a);
    for (int k = -1; k <= 5; ++k) o.expect(hget(hp, k) == hget(ha, k), tag + " H(P(f)) = H(A)");
    o.expect(p.p * p.i == d.to_matrix(1, 0, f), tag + " p o i = f");
    // cospan against the oracle
    Vec f1 = random_closed(rng, d, 1, 0, 0), f2 = random_closed(rng, d, 2, 0, 0);
    Cospan c{op_complex(d.objects[1]), x, op_complex(d.objects[2]), d.to_matrix(1, 0, f1), d.to_matrix(2, 0, f2)};
    auto hb = homology(homotopy_pullback(c).complex);
    auto oracle = fiber_oracle(c);
    for (int k = 0; k <= 5; ++k) o.expect(hget(hb, k) == oracle[k], tag + " pullback H_" + std::to_string(k));
  }
  if (o.pass) o.detail = "25 loop spaces, path complexes and cospans";
  return o;
}

// ---- 11 ------------------------------------------------------------------

bool acyclic(const ChainComplex& c) {
  for (auto& [n, k] : homology(c))
    if (k) return false;
  return true;
}

Outcome criterion11() {
  Outcome o;
  Rng rng(11);
  ChainDgCategory d = random_chain_dg(rng, 4, -1, 2, 2, true);
  int n = static_cast<int>(d.size());
  o.expect(d.zero_object >= 0, "zero object present");
  if (d.zero_object >= 0)
    for (int x = 0; x < n; ++x)
      o.expect(acyclic(d.homs[x][d.zero_object]) && acyclic(d.homs[d.zero_object][x]), "zero-object homs acyclic");
  int passes = 0;
  for (int t = 0; t < 50; ++t) {
    int x = rng.uniform(0, n - 1), y = rng.uniform(0, n - 1), z = rng.uniform(0, n - 1);
    Vec f = random_closed(rng, d, x, y, 0);
    std::string tag = "pair " + std::to_string(t);
    bool fc = fiber_cofiber_check(d, x, y, f, z).ok;
    bool sw = stability_witnesses(d, x, y, f).ok;
    bool les = les_check(d, x, y, f, z).ok;
    o.expect(fc, tag + " fiber/cofiber quasi-isomorphisms");
    o.expect(sw, tag + " witness identities");
    o.expect(les, tag + " long exact sequence");
    passes += fc && sw && les;
  }
  o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(passes) + "/50 (f, Z) pairs";
  return o;
}

// ---- 12 ------------------------------------------------------------------

Outcome criterion12() {
  Outcome o;
  int pairs = 0;
  for (std::uint64_t seed = 120; seed < 126; ++seed) {
    Rng rng(seed);
    ChainDgCategory d = random_chain_dg(rng, 3, -1, 2, 2, seed % 2 == 0);
    int n = static_cast<int>(d.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y, ++pairs) {
        const ChainComplex& h = d.homs[x][y];
        size_t d0 = h.dim(0);
        Mat out = d0 && h.dim(1) ? h.diff(0) : Mat(0, d0);
        Mat in = d0 && h.dim(-1) ? h.diff(-1) : Mat(d0, 0);
        o.expect(h0_dim_via_nerve(*d.cat, x, y) == rank_homology(d0, out, in),
                 "pair (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " object pairs over 6 categories";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  SignMode mode = SignMode::classical;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--sign-mode=paper") mode = SignMode::paper;
  struct Item {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Item> items = {
      {1, "A-infinity axioms and cosimplicial identities", criterion1},
      {2, "inner horn filling", criterion2},
      {3, "simplicial identities and case tables", criterion3},
      {4, "small nerve structure equation", criterion4},
      {5, "Dold-Kan round trip", criterion5},
      {6, "Alexander-Whitney / Eilenberg-Zilber", [mode] { return criterion6(mode); }},
      {7, "cube combinatorics", criterion7},
      {8, "big-to-small comparison", criterion8},
      {9, "twisted complexes", criterion9},
      {10, "homotopy limits", criterion10},
      {11, "stability", criterion11},
      {12, "H0 identification", criterion12},
  };
  int failed = 0;
  for (auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", it.id, it.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
