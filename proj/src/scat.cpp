#include "ainerve/scat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ain {

std::string subset_key(const Subset& s) {
  std::string k;
  for (size_t i = 0; i < s.size(); ++i) k += (i ? "," : "") + std::to_string(s[i]);
  return k;
}

std::string flag_key(const Flag& f) {
  std::string k;
  for (size_t i = 0; i < f.size(); ++i) k += (i ? "|" : "") + subset_key(f[i]);
  return k;
}

Flag parse_flag(const std::string& key) {
  Flag f;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '|')) {
    Subset s;
    std::stringstream ps(part);
    std::string num;
    while (std::getline(ps, num, ',')) {
      try {
        s.push_back(std::stoi(num));
      } catch (const std::exception&) {
        throw math_error("bad flag key '" + key + "'");
      }
    }
    if (s.empty() || !std::is_sorted(s.begin(), s.end())) throw math_error("bad flag key '" + key + "'");
    f.push_back(s);
  }
  if (f.empty()) throw math_error("empty flag key");
  return f;
}

Report check_face_identities(const FiniteSimplicialSet& s) {
  Report rep;
  for (int d = 2; d <= s.dim(); ++d)
    for (size_t x = 0; x < s.count(d); ++x)
      for (int j = 0; j <= d; ++j)
        for (int i = 0; i < j; ++i) {
          size_t lhs = s.faces[d - 1][s.faces[d][x][j]][i];
          size_t rhs = s.faces[d - 1][s.faces[d][x][i]][j - 1];
          if (lhs != rhs) rep.fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " on " + s.labels[d][x]);
        }
  return rep;
}

std::vector<Subset> interval_subsets(int i, int j) {
  std::vector<Subset> out;
  if (i > j) return out;
  if (i == j) return {{i}};
  int inner = j - i - 1;
  for (unsigned mask = 0; mask < (1u << inner); ++mask) {
    Subset s{i};
    for (int b = 0; b < inner; ++b)
      if (mask >> b & 1) s.push_back(i + 1 + b);
    s.push_back(j);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

bool proper_subset(const Subset& a, const Subset& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<Flag> strict_flags(int i, int j, int len) {
  std::vector<Flag> out;
  auto subs = interval_subsets(i, j);
  Flag cur;
  std::function<void()> rec = [&] {
    if ((int)cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (auto& s : subs)
      if (cur.empty() || proper_subset(cur.back(), s)) {
        cur.push_back(s);
        rec();
        cur.pop_back();
      }
  };
  if (len >= 1) rec();
  return out;
}

FiniteSimplicialSet poset_interval(int i, int j, int n) {
  if (i < 0 || j > n) throw math_error("interval outside [0, n]");
  FiniteSimplicialSet s;
  if (i > j) return s;
  std::map<std::string, size_t> index;
  for (int len = 1;; ++len) {
    auto flags = strict_flags(i, j, len);
    if (flags.empty()) break;
    int d = len - 1;
    s.labels.emplace_back();
    s.faces.emplace_back();
    for (auto& f : flags) {
      std::vector<size_t> fc;
      if (d >= 1)
        for (int t = 0; t <= d; ++t) {
          Flag g = f;
          g.erase(g.begin() + t);
          fc.push_back(index.at(flag_key(g)));
        }
      index[flag_key(f)] = s.labels[d].size();
      s.labels[d].push_back(flag_key(f));
      s.faces[d].push_back(fc);
    }
  }
  return s;
}

std::string permutation_name(const std::vector<int>& sigma) {
  int k = (int)sigma.size();
  std::vector<bool> seen(k + 1, false);
  std::string out;
  for (int a = 1; a <= k; ++a) {
    if (seen[a] || sigma[a - 1] == a) continue;
    std::string cyc = "(";
    for (int b = a; !seen[b]; b = sigma[b - 1]) {
      seen[b] = true;
      cyc += std::to_string(b);
    }
    out += cyc + ")";
  }
  return out.empty() ? "Id" : out;
}

namespace {

struct UnionFind {
  std::vector<size_t> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  size_t find(size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

Flag sub_flag(const Flag& f, unsigned mask) {
  Flag g;
  for (size_t t = 0; t < f.size(); ++t)
    if (mask >> t & 1) g.push_back(f[t]);
  return g;
}

}  // namespace

CubeDecomposition cube_decomposition(int m) {
  if (m < 2) throw math_error("cube decomposition needs m >= 2");
  CubeDecomposition c;
  c.m = m;
  std::vector<int> sigma(m - 1);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    CubeCell cell{sigma, permutation_name(sigma), {}};
    Subset cur{0, m};
    cell.chain.push_back(cur);
    for (int v : sigma) {
      cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
      cell.chain.push_back(cur);
    }
    c.cells.push_back(cell);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  auto cell_of = [&](const std::vector<int>& s) {
    for (size_t k = 0; k < c.cells.size(); ++k)
      if (c.cells[k].sigma == s) return k;
    throw math_error("unknown permutation");
  };
  // d_i drops {0, sigma(1..i), m}; the other cell containing that face swaps sigma(i), sigma(i+1)
  for (size_t a = 0; a < c.cells.size(); ++a)
    for (int i = 1; i <= m - 2; ++i) {
      auto s = c.cells[a].sigma;
      std::swap(s[i - 1], s[i]);
      size_t b = cell_of(s);
      if (a < b) c.internal.push_back({a, b, i});
    }
  c.boundary.resize(2 * (m - 1));
  for (size_t a = 0; a < c.cells.size(); ++a) {
    c.boundary[c.cells[a].sigma.front() - 1].push_back({a, 0});
    c.boundary[m - 1 + c.cells[a].sigma.back() - 1].push_back({a, m - 1});
  }
  // realise: faces (cell, vertex mask) modulo the gluing
  size_t nmask = 1u << m;
  UnionFind uf(c.cells.size() * nmask);
  for (auto& gl : c.internal)
    for (unsigned mask = 1; mask < nmask; ++mask)
      if (!(mask >> gl.face & 1)) uf.unite(gl.a * nmask + mask, gl.b * nmask + mask);
  std::map<size_t, std::string> label;
  for (size_t a = 0; a < c.cells.size(); ++a)
    for (unsigned mask = 1; mask < nmask; ++mask) {
      size_t r = uf.find(a * nmask + mask);
      std::string k = flag_key(sub_flag(c.cells[a].chain, mask));
      auto [it, fresh] = label.emplace(r, k);
      if (!fresh && it->second != k) c.consistent = false;
    }
  auto& R = c.realized;
  R.labels.assign(m, {});
  R.faces.assign(m, {});
  std::map<size_t, size_t> pos;
  for (int d = 0; d < m; ++d)
    for (size_t a = 0; a < c.cells.size(); ++a)
      for (unsigned mask = 1; mask < nmask; ++mask) {
        if (__builtin_popcount(mask) != d + 1) continue;
        size_t r = uf.find(a * nmask + mask);
        if (pos.count(r)) continue;
        std::vector<size_t> fc;
        if (d >= 1) {
          int t = 0;
          for (int v = 0; v < m; ++v)
            if (mask >> v & 1) {
              fc.push_back(pos.at(uf.find(a * nmask + (mask & ~(1u << v)))));
              ++t;
            }
        }
        pos[r] = R.labels[d].size();
        R.labels[d].push_back(label.at(r));
        R.faces[d].push_back(fc);
      }
  return c;
}

std::vector<std::string> gluing_lines(const CubeDecomposition& c) {
  std::vector<std::string> out;
  for (auto& g : c.internal) {
    std::string f = "d_" + std::to_string(g.face);
    out.push_back(f + "(" + c.cells[g.a].name + ") ~ " + f + "(" + c.cells[g.b].name + ")");
  }
  return out;
}

Report cube_matches_poset(const CubeDecomposition& c) {
  Report rep;
  if (!c.consistent) rep.fail("gluing identifies faces with different vertices");
  auto P = poset_interval(0, c.m, c.m);
  if (P.dim() != c.realized.dim()) {
    rep.fail("dimension " + std::to_string(c.realized.dim()) + " vs " + std::to_string(P.dim()));
    return rep;
  }
  for (int d = 0; d <= P.dim(); ++d) {
    std::map<std::string, size_t> where;
    for (size_t k = 0; k < P.count(d); ++k) where[P.labels[d][k]] = k;
    if (c.realized.count(d) != P.count(d))
      rep.fail("dimension " + std::to_string(d) + ": " + std::to_string(c.realized.count(d)) + " simplices vs " +
               std::to_string(P.count(d)));
    for (size_t k = 0; k < c.realized.count(d); ++k) {
      auto it = where.find(c.realized.labels[d][k]);
      if (it == where.end()) {
        rep.fail("simplex " + c.realized.labels[d][k] + " is not a chain of P");
        continue;
      }
      for (int i = 0; d >= 1 && i <= d; ++i)
        if (c.realized.labels[d - 1][c.realized.faces[d][k][i]] != P.labels[d - 1][P.faces[d][it->second][i]])
          rep.fail("face " + std::to_string(i) + " of " + c.realized.labels[d][k]);
    }
  }
  return rep;
}

const MappingSpace& MapCache::get(int x, int y) {
  auto key = std::make_pair(x, y);
  auto it = spaces_.find(key);
  if (it == spaces_.end()) it = spaces_.emplace(key, mapping_space(*cat_, x, y, cap_)).first;
  return it->second;
}

Vec MapCache::compose(int x, int y, int z, int n, const Vec& b, const Vec& a) {
  return compose_simplices(*cat_, get(x, y), get(y, z), get(x, z), n, b, a);
}

Vec MapCache::unit_simplex(int x, int n) {
  auto& u = cat_->unit(x);
  if (!u) throw math_error("object without a unit");
  auto& m = get(x, x);
  return m.dk.theta_star(SimplexMap(n + 1, 0), 0) * m.from_hom(0, *u);
}

std::vector<Flag> all_strict_flags(int n) {
  std::vector<Flag> out;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int len = 1;; ++len) {
        auto f = strict_flags(i, j, len);
        if (f.empty()) break;
        out.insert(out.end(), f.begin(), f.end());
      }
  return out;
}

namespace {

std::pair<int, int> flag_ends(const Flag& f, int n) {
  if (f.empty()) throw math_error("empty flag");
  int i = f[0].front(), j = f[0].back();
  for (size_t t = 0; t < f.size(); ++t) {
    auto& s = f[t];
    if (s.empty() || s.front() != i || s.back() != j || s.front() < 0 || s.back() > n)
      throw math_error("flag " + flag_key(f) + " outside the index range");
    if (t && !std::includes(s.begin(), s.end(), f[t - 1].begin(), f[t - 1].end()))
      throw math_error("flag " + flag_key(f) + " is not increasing");
  }
  return {i, j};
}

}  // namespace

Vec big_value(MapCache& maps, const BigNerveSimplex& s, const Flag& f) {
  auto [i, j] = flag_ends(f, s.n);
  int l = (int)f.size() - 1;
  if (i == j) return maps.unit_simplex(s.objects[i], l);
  for (int t = 0; t < l; ++t)
    if (f[t] == f[t + 1]) {
      Flag g = f;
      g.erase(g.begin() + t + 1);
      return maps.get(s.objects[i], s.objects[j]).dk.X.degen[l - 1][t] * big_value(maps, s, g);
    }
  auto it = s.g.find(f);
  if (it == s.g.end()) throw math_error("missing datum for flag " + flag_key(f));
  return it->second;
}

namespace {

// I ∩ [i, j] and I ∩ [j, k] levelwise
std::pair<Flag, Flag> split_flag(const Flag& f, int j) {
  Flag a, b;
  for (auto& s : f) {
    Subset x, y;
    for (int v : s) {
      if (v <= j) x.push_back(v);
      if (v >= j) y.push_back(v);
    }
    a.push_back(x);
    b.push_back(y);
  }
  return {a, b};
}

}  // namespace

Report validate_big_simplex(MapCache& maps, const BigNerveSimplex& s) {
  Report rep;
  if ((int)s.objects.size() != s.n + 1) throw math_error("object list does not match n");
  if (s.n > maps.level_cap()) throw math_error("simplex dimension exceeds the level cap");
  for (auto& [f, v] : s.g) {
    auto [i, j] = flag_ends(f, s.n);
    if (i == j) throw math_error("flag " + flag_key(f) + " has i = j");
    for (size_t t = 1; t < f.size(); ++t)
      if (f[t] == f[t - 1]) throw math_error("stored flag " + flag_key(f) + " is degenerate");
  }
  auto flags = all_strict_flags(s.n);
  for (auto& f : flags) {
    auto it = s.g.find(f);
    auto [i, j] = flag_ends(f, s.n);
    size_t want = maps.get(s.objects[i], s.objects[j]).dk.X.dims[f.size() - 1];
    if (it == s.g.end())
      rep.fail("missing g[" + flag_key(f) + "]");
    else if (it->second.size() != want)
      rep.fail("g[" + flag_key(f) + "] has size " + std::to_string(it->second.size()) + ", expected " +
               std::to_string(want));
  }
  if (!rep.ok) return rep;
  for (auto& f : flags) {
    auto [i, j] = flag_ends(f, s.n);
    int l = (int)f.size() - 1;
    auto& X = maps.get(s.objects[i], s.objects[j]).dk.X;
    const Vec& g = s.g.at(f);
    for (int t = 0; l >= 1 && t <= l; ++t) {
      Flag h = f;
      h.erase(h.begin() + t);
      if (X.face[l][t] * g != s.g.at(h))
        rep.fail("face: d_" + std::to_string(t) + " g[" + flag_key(f) + "] != g[" + flag_key(h) + "]");
    }
    // composition: every interior index contained in I_0 splits the flag
    for (int k : f[0]) {
      if (k == i || k == j) continue;
      auto [a, b] = split_flag(f, k);
      Vec comp = maps.compose(s.objects[i], s.objects[k], s.objects[j], l, big_value(maps, s, a),
                              big_value(maps, s, b));
      if (comp != g) rep.fail("composition: g[" + flag_key(f) + "] != g[" + flag_key(b) + "] o g[" + flag_key(a) + "]");
    }
  }
  return rep;
}

BigNerveSimplex random_big_simplex(MapCache& maps, const std::vector<int>& objects, Rng& rng) {
  BigNerveSimplex s;
  s.n = (int)objects.size() - 1;
  s.objects = objects;
  if (s.n > maps.level_cap()) throw math_error("simplex dimension exceeds the level cap");
  for (int d = 1; d <= s.n; ++d)
    for (int i = 0; i + d <= s.n; ++i) {
      int j = i + d;
      auto& M = maps.get(objects[i], objects[j]);
      const auto& A = M.dk.A;
      // flags whose bottom has an interior index are composites
      std::vector<Flag> cone;
      for (int len = 1; len <= d; ++len)
        for (auto& f : strict_flags(i, j, len)) {
          if (f[0].size() == 2) {
            cone.push_back(f);
            continue;
          }
          int k = f[0][1];
          auto [a, b] = split_flag(f, k);
          s.g[f] = maps.compose(objects[i], objects[k], objects[j], len - 1, big_value(maps, s, a),
                                big_value(maps, s, b));
        }
      // The rest is the cone from {i, j}; its tops form a chain map on the
      // cone extending the composites. Solve for all of them at once.
      std::map<Flag, size_t> off;
      size_t unknowns = 0;
      for (auto& f : cone) {
        off[f] = unknowns;
        unknowns += A.dim((int)f.size() - 1);
      }
      std::vector<Vec> rows;
      Vec rhs;
      for (auto& f : cone) {
        int l = (int)f.size() - 1;
        if (l == 0) continue;
        size_t dl = A.dim(l - 1);
        if (!dl) continue;
        Mat block(dl, unknowns);
        Vec known(dl);
        if (A.dim(l)) block.put(0, off[f], A.diff(l));
        for (int t = 0; t <= l; ++t) {
          Flag h = f;
          h.erase(h.begin() + t);
          Scalar sg = t % 2 ? Scalar(1) : Scalar(-1);
          auto it = off.find(h);
          if (it != off.end())
            block.add(0, it->second, Mat::identity(dl), sg);
          else
            axpy(known, -sg, M.dk.top(l - 1, s.g.at(h)));
        }
        for (size_t r = 0; r < dl; ++r) {
          rows.push_back(block.row(r));
          rhs.push_back(known[r]);
        }
      }
      Vec tops(unknowns);
      if (unknowns) {
        Mat sys = Mat::from_rows(rows, unknowns);
        if (!rows.empty()) {
          auto x = ain::solve(sys, rhs);
          if (!x) throw math_error("no cone extension for the pair " + std::to_string(i) + "," + std::to_string(j));
          tops = *x;
        }
        Mat z = rows.empty() ? Mat::identity(unknowns) : kernel(sys);
        for (size_t c = 0; c < z.cols(); ++c) axpy(tops, Scalar(rng.uniform(-1, 1)), z.col(c));
      }
      for (auto& f : cone) {
        int l = (int)f.size() - 1;
        Vec top(tops.begin() + off[f], tops.begin() + off[f] + A.dim(l));
        s.g[f] = dk_from_tops(M.dk, l, [&](const SimplexMap& th) {
          if ((int)th.size() == l + 1) return top;
          Flag h;
          for (int t : th) h.push_back(f[t]);
          return M.dk.top((int)th.size() - 1, s.g.at(h));
        });
      }
    }
  return s;
}

BigNerveSimplex big_face(const BigNerveSimplex& s, int j) {
  if (j < 0 || j > s.n || s.n < 1) throw math_error("face index out of range");
  BigNerveSimplex r;
  r.n = s.n - 1;
  r.objects = s.objects;
  r.objects.erase(r.objects.begin() + j);
  for (auto& f : all_strict_flags(r.n)) {
    Flag h = f;
    for (auto& sub : h)
      for (auto& v : sub) v = delta_map(j, v);
    r.g[f] = s.g.at(h);
  }
  return r;
}

BigNerveSimplex big_degeneracy(MapCache& maps, const BigNerveSimplex& s, int j) {
  if (j < 0 || j > s.n) throw math_error("degeneracy index out of range");
  BigNerveSimplex r;
  r.n = s.n + 1;
  r.objects = s.objects;
  r.objects.insert(r.objects.begin() + j, s.objects[j]);
  for (auto& f : all_strict_flags(r.n)) {
    Flag h;
    for (auto& sub : f) {
      Subset t;
      for (int v : sub) {
        int w = sigma_map(j, v);
        if (t.empty() || t.back() != w) t.push_back(w);
      }
      h.push_back(t);
    }
    r.g[f] = big_value(maps, s, h);
  }
  return r;
}

NerveSimplex big_to_small(MapCache& maps, const BigNerveSimplex& s) {
  NerveSimplex out;
  out.n = s.n;
  out.objects = s.objects;
  for (auto& str : increasing_strings(s.n)) {
    int k = (int)str.size() - 1;
    int i0 = str.front(), ik = str.back();
    auto& M = maps.get(s.objects[i0], s.objects[ik]);
    if (k == 1) {
      out.components[str] = M.to_hom(0, s.g.at(Flag{{i0, ik}}));
      continue;
    }
    Vec acc(M.dk.A.dim(k - 1));
    std::vector<int> sigma(k - 1);
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
      Flag f;
      Subset cur{i0, ik};
      f.push_back(cur);
      for (int v : sigma) {
        cur.insert(std::upper_bound(cur.begin(), cur.end(), str[v]), str[v]);
        f.push_back(cur);
      }
      int inv = 0;
      for (size_t a = 0; a < sigma.size(); ++a)
        for (size_t b = a + 1; b < sigma.size(); ++b) inv += sigma[a] > sigma[b];
      axpy(acc, inv % 2 ? Scalar(-1) : Scalar(1), M.dk.top(k - 1, s.g.at(f)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    Vec h = M.to_hom(k - 1, acc);
    out.components[str] = (k - 1) % 2 ? Scalar(-1) * h : h;
  }
  return out;
}

Report comparison_naturality_check(MapCache& maps, const BigNerveSimplex& s) {
  Report rep;
  NerveSimplex small = big_to_small(maps, s);
  auto c = maps.cat_ptr();
  for (int j = 0; s.n >= 1 && j <= s.n; ++j)
    if (!(big_to_small(maps, big_face(s, j)) == face(c, small, j))) rep.fail("face " + std::to_string(j));
  if (s.n + 1 <= maps.level_cap())
    for (int j = 0; j <= s.n; ++j)
      if (!(big_to_small(maps, big_degeneracy(maps, s, j)) == degeneracy(c, small, j)))
        rep.fail("degeneracy " + std::to_string(j));
  return rep;
}

Report comparison_equation_check(const AInfCategory& c, const NerveSimplex& s) {
  Report rep;
  for (auto& str : increasing_strings(s.n)) {
    int k = (int)str.size() - 1;
    auto obj = [&](int pos) { return s.objects[str[pos]]; };
    Vec lhs = c.m(1, {obj(0), obj(k)}, {s.at(str)});
    Vec rhs(lhs.size());
    for (int j = 1; j < k; ++j) {
      auto sub = str;
      sub.erase(sub.begin() + j);
      axpy(rhs, (j - 1) % 2 ? Scalar(-1) : Scalar(1), s.at(sub));
      std::vector<int> lo(str.begin(), str.begin() + j + 1), hi(str.begin() + j, str.end());
      Vec comp = c.m(2, {obj(0), obj(j), obj(k)}, {s.at(hi), s.at(lo)});
      axpy(rhs, (1 + k * (j - 1)) % 2 ? Scalar(-1) : Scalar(1), comp);
    }
    if (lhs != rhs) rep.fail(Defect{k, str, {}, lhs - rhs});
  }
  return rep;
}

}  // namespace ain
