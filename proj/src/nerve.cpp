#include "ainerve/nerve.hpp"

#include <algorithm>

namespace ain {

namespace {

SparseVec sparse(const Vec& v) {
  SparseVec out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

std::vector<int> identity_map(size_t k) {
  std::vector<int> m(k);
  for (size_t i = 0; i < k; ++i) m[i] = static_cast<int>(i);
  return m;
}

std::vector<int> remove_at(const std::vector<int>& s, size_t pos) {
  std::vector<int> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (i != pos) out.push_back(s[i]);
  return out;
}

Vec random_of_degree(Rng& rng, const GradedSpace& h, int deg) {
  Vec v(h.dim());
  for (size_t i = 0; i < h.dim(); ++i)
    if (h.degree(i) == deg) v[i] = Scalar(rng.uniform(-2, 2));
  return v;
}

Vec random_closed_of_degree(Rng& rng, const AInfCategory& c, int x, int y, int deg) {
  const GradedSpace& h = c.hom(x, y);
  auto idx = h.indices_of_degree(deg);
  Vec v(h.dim());
  if (idx.empty()) return v;
  Mat m = c.m1_matrix(x, y);
  Mat sub(h.dim(), idx.size());
  for (size_t j = 0; j < idx.size(); ++j) sub.set_col(j, m.col(idx[j]));
  Mat z = kernel(sub);
  for (size_t col = 0; col < z.cols(); ++col) {
    Scalar a(rng.uniform(-2, 2));
    for (size_t i = 0; i < idx.size(); ++i) v[idx[i]] += a * z(i, col);
  }
  return v;
}

// f_{0..p^..n} chosen so the equation at `full` holds, given everything else
void solve_missing(const AInfCategory& c, NerveSimplex& s, const std::vector<int>& full, size_t p,
                   const Vec& top, EpsReading r) {
  auto face = remove_at(full, p);
  const GradedSpace& hf = c.hom(s.objects[face.front()], s.objects[face.back()]);
  s.components[full] = top;
  s.components[face] = Vec(hf.dim());
  Vec d = simplex_defect(c, s, full, r);
  s.components[face] = sign(static_cast<long>(p) - 1) * d;
}

}  // namespace

AInfCategory standard_simplex_category(int n, int arity_cap) {
  if (n < 0) throw math_error("simplex dimension must be non-negative");
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
  AInfCategory c(labels, arity_cap);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      c.set_hom(i, j, GradedSpace({{"(" + std::to_string(i) + "," + std::to_string(j) + ")", 0}}));
  for (int i = 0; i <= n; ++i) {
    c.set_unit(i, Vec{Scalar(1)});
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) c.set_op(2, {i, j, k}, {0, 0}, {{0, Scalar(1)}});
  }
  return c;
}

std::shared_ptr<const AInfCategory> simplex_category(int n) {
  static std::map<int, std::shared_ptr<const AInfCategory>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto c = std::make_shared<const AInfCategory>(standard_simplex_category(n));
  cache[n] = c;
  return c;
}

int delta_map(int j, int k) { return k < j ? k : k + 1; }
int sigma_map(int j, int k) { return k <= j ? k : k - 1; }

AInfFunctor coface_functor(int j, int n) {
  if (n < 1 || j < 0 || j > n) throw math_error("coface index out of range");
  auto src = simplex_category(n - 1), tgt = simplex_category(n);
  std::vector<int> om(n);
  for (int k = 0; k < n; ++k) om[k] = delta_map(j, k);
  AInfFunctor f(src, tgt, om, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) f.set_component(1, {a, b}, {0}, {{0, Scalar(1)}});
  return f;
}

AInfFunctor codegeneracy_functor(int j, int n) {
  if (n < 1 || j < 0 || j > n - 1) throw math_error("codegeneracy index out of range");
  auto src = simplex_category(n), tgt = simplex_category(n - 1);
  std::vector<int> om(n + 1);
  for (int k = 0; k <= n; ++k) om[k] = sigma_map(j, k);
  AInfFunctor f(src, tgt, om, 1);
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) f.set_component(1, {a, b}, {0}, {{0, Scalar(1)}});
  return f;
}

const Vec& NerveSimplex::at(const std::vector<int>& str) const {
  auto it = components.find(str);
  if (it == components.end()) throw math_error("missing component " + string_key(str));
  return it->second;
}

std::vector<std::vector<int>> increasing_strings(int n, int min_len) {
  std::vector<std::vector<int>> out;
  for (int len = std::max(min_len, 1); len <= n + 1; ++len) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (int v = from; v <= n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

std::string string_key(const std::vector<int>& str) {
  std::string s;
  for (size_t i = 0; i < str.size(); ++i) s += (i ? "." : "") + std::to_string(str[i]);
  return s;
}

Vec simplex_defect(const AInfCategory& c, const NerveSimplex& s, const std::vector<int>& str, EpsReading rd) {
  int k = static_cast<int>(str.size()) - 1;
  auto x = [&](int v) { return s.objects[v]; };
  const Vec& f = s.at(str);
  Vec rhs(f.size());
  for (int j = 1; j < k; ++j) axpy(rhs, sign(j - 1), s.at(remove_at(str, j)));
  for_each_composition(k, k, [&](const std::vector<int>& parts) {
    int r = static_cast<int>(parts.size());
    if (r < 2 || r > c.arity_cap()) return;
    std::vector<int> bounds{0};
    for (int m = r - 1; m >= 0; --m) bounds.push_back(bounds.back() + parts[m]);
    std::vector<Vec> args;
    for (int m = r; m >= 1; --m)
      args.push_back(s.at(std::vector<int>(str.begin() + bounds[m - 1], str.begin() + bounds[m] + 1)));
    std::vector<int> objs;
    for (int b : bounds) objs.push_back(x(str[b]));
    Vec v = c.m(r, objs, args);
    if (is_zero(v)) return;
    long e;
    if (rd == EpsReading::blocks) {
      e = 1 + epsilon_r(parts);
    } else if (r == 2) {
      e = 1 + static_cast<long>(k) * (bounds[1] - 1);
    } else {
      e = 1;
      for (int m = 2; m <= r; ++m) e += static_cast<long>(1 - bounds[m] + bounds[m - 1]) * bounds[m - 1];
    }
    axpy(rhs, sign(e), v);
  });
  return c.m(1, {x(str.front()), x(str.back())}, {f}) - rhs;
}

Report validate_simplex(const AInfCategory& c, const NerveSimplex& s, EpsReading r) {
  Report rep;
  if (static_cast<int>(s.objects.size()) != s.n + 1) throw math_error("simplex needs n+1 objects");
  for (auto& str : increasing_strings(s.n)) {
    const Vec& f = s.at(str);
    const GradedSpace& h = c.hom(s.objects[str.front()], s.objects[str.back()]);
    if (f.size() != h.dim()) throw math_error("component " + string_key(str) + " has wrong length");
    auto d = degree_of(h, f);
    if (d && *d != 2 - static_cast<int>(str.size())) throw math_error("component " + string_key(str) + " has wrong degree");
  }
  for (auto& str : increasing_strings(s.n)) {
    Vec d = simplex_defect(c, s, str, r);
    if (!is_zero(d)) rep.fail(Defect{static_cast<int>(str.size()) - 1, str, {}, d});
  }
  return rep;
}

AInfFunctor simplex_to_functor(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s) {
  auto src = simplex_category(s.n);
  AInfFunctor f(src, c, s.objects, std::max(1, s.n));
  for (int i = 0; i <= s.n; ++i) {
    if (!c->unit(s.objects[i])) throw math_error("ambient object has no unit");
    f.set_component(1, {i, i}, {0}, sparse(*c->unit(s.objects[i])));
  }
  for (auto& [str, v] : s.components)
    f.set_component(static_cast<int>(str.size()) - 1, str, std::vector<int>(str.size() - 1, 0), sparse(v));
  return f;
}

NerveSimplex functor_to_simplex(const AInfFunctor& f) {
  NerveSimplex s;
  s.n = static_cast<int>(f.source().num_objects()) - 1;
  s.objects = f.object_map();
  for (auto& str : increasing_strings(s.n)) {
    int k = static_cast<int>(str.size()) - 1;
    std::vector<Vec> args(k, Vec{Scalar(1)});
    s.components[str] = f.f(k, str, args);
  }
  return s;
}

NerveSimplex face(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s, int j) {
  if (j < 0 || j > s.n || s.n < 1) throw math_error("face index out of range");
  auto g = compose_functors(simplex_to_functor(c, s), coface_functor(j, s.n), s.n - 1);
  return functor_to_simplex(g);
}

NerveSimplex degeneracy(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s, int j) {
  if (j < 0 || j > s.n) throw math_error("degeneracy index out of range");
  auto g = compose_functors(simplex_to_functor(c, s), codegeneracy_functor(j, s.n + 1), s.n + 1);
  return functor_to_simplex(g);
}

NerveSimplex pushforward(const AInfFunctor& f, const NerveSimplex& s) {
  for (int o : s.objects)
    if (o < 0 || o >= static_cast<int>(f.source().num_objects())) throw math_error("object map mismatch");
  auto g = compose_functors(f, simplex_to_functor(f.source_ptr(), s), s.n);
  return functor_to_simplex(g);
}

HornData horn_of(const NerveSimplex& s, int p) {
  HornData h{s.n, p, s.objects, s.components};
  std::vector<int> full = identity_map(s.n + 1);
  h.components.erase(full);
  h.components.erase(remove_at(full, p));
  return h;
}

NerveSimplex fill_inner_horn(const AInfCategory& c, const HornData& h, const std::optional<Vec>& top, EpsReading r) {
  if (h.p <= 0 || h.p >= h.n) throw math_error("horn is not inner");
  NerveSimplex s{h.n, h.objects, h.components};
  std::vector<int> full = identity_map(h.n + 1);
  const GradedSpace& ht = c.hom(h.objects.front(), h.objects.back());
  Vec t = top ? *top : Vec(ht.dim());
  if (t.size() != ht.dim()) throw math_error("top component has wrong length");
  for (auto& str : increasing_strings(h.n))
    if (str != full && str != remove_at(full, h.p) && !s.components.count(str))
      throw math_error("horn is missing component " + string_key(str));
  solve_missing(c, s, full, h.p, t, r);
  return s;
}

NerveSimplex random_simplex(const AInfCategory& c, const std::vector<int>& objects, Rng& rng, EpsReading r) {
  NerveSimplex s;
  s.n = static_cast<int>(objects.size()) - 1;
  s.objects = objects;
  auto x = [&](int v) { return objects[v]; };
  for (int m = 1; m <= s.n; ++m) {
    s.components[{m - 1, m}] = random_closed_of_degree(rng, c, x(m - 1), x(m), 0);
    // strings containing m-1 and m, by length; each fixes the string without m-1
    std::vector<std::vector<int>> ts;
    for (auto& sub : increasing_strings(m - 2, 1)) {
      auto t = sub;
      t.push_back(m - 1);
      t.push_back(m);
      ts.push_back(t);
    }
    std::stable_sort(ts.begin(), ts.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
    for (auto& t : ts) {
      int k = static_cast<int>(t.size()) - 1;
      Vec top = random_of_degree(rng, c.hom(x(t.front()), x(m)), 1 - k);
      solve_missing(c, s, t, t.size() - 2, top, r);
    }
  }
  return s;
}

size_t h0_dim_via_nerve(const AInfCategory& c, int x, int y) {
  const GradedSpace& h = c.hom(x, y);
  if (!c.unit(y)) throw math_error("target object has no unit");
  auto deg0 = h.indices_of_degree(0);
  // valid 1-simplices: kernel of the (linear) defect map on degree-0 elements
  Mat defect(h.dim(), deg0.size());
  for (size_t j = 0; j < deg0.size(); ++j) {
    NerveSimplex s{1, {x, y}, {{{0, 1}, basis_vec(h.dim(), deg0[j])}}};
    defect.set_col(j, simplex_defect(c, s, {0, 1}));
  }
  Mat zk = kernel(defect);
  std::vector<Vec> cycles;
  for (size_t col = 0; col < zk.cols(); ++col) {
    Vec v(h.dim());
    for (size_t i = 0; i < deg0.size(); ++i) v[deg0[i]] = zk(i, col);
    cycles.push_back(v);
  }
  // 2-simplices (f, Id_y; g) from horn fills with f a cycle or zero, top free
  std::vector<Vec> rel;
  std::vector<Vec> starts = cycles;
  starts.push_back(Vec(h.dim()));
  for (size_t i : h.indices_of_degree(-1))
    for (auto& f : starts) {
      HornData hd{2, 1, {x, y, y}, {{{0, 1}, f}, {{1, 2}, *c.unit(y)}}};
      NerveSimplex s = fill_inner_horn(c, hd, basis_vec(h.dim(), i));
      if (!validate_simplex(c, s).ok) throw math_error("filled 2-simplex does not validate");
      rel.push_back(s.at({0, 2}) - f);
    }
  size_t r = rel.empty() ? 0 : rank(Mat::from_cols(rel, h.dim()));
  return cycles.size() - r;
}

}  // namespace ain
