#include "ainerve/ainfty.hpp"

#include <algorithm>
#include <set>

namespace ain {

namespace {

std::vector<int> make_key(const std::vector<int>& objs, const std::vector<int>& idx) {
  std::vector<int> k;
  k.reserve(objs.size() + idx.size());
  k.insert(k.end(), objs.begin(), objs.end());
  k.insert(k.end(), idx.begin(), idx.end());
  return k;
}

// objects spanned by the tensor positions [a, b) of an n-ary input
std::vector<int> sub_objs(const std::vector<int>& objs, int a, int b) {
  int n = static_cast<int>(objs.size()) - 1;
  return std::vector<int>(objs.begin() + (n - b), objs.begin() + (n - a) + 1);
}

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

// Multilinear evaluation of a sparse table over the product of input supports.
Vec eval_table(const OpTable& table, size_t out_dim, const std::vector<int>& objs,
               const std::vector<Vec>& args) {
  Vec out(out_dim);
  if (table.empty()) return out;
  std::vector<std::vector<size_t>> supp(args.size());
  size_t combos = 1;
  for (size_t k = 0; k < args.size(); ++k) {
    for (size_t i = 0; i < args[k].size(); ++i)
      if (!args[k][i].is_zero()) supp[k].push_back(i);
    if (supp[k].empty()) return out;
    combos *= supp[k].size();
    if (combos > (1u << 30)) combos = 1u << 30;
  }
  size_t nobj = objs.size();
  if (combos <= table.size()) {
    std::vector<int> key(nobj + args.size());
    std::copy(objs.begin(), objs.end(), key.begin());
    std::vector<size_t> pos(args.size(), 0);
    while (true) {
      Scalar coef(1);
      for (size_t k = 0; k < args.size(); ++k) {
        key[nobj + k] = static_cast<int>(supp[k][pos[k]]);
        coef *= args[k][supp[k][pos[k]]];
      }
      auto it = table.find(key);
      if (it != table.end())
        for (auto& [i, c] : it->second) out[i] += coef * c;
      size_t k = args.size();
      while (k > 0) {
        --k;
        if (++pos[k] < supp[k].size()) break;
        pos[k] = 0;
        if (k == 0) return out;
      }
      if (args.empty()) return out;
    }
  }
  for (auto& [key, vals] : table) {
    if (!std::equal(objs.begin(), objs.end(), key.begin())) continue;
    Scalar coef(1);
    bool zero = false;
    for (size_t k = 0; k < args.size() && !zero; ++k) {
      const Scalar& a = args[k][key[nobj + k]];
      if (a.is_zero()) zero = true;
      else coef *= a;
    }
    if (zero) continue;
    for (auto& [i, c] : vals) out[i] += coef * c;
  }
  return out;
}

// Enumerate all basis tuples for an object string, calling fn(idx).
template <class F>
void for_each_tuple(const std::vector<const GradedSpace*>& spaces, F&& fn) {
  size_t n = spaces.size();
  for (auto* s : spaces)
    if (s->dim() == 0) return;
  std::vector<int> idx(n, 0);
  while (true) {
    fn(idx);
    size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < static_cast<int>(spaces[k]->dim())) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<const GradedSpace*> input_spaces(const AInfCategory& c, const std::vector<int>& objs) {
  int n = static_cast<int>(objs.size()) - 1;
  std::vector<const GradedSpace*> sp(n);
  for (int k = 0; k < n; ++k) sp[k] = &c.hom(objs[n - 1 - k], objs[n - k]);
  return sp;
}

std::vector<Vec> basis_args(const std::vector<const GradedSpace*>& sp, const std::vector<int>& idx) {
  std::vector<Vec> a(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) a[k] = basis_vec(sp[k]->dim(), idx[k]);
  return a;
}

}  // namespace

Vec basis_vec(size_t dim, size_t i) {
  Vec v(dim);
  v[i] = Scalar(1);
  return v;
}

std::optional<int> degree_of(const GradedSpace& s, const Vec& v) {
  std::optional<int> d;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (d && *d != s.degree(i)) throw math_error("inhomogeneous element");
    d = s.degree(i);
  }
  return d;
}

AInfCategory::AInfCategory(std::vector<std::string> objects, int arity_cap)
    : objects_(std::move(objects)), cap_(arity_cap) {
  if (arity_cap < 1) throw math_error("arity cap must be positive");
  size_t k = objects_.size();
  homs_.assign(k, std::vector<GradedSpace>(k));
  units_.assign(k, std::nullopt);
  ops_.resize(cap_ + 1);
}

long AInfCategory::object_index(const std::string& label) const {
  auto it = std::find(objects_.begin(), objects_.end(), label);
  return it == objects_.end() ? -1 : static_cast<long>(it - objects_.begin());
}

void AInfCategory::set_op(int n, const std::vector<int>& objs, const std::vector<int>& idx,
                          SparseVec out) {
  if (n < 1 || n > cap_) throw math_error("arity beyond cap");
  if (static_cast<int>(objs.size()) != n + 1 || static_cast<int>(idx.size()) != n)
    throw math_error("bad operation key");
  auto sp = input_spaces(*this, objs);
  int deg = bar_ ? 1 : 2 - n;
  for (int k = 0; k < n; ++k) {
    if (idx[k] < 0 || idx[k] >= static_cast<int>(sp[k]->dim())) throw math_error("basis index out of range");
    deg += sp[k]->degree(idx[k]);
  }
  const GradedSpace& tgt = hom(objs.front(), objs.back());
  SparseVec clean;
  for (auto& [i, c] : out) {
    if (c.is_zero()) continue;
    if (i >= tgt.dim()) throw math_error("output index out of range");
    if (tgt.degree(i) != deg) throw math_error("operation violates degree 2-n");
    clean.emplace_back(i, c);
  }
  auto key = make_key(objs, idx);
  if (clean.empty()) ops_[n].erase(key);
  else ops_[n][key] = std::move(clean);
}

const OpTable& AInfCategory::ops(int n) const {
  static const OpTable empty;
  if (n < 1 || n > cap_) return empty;
  return ops_[n];
}

const SparseVec* AInfCategory::lookup(int n, const std::vector<int>& objs,
                                      const std::vector<int>& idx) const {
  const OpTable& t = ops(n);
  auto it = t.find(make_key(objs, idx));
  return it == t.end() ? nullptr : &it->second;
}

Vec AInfCategory::m(int n, const std::vector<int>& objs, const std::vector<Vec>& args) const {
  if (static_cast<int>(args.size()) != n || static_cast<int>(objs.size()) != n + 1)
    throw math_error("arity mismatch");
  return eval_table(ops(n), hom(objs.front(), objs.back()).dim(), objs, args);
}

Mat AInfCategory::m1_matrix(int x, int y) const {
  const GradedSpace& h = hom(x, y);
  Mat M(h.dim(), h.dim());
  for (size_t i = 0; i < h.dim(); ++i)
    if (auto* out = lookup(1, {x, y}, {static_cast<int>(i)}))
      for (auto& [r, c] : *out) M(r, i) = c;
  return M;
}

std::vector<std::vector<int>> AInfCategory::strings(int n) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n + 1) {
      out.push_back(cur);
      return;
    }
    for (int y = 0; y < static_cast<int>(num_objects()); ++y) {
      if (!cur.empty() && hom(cur.back(), y).dim() == 0) continue;
      cur.push_back(y);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

namespace {

// Sum_{r+s+t=n} (-1)^{sr+t} outer_{r+t+1}(Id^r (x) inner_s (x) Id^t) on a basis tuple.
// koszul: sign of moving an operation of degree `opdeg` past inputs of degrees.
template <class Outer, class Inner>
Vec relation_value(int n, const std::vector<int>& objs, const std::vector<int>& idx,
                   const std::vector<const GradedSpace*>& sp, size_t out_dim, int cap_outer,
                   int cap_inner, bool bar, Outer&& outer, Inner&& inner) {
  Vec total(out_dim);
  std::vector<Vec> args = basis_args(sp, idx);
  for (int s = 1; s <= std::min(n, cap_inner); ++s) {
    for (int r = 0; r + s <= n; ++r) {
      int t = n - r - s;
      if (r + t + 1 > cap_outer) continue;
      long left = 0;
      for (int k = 0; k < r; ++k) left += sp[k]->degree(idx[k]);
      long e = bar ? left : static_cast<long>(s) * r + t + static_cast<long>(2 - s) * left;
      std::vector<Vec> in(args.begin() + r, args.begin() + r + s);
      Vec mid = inner(s, sub_objs(objs, r, r + s), in);
      if (is_zero(mid)) continue;
      std::vector<Vec> oargs(args.begin(), args.begin() + r);
      oargs.push_back(std::move(mid));
      oargs.insert(oargs.end(), args.begin() + r + s, args.end());
      std::vector<int> oobjs(objs.begin(), objs.begin() + t + 1);
      oobjs.insert(oobjs.end(), objs.begin() + t + s, objs.end());
      Vec v = outer(r + t + 1, oobjs, oargs);
      axpy(total, Scalar(sign(e)), v);
    }
  }
  return total;
}

// Inputs are basis vectors, so every term is a pair of table lookups; tuples
// whose total degree misses the target space vanish by degree and are skipped.
Report check_rel_impl(const AInfCategory& c, int n_max, bool bar) {
  Report rep;
  int cap = c.arity_cap();
  for (int n = 1; n <= n_max; ++n) {
    if (n > 2 * cap - 1) break;  // every term vanishes beyond this
    for (auto& objs : c.strings(n)) {
      auto sp = input_spaces(c, objs);
      const GradedSpace& tgt = c.hom(objs.front(), objs.back());
      size_t od = tgt.dim();
      if (od == 0) continue;
      std::set<long> degs;
      for (size_t i = 0; i < od; ++i) degs.insert(tgt.degree(i));
      long shift = bar ? 2 : 3 - n;
      Vec acc(od);
      std::vector<size_t> touched;
      for_each_tuple(sp, [&](const std::vector<int>& idx) {
        long deg = shift;
        for (int k = 0; k < n; ++k) deg += sp[k]->degree(idx[k]);
        if (!degs.count(deg)) return;
        touched.clear();
        for (int s = 1; s <= std::min(n, cap); ++s) {
          for (int r = 0; r + s <= n; ++r) {
            int t = n - r - s;
            if (r + t + 1 > cap) continue;
            const SparseVec* mid =
                c.lookup(s, sub_objs(objs, r, r + s), std::vector<int>(idx.begin() + r, idx.begin() + r + s));
            if (!mid) continue;
            long left = 0;
            for (int k = 0; k < r; ++k) left += sp[k]->degree(idx[k]);
            long e = bar ? left : static_cast<long>(s) * r + t + static_cast<long>(2 - s) * left;
            std::vector<int> oobjs(objs.begin(), objs.begin() + t + 1);
            oobjs.insert(oobjs.end(), objs.begin() + t + s, objs.end());
            std::vector<int> oidx(idx.begin(), idx.begin() + r);
            oidx.push_back(0);
            oidx.insert(oidx.end(), idx.begin() + r + s, idx.end());
            for (auto& [i, coef] : *mid) {
              oidx[r] = static_cast<int>(i);
              const SparseVec* out = c.lookup(r + t + 1, oobjs, oidx);
              if (!out) continue;
              Scalar f = sign(e) * coef;
              for (auto& [j, v] : *out) {
                touched.push_back(j);
                acc[j] += f * v;
              }
            }
          }
        }
        bool nonzero = false;
        for (size_t j : touched) nonzero = nonzero || !acc[j].is_zero();
        if (nonzero) rep.fail(Defect{n, objs, idx, acc});
        for (size_t j : touched) acc[j] = Scalar(0);
      });
    }
  }
  return rep;
}

}  // namespace

Report check_relations(const AInfCategory& c, int n_max) { return check_rel_impl(c, n_max, false); }
Report check_bar_relations(const AInfCategory& b, int n_max) { return check_rel_impl(b, n_max, true); }

Report check_strict_units(const AInfCategory& c) {
  Report rep;
  int K = static_cast<int>(c.num_objects());
  for (int x = 0; x < K; ++x) {
    const auto& u = c.unit(x);
    if (!u) {
      rep.fail("object " + c.objects()[x] + " has no unit");
      continue;
    }
    if (degree_of(c.hom(x, x), *u).value_or(0) != 0) rep.fail("unit of " + c.objects()[x] + " not in degree 0");
    for (int y = 0; y < K; ++y) {
      const GradedSpace& hxy = c.hom(x, y);
      for (size_t i = 0; i < hxy.dim(); ++i) {
        Vec b = basis_vec(hxy.dim(), i);
        if (c.m(2, {x, x, y}, {b, *u}) != b)
          rep.fail(Defect{2, {x, x, y}, {static_cast<int>(i), -1}, c.m(2, {x, x, y}, {b, *u}) - b});
      }
      const GradedSpace& hyx = c.hom(y, x);
      for (size_t i = 0; i < hyx.dim(); ++i) {
        Vec b = basis_vec(hyx.dim(), i);
        if (c.m(2, {y, x, x}, {*u, b}) != b)
          rep.fail(Defect{2, {y, x, x}, {-1, static_cast<int>(i)}, c.m(2, {y, x, x}, {*u, b}) - b});
      }
    }
  }
  if (!rep.ok) return rep;
  // m_n with a unit in some slot, n != 2
  for (int n = 1; n <= c.arity_cap(); ++n) {
    if (n == 2) continue;
    for (auto& objs : c.strings(n)) {
      auto sp = input_spaces(c, objs);
      for (int slot = 0; slot < n; ++slot) {
        int x = objs[n - 1 - slot];
        if (x != objs[n - slot]) continue;
        std::vector<const GradedSpace*> rest;
        for (int k = 0; k < n; ++k)
          if (k != slot) rest.push_back(sp[k]);
        bool any = false;
        for (auto* s : rest) any = any || s->dim() == 0;
        if (any) continue;
        for_each_tuple(rest, [&](const std::vector<int>& idx) {
          std::vector<Vec> args;
          std::vector<int> full;
          size_t j = 0;
          for (int k = 0; k < n; ++k) {
            if (k == slot) {
              args.push_back(*c.unit(x));
              full.push_back(-1);
            } else {
              args.push_back(basis_vec(sp[k]->dim(), idx[j]));
              full.push_back(idx[j]);
              ++j;
            }
          }
          Vec v = c.m(n, objs, args);
          if (!is_zero(v)) rep.fail(Defect{n, objs, full, v});
        });
      }
    }
  }
  return rep;
}

namespace {

// sign of (s^{-1})^{(x) n} on s a_0 (x) ... (x) s a_{n-1}: the k-th s^{-1}
// passes the k suspended inputs to its left.
long desusp_exponent(const std::vector<const GradedSpace*>& sp, const std::vector<int>& idx, int shift) {
  long e = 0, acc = 0;
  for (size_t k = 0; k < idx.size(); ++k) {
    e += acc;
    acc += sp[k]->degree(idx[k]) + shift;
  }
  return e;
}

AInfCategory convert(const AInfCategory& c, bool to_bar) {
  std::vector<std::string> objs = c.objects();
  AInfCategory out(objs, c.arity_cap());
  out.set_bar(to_bar);
  int K = static_cast<int>(objs.size());
  for (int x = 0; x < K; ++x)
    for (int y = 0; y < K; ++y) {
      const GradedSpace& h = c.hom(x, y);
      std::vector<BasisElem> b;
      for (size_t i = 0; i < h.dim(); ++i) b.push_back({h.label(i), h.degree(i) + (to_bar ? -1 : 1)});
      out.set_hom(x, y, GradedSpace(b));
    }
  // units are not part of the bar data; they are restored on the way back
  for (int x = 0; x < K; ++x)
    if (c.unit(x)) out.set_unit(x, *c.unit(x));
  for (int n = 1; n <= c.arity_cap(); ++n)
    for (auto& [key, vals] : c.ops(n)) {
      std::vector<int> o(key.begin(), key.begin() + n + 1), idx(key.begin() + n + 1, key.end());
      auto sp = input_spaces(to_bar ? c : out, o);
      // exponent evaluated on the suspended degrees
      long e = desusp_exponent(sp, idx, -1);
      SparseVec v = vals;
      if (e & 1)
        for (auto& [i, cf] : v) cf = -cf;
      out.set_op(n, o, idx, v);
    }
  return out;
}

}  // namespace

AInfCategory bar_convert(const AInfCategory& c) { return convert(c, true); }
AInfCategory bar_unconvert(const AInfCategory& b) { return convert(b, false); }

long epsilon_r(const std::vector<int>& parts) {
  long e = 0, acc = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k >= 1) e += static_cast<long>(1 - parts[k]) * acc;
    acc += parts[k];
  }
  return e;
}

void for_each_composition(int n, int cap, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      fn(cur);
      return;
    }
    for (int p = 1; p <= std::min(left, cap); ++p) {
      cur.push_back(p);
      rec(left - p);
      cur.pop_back();
    }
  };
  if (n > 0) rec(n);
}

AInfFunctor::AInfFunctor(std::shared_ptr<const AInfCategory> src, std::shared_ptr<const AInfCategory> tgt,
                         std::vector<int> object_map, int arity_cap)
    : src_(std::move(src)), tgt_(std::move(tgt)), objmap_(std::move(object_map)), cap_(arity_cap) {
  if (objmap_.size() != src_->num_objects()) throw math_error("object map has wrong size");
  for (int y : objmap_)
    if (y < 0 || y >= static_cast<int>(tgt_->num_objects())) throw math_error("object map out of range");
  if (cap_ < 1) throw math_error("arity cap must be positive");
  comps_.resize(cap_ + 1);
}

AInfFunctor AInfFunctor::identity(std::shared_ptr<const AInfCategory> c) {
  std::vector<int> om(c->num_objects());
  for (size_t i = 0; i < om.size(); ++i) om[i] = static_cast<int>(i);
  AInfFunctor f(c, c, om, 1);
  for (int x = 0; x < static_cast<int>(om.size()); ++x)
    for (int y = 0; y < static_cast<int>(om.size()); ++y)
      for (size_t i = 0; i < c->hom(x, y).dim(); ++i)
        f.set_component(1, {x, y}, {static_cast<int>(i)}, {{i, Scalar(1)}});
  return f;
}

void AInfFunctor::set_component(int n, const std::vector<int>& objs, const std::vector<int>& idx,
                                SparseVec out) {
  if (n < 1 || n > cap_) throw math_error("arity beyond cap");
  if (static_cast<int>(objs.size()) != n + 1 || static_cast<int>(idx.size()) != n)
    throw math_error("bad component key");
  auto sp = input_spaces(*src_, objs);
  int deg = 1 - n;
  for (int k = 0; k < n; ++k) {
    if (idx[k] < 0 || idx[k] >= static_cast<int>(sp[k]->dim())) throw math_error("basis index out of range");
    deg += sp[k]->degree(idx[k]);
  }
  const GradedSpace& tgt = tgt_->hom(objmap_[objs.front()], objmap_[objs.back()]);
  SparseVec clean;
  for (auto& [i, c] : out) {
    if (c.is_zero()) continue;
    if (i >= tgt.dim()) throw math_error("output index out of range");
    if (tgt.degree(i) != deg) throw math_error("component violates degree 1-n");
    clean.emplace_back(i, c);
  }
  auto key = make_key(objs, idx);
  if (clean.empty()) comps_[n].erase(key);
  else comps_[n][key] = std::move(clean);
}

const OpTable& AInfFunctor::components(int n) const {
  static const OpTable empty;
  if (n < 1 || n > cap_) return empty;
  return comps_[n];
}

Vec AInfFunctor::f(int n, const std::vector<int>& objs, const std::vector<Vec>& args) const {
  if (static_cast<int>(args.size()) != n || static_cast<int>(objs.size()) != n + 1)
    throw math_error("arity mismatch");
  return eval_table(components(n), tgt_->hom(objmap_[objs.front()], objmap_[objs.back()]).dim(), objs, args);
}

namespace {

// Sum over compositions (i_1..i_r) of n of (-1)^{eps_r} outer_r(f_{i_1} (x) ... (x) f_{i_r})
// on a basis tuple with Koszul signs; f has degree 1 - i.
template <class Outer>
Vec functor_sum(const AInfFunctor& F, int n, const std::vector<int>& objs, const std::vector<int>& idx,
                const std::vector<const GradedSpace*>& sp, size_t out_dim, int outer_cap, Outer&& outer,
                const std::vector<int>& tgt_objs_of) {
  Vec total(out_dim);
  std::vector<Vec> args = basis_args(sp, idx);
  std::vector<long> prefix(n + 1, 0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + sp[k]->degree(idx[k]);
  for_each_composition(n, F.arity_cap(), [&](const std::vector<int>& parts) {
    int r = static_cast<int>(parts.size());
    if (r > outer_cap) return;
    long e = epsilon_r(parts);
    std::vector<Vec> outs;
    int pos = 0;
    for (int p : parts) {
      e += static_cast<long>(1 - p) * prefix[pos];
      std::vector<Vec> in(args.begin() + pos, args.begin() + pos + p);
      Vec v = F.f(p, sub_objs(objs, pos, pos + p), in);
      if (is_zero(v)) return;
      outs.push_back(std::move(v));
      pos += p;
    }
    // target object string: images of the block boundaries
    std::vector<int> to;
    int cut = 0;
    std::vector<int> bounds{0};
    for (int j = r - 1; j >= 0; --j) {
      cut += parts[j];
      bounds.push_back(cut);
    }
    for (int b : bounds) to.push_back(tgt_objs_of[objs[b]]);
    Vec v = outer(r, to, outs);
    axpy(total, Scalar(sign(e)), v);
  });
  return total;
}

}  // namespace

Report check_functor(const AInfFunctor& F, int n_max) {
  Report rep;
  const AInfCategory& A = F.source();
  const AInfCategory& B = F.target();
  const auto& om = F.object_map();
  auto mA = [&](int k, const std::vector<int>& o, const std::vector<Vec>& a) { return A.m(k, o, a); };
  auto fF = [&](int k, const std::vector<int>& o, const std::vector<Vec>& a) { return F.f(k, o, a); };
  auto mB = [&](int k, const std::vector<int>& o, const std::vector<Vec>& a) { return B.m(k, o, a); };
  for (int n = 1; n <= n_max; ++n) {
    for (auto& objs : A.strings(n)) {
      auto sp = input_spaces(A, objs);
      size_t od = B.hom(om[objs.front()], om[objs.back()]).dim();
      if (od == 0) continue;
      for_each_tuple(sp, [&](const std::vector<int>& idx) {
        Vec lhs = relation_value(n, objs, idx, sp, od, F.arity_cap(), A.arity_cap(), false, fF, mA);
        Vec rhs = functor_sum(F, n, objs, idx, sp, od, B.arity_cap(), mB, om);
        Vec d = lhs - rhs;
        if (!is_zero(d)) rep.fail(Defect{n, objs, idx, d});
      });
    }
  }
  // strict unitality
  for (int x = 0; x < static_cast<int>(A.num_objects()); ++x) {
    if (!A.unit(x)) continue;
    int fx = om[x];
    if (!B.unit(fx)) {
      rep.fail("target object " + B.objects()[fx] + " has no unit");
      continue;
    }
    if (F.f(1, {x, x}, {*A.unit(x)}) != *B.unit(fx)) rep.fail("f1 does not preserve the unit of " + A.objects()[x]);
    for (int n = 2; n <= F.arity_cap(); ++n)
      for (auto& objs : A.strings(n)) {
        auto sp = input_spaces(A, objs);
        for (int slot = 0; slot < n; ++slot) {
          if (objs[n - 1 - slot] != objs[n - slot]) continue;
          int ux = objs[n - slot];
          if (!A.unit(ux)) continue;
          std::vector<const GradedSpace*> rest;
          for (int k = 0; k < n; ++k)
            if (k != slot) rest.push_back(sp[k]);
          for_each_tuple(rest, [&](const std::vector<int>& idx) {
            std::vector<Vec> args;
            size_t j = 0;
            for (int k = 0; k < n; ++k)
              args.push_back(k == slot ? *A.unit(ux) : basis_vec(sp[k]->dim(), idx[j++]));
            if (!is_zero(F.f(n, objs, args)))
              rep.fail("f" + std::to_string(n) + " does not vanish on a unit of " + A.objects()[ux]);
          });
        }
      }
  }
  return rep;
}

AInfFunctor compose_functors(const AInfFunctor& G, const AInfFunctor& F, int max_arity) {
  if (F.target_ptr().get() != G.source_ptr().get()) throw math_error("functors are not composable");
  const AInfCategory& A = F.source();
  const AInfCategory& C = G.target();
  std::vector<int> om(A.num_objects());
  for (size_t x = 0; x < om.size(); ++x) om[x] = G.object_map()[F.object_map()[x]];
  int cap = std::max(F.arity_cap(), G.arity_cap());
  int reach = F.arity_cap() * G.arity_cap();
  if (max_arity > 0) reach = std::min(reach, max_arity);
  AInfFunctor out(F.source_ptr(), G.target_ptr(), om, cap);
  auto gG = [&](int k, const std::vector<int>& o, const std::vector<Vec>& a) {
    // o are target objects of F; G is keyed by its source objects, which they are
    return G.f(k, o, a);
  };
  for (int k = 1; k <= reach; ++k) {
    for (auto& objs : A.strings(k)) {
      auto sp = input_spaces(A, objs);
      size_t od = C.hom(om[objs.front()], om[objs.back()]).dim();
      if (od == 0) continue;
      for_each_tuple(sp, [&](const std::vector<int>& idx) {
        Vec v = functor_sum(F, k, objs, idx, sp, od, G.arity_cap(), gG, F.object_map());
        if (is_zero(v)) return;
        if (k > cap) throw math_error("composite exceeds arity cap " + std::to_string(cap));
        out.set_component(k, objs, idx, to_sparse(v));
      });
    }
  }
  return out;
}

bool functors_equal(const AInfFunctor& a, const AInfFunctor& b) {
  if (a.source_ptr().get() != b.source_ptr().get() || a.target_ptr().get() != b.target_ptr().get()) return false;
  if (a.object_map() != b.object_map()) return false;
  int cap = std::max(a.arity_cap(), b.arity_cap());
  for (int n = 1; n <= cap; ++n) {
    const OpTable& ta = a.components(n);
    const OpTable& tb = b.components(n);
    if (ta.size() != tb.size()) return false;
    for (auto& [k, v] : ta) {
      auto it = tb.find(k);
      if (it == tb.end()) return false;
      auto x = v, y = it->second;
      std::sort(x.begin(), x.end(), [](auto& p, auto& q) { return p.first < q.first; });
      std::sort(y.begin(), y.end(), [](auto& p, auto& q) { return p.first < q.first; });
      if (x != y) return false;
    }
  }
  return true;
}

AInfCategory embed_dg(const AInfCategory& d) {
  if (d.arity_cap() > 2) {
    for (int n = 3; n <= d.arity_cap(); ++n)
      if (!d.ops(n).empty()) throw math_error("not a dg-category: higher operations present");
  }
  AInfCategory out(d.objects(), std::max(2, d.arity_cap()));
  int K = static_cast<int>(d.num_objects());
  for (int x = 0; x < K; ++x) {
    for (int y = 0; y < K; ++y) out.set_hom(x, y, d.hom(x, y));
    if (d.unit(x)) out.set_unit(x, *d.unit(x));
  }
  for (int n = 1; n <= std::min(2, d.arity_cap()); ++n)
    for (auto& [key, vals] : d.ops(n)) {
      std::vector<int> o(key.begin(), key.begin() + n + 1), idx(key.begin() + n + 1, key.end());
      out.set_op(n, o, idx, vals);
    }
  return out;
}

std::vector<Scalar> H0Category::classify(int x, int y, const Vec& v) const {
  auto sol = solvers[x][y]->solve(v);
  if (!sol) throw math_error("element is not a closed degree-0 morphism");
  return std::vector<Scalar>(sol->begin() + bdim[x][y], sol->end());
}

std::shared_ptr<H0Category> h0_category(const AInfCategory& d) {
  auto h = std::make_shared<H0Category>();
  h->cat = &d;
  int K = static_cast<int>(d.num_objects());
  h->reps.assign(K, std::vector<std::vector<Vec>>(K));
  h->dims.assign(K, std::vector<size_t>(K, 0));
  h->bdim.assign(K, std::vector<size_t>(K, 0));
  h->solvers.resize(K);
  for (int x = 0; x < K; ++x) {
    h->solvers[x].resize(K);
    for (int y = 0; y < K; ++y) {
      const GradedSpace& hs = d.hom(x, y);
      Mat M = d.m1_matrix(x, y);
      auto deg0 = hs.indices_of_degree(0);
      auto degm1 = hs.indices_of_degree(-1);
      // cycles: kernel of m1 restricted to degree 0
      Mat D0(hs.dim(), deg0.size());
      for (size_t j = 0; j < deg0.size(); ++j) D0.set_col(j, M.col(deg0[j]));
      Mat Z0k = kernel(D0);
      Mat Z(hs.dim(), Z0k.cols());
      for (size_t j = 0; j < Z0k.cols(); ++j)
        for (size_t i = 0; i < deg0.size(); ++i) Z(deg0[i], j) = Z0k(i, j);
      Mat Bm(hs.dim(), degm1.size());
      for (size_t j = 0; j < degm1.size(); ++j) Bm.set_col(j, M.col(degm1[j]));
      Mat B = column_basis(Bm);
      Mat BZ = hstack(B, Z);
      Rref rr = rref(BZ);
      std::vector<Vec> reps;
      for (size_t p : rr.pivots)
        if (p >= B.cols()) reps.push_back(Z.col(p - B.cols()));
      Mat R = Mat::from_cols(reps, hs.dim());
      h->reps[x][y] = reps;
      h->dims[x][y] = reps.size();
      h->bdim[x][y] = B.cols();
      h->solvers[x][y] = std::make_unique<Solver>(hstack(B, R));
    }
  }
  return h;
}

}  // namespace ain
