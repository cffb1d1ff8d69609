#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>
#include "ainerve/graded.hpp"

namespace ain {

using SparseVec = std::vector<std::pair<size_t, Scalar>>;

struct KeyHash {
  size_t operator()(const std::vector<int>& k) const noexcept {
    size_t h = k.size();
    for (int x : k) h ^= std::hash<int>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Operation table for one arity: key = object string x0..xn followed by the
// basis indices of the inputs in tensor order (leftmost input first, which
// lives in Hom(x_{n-1}, x_n)).
using OpTable = std::unordered_map<std::vector<int>, SparseVec, KeyHash>;

// Inputs are always listed in tensor order: args[0] in Hom(x_{n-1}, x_n), ...,
// args[n-1] in Hom(x_0, x_1). objs lists x_0..x_n.
class AInfCategory {
 public:
  AInfCategory() = default;
  AInfCategory(std::vector<std::string> objects, int arity_cap);

  size_t num_objects() const { return objects_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  long object_index(const std::string& label) const;
  int arity_cap() const { return cap_; }
  // bar data: every operation has degree +1 instead of 2 - n
  bool is_bar() const { return bar_; }
  void set_bar(bool b) { bar_ = b; }

  const GradedSpace& hom(int x, int y) const { return homs_[x][y]; }
  void set_hom(int x, int y, GradedSpace s) { homs_[x][y] = std::move(s); }
  const std::optional<Vec>& unit(int x) const { return units_[x]; }
  void set_unit(int x, Vec u) { units_[x] = std::move(u); }
  void clear_unit(int x) { units_[x].reset(); }

  // coefficient of basis element `out` in m_n(basis tuple)
  void set_op(int n, const std::vector<int>& objs, const std::vector<int>& idx, SparseVec out);
  const OpTable& ops(int n) const;
  const SparseVec* lookup(int n, const std::vector<int>& objs, const std::vector<int>& idx) const;

  // m_n on arbitrary vectors (multilinear extension, no Koszul signs needed:
  // the inputs are not moved past anything).
  Vec m(int n, const std::vector<int>& objs, const std::vector<Vec>& args) const;
  Mat m1_matrix(int x, int y) const;

  // object strings x0..xn with every consecutive hom nonzero
  std::vector<std::vector<int>> strings(int n) const;

 private:
  std::vector<std::string> objects_;
  int cap_ = 4;
  bool bar_ = false;
  std::vector<std::vector<GradedSpace>> homs_;
  std::vector<std::optional<Vec>> units_;
  std::vector<OpTable> ops_;  // index n
};

// Degree of a homogeneous nonzero vector; nullopt for the zero vector.
std::optional<int> degree_of(const GradedSpace& s, const Vec& v);
Vec basis_vec(size_t dim, size_t i);

struct Defect {
  int n;
  std::vector<int> objs;
  std::vector<int> idx;  // basis tuple (tensor order); empty when not tuple-based
  Vec value;
};

struct Report {
  bool ok = true;
  std::vector<Defect> defects;
  std::vector<std::string> notes;
  void fail(Defect d) { ok = false; defects.push_back(std::move(d)); }
  void fail(const std::string& note) { ok = false; notes.push_back(note); }
};

// Eq. sum_{r+s+t=n} (-1)^{sr+t} m_{r+t+1}(Id^r (x) m_s (x) Id^t) = 0 on basis tuples.
Report check_relations(const AInfCategory& c, int n_max);
Report check_strict_units(const AInfCategory& c);

// b_i = s m_i (s^{-1})^{(x) i} on suspended homs; stored as a category whose
// homs are the suspensions and whose ops are the b_i.
AInfCategory bar_convert(const AInfCategory& c);
AInfCategory bar_unconvert(const AInfCategory& b);
// sum b_{r+t+1}(Id^r (x) b_s (x) Id^t) = 0 with Koszul signs.
Report check_bar_relations(const AInfCategory& b, int n_max);

// epsilon_r(i_1..i_r) = sum_{k=2}^r (1 - i_k) sum_{l<k} i_l
long epsilon_r(const std::vector<int>& parts);

class AInfFunctor {
 public:
  AInfFunctor(std::shared_ptr<const AInfCategory> src, std::shared_ptr<const AInfCategory> tgt,
              std::vector<int> object_map, int arity_cap);
  static AInfFunctor identity(std::shared_ptr<const AInfCategory> c);

  const AInfCategory& source() const { return *src_; }
  const AInfCategory& target() const { return *tgt_; }
  std::shared_ptr<const AInfCategory> source_ptr() const { return src_; }
  std::shared_ptr<const AInfCategory> target_ptr() const { return tgt_; }
  const std::vector<int>& object_map() const { return objmap_; }
  int arity_cap() const { return cap_; }

  void set_component(int n, const std::vector<int>& objs, const std::vector<int>& idx, SparseVec out);
  const OpTable& components(int n) const;
  // f_n on vectors in tensor order; output in Hom(F x0, F xn)
  Vec f(int n, const std::vector<int>& objs, const std::vector<Vec>& args) const;

 private:
  std::shared_ptr<const AInfCategory> src_, tgt_;
  std::vector<int> objmap_;
  int cap_;
  std::vector<OpTable> comps_;
};

Report check_functor(const AInfFunctor& f, int n_max);
// max_arity > 0 skips arities above it; callers use it when those are known
// to vanish (strictly unital data out of a finite simplex).
AInfFunctor compose_functors(const AInfFunctor& g, const AInfFunctor& f, int max_arity = 0);
bool functors_equal(const AInfFunctor& a, const AInfFunctor& b);

// Apply (g_1 (x) ... (x) g_r) to a basis tuple with Koszul signs: part j of
// the partition (leftmost first) is fed to op(j, part, ...) whose degree is
// deg_of(part); outputs are returned as vectors.
struct SplitResult {
  Scalar sign;
  std::vector<Vec> outputs;
};

// Enumerate compositions of n into r positive parts each at most cap.
void for_each_composition(int n, int cap, const std::function<void(const std::vector<int>&)>& fn);

// dg categories: cap 2, m1^2 = 0
AInfCategory embed_dg(const AInfCategory& d);

struct H0Category {
  // per (x,y): representatives of a basis of H^0 (hom coordinates)
  std::vector<std::vector<std::vector<Vec>>> reps;
  std::vector<std::vector<size_t>> dims;
  // class coordinates of a closed degree-0 element
  std::vector<Scalar> classify(int x, int y, const Vec& v) const;
  std::vector<std::vector<std::unique_ptr<Solver>>> solvers;  // [B | R]
  std::vector<std::vector<size_t>> bdim;
  const AInfCategory* cat = nullptr;
};
std::shared_ptr<H0Category> h0_category(const AInfCategory& d);

}  // namespace ain
