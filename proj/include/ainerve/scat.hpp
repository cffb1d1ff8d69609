#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>
#include "ainerve/doldkan.hpp"
#include "ainerve/nerve.hpp"

namespace ain {

using Subset = std::vector<int>;   // sorted
using Flag = std::vector<Subset>;  // I_0 c I_1 c ... (repeats allowed where noted)

std::string subset_key(const Subset& s);  // "0,2"
std::string flag_key(const Flag& f);      // "0,2|0,1,2"
Flag parse_flag(const std::string& key);

// Simplicial set given by its nondegenerate simplices, all of whose faces are
// again nondegenerate (true for nerves of posets).
struct FiniteSimplicialSet {
  std::vector<std::vector<std::string>> labels;         // labels[d][s]
  std::vector<std::vector<std::vector<size_t>>> faces;  // faces[d][s][i] indexes dimension d-1
  int dim() const { return (int)labels.size() - 1; }
  size_t count(int d) const { return d >= 0 && d <= dim() ? labels[d].size() : 0; }
};
Report check_face_identities(const FiniteSimplicialSet& s);

// subsets of {i..j} containing i and j, by size then lexicographically
std::vector<Subset> interval_subsets(int i, int j);
// strictly increasing flags of such subsets with len entries
std::vector<Flag> strict_flags(int i, int j, int len);
// nerve of the inclusion poset P_{i,j}; empty if i > j
FiniteSimplicialSet poset_interval(int i, int j, int n);

struct CubeCell {
  std::vector<int> sigma;  // sigma(1..m-1)
  std::string name;        // cycle notation, "Id" for the identity
  Flag chain;              // {0,m} c {0,sigma(1),m} c ... c {0..m}
};
struct CubeGluing {
  size_t a, b;  // d_face(cell a) ~ d_face(cell b)
  int face;
};
struct CubeDecomposition {
  int m = 0;
  std::vector<CubeCell> cells;
  std::vector<CubeGluing> internal;
  // 2(m-1) boundary facets: d_0 faces grouped by sigma(1) = 1..m-1, then
  // d_{m-1} faces grouped by sigma(m-1) = 1..m-1; entries (cell, face)
  std::vector<std::vector<std::pair<size_t, int>>> boundary;
  FiniteSimplicialSet realized;  // disjoint cells modulo the internal gluing
  bool consistent = true;        // gluing never identifies differently labelled faces
};
CubeDecomposition cube_decomposition(int m);
std::string permutation_name(const std::vector<int>& sigma);
std::vector<std::string> gluing_lines(const CubeDecomposition& c);  // "d_1(Id) ~ d_1((12))"
// realized complex equals the poset nerve of P_{0,m}, simplex for simplex
Report cube_matches_poset(const CubeDecomposition& c);

// Mapping spaces of D_Delta, computed on demand.
class MapCache {
 public:
  MapCache(std::shared_ptr<const AInfCategory> cat, int level_cap) : cat_(std::move(cat)), cap_(level_cap) {}
  const MappingSpace& get(int x, int y);
  const AInfCategory& cat() const { return *cat_; }
  std::shared_ptr<const AInfCategory> cat_ptr() const { return cat_; }
  int level_cap() const { return cap_; }
  Vec compose(int x, int y, int z, int n, const Vec& b, const Vec& a);  // b then a
  Vec unit_simplex(int x, int n);

 private:
  std::shared_ptr<const AInfCategory> cat_;
  int cap_;
  std::map<std::pair<int, int>, MappingSpace> spaces_;
};

// A simplicial functor C[Delta^n] -> D_Delta: g[F] in Map(x_i, x_j)_l for every
// strict flag F of P_{i,j}, i < j, with l = |F| - 1.
struct BigNerveSimplex {
  int n = 0;
  std::vector<int> objects;
  std::map<Flag, Vec> g;
  bool operator==(const BigNerveSimplex& o) const { return n == o.n && objects == o.objects && g == o.g; }
};
std::vector<Flag> all_strict_flags(int n);
// value on any flag: repeats through degeneracies, i = j through the unit
Vec big_value(MapCache& maps, const BigNerveSimplex& s, const Flag& f);
Report validate_big_simplex(MapCache& maps, const BigNerveSimplex& s);
BigNerveSimplex random_big_simplex(MapCache& maps, const std::vector<int>& objects, Rng& rng);
BigNerveSimplex big_face(const BigNerveSimplex& s, int j);
BigNerveSimplex big_degeneracy(MapCache& maps, const BigNerveSimplex& s, int j);

// f_{i0 i1} = g[{i0,i1}], f_{i0..ik} = (-1)^{k-1} sum_sigma sgn(sigma) pi_{k-1}(g_sigma)
NerveSimplex big_to_small(MapCache& maps, const BigNerveSimplex& s);
Report comparison_naturality_check(MapCache& maps, const BigNerveSimplex& s);
// d f_S = sum_{0<j<k} (-1)^{j-1} f_{S - i_j} + sum_{0<j<k} (-1)^{1+k(j-1)} f_{i_j..i_k} o f_{i_0..i_j}
Report comparison_equation_check(const AInfCategory& c, const NerveSimplex& s);

}  // namespace ain
