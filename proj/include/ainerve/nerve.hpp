#pragma once
#include <map>
#include <memory>
#include <optional>
#include <vector>
#include "ainerve/ainfty.hpp"
#include "ainerve/random.hpp"

namespace ain {

// A_inf[Delta^n]: objects 0..n, Hom(i,j) = K (i,j) in degree 0 for i <= j.
AInfCategory standard_simplex_category(int n, int arity_cap = 4);
// shared instance per n, so functors between them compose
std::shared_ptr<const AInfCategory> simplex_category(int n);

// delta_j^n : [n-1] -> [n] skips j;  sigma_j^n : [n] -> [n-1] repeats j.
int delta_map(int j, int k);
int sigma_map(int j, int k);
AInfFunctor coface_functor(int j, int n);        // A[Delta^{n-1}] -> A[Delta^n]
AInfFunctor codegeneracy_functor(int j, int n);  // A[Delta^n] -> A[Delta^{n-1}]

// Which sign governs the higher m_r terms of the structure equation.
//  blocks: eps_r of the block lengths, as in the functor equation
//  cuts:   the cut-position formula sum (1 - j_k + j_{k-1}) j_{k-1}, with the
//          separately printed sign 1 + k(j-1) for r = 2
enum class EpsReading { blocks, cuts };

struct NerveSimplex {
  int n = 0;
  std::vector<int> objects;                     // ambient objects x_0..x_n
  std::map<std::vector<int>, Vec> components;   // strictly increasing strings, length >= 2
  const Vec& at(const std::vector<int>& str) const;
  bool operator==(const NerveSimplex& o) const {
    return n == o.n && objects == o.objects && components == o.components;
  }
};

// strictly increasing strings in [0, n] with at least min_len entries, by length then lex
std::vector<std::vector<int>> increasing_strings(int n, int min_len = 2);
std::string string_key(const std::vector<int>& str);  // "0.2.3"

// m1(f_S) - RHS for the string S; zero iff the structure equation holds at S
Vec simplex_defect(const AInfCategory& c, const NerveSimplex& s, const std::vector<int>& str,
                   EpsReading r = EpsReading::blocks);
Report validate_simplex(const AInfCategory& c, const NerveSimplex& s, EpsReading r = EpsReading::blocks);

AInfFunctor simplex_to_functor(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s);
NerveSimplex functor_to_simplex(const AInfFunctor& f);

NerveSimplex face(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s, int j);
NerveSimplex degeneracy(std::shared_ptr<const AInfCategory> c, const NerveSimplex& s, int j);
NerveSimplex pushforward(const AInfFunctor& f, const NerveSimplex& s);

struct HornData {
  int n = 0, p = 0;
  std::vector<int> objects;
  std::map<std::vector<int>, Vec> components;  // everything except 0..n and 0..p^..n
};
HornData horn_of(const NerveSimplex& s, int p);
// f_{0..n} = top (zero by default); f_{0..p^..n} solved from the equation at 0..n
NerveSimplex fill_inner_horn(const AInfCategory& c, const HornData& h, const std::optional<Vec>& top = {},
                             EpsReading r = EpsReading::blocks);

// Iterated horn filling over the given objects; free components are random.
NerveSimplex random_simplex(const AInfCategory& c, const std::vector<int>& objects, Rng& rng,
                            EpsReading r = EpsReading::blocks);

// dim of Hom(x, y) in the homotopy category of the nerve: valid 1-simplices
// modulo the relation spanned by 2-simplices (f, Id_y; g).
size_t h0_dim_via_nerve(const AInfCategory& c, int x, int y);

}  // namespace ain
