#pragma once
#include <functional>
#include <map>
#include <memory>
#include <vector>
#include "ainerve/ainfty.hpp"

namespace ain {

using Surj = std::vector<int>;  // values eta(0..n), nondecreasing, onto [0, p]

unsigned long long binomial(int n, int k);
// surjections [n] ->> [p], lexicographic on the value sequence; p < 0 means all p
std::vector<Surj> surjections(int n, int p = -1);
std::string surj_key(const Surj& s);  // "0.0.1"

// theta : [m] -> [n] given by its values
using SimplexMap = std::vector<int>;
SimplexMap compose_maps(const SimplexMap& g, const SimplexMap& f);  // g o f

struct SimplicialVS {
  int level_cap = 0;
  std::vector<size_t> dims;
  std::vector<std::vector<Mat>> face;   // face[n][i] : X_n -> X_{n-1}
  std::vector<std::vector<Mat>> degen;  // degen[n][i] : X_n -> X_{n+1}, n < level_cap
  // theta^* : X_n -> X_m for theta : [m] -> [n], built from faces and degeneracies
  Mat theta_star(const SimplexMap& theta, int n) const;
};

Report check_simplicial_identities(const SimplicialVS& x);
SimplicialVS product(const SimplicialVS& x, const SimplicialVS& y);  // levelwise tensor
Mat kron(const Mat& a, const Mat& b);

struct Normalized {
  ChainComplex complex;       // levels 0..cap, differential (-1)^n d_n
  std::vector<Mat> basis;     // basis[n] : N_n -> X_n (columns)
  std::vector<Mat> project;   // project[n] : X_n -> N_n, kills degenerate simplices
};
Normalized normalized_complex(const SimplicialVS& x);

// DK(A) for a chain complex A concentrated in levels >= 0
struct DKComplex {
  ChainComplex A;
  SimplicialVS X;
  std::vector<std::vector<Surj>> surj;            // per level
  std::vector<std::vector<size_t>> offset;        // start of each component
  size_t component(int n, const Surj& eta) const; // index into surj[n]
  // direct rule: epi-mono factorisation and the (-1)^p d_p / identity / 0 cases
  Mat theta_star(const SimplexMap& theta, int n) const;
  // top component A_n of a level-n element, in A_n coordinates
  Vec top(int n, const Vec& v) const;
  Vec place(int n, const Surj& eta, const Vec& a) const;
  Vec part(int n, const Surj& eta, const Vec& v) const;
};
DKComplex dk(const ChainComplex& a, int level_cap = 6);

// The n-simplex of DK(A) whose injective restrictions theta : [p] -> [n] have
// the given top summands. Throws when the data is not a chain map
// N(Delta^n) -> A (boundary of each top != alternating sum of its faces' tops).
Vec dk_from_tops(const DKComplex& d, int n, const std::function<Vec(const SimplexMap&)>& top_of);

Report pi_boundary_check(const DKComplex& d, int n);

// x = sum_eta eta^*(c_eta) with c_eta normalised (coordinates in Normalized::basis)
struct Decomposition {
  std::vector<std::pair<Surj, Vec>> parts;
};
Decomposition decompose(const SimplicialVS& x, const Normalized& nx, int n, const Vec& v);
Vec reassemble(const SimplicialVS& x, const Normalized& nx, int n, const Decomposition& d);

enum class SignMode { classical, paper };

// Alexander-Whitney on a level-n element of X x Y; result[s] lies in
// N(X)_s (x) N(Y)_{n-s}, Kronecker ordering.
std::vector<Vec> aw(const SimplicialVS& x, const Normalized& nx, const SimplicialVS& y, const Normalized& ny, int n,
                    const Vec& z, SignMode mode = SignMode::classical);
// Eilenberg-Zilber of normalised x (level p) and y (level q) into (X x Y)_{p+q}
Vec ez(const SimplicialVS& x, const Normalized& nx, const SimplicialVS& y, const Normalized& ny, int p, int q,
       const Vec& a, const Vec& b);
// (p,q)-shuffles as (mu, nu) with their signs
struct Shuffle {
  std::vector<int> mu, nu;
  int sign;
};
std::vector<Shuffle> shuffles(int p, int q);

// D_Delta mapping spaces: DK(tau_{>=0}(Hom(x,y)^op))
struct MappingSpace {
  int x = 0, y = 0;
  DKComplex dk;
  Mat embed;  // A coordinates -> Hom(x,y) coordinates
  std::vector<Mat> level_embed;                   // A_p -> Hom(x,y)
  std::vector<std::shared_ptr<Solver>> level_solver;
  // level-p piece of A as a hom element (degree -p) and back
  Vec to_hom(int p, const Vec& a) const;
  Vec from_hom(int p, const Vec& h) const;
};
MappingSpace mapping_space(const AInfCategory& d, int x, int y, int level_cap = 4);

// b in Map(x,y)_n, a in Map(y,z)_n -> Map(x,z)_n
Vec compose_simplices(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz,
                      const MappingSpace& mxz, int n, const Vec& b, const Vec& a,
                      SignMode mode = SignMode::classical);
// Same composition through the product: decompose, AW, m2, reassemble.
Vec compose_simplices_literal(const AInfCategory& d, const MappingSpace& mxy, const MappingSpace& myz,
                              const MappingSpace& mxz, int n, const Vec& b, const Vec& a,
                              SignMode mode = SignMode::classical);

}  // namespace ain
