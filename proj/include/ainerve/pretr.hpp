#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>
#include "ainerve/ainfty.hpp"
#include "ainerve/random.hpp"

namespace ain {

// dg-category of bounded cochain complexes; Hom uses d f = d_B f - (-1)^k f d_A
// and m2 is plain composition.
struct ChainDgCategory {
  std::vector<ChainComplex> objects;
  std::vector<std::vector<ChainComplex>> homs;
  std::shared_ptr<AInfCategory> cat;
  int zero_object = -1;

  size_t size() const { return objects.size(); }
  Mat to_matrix(int x, int y, const Vec& f) const { return hom_to_matrix(objects[x], objects[y], f); }
  Vec to_hom(int x, int y, const Mat& m) const { return matrix_to_hom(objects[x], objects[y], m); }
  Vec compose(int x, int y, int z, const Vec& g, const Vec& f) const;  // g o f
  Vec identity(int x) const;
  Vec d(int x, int y, const Vec& f) const { return homs[x][y].d() * f; }
};

ChainDgCategory make_chain_dg(std::vector<ChainComplex> objects, std::vector<std::string> labels);
// nobj random complexes on levels [lo, hi], plus a zero object when asked
ChainDgCategory random_chain_dg(Rng& rng, int nobj, int lo, int hi, int maxdim, bool with_zero);
// random closed element of Hom^k(x, y)
Vec random_closed(Rng& rng, const ChainDgCategory& d, int x, int y, int k);
// random element of Hom^k(x, y)
Vec random_hom(Rng& rng, const ChainDgCategory& d, int x, int y, int k);

// Twisted complex: components (position i, object) and a twist q[a,b] in
// Hom^{pos a - pos b + 1}(obj a, obj b). Several components may share a
// position (formal direct sums). Conventions follow the total complex
// Tot K = (+) K_i[-i] with differential sum (-1)^i d + q, so Maurer-Cartan
// reads (-1)^{pos b} m1(q_ab) + sum_c q_cb q_ac = 0.
struct TwComponent {
  int pos;
  int object;
};

struct TwistedComplex {
  std::shared_ptr<const AInfCategory> cat;
  std::vector<TwComponent> comps;
  std::map<std::pair<size_t, size_t>, Vec> q;

  size_t size() const { return comps.size(); }
  int obj(size_t a) const { return comps[a].object; }
};

// morphism blocks keyed by (component of source, component of target)
using TwMorphism = std::map<std::pair<size_t, size_t>, Vec>;

TwistedComplex embed_object(std::shared_ptr<const AInfCategory> cat, int x);  // x in position 0
Report validate_twisted(const TwistedComplex& k);  // throws on degree mismatch

// Hom^k = (+) Hom^l(K_a, K'_b), k = l + pos b - pos a; blocks in (a, b)
// lexicographic order, each in hom basis order. Labels "a>b:label".
ChainComplex tw_hom(const TwistedComplex& k, const TwistedComplex& k2);
Vec tw_pack(const TwistedComplex& k, const TwistedComplex& k2, const TwMorphism& f);
TwMorphism tw_unpack(const TwistedComplex& k, const TwistedComplex& k2, const Vec& v);
TwMorphism tw_compose(const TwistedComplex& k, const TwistedComplex& k2, const TwistedComplex& k3,
                      const TwMorphism& g, const TwMorphism& f);  // g o f
TwMorphism tw_identity(const TwistedComplex& k);
bool tw_equal(const TwMorphism& a, const TwMorphism& b);
TwMorphism tw_sub(const TwMorphism& a, const TwMorphism& b);

// positions move down by n, q picks up (-1)^n
TwistedComplex shift_tw(const TwistedComplex& k, int n);
// K[1] (+) K' with q'' = [[-q, f], [0, q']]; f must be closed of degree 0
TwistedComplex cone_tw(const TwistedComplex& k, const TwistedComplex& k2, const TwMorphism& f);

// Total complex in the chain model; basis labels "c<a>:<label>".
ChainComplex tot(const ChainDgCategory& d, const TwistedComplex& k);
// standard mapping cone: C^n = X^{n+1} (+) Y^n, d(x, y) = (-dx, f x + dy)
ChainComplex mapping_cone(const ChainDgCategory& d, int x, int y, const Vec& f);

struct ConeHom {
  ChainComplex from_cone;  // Hom(Y,Z) (+) Hom(X,Z)[-1]
  ChainComplex to_cone;    // Hom(Z,Y) (+) Hom(Z,X)[1]
};
ConeHom cone_hom_matrices(const ChainDgCategory& d, int x, int y, const Vec& f, int z);

// Non-negative chain complexes
struct PathComplex {
  ChainComplex complex;  // truncation of A_n (+) B_{n+1} (+) B_n
  Mat i;                 // A -> P, a |-> (a, 0, f a)
  Mat p;                 // P -> B, projection to B_n
  Truncation trunc;      // complex over the untruncated levels >= -1
  ChainComplex full;
};
PathComplex path_complex(const ChainComplex& a, const ChainComplex& b, const Mat& f);

struct Cospan {
  ChainComplex x1, x0, x2;
  Mat f1, f2;  // x1 -> x0 <- x2
};

struct HomotopyPullback {
  ChainComplex complex;
  PathComplex p1, p2;
  Mat inclusion;  // complex -> p1.complex (+) p2.complex
};
HomotopyPullback homotopy_pullback(const Cospan& c);
// tau>=0 of the fiber of (f1, -f2): X1 (+) X2 (+) X0[1]
ChainComplex pullback_oracle(const Cospan& c);

// Sub-complex spanned levelwise by the columns of basis[n]; also returns the inclusion.
std::pair<ChainComplex, Mat> subcomplex(const ChainComplex& c, const std::map<int, Mat>& basis);

// tau>=0 of Hom^op: level n = Hom^{-n}
Truncation truncated_op(const ChainComplex& hom);
// Coordinates of an untruncated vector in a truncation; throws if level 0 is not a cycle.
Vec to_truncated(const Truncation& t, const ChainComplex& full, const Vec& v);
Vec from_truncated(const Truncation& t, const ChainComplex& full, const Vec& v);

// Quasi-isomorphism check: chain map, equal homology dims, induced map of full rank.
Report quasi_iso_check(const ChainComplex& c, const ChainComplex& d, const Mat& f, const std::string& name);

Report fiber_cofiber_check(const ChainDgCategory& d, int x, int y, const Vec& f, int z);
Report stability_witnesses(const ChainDgCategory& d, int x, int y, const Vec& f);
Report les_check(const ChainDgCategory& d, int x, int y, const Vec& f, int z);

}  // namespace ain
