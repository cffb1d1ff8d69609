#pragma once
#include <map>
#include <string>
#include <unordered_map>
#include <vector>
#include "ainerve/linalg.hpp"

namespace ain {

struct BasisElem {
  std::string label;
  int degree;
};

class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElem> basis);

  size_t dim() const { return basis_.size(); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  int degree(size_t i) const { return basis_[i].degree; }
  const std::string& label(size_t i) const { return basis_[i].label; }
  long index(const std::string& label) const;  // -1 if absent
  std::map<int, size_t> dims() const;
  std::vector<size_t> indices_of_degree(int d) const;
  bool operator==(const GradedSpace& o) const;

 private:
  std::vector<BasisElem> basis_;
  std::unordered_map<std::string, size_t> index_;
};

GradedSpace tensor_spaces(const GradedSpace& v, const GradedSpace& w);

// Matrix m is dim(target) x dim(source); entry (w, v) vanishes unless
// deg w = deg v + degree.
struct GradedMap {
  GradedSpace source, target;
  int degree = 0;
  Mat m;

  GradedMap() = default;
  GradedMap(GradedSpace s, GradedSpace t, int deg, Mat mat);
  static GradedMap zero(GradedSpace s, GradedSpace t, int deg);
  static GradedMap identity(const GradedSpace& s);
};

GradedMap compose_graded(const GradedMap& g, const GradedMap& f);
GradedMap tensor_maps(const GradedMap& f, const GradedMap& g);
// s : V -> sV of degree -1, labels "s(v)".
std::pair<GradedSpace, GradedMap> suspend(const GradedSpace& v);
GradedMap desuspend_map(const GradedSpace& v);  // s^{-1} : sV -> V

// Bounded complex on a based graded space. step = +1 for cochain complexes,
// -1 for chain complexes; d is the total differential on the whole basis.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(GradedSpace space, Mat d, int step);

  // Levels given as dims with matrices diffs[n]: level n -> level n + step.
  static ChainComplex from_levels(int step, const std::map<int, size_t>& dims,
                                  const std::map<int, Mat>& diffs, const std::string& prefix = "c");

  const GradedSpace& space() const { return space_; }
  const Mat& d() const { return d_; }
  int step() const { return step_; }
  size_t dim(int n) const;
  int lo() const;
  int hi() const;
  const std::vector<size_t>& level(int n) const;  // basis indices at degree n
  Mat diff(int n) const;                           // block level n -> n + step
  GradedMap differential() const { return GradedMap(space_, space_, step_, d_); }

 private:
  GradedSpace space_;
  Mat d_;
  int step_ = 1;
  std::map<int, std::vector<size_t>> levels_;
};

enum class HomSign { cited, leibniz };

// Hom^k(A,B) = prod_i Hom(A^i, B^{i+k}); basis element "[a,b]" sends a to b.
// cited:   d f = f d_A + (-1)^{k+1} d_B f
// leibniz: d f = d_B f - (-1)^k f d_A   (= (-1)^{k+1} times cited)
ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b, HomSign mode = HomSign::cited);
// Matrix of a hom element (vector over hom basis) as a map A -> B.
Mat hom_to_matrix(const ChainComplex& a, const ChainComplex& b, const Vec& f);
Vec matrix_to_hom(const ChainComplex& a, const ChainComplex& b, const Mat& m);

std::map<int, size_t> homology(const ChainComplex& c);
ChainComplex op_complex(const ChainComplex& c);

struct Truncation {
  ChainComplex complex;
  Mat z0;  // columns: level-0 basis of the truncation in source coordinates
};
Truncation truncate_nonneg(const ChainComplex& c);

// Rank of the map induced on degree-n homology by a degree-0 chain map
// f : C -> D given as dim(D) x dim(C) matrix.
size_t induced_rank(const ChainComplex& c, const ChainComplex& dd, const Mat& f, int n);
bool is_chain_map(const ChainComplex& c, const ChainComplex& dd, const Mat& f);

}  // namespace ain
