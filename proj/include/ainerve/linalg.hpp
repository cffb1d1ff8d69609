#pragma once
#include <optional>
#include <vector>
#include "ainerve/scalar.hpp"

namespace ain {

// Dense row-major matrix over Scalar.
class Mat {
 public:
  Mat() = default;
  Mat(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
  static Mat identity(size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, size_t cols);
  static Mat from_cols(const std::vector<Vec>& cols, size_t rows);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Vec row(size_t i) const;
  Vec col(size_t j) const;
  void set_col(size_t j, const Vec& v);
  bool is_zero() const;
  Mat transpose() const;
  Mat block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void put(size_t r0, size_t c0, const Mat& b);  // overwrite block
  void add(size_t r0, size_t c0, const Mat& b, const Scalar& s = Scalar(1));

  Vec operator*(const Vec& v) const;
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& s, const Mat& m);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

struct Rref {
  Mat r;                      // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column per nonzero row
};

Rref rref(Mat m);
size_t rank(const Mat& m);
Mat kernel(const Mat& m);  // columns form a basis of {x : m x = 0}
Mat column_basis(const Mat& m);  // independent subset of columns spanning the image
std::optional<Vec> solve(const Mat& m, const Vec& b);  // one solution of m x = b
Mat inverse(const Mat& m);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

// Reusable solver for m x = b with fixed m (m need not be square).
class Solver {
 public:
  explicit Solver(const Mat& m);
  std::optional<Vec> solve(const Vec& b) const;
  size_t rank() const { return pivots_.size(); }

 private:
  Mat m_, t_;  // t_ = transform with t_ m = rref
  std::vector<size_t> pivots_;
};

}  // namespace ain
