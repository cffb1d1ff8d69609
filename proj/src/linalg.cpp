#include "ainerve/linalg.hpp"

namespace ain {

Mat Mat::identity(size_t n) {
  Mat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, size_t cols) {
  Mat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw math_error("row length mismatch");
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, size_t rows) {
  Mat m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Mat::row(size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Mat::col(size_t j) const {
  Vec v(r_);
  for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(size_t j, const Vec& v) {
  if (v.size() != r_) throw math_error("column length mismatch");
  for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

bool Mat::is_zero() const { return ain::is_zero(a_); }

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  Mat b(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::put(size_t r0, size_t c0, const Mat& b) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Mat::add(size_t r0, size_t c0, const Mat& b, const Scalar& s) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += s * b(i, j);
}

Vec Mat::operator*(const Vec& v) const {
  if (v.size() != c_) throw math_error("matrix-vector size mismatch");
  Vec out(r_);
  for (size_t j = 0; j < c_; ++j) {
    if (v[j].is_zero()) continue;
    for (size_t i = 0; i < r_; ++i)
      if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.c_ != b.r_) throw math_error("matrix product size mismatch");
  Mat m(a.r_, b.c_);
  for (size_t i = 0; i < a.r_; ++i)
    for (size_t k = 0; k < a.c_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw math_error("matrix sum size mismatch");
  Mat m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Mat operator-(const Mat& a, const Mat& b) { return a + Scalar(-1) * b; }

Mat operator*(const Scalar& s, const Mat& m) {
  Mat r = m;
  for (auto& x : r.a_) x *= s;
  return r;
}

static Rref rref_with(Mat m, Mat* track) {
  Rref out;
  size_t row = 0;
  for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      if (track)
        for (size_t j = 0; j < track->cols(); ++j) std::swap((*track)(p, j), (*track)(row, j));
    }
    Scalar inv = m(row, c).inv();
    for (size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    if (track)
      for (size_t j = 0; j < track->cols(); ++j) (*track)(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      if (track)
        for (size_t j = 0; j < track->cols(); ++j)
          if (!(*track)(row, j).is_zero()) (*track)(i, j) -= f * (*track)(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(m);
  return out;
}

Rref rref(Mat m) { return rref_with(std::move(m), nullptr); }

size_t rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).pivots.size();
}

Mat kernel(const Mat& m) {
  Rref rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Scalar(1);
    for (size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.r(r, f);
    basis.push_back(v);
  }
  return Mat::from_cols(basis, m.cols());
}

Mat column_basis(const Mat& m) {
  Rref rr = rref(m);
  std::vector<Vec> cols;
  for (size_t c : rr.pivots) cols.push_back(m.col(c));
  return Mat::from_cols(cols, m.rows());
}

Solver::Solver(const Mat& m) : m_(m), t_(Mat::identity(m.rows())) {
  Rref rr = rref_with(m, &t_);
  m_ = std::move(rr.r);
  pivots_ = std::move(rr.pivots);
}

std::optional<Vec> Solver::solve(const Vec& b) const {
  if (b.size() != t_.cols()) throw math_error("rhs size mismatch");
  Vec tb = t_ * b;
  for (size_t i = pivots_.size(); i < tb.size(); ++i)
    if (!tb[i].is_zero()) return std::nullopt;
  Vec x(m_.cols());
  for (size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = tb[r];
  return x;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) { return Solver(m).solve(b); }

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw math_error("inverse of non-square matrix");
  Mat t = Mat::identity(m.rows());
  Rref rr = rref_with(m, &t);
  if (rr.pivots.size() != m.rows()) throw math_error("singular matrix");
  return t;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw math_error("hstack row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  m.put(0, 0, a);
  m.put(0, a.cols(), b);
  return m;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw math_error("vstack column mismatch");
  Mat m(a.rows() + b.rows(), a.cols());
  m.put(0, 0, a);
  m.put(a.rows(), 0, b);
  return m;
}

}  // namespace ain
