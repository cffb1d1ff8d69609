#include "ainerve/random.hpp"

namespace ain {

Mat random_matrix(Rng& rng, size_t rows, size_t cols, int bound) {
  Mat m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = Scalar(rng.uniform(-bound, bound));
  return m;
}

namespace {

ChainComplex random_complex(Rng& rng, int lo, int hi, int maxdim, const std::string& prefix, int step) {
  std::map<int, size_t> dims;
  for (int n = lo; n <= hi; ++n) dims[n] = rng.uniform(0, maxdim);
  std::map<int, Mat> diffs;
  Mat prev;
  bool have_prev = false;
  // walk in the direction of the differential
  for (int k = 0; k < hi - lo; ++k) {
    int n = step > 0 ? lo + k : hi - k;
    Mat m(dims[n + step], dims[n]);
    if (!have_prev) {
      m = random_matrix(rng, m.rows(), m.cols());
    } else {
      Mat ln = kernel(prev.transpose());
      for (size_t i = 0; i < m.rows(); ++i) {
        Vec row(m.cols());
        for (size_t c = 0; c < ln.cols(); ++c) axpy(row, Scalar(rng.uniform(-2, 2)), ln.col(c));
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = row[j];
      }
    }
    diffs[n] = m;
    prev = m;
    have_prev = true;
  }
  return ChainComplex::from_levels(step, dims, diffs, prefix);
}

}  // namespace

ChainComplex random_cochain(Rng& rng, int lo, int hi, int maxdim, const std::string& prefix) {
  return random_complex(rng, lo, hi, maxdim, prefix, 1);
}

ChainComplex random_chain(Rng& rng, int lo, int hi, int maxdim, const std::string& prefix) {
  return random_complex(rng, lo, hi, maxdim, prefix, -1);
}

}  // namespace ain
